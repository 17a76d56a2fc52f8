#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "realidx/coupling.hpp"
#include "realidx/index_value.hpp"

namespace realidx {

enum class Involution { None, Transpose, Symplectic };

/// M_block (x) 1 inside M_ambient, optionally cut down to a real form. The symplectic
/// involution is u = J_2 (x) 1, which preserves every M_block (x) 1 with even block.
struct SubobjectRecipe {
    std::string name;
    std::size_t ambient = 0;
    std::size_t block = 0;
    Involution involution = Involution::None;
};

enum class EntryKind { RealReal, ComplexComplex, ComplexReal };
std::string_view to_string(EntryKind kind);

struct CatalogEntry {
    std::string name;
    SubobjectRecipe big;
    SubobjectRecipe small;
    EntryKind kind = EntryKind::ComplexComplex;
    double expected_index = 0.0;
};

/// One checked quantity in a report.
struct ReportEntry {
    std::string group;
    std::string name;
    std::string kind;
    double computed = 0.0;
    double expected = 0.0;
    double spread = 0.0;    ///< spread of the xi samples, or across code paths
    double residual = 0.0;
    double threshold = 0.0;
    bool passed = false;
    std::string error;  ///< non-empty if the computation threw
    std::optional<IndexClass> classification;
};

struct RunReport {
    std::uint64_t seed = kDefaultSeed;
    double tol = tol::kIndex;
    double wall_time_s = 0.0;
    std::vector<ReportEntry> entries;

    bool passed() const;
    std::size_t failures() const;
};

StarAlgebra build_algebra(const SubobjectRecipe& r);
AntiAutomorphism build_involution(Involution kind, std::size_t ambient);

/// The seven subobjects of M_4(C) and the three of M_5(C), keyed by name.
std::vector<SubobjectRecipe> subobjects_i4();
std::vector<SubobjectRecipe> subobjects_i5();

/// The listed inclusions with their table values.
std::vector<CatalogEntry> catalog_entries_i4();
std::vector<CatalogEntry> catalog_entries_i5();

/// Computes one entry; exceptions land in ReportEntry::error. Real-real entries are
/// computed by real coupling, envelope coupling and real quasi-basis and must agree.
ReportEntry evaluate(const CatalogEntry& e, std::uint64_t seed = kDefaultSeed, double tol = tol::kIndex);

RunReport catalog_i4(std::uint64_t seed = kDefaultSeed, double tol = tol::kIndex);
RunReport catalog_i5(std::uint64_t seed = kDefaultSeed, double tol = tol::kIndex);

/// Both catalogs, the halving checks, real-complex equality, quasi-basis vs coupling
/// on M_m (x) 1_c, and Temperley-Lieb audits.
RunReport run_suite(std::uint64_t seed = kDefaultSeed, double tol = tol::kIndex);

/// Attaches a classification to every index entry; an index entry classified as
/// Forbidden is marked failed.
RunReport classify_all(RunReport report);

std::string format_table(const RunReport& r);

}  // namespace realidx
