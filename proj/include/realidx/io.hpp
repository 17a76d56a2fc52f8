#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"
#include "realidx/catalog.hpp"
#include "realidx/expectation.hpp"

namespace realidx::io {

using nlohmann::json;

/// {"re": [[...]], "im": [[...]]}, row-major; "im" may be omitted. Throws InvalidInput.
ComplexMatrix matrix_from_json(const json& j);
json matrix_to_json(const ComplexMatrix& x);

/// {"u": matrix} or {"kind": "transpose" | "symplectic"} for size n.
AntiAutomorphism antiautomorphism_from_json(const json& j, std::size_t n);

struct AlgebraSpec {
    StarAlgebra algebra;
    std::optional<AntiAutomorphism> alpha;
};

/// {"hilbert_dim": n, "generators": [matrix, ...], "name": "...", "antiautomorphism": {...}}.
/// The algebra is generated from the listed matrices.
AlgebraSpec algebra_from_json(const json& j);
json algebra_to_json(const StarAlgebra& a, const std::optional<AntiAutomorphism>& alpha = {});

json read_json(const std::filesystem::path& p);
AlgebraSpec load_algebra(const std::filesystem::path& p);

/// "transpose", "symplectic", or a JSON file holding {"u": ...}, {"kind": ...} or an
/// algebra spec with an "antiautomorphism" field.
AntiAutomorphism parse_alpha(const std::string& arg, std::size_t n);

struct WeightSpec {
    OperatorWeight t1;
    std::optional<AntiAutomorphism> alpha;
};

/// {"m": spec-or-path, "n": spec-or-path, one of "conjugator": matrix | "seed": S |
/// "map": matrix on M's coordinates}. Paths are relative to `base`.
WeightSpec weight_from_json(const json& j, const std::filesystem::path& base = {});

json to_json(const CouplingResult& c);
json to_json(const IndexValue& v);
json to_json(const HalvingReport& h);
json to_json(const AxiomReport& a);
json to_json(const WeightReport& w);
json to_json(const ScalarityReport& s);
json to_json(const TowerReport& t);
json to_json(const ReportEntry& e);
json to_json(const RunReport& r);

}  // namespace realidx::io
