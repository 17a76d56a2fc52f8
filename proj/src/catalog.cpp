#include "realidx/catalog.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>

#include "realidx/expectation.hpp"

namespace realidx {

namespace {

constexpr double kTemperleyLieb = 1e-8;
constexpr double kTraceIndex = 1e-7;

ComplexMatrix j2() { return ComplexMatrix{{0.0, 1.0}, {-1.0, 0.0}}; }

RealForm build_real(const SubobjectRecipe& r, const AntiAutomorphism& alpha) {
    return real_form(build_algebra(SubobjectRecipe{r.name, r.ambient, r.block, Involution::None}), alpha, r.name);
}

ReportEntry failed(ReportEntry e, const std::string& what) {
    e.error = what;
    e.passed = false;
    return e;
}

template <typename F>
ReportEntry guarded(ReportEntry e, F&& body) {
    try {
        body(e);
    } catch (const std::exception& ex) {
        return failed(std::move(e), ex.what());
    }
    return e;
}

void settle(ReportEntry& e) { e.passed = e.error.empty() && std::isfinite(e.residual) && e.residual <= e.threshold; }

SubobjectRecipe sub(std::string name, std::size_t ambient, std::size_t block, Involution inv) {
    return SubobjectRecipe{std::move(name), ambient, block, inv};
}

CatalogEntry entry(const SubobjectRecipe& big, const SubobjectRecipe& small, EntryKind kind, double expected) {
    return CatalogEntry{"[" + big.name + " : " + small.name + "]", big, small, kind, expected};
}

double elapsed_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void append(RunReport& into, const RunReport& from) {
    into.entries.insert(into.entries.end(), from.entries.begin(), from.entries.end());
}

RunReport run_catalog(const std::vector<CatalogEntry>& entries, const std::string& group, std::uint64_t seed, double tol) {
    const auto t0 = std::chrono::steady_clock::now();
    RunReport rep;
    rep.seed = seed;
    rep.tol = tol;
    for (const auto& e : entries) {
        ReportEntry r = evaluate(e, seed, tol);
        r.group = group;
        rep.entries.push_back(std::move(r));
    }
    rep.wall_time_s = elapsed_since(t0);
    return classify_all(std::move(rep));
}

}  // namespace

std::string_view to_string(EntryKind kind) {
    switch (kind) {
        case EntryKind::RealReal: return "real-real";
        case EntryKind::ComplexComplex: return "complex-complex";
        case EntryKind::ComplexReal: return "complex-real";
    }
    return "unknown";
}

bool RunReport::passed() const { return failures() == 0; }

std::size_t RunReport::failures() const {
    return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [](const auto& e) { return !e.passed; }));
}

AntiAutomorphism build_involution(Involution kind, std::size_t ambient) {
    switch (kind) {
        case Involution::Transpose: return AntiAutomorphism::transpose(ambient);
        case Involution::Symplectic:
            if (ambient % 2 != 0) throw Error(ErrorKind::OddDimensionSymplectic, "symplectic involution needs even size");
            return AntiAutomorphism::from_unitary(kron(j2(), ComplexMatrix::identity(ambient / 2)));
        case Involution::None: break;
    }
    throw Error(ErrorKind::InvalidInput, "no involution requested");
}

StarAlgebra build_algebra(const SubobjectRecipe& r) {
    if (r.block == 0 || r.ambient % r.block != 0) throw Error(ErrorKind::DimensionMismatch, "block must divide the ambient size");
    if (r.block == r.ambient) return StarAlgebra::full(r.ambient, r.name);
    if (r.block == 1) return StarAlgebra::scalars(r.ambient, r.name);
    return tensor_identity(StarAlgebra::full(r.block), r.ambient / r.block, r.name);
}

std::vector<SubobjectRecipe> subobjects_i4() {
    return {sub("R", 4, 1, Involution::Transpose),     sub("C", 4, 1, Involution::None),
            sub("H", 4, 2, Involution::Symplectic),    sub("M2(R)", 4, 2, Involution::Transpose),
            sub("M2(C)", 4, 2, Involution::None),      sub("M2(H)", 4, 4, Involution::Symplectic),
            sub("M4(R)", 4, 4, Involution::Transpose)};
}

std::vector<SubobjectRecipe> subobjects_i5() {
    return {sub("R", 5, 1, Involution::Transpose), sub("C", 5, 1, Involution::None), sub("M5(R)", 5, 5, Involution::Transpose)};
}

std::vector<CatalogEntry> catalog_entries_i4() {
    const auto m = sub("M", 4, 4, Involution::None);
    const auto m4r = sub("M4(R)", 4, 4, Involution::Transpose);
    const auto m2h = sub("M2(H)", 4, 4, Involution::Symplectic);
    const auto m2c = sub("M2(C)", 4, 2, Involution::None);
    const auto m2r = sub("M2(R)", 4, 2, Involution::Transpose);
    const auto h = sub("H", 4, 2, Involution::Symplectic);
    const auto c = sub("C", 4, 1, Involution::None);
    const auto r = sub("R", 4, 1, Involution::Transpose);
    // Inside M2(H) the reals are cut out by the same symplectic involution.
    const auto r_in_h = sub("R", 4, 1, Involution::Symplectic);
    return {entry(m, m4r, EntryKind::ComplexReal, 2.0),   entry(m, m2h, EntryKind::ComplexReal, 2.0),
            entry(m, m2c, EntryKind::ComplexComplex, 4.0), entry(m4r, m2r, EntryKind::RealReal, 4.0),
            entry(m2h, h, EntryKind::RealReal, 4.0),       entry(m, m2r, EntryKind::ComplexReal, 8.0),
            entry(m, c, EntryKind::ComplexComplex, 16.0),  entry(m4r, r, EntryKind::RealReal, 16.0),
            entry(m2h, r_in_h, EntryKind::RealReal, 16.0), entry(m, r, EntryKind::ComplexReal, 32.0)};
}

std::vector<CatalogEntry> catalog_entries_i5() {
    const auto m = sub("M", 5, 5, Involution::None);
    const auto m5r = sub("M5(R)", 5, 5, Involution::Transpose);
    const auto c = sub("C", 5, 1, Involution::None);
    const auto r = sub("R", 5, 1, Involution::Transpose);
    return {entry(m, m5r, EntryKind::ComplexReal, 2.0), entry(m, c, EntryKind::ComplexComplex, 25.0),
            entry(m5r, r, EntryKind::RealReal, 25.0), entry(m, r, EntryKind::ComplexReal, 50.0)};
}

ReportEntry evaluate(const CatalogEntry& e, std::uint64_t seed, double tol) {
    ReportEntry out;
    out.name = e.name;
    out.kind = std::string(to_string(e.kind));
    out.expected = e.expected_index;
    out.threshold = tol;
    return guarded(std::move(out), [&](ReportEntry& r) {
        switch (e.kind) {
            case EntryKind::ComplexComplex: {
                const auto c = jones_coupling(build_algebra(e.big), build_algebra(e.small), seed);
                r.computed = c.value;
                r.spread = c.spread;
                break;
            }
            case EntryKind::ComplexReal: {
                const StarAlgebra m = build_algebra(e.big);
                const RealForm q = build_real(e.small, build_involution(e.small.involution, e.small.ambient));
                const auto c = jones_coupling(m, envelope(q), seed);
                r.computed = 2.0 * c.value;
                r.spread = 2.0 * c.spread;
                break;
            }
            case EntryKind::RealReal: {
                if (e.big.involution != e.small.involution) throw Error(ErrorKind::InvalidInput, "real pair uses two involutions");
                const AntiAutomorphism alpha = build_involution(e.big.involution, e.big.ambient);
                const RealForm rf = build_real(e.big, alpha);
                const RealForm qf = build_real(e.small, alpha);
                const auto c = real_coupling(rf, qf, seed);
                const double env = jones_index(envelope(rf), envelope(qf), seed).value;
                const double qb = real_kosaki_index(trace_preserving_expectation(envelope(rf), envelope(qf)), alpha).value;
                r.computed = c.value;
                r.spread = c.spread;
                const double paths = std::max({std::abs(c.value - env), std::abs(c.value - qb), std::abs(env - qb)});
                r.residual = paths;
                break;
            }
        }
        r.residual = std::max(r.residual, std::abs(r.computed - r.expected));
        settle(r);
    });
}

RunReport catalog_i4(std::uint64_t seed, double tol) { return run_catalog(catalog_entries_i4(), "I4", seed, tol); }
RunReport catalog_i5(std::uint64_t seed, double tol) { return run_catalog(catalog_entries_i5(), "I5", seed, tol); }

RunReport run_suite(std::uint64_t seed, double tol) {
    const auto t0 = std::chrono::steady_clock::now();
    RunReport rep;
    rep.seed = seed;
    rep.tol = tol;
    append(rep, catalog_i4(seed, tol));
    append(rep, catalog_i5(seed, tol));

    // Real and complex module dimensions of H.
    struct HalvingCase {
        std::string name;
        std::size_t n;
        Involution inv;
    };
    std::vector<HalvingCase> halving;
    for (std::size_t n = 2; n <= 5; ++n) halving.push_back({"M" + std::to_string(n) + " transpose", n, Involution::Transpose});
    halving.push_back({"M2 symplectic", 2, Involution::Symplectic});
    halving.push_back({"M4 symplectic", 4, Involution::Symplectic});
    for (const auto& hc : halving) {
        ReportEntry e;
        e.group = "halving";
        e.name = hc.name;
        e.kind = "dimension";
        e.threshold = tol;
        rep.entries.push_back(guarded(std::move(e), [&](ReportEntry& r) {
            const auto h = verify_halving(StarAlgebra::full(hc.n), build_involution(hc.inv, hc.n), tol, seed);
            r.computed = h.real_points_dim;
            r.expected = h.complex_dim;
            r.spread = std::abs(0.5 * h.real_space_dim - h.complex_dim);
            r.residual = h.max_residual;
            settle(r);
        }));
    }

    // Real coupling against the envelope coupling on every real-real catalog pair.
    std::vector<CatalogEntry> real_pairs;
    for (const auto& list : {catalog_entries_i4(), catalog_entries_i5()})
        for (const auto& c : list)
            if (c.kind == EntryKind::RealReal) real_pairs.push_back(c);
    for (const auto& c : real_pairs) {
        ReportEntry e;
        e.group = "real-complex";
        e.name = c.name;
        e.kind = "real-real";
        e.threshold = tol;
        rep.entries.push_back(guarded(std::move(e), [&](ReportEntry& r) {
            const AntiAutomorphism alpha = build_involution(c.big.involution, c.big.ambient);
            const RealForm rf = build_real(c.big, alpha);
            const RealForm qf = build_real(c.small, alpha);
            // Coupling on the real standard form directly, so the envelope is an independent value.
            const RealGnsSpace gns = RealGnsSpace::build(rf);
            r.computed = coupling_constant(gns.real_algebra(qf), seed).value;
            r.expected = jones_index(envelope(rf), envelope(qf), seed).value;
            r.residual = std::abs(r.computed - r.expected);
            settle(r);
        }));
    }

    // Quasi-basis index against the GNS coupling on M_m (x) 1_c.
    for (std::size_t m = 1; m <= 3; ++m)
        for (std::size_t c = 1; c <= 3; ++c) {
            ReportEntry e;
            e.group = "kosaki-jones";
            e.name = "M" + std::to_string(m) + "(x)1_" + std::to_string(c) + " in M" + std::to_string(m * c);
            e.kind = "complex-complex";
            e.expected = static_cast<double>(c * c);
            e.threshold = tol;
            rep.entries.push_back(guarded(std::move(e), [&](ReportEntry& r) {
                const SubobjectRecipe big{"M", m * c, m * c, Involution::None};
                const SubobjectRecipe small{"N", m * c, m, Involution::None};
                const StarAlgebra mm = build_algebra(big);
                const StarAlgebra nn = build_algebra(small);
                r.computed = kosaki_index(trace_preserving_expectation(mm, nn), false).value;
                const double j = jones_index(mm, nn, seed).value;
                r.spread = std::abs(r.computed - j);
                r.residual = std::max(std::abs(r.computed - r.expected), r.spread);
                settle(r);
            }));
        }

    // Temperley-Lieb audit on M2 (x) 1_2 in M4.
    {
        const StarAlgebra m4 = StarAlgebra::full(4);
        const StarAlgebra n = build_algebra({"N", 4, 2, Involution::None});
        ReportEntry tl;
        tl.group = "temperley-lieb";
        tl.name = "e1 e2 e1 = tau e1";
        tl.kind = "tower";
        tl.threshold = std::min(kTemperleyLieb, tol);
        rep.entries.push_back(guarded(std::move(tl), [&](ReportEntry& r) {
            const TowerReport t = jones_tower(m4, n, 2);
            r.computed = t.tau;
            r.expected = 0.25;
            r.residual = std::max(t.tl_residual, std::abs(t.tau - 0.25));
            settle(r);
        }));
        ReportEntry tr;
        tr.group = "temperley-lieb";
        tr.name = "tr(e_N) [M:N] = 1";
        tr.kind = "tower";
        tr.expected = 1.0;
        tr.threshold = std::min(kTraceIndex, tol);
        rep.entries.push_back(guarded(std::move(tr), [&](ReportEntry& r) {
            const BasicConstruction bc = basic_construction(m4, n, false, seed);
            r.computed = bc.trace_e * kosaki_index(trace_preserving_expectation(m4, n), false).value;
            r.residual = std::abs(r.computed - 1.0);
            settle(r);
        }));
        ReportEntry cp;
        cp.group = "temperley-lieb";
        cp.name = "e_N x e_N = E(x) e_N";
        cp.kind = "tower";
        cp.threshold = std::min(kTemperleyLieb, tol);
        rep.entries.push_back(guarded(std::move(cp), [&](ReportEntry& r) {
            const BasicConstruction bc = basic_construction(m4, n, false, seed);
            r.computed = bc.compression_residual;
            r.residual = std::max(bc.compression_residual, bc.projection_residual);
            settle(r);
        }));
    }
    rep.wall_time_s = elapsed_since(t0);
    return classify_all(std::move(rep));
}

RunReport classify_all(RunReport report) {
    for (auto& e : report.entries) {
        if (e.group != "I4" && e.group != "I5" && e.group != "kosaki-jones") continue;
        if (!e.error.empty()) continue;
        try {
            e.classification = classify_index_value(e.computed, report.tol);
        } catch (const std::exception& ex) {
            e.error = ex.what();
            e.passed = false;
            continue;
        }
        if (std::holds_alternative<Forbidden>(*e.classification)) {
            e.passed = false;
            e.error = "index outside the Jones spectrum";
        }
    }
    return report;
}

std::string format_table(const RunReport& r) {
    std::size_t wg = 5, wn = 4, wk = 4;
    for (const auto& e : r.entries) {
        wg = std::max(wg, e.group.size());
        wn = std::max(wn, e.name.size());
        wk = std::max(wk, e.kind.size());
    }
    std::string out;
    char line[512];
    std::snprintf(line, sizeof line, "%-*s  %-*s  %-*s  %14s  %14s  %10s  %10s  %-6s  %s\n", int(wg), "group", int(wn), "name",
                  int(wk), "kind", "computed", "expected", "residual", "spread", "status", "class");
    out += line;
    for (const auto& e : r.entries) {
        const std::string cls = e.classification ? to_string(*e.classification) : "";
        std::snprintf(line, sizeof line, "%-*s  %-*s  %-*s  %14.9f  %14.9f  %10.2e  %10.2e  %-6s  %s\n", int(wg),
                      e.group.c_str(), int(wn), e.name.c_str(), int(wk), e.kind.c_str(), e.computed, e.expected, e.residual,
                      e.spread, e.passed ? "PASS" : "FAIL", cls.c_str());
        out += line;
        if (!e.error.empty()) out += "    error: " + e.error + "\n";
    }
    std::snprintf(line, sizeof line, "seed %llu  tol %.1e  %zu entries  %zu failed  %.2f s\n",
                  static_cast<unsigned long long>(r.seed), r.tol, r.entries.size(), r.failures(), r.wall_time_s);
    out += line;
    return out;
}

}  // namespace realidx
