#include "realidx/io.hpp"

#include <cmath>
#include <fstream>

namespace realidx::io {

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorKind::InvalidInput, what); }

std::vector<std::vector<double>> rows_of(const json& j, const char* key) {
    if (!j.is_array()) invalid(std::string("\"") + key + "\" must be an array of rows");
    std::vector<std::vector<double>> rows;
    for (const auto& row : j) {
        if (!row.is_array()) invalid(std::string("\"") + key + "\" rows must be arrays");
        std::vector<double> r;
        for (const auto& v : row) {
            if (!v.is_number()) invalid(std::string("\"") + key + "\" entries must be numbers");
            r.push_back(v.get<double>());
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

// Non-finite values are written as strings so the document stays valid JSON.
json number(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return "nan";
    return v > 0 ? "inf" : "-inf";
}

json algebra_or_path(const json& j, const std::filesystem::path& base) {
    if (j.is_string()) return read_json(base / j.get<std::string>());
    return j;
}

}  // namespace

ComplexMatrix matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("re")) invalid("matrix literal needs an \"re\" field");
    const auto re = rows_of(j.at("re"), "re");
    const std::size_t n = re.size();
    for (const auto& r : re)
        if (r.size() != n) invalid("matrix literal must be square");
    std::vector<std::vector<double>> im(n, std::vector<double>(n, 0.0));
    if (j.contains("im")) {
        im = rows_of(j.at("im"), "im");
        if (im.size() != n) invalid("\"im\" has the wrong shape");
        for (const auto& r : im)
            if (r.size() != n) invalid("\"im\" has the wrong shape");
    }
    ComplexMatrix x(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) x(i, k) = cplx{re[i][k], im[i][k]};
    return x;
}

json matrix_to_json(const ComplexMatrix& x) {
    json re = json::array(), im = json::array();
    for (std::size_t i = 0; i < x.rows(); ++i) {
        json rr = json::array(), ir = json::array();
        for (std::size_t k = 0; k < x.cols(); ++k) {
            rr.push_back(x(i, k).real());
            ir.push_back(x(i, k).imag());
        }
        re.push_back(std::move(rr));
        im.push_back(std::move(ir));
    }
    return json{{"re", std::move(re)}, {"im", std::move(im)}};
}

AntiAutomorphism antiautomorphism_from_json(const json& j, std::size_t n) {
    if (!j.is_object()) invalid("antiautomorphism must be an object");
    if (j.contains("u")) {
        ComplexMatrix u = matrix_from_json(j.at("u"));
        if (u.dim() != n) invalid("antiautomorphism size differs from hilbert_dim");
        return AntiAutomorphism::from_unitary(std::move(u));
    }
    if (!j.contains("kind") || !j.at("kind").is_string()) invalid("antiautomorphism needs \"u\" or \"kind\"");
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "transpose") return AntiAutomorphism::transpose(n);
    if (kind == "symplectic") return AntiAutomorphism::symplectic(n);
    invalid("unknown antiautomorphism kind \"" + kind + "\"");
}

AlgebraSpec algebra_from_json(const json& j) {
    if (!j.is_object()) invalid("algebra spec must be an object");
    if (!j.contains("hilbert_dim") || !j.at("hilbert_dim").is_number_unsigned()) invalid("\"hilbert_dim\" must be a positive integer");
    const auto n = j.at("hilbert_dim").get<std::size_t>();
    if (n == 0) invalid("\"hilbert_dim\" must be positive");
    std::vector<ComplexMatrix> gens;
    if (j.contains("generators")) {
        if (!j.at("generators").is_array()) invalid("\"generators\" must be an array");
        for (const auto& g : j.at("generators")) {
            gens.push_back(matrix_from_json(g));
            if (gens.back().dim() != n) invalid("generator size differs from hilbert_dim");
        }
    }
    const std::string name = j.value("name", std::string{});
    AlgebraSpec spec{generate_algebra(n, gens, name), std::nullopt};
    if (j.contains("antiautomorphism")) spec.alpha = antiautomorphism_from_json(j.at("antiautomorphism"), n);
    return spec;
}

json algebra_to_json(const StarAlgebra& a, const std::optional<AntiAutomorphism>& alpha) {
    json gens = json::array();
    const auto& src = a.generators().empty() ? a.basis() : a.generators();
    for (const auto& g : src) gens.push_back(matrix_to_json(g));
    json j{{"hilbert_dim", a.hilbert_dim()}, {"generators", std::move(gens)}};
    if (!a.name().empty()) j["name"] = a.name();
    if (alpha) j["antiautomorphism"] = json{{"u", matrix_to_json(alpha->u())}};
    return j;
}

json read_json(const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) invalid("cannot open " + p.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        invalid(p.string() + ": " + e.what());
    }
}

AlgebraSpec load_algebra(const std::filesystem::path& p) { return algebra_from_json(read_json(p)); }

AntiAutomorphism parse_alpha(const std::string& arg, std::size_t n) {
    if (arg == "transpose") return AntiAutomorphism::transpose(n);
    if (arg == "symplectic") return AntiAutomorphism::symplectic(n);
    const json j = read_json(arg);
    if (j.contains("antiautomorphism")) return antiautomorphism_from_json(j.at("antiautomorphism"), n);
    return antiautomorphism_from_json(j, n);
}

WeightSpec weight_from_json(const json& j, const std::filesystem::path& base) {
    if (!j.is_object() || !j.contains("m") || !j.contains("n")) invalid("weight file needs \"m\" and \"n\"");
    const AlgebraSpec m = algebra_from_json(algebra_or_path(j.at("m"), base));
    const AlgebraSpec n = algebra_from_json(algebra_or_path(j.at("n"), base));
    WeightSpec w{OperatorWeight{}, m.alpha};
    if (j.contains("conjugator")) {
        w.t1 = weight_from_conjugator(m.algebra, n.algebra, matrix_from_json(j.at("conjugator")));
    } else if (j.contains("map")) {
        w.t1 = OperatorWeight(CoordinateMap(m.algebra, n.algebra, matrix_from_json(j.at("map"))));
    } else {
        w.t1 = random_weight(m.algebra, n.algebra, j.value("seed", kDefaultSeed));
    }
    return w;
}

json to_json(const CouplingResult& c) {
    return json{{"value", number(c.value)}, {"samples", c.samples}, {"spread", number(c.spread)},
                {"xi_independent", c.xi_independent()}};
}

json to_json(const IndexValue& v) { return json{{"value", number(v.value)}, {"classification", to_string(v.classification)}}; }

json to_json(const HalvingReport& h) {
    return json{{"complex_dim", number(h.complex_dim)},
                {"complex_dim_original", number(h.complex_dim_original)},
                {"real_points_dim", number(h.real_points_dim)},
                {"real_space_dim", number(h.real_space_dim)},
                {"doubled", h.doubled},
                {"max_residual", number(h.max_residual)},
                {"passed", h.passed}};
}

json to_json(const AxiomReport& a) {
    return json{{"unit_residual", number(a.unit_residual)},
                {"multiplicative_residual", number(a.multiplicative_residual)},
                {"min_schwarz_eigenvalue", number(a.min_schwarz_eigenvalue)},
                {"range_residual", number(a.range_residual)},
                {"bimodule_residual", number(a.bimodule_residual)},
                {"idempotent_residual", number(a.idempotent_residual)},
                {"samples", a.samples},
                {"tol", a.tol},
                {"passed", a.passed}};
}

json to_json(const WeightReport& w) {
    return json{{"min_positivity_eigenvalue", number(w.min_positivity_eigenvalue)},
                {"faithfulness_min_eigenvalue", number(w.faithfulness_min_eigenvalue)},
                {"kernel_dim", w.kernel_dim},
                {"bimodule_residual", number(w.bimodule_residual)},
                {"alpha_covariance_residual", number(w.alpha_covariance_residual)},
                {"idempotence_residual", number(w.idempotence_residual)},
                {"positive_part_residual", number(w.positive_part_residual)},
                {"real_range_residual", number(w.real_range_residual)},
                {"passed", w.passed}};
}

json to_json(const ScalarityReport& s) {
    return json{{"value", number(s.value)},
                {"invariance_residual", number(s.invariance_residual)},
                {"scalar_residual", number(s.scalar_residual)},
                {"block_values", s.block_values},
                {"passed", s.passed}};
}

json to_json(const TowerReport& t) {
    return json{{"tau", number(t.tau)},         {"depth", t.depth},
                {"hilbert_dims", t.hilbert_dims}, {"algebra_dims", t.algebra_dims},
                {"traces", t.traces},           {"tl_residual", number(t.tl_residual)},
                {"commuting_residual", number(t.commuting_residual)}, {"truncated", t.truncated}};
}

json to_json(const ReportEntry& e) {
    json j{{"group", e.group},
           {"name", e.name},
           {"kind", e.kind},
           {"computed", number(e.computed)},
           {"expected", number(e.expected)},
           {"spread", number(e.spread)},
           {"residual", number(e.residual)},
           {"threshold", number(e.threshold)},
           {"passed", e.passed}};
    if (e.classification) j["classification"] = to_string(*e.classification);
    if (!e.error.empty()) j["error"] = e.error;
    return j;
}

json to_json(const RunReport& r) {
    json entries = json::array();
    for (const auto& e : r.entries) entries.push_back(to_json(e));
    return json{{"seed", r.seed},
                {"tolerances", {{"index", r.tol}}},
                {"wall_time_s", r.wall_time_s},
                {"passed", r.passed()},
                {"failures", r.failures()},
                {"entries", std::move(entries)}};
}

}  // namespace realidx::io
