// Command-line front end: one subcommand per library operation.
#include <cstdlib>
#include <iostream>
#include <limits>
#include <string>

#include "CLI11.hpp"
#include "realidx/catalog.hpp"
#include "realidx/expectation.hpp"
#include "realidx/io.hpp"

using namespace realidx;
using realidx::io::json;

namespace {

struct Common {
    std::uint64_t seed = kDefaultSeed;
    std::string format = "table";
};

double default_tol() {
    const char* env = std::getenv("REALIDX_TOL");
    if (!env || !*env) return tol::kIndex;
    char* end = nullptr;
    const double t = std::strtod(env, &end);
    if (*end != '\0' || !(t > 0.0)) throw Error(ErrorKind::InvalidInput, std::string("REALIDX_TOL is not a positive number: ") + env);
    return t;
}

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--seed", c.seed, "seed for the sampled vectors and elements");
    cmd->add_option("--format", c.format, "table or json")->check(CLI::IsMember({"table", "json"}));
}

// Table mode prints one "key: value" line per top-level field.
void emit(const json& j, const Common& c) {
    if (c.format == "json") {
        std::cout << j.dump(2) << "\n";
        return;
    }
    for (const auto& [k, v] : j.items()) {
        if (v.is_object() && v.contains("re")) continue;  // matrices only in json mode
        std::cout << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
}

int emit_run(const RunReport& r, const Common& c) {
    if (c.format == "json") {
        std::cout << io::to_json(r).dump(2) << "\n";
    } else {
        std::cout << format_table(r);
    }
    return r.passed() ? 0 : 1;
}

double parse_value(const std::string& s) {
    if (s == "inf" || s == "+inf" || s == "infinity") return std::numeric_limits<double>::infinity();
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw Error(ErrorKind::InvalidInput, "not a number: " + s);
    }
    if (pos != s.size()) throw Error(ErrorKind::InvalidInput, "not a number: " + s);
    return v;
}

AntiAutomorphism alpha_for(const std::string& arg, const io::AlgebraSpec& m) {
    if (!arg.empty()) return io::parse_alpha(arg, m.algebra.hilbert_dim());
    if (!m.alpha) throw Error(ErrorKind::InvalidInput, "no antiautomorphism: pass --alpha or add one to the algebra file");
    return *m.alpha;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Indices of real and complex finite-dimensional subfactors"};
    app.require_subcommand(1);
    int status = 0;

    double tol = tol::kIndex;
    try {
        tol = default_tol();
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }

    Common common;
    std::string input, m_path, n_path, r_path, q_path, weight_path, alpha_arg, value_arg, which;
    std::size_t samples = 0, depth = 1;
    bool check_axioms = false, real = false, scalarity = false;

    auto* coupling = app.add_subcommand("coupling", "coupling constant dim_F(H) of a factor");
    coupling->add_option("--input", input, "algebra spec")->required();
    add_common(coupling, common);
    coupling->callback([&] {
        const auto a = io::load_algebra(input);
        emit(io::to_json(coupling_constant(a.algebra, common.seed)), common);
    });

    auto* index = app.add_subcommand("index", "Jones index [M:N]");
    index->add_option("--m", m_path)->required();
    index->add_option("--n", n_path)->required();
    add_common(index, common);
    index->callback([&] {
        const auto m = io::load_algebra(m_path), n = io::load_algebra(n_path);
        emit(io::to_json(jones_index(m.algebra, n.algebra, common.seed)), common);
    });

    auto* real_idx = app.add_subcommand("real-index", "real index [R:Q]");
    real_idx->add_option("--r", r_path, "ambient algebra with its antiautomorphism")->required();
    real_idx->add_option("--q", q_path, "subalgebra; cut down by the same antiautomorphism")->required();
    add_common(real_idx, common);
    real_idx->callback([&] {
        const auto r = io::load_algebra(r_path), q = io::load_algebra(q_path);
        const AntiAutomorphism alpha = alpha_for("", r);
        if (q.alpha && (q.alpha->u() - alpha.u()).max_abs() > tol::kStructural) {
            throw Error(ErrorKind::InvalidInput, "R and Q carry different antiautomorphisms");
        }
        emit(io::to_json(real_index(real_form(r.algebra, alpha), real_form(q.algebra, alpha), common.seed)), common);
    });

    auto* halving = app.add_subcommand("verify-halving", "real and complex module dimensions of H");
    halving->add_option("--input", input, "algebra with antiautomorphism")->required();
    halving->add_option("--tol", tol);
    add_common(halving, common);
    halving->callback([&] {
        const auto m = io::load_algebra(input);
        const auto rep = verify_halving(m.algebra, alpha_for("", m), tol, common.seed);
        emit(io::to_json(rep), common);
        status = rep.passed ? 0 : 1;
    });

    auto* expectation = app.add_subcommand("expectation", "trace-preserving conditional expectation M -> N");
    expectation->add_option("--m", m_path)->required();
    expectation->add_option("--n", n_path)->required();
    expectation->add_flag("--check-axioms", check_axioms);
    expectation->add_option("--samples", samples, "axiom samples (default 200)");
    add_common(expectation, common);
    expectation->callback([&] {
        const auto m = io::load_algebra(m_path), n = io::load_algebra(n_path);
        const auto e = trace_preserving_expectation(m.algebra, n.algebra);
        json j{{"domain_dim", m.algebra.dim()}, {"range_dim", n.algebra.dim()}, {"map", io::matrix_to_json(e.map())}};
        if (check_axioms) {
            const auto rep = check_expectation_axioms(e, samples ? samples : 200, common.seed);
            j["axioms"] = io::to_json(rep);
            status = rep.passed ? 0 : 1;
        }
        emit(j, common);
    });

    auto* kosaki = app.add_subcommand("kosaki-index", "index of the trace-preserving expectation via a quasi-basis");
    kosaki->add_option("--m", m_path)->required();
    kosaki->add_option("--n", n_path)->required();
    kosaki->add_flag("--real", real, "use the real forms of M and N");
    kosaki->add_option("--alpha", alpha_arg, "transpose, symplectic, or a JSON file");
    kosaki->add_flag("--scalarity", scalarity, "also report conjugation invariance of sum u_i u_i*");
    add_common(kosaki, common);
    kosaki->callback([&] {
        const auto m = io::load_algebra(m_path), n = io::load_algebra(n_path);
        const auto e = trace_preserving_expectation(m.algebra, n.algebra);
        json j = real ? io::to_json(real_kosaki_index(e, alpha_for(alpha_arg, m))) : io::to_json(kosaki_index(e));
        if (scalarity) j["scalarity"] = io::to_json(scalarity_check(e, 20, common.seed));
        emit(j, common);
    });

    auto* symmetrize = app.add_subcommand("symmetrize", "average a weight over the antiautomorphism and audit it");
    symmetrize->add_option("--weight", weight_path)->required();
    symmetrize->add_option("--alpha", alpha_arg, "transpose, symplectic, or a JSON file");
    symmetrize->add_option("--samples", samples, "audit samples (default 100)");
    add_common(symmetrize, common);
    symmetrize->callback([&] {
        const std::filesystem::path wp(weight_path);
        const auto w = io::weight_from_json(io::read_json(wp), wp.parent_path());
        io::AlgebraSpec m{w.t1.domain(), w.alpha};
        const AntiAutomorphism alpha = alpha_for(alpha_arg, m);
        const auto rep = audit_symmetrized_weight(w.t1, alpha, samples ? samples : 100, common.seed);
        json j = io::to_json(rep);
        j["map"] = io::matrix_to_json(symmetrize_weight(w.t1, alpha).map());
        emit(j, common);
        status = rep.passed ? 0 : 1;
    });

    auto* classify = app.add_subcommand("classify", "place a value relative to the Jones spectrum");
    classify->add_option("--value", value_arg, "index value, or inf")->required();
    classify->add_option("--tol", tol);
    add_common(classify, common);
    classify->callback([&] {
        const double v = parse_value(value_arg);
        emit(json{{"value", value_arg}, {"classification", to_string(classify_index_value(v, tol))},
                  {"q_max", jones_q_max(tol)}},
             common);
    });

    auto* basic = app.add_subcommand("basic-construction", "Jones projection and <M, e_N>");
    basic->add_option("--m", m_path)->required();
    basic->add_option("--n", n_path)->required();
    basic->add_option("--tower-depth", depth, "number of Jones projections (L^2 dimension capped at 256)");
    add_common(basic, common);
    basic->callback([&] {
        const auto m = io::load_algebra(m_path), n = io::load_algebra(n_path);
        const auto bc = basic_construction(m.algebra, n.algebra, true, common.seed);
        json j{{"hilbert_dim", bc.jones_projection.dim()}, {"tower_algebra_dim", bc.tower_algebra.dim()},
               {"trace_e", bc.trace_e}, {"compression_residual", bc.compression_residual},
               {"projection_residual", bc.projection_residual}};
        if (depth > 1) j["tower"] = io::to_json(jones_tower(m.algebra, n.algebra, depth));
        if (common.format == "json") j["jones_projection"] = io::matrix_to_json(bc.jones_projection);
        emit(j, common);
    });

    auto* catalog = app.add_subcommand("catalog", "index tables of M4(C) and M5(C)");
    catalog->add_option("which", which, "i4 or i5")->required()->check(CLI::IsMember({"i4", "i5"}));
    catalog->add_option("--tol", tol);
    add_common(catalog, common);
    catalog->callback([&] { status = emit_run(which == "i4" ? catalog_i4(common.seed, tol) : catalog_i5(common.seed, tol), common); });

    auto* suite = app.add_subcommand("suite", "catalogs plus halving, Kosaki-Jones and Temperley-Lieb checks");
    suite->add_option("--tol", tol);
    add_common(suite, common);
    suite->callback([&] { status = emit_run(run_suite(common.seed, tol), common); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return status;
}
