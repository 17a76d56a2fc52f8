#include "realidx/expectation.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "realidx/gns.hpp"

namespace realidx {

namespace {

constexpr double kGramDrop = 1e-9;
constexpr double kScalar = 1e-7;
constexpr std::uint64_t kPositivitySeed = 0x5eed;

ComplexMatrix hermitian_part(const ComplexMatrix& x) {
    ComplexMatrix h = x + x.adjoint();
    h *= cplx{0.5};
    return h;
}

double normalized_trace_of(const ComplexMatrix& x) { return x.trace().real() / static_cast<double>(x.dim()); }

ComplexMatrix map_matrix(const StarAlgebra& domain, const std::function<ComplexMatrix(const ComplexMatrix&)>& f) {
    const std::size_t d = domain.dim();
    ComplexMatrix map(d);
    for (std::size_t j = 0; j < d; ++j) {
        const auto c = domain.coordinates(f(domain.basis()[j]));
        for (std::size_t k = 0; k < d; ++k) map(k, j) = c[k];
    }
    return map;
}

void require_preserved(const AntiAutomorphism& alpha, const StarAlgebra& m, const StarAlgebra& n) {
    if (alpha.dim() != m.hilbert_dim()) throw Error(ErrorKind::DimensionMismatch, "alpha acts on another space");
    if (!alpha.preserves(m)) throw Error(ErrorKind::AlphaNotPreserved, "alpha(M) is not contained in M");
    if (!alpha.preserves(n)) throw Error(ErrorKind::AlphaNotPreserved, "alpha(N) is not contained in N");
}

ComplexMatrix conjugate_map(const ComplexMatrix& a, const ComplexMatrix& t) { return a * t * a; }

// Positive element r* r for a random r in the real form.
ComplexMatrix random_real_positive(const RealForm& r, std::mt19937_64& rng) {
    const ComplexMatrix x = random_element(r, rng);
    return x.adjoint() * x;
}

}  // namespace

CoordinateMap::CoordinateMap(StarAlgebra domain, StarAlgebra range, ComplexMatrix map)
    : domain_(std::move(domain)), range_(std::move(range)), map_(std::move(map)) {
    if (domain_.hilbert_dim() != range_.hilbert_dim()) throw Error(ErrorKind::DimensionMismatch, "M and N act on different spaces");
    if (map_.rows() != domain_.dim() || map_.cols() != domain_.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "map must be square on the coordinates of M");
    }
}

CoordinateMap CoordinateMap::from_function(StarAlgebra domain, StarAlgebra range,
                                           const std::function<ComplexMatrix(const ComplexMatrix&)>& f) {
    ComplexMatrix map = map_matrix(domain, f);
    return CoordinateMap(std::move(domain), std::move(range), std::move(map));
}

ComplexMatrix CoordinateMap::operator()(const ComplexMatrix& x) const {
    return domain_.element(map_ * domain_.coordinates(x));
}

ConditionalExpectation trace_preserving_expectation(const StarAlgebra& m, const StarAlgebra& n) {
    if (!subalgebra_check(n, m)) throw Error(ErrorKind::NotASubalgebra, "N is not a unital subalgebra of M");
    const std::size_t d = m.dim();
    ComplexMatrix p(d);
    for (const auto& b : n.basis()) {
        const auto c = m.coordinates(b);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) p(i, j) += c[i] * std::conj(c[j]);
    }
    return ConditionalExpectation(m, n, std::move(p));
}

AxiomReport check_expectation_axioms(const CoordinateMap& e, std::size_t samples, std::uint64_t seed, double tol) {
    const StarAlgebra& m = e.domain();
    const StarAlgebra& n = e.range();
    const std::size_t h = m.hilbert_dim();
    std::mt19937_64 rng(seed);

    AxiomReport rep;
    rep.samples = samples;
    rep.tol = tol;
    const ComplexMatrix one = ComplexMatrix::identity(h);
    rep.unit_residual = (e(one) - one).max_abs();
    rep.min_schwarz_eigenvalue = samples == 0 ? 0.0 : HUGE_VAL;

    for (std::size_t s = 0; s < samples; ++s) {
        const ComplexMatrix x = random_element(m, rng);
        const ComplexMatrix y = random_element(m, rng);
        const ComplexMatrix a = random_element(n, rng);
        const ComplexMatrix b = random_element(n, rng);
        const ComplexMatrix ex = e(x);
        const ComplexMatrix ey = e(y);
        const ComplexMatrix both = ex * ey;

        rep.multiplicative_residual = std::max({rep.multiplicative_residual, (e(ex * y) - both).max_abs(),
                                                (e(x * ey) - both).max_abs()});
        const ComplexMatrix gap = hermitian_part(e(x.adjoint() * x) - ex.adjoint() * ex);
        rep.min_schwarz_eigenvalue = std::min(rep.min_schwarz_eigenvalue, min_eigenvalue(gap));
        rep.range_residual = std::max({rep.range_residual, n.residual(ex), (e(a) - a).max_abs()});
        rep.bimodule_residual = std::max(rep.bimodule_residual, (e(a * x * b) - a * ex * b).max_abs());
        rep.idempotent_residual = std::max(rep.idempotent_residual, (e(ex) - ex).max_abs());
    }
    rep.passed = rep.unit_residual < tol && rep.multiplicative_residual < tol && rep.min_schwarz_eigenvalue > -tol &&
                 rep.range_residual < tol && rep.bimodule_residual < tol && rep.idempotent_residual < tol;
    return rep;
}

OperatorWeight weight_from_conjugator(const StarAlgebra& m, const StarAlgebra& n, const ComplexMatrix& a) {
    if (a.dim() != m.hilbert_dim()) throw Error(ErrorKind::DimensionMismatch, "conjugator size");
    if (!m.contains(a)) throw Error(ErrorKind::InvalidInput, "conjugator is not in M");
    for (const auto& g : n.constraint_set()) {
        if (commutator(a, g).max_abs() > tol::kStructural * std::max(1.0, a.max_abs())) {
            throw Error(ErrorKind::InvalidInput, "conjugator does not commute with N");
        }
    }
    if (min_eigenvalue(hermitian_part(a.adjoint() * a)) < 1e-12) throw Error(ErrorKind::InvalidInput, "conjugator is singular");
    const ConditionalExpectation e0 = trace_preserving_expectation(m, n);
    const ComplexMatrix as = a.adjoint();
    OperatorWeight w(CoordinateMap::from_function(m, n, [&](const ComplexMatrix& x) { return e0(a * x * as); }));
    w.faithful = true;
    return w;
}

OperatorWeight random_weight(const StarAlgebra& m, const StarAlgebra& n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const StarAlgebra rc = relative_commutant(n, m);
    // a = exp(h) u: positive invertible times unitary, both in N' cap M.
    ComplexMatrix h = random_hermitian(rc, rng);
    const double scale = std::max(1.0, h.max_abs() * static_cast<double>(h.dim()));
    h *= cplx{1.0 / scale};
    const ComplexMatrix p = apply_function(h, [](double t) { return std::exp(t); });
    const ComplexMatrix u = random_unitary(rc, rng);
    return weight_from_conjugator(m, n, p * u);
}

OperatorWeight symmetrize_weight(const OperatorWeight& t1, const AntiAutomorphism& alpha) {
    const StarAlgebra& m = t1.domain();
    require_preserved(alpha, m, t1.range());

    std::mt19937_64 rng(kPositivitySeed);
    for (int s = 0; s < 20; ++s) {
        const ComplexMatrix x = random_element(m, rng);
        const ComplexMatrix tx = hermitian_part(t1(x.adjoint() * x));
        if (min_eigenvalue(tx) < -tol::kStructural * std::max(1.0, tx.max_abs())) {
            throw Error(ErrorKind::NotPositive, "T1 maps a positive element outside the positive cone");
        }
    }
    const ComplexMatrix a = alpha.coordinate_matrix(m);
    ComplexMatrix map = t1.map() + conjugate_map(a, t1.map());
    map *= cplx{0.5};
    OperatorWeight t(CoordinateMap(m, t1.range(), std::move(map)));
    t.faithful = t1.faithful;
    t.normal = t1.normal;
    t.semifinite = t1.semifinite;
    return t;
}

WeightReport audit_symmetrized_weight(const OperatorWeight& t1, const AntiAutomorphism& alpha, std::size_t samples,
                                      std::uint64_t seed, double tol) {
    const OperatorWeight t = symmetrize_weight(t1, alpha);
    const StarAlgebra& m = t.domain();
    const RealForm r = real_form(m, alpha);
    const RealForm q = real_form(t.range(), alpha);
    const ComplexMatrix a = alpha.coordinate_matrix(m);
    std::mt19937_64 rng(seed);

    WeightReport rep;
    rep.min_positivity_eigenvalue = HUGE_VAL;
    for (std::size_t s = 0; s < samples; ++s) {
        const ComplexMatrix x = random_element(m, rng);
        rep.min_positivity_eigenvalue =
            std::min(rep.min_positivity_eigenvalue, min_eigenvalue(hermitian_part(t(x.adjoint() * x))));

        const ComplexMatrix y = random_element(q, rng);
        rep.bimodule_residual = std::max(rep.bimodule_residual, (t(y * x * y.adjoint()) - y * t(x) * y.adjoint()).max_abs());
        rep.alpha_covariance_residual = std::max(rep.alpha_covariance_residual, (alpha(t(x)) - t(alpha(x))).max_abs());

        const ComplexMatrix p = random_real_positive(r, rng);
        const ComplexMatrix t1p = t1(p);
        ComplexMatrix outer_only = t1p + alpha(t1p);
        outer_only *= cplx{0.5};
        const ComplexMatrix tp = t(p);
        rep.positive_part_residual = std::max(rep.positive_part_residual, (tp - outer_only).max_abs());
        rep.real_range_residual = std::max(rep.real_range_residual, std::max((alpha(tp) - tp.adjoint()).max_abs(),
                                                                             t.range().residual(tp)));
    }
    rep.alpha_covariance_residual = std::max(rep.alpha_covariance_residual, (conjugate_map(a, t.map()) - t.map()).max_abs());
    rep.idempotence_residual = (symmetrize_weight(t, alpha).map() - t.map()).max_abs();

    // Gram form G_ij = tr(T(b_i* b_j)); T is faithful iff G is positive definite.
    const std::size_t d = m.dim();
    ComplexMatrix g(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            g(i, j) = t(m.basis()[i].adjoint() * m.basis()[j]).trace() / static_cast<double>(m.hilbert_dim());
    const auto eig = hermitian_eig(hermitian_part(g));
    rep.faithfulness_min_eigenvalue = eig.values.front();
    rep.kernel_dim = static_cast<std::size_t>(
        std::count_if(eig.values.begin(), eig.values.end(), [](double v) { return v < kGramDrop; }));

    rep.passed = rep.min_positivity_eigenvalue > -tol && rep.kernel_dim == 0 && rep.bimodule_residual < tol &&
                 rep.alpha_covariance_residual < tol && rep.idempotence_residual < tol &&
                 rep.positive_part_residual < tol && rep.real_range_residual < tol;
    return rep;
}

QuasiBasis quasi_basis(const CoordinateMap& e, const RealForm* over) {
    const StarAlgebra& m = e.domain();
    const std::vector<ComplexMatrix>& candidates = over ? over->real_basis() : m.basis();
    QuasiBasis qb;
    auto& us = qb.elements;
    for (const auto& c : candidates) {
        ComplexMatrix r = c;
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& u : us) r -= u * e(u.adjoint() * r);
        const auto eig = hermitian_eig(hermitian_part(e(r.adjoint() * r)));
        if (eig.values.back() < kGramDrop) continue;
        if (eig.values.front() < -kGramDrop) throw Error(ErrorKind::QuasiBasisFailure, "E(x*x) is not positive");
        const std::size_t n = r.dim();
        ComplexMatrix inv_sqrt(n);
        for (std::size_t k = 0; k < n; ++k) {
            if (eig.values[k] < kGramDrop) continue;
            const double s = 1.0 / std::sqrt(eig.values[k]);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    inv_sqrt(i, j) += s * eig.vectors(i, k) * std::conj(eig.vectors(j, k));
        }
        us.push_back(r * inv_sqrt);
    }

    qb.index_element = ComplexMatrix(m.hilbert_dim());
    for (const auto& u : us) qb.index_element += u * u.adjoint();

    // x = sum u_i E(u_i* x) on the candidates themselves and a few random combinations.
    std::mt19937_64 rng(kPositivitySeed);
    std::vector<ComplexMatrix> probes = candidates;
    for (int s = 0; s < 3; ++s) probes.push_back(over ? random_element(*over, rng) : random_element(m, rng));
    for (const auto& x : probes) {
        ComplexMatrix rec(m.hilbert_dim());
        for (const auto& u : us) rec += u * e(u.adjoint() * x);
        qb.reconstruction_residual = std::max(qb.reconstruction_residual, (rec - x).max_abs() / std::max(1.0, x.max_abs()));
    }
    if (qb.reconstruction_residual > tol::kStructural) {
        throw Error(ErrorKind::QuasiBasisFailure,
                    "quasi-basis does not reconstruct M (residual " + std::to_string(qb.reconstruction_residual) + ")");
    }
    return qb;
}

namespace {

double scalar_value(const ComplexMatrix& s) {
    const double v = normalized_trace_of(s);
    const double off = (s - v * ComplexMatrix::identity(s.dim())).max_abs();
    if (off > kScalar * std::max(1.0, std::abs(v))) {
        throw Error(ErrorKind::NonScalarIndex, "sum u_i u_i* is not scalar (off-scalar residual " + std::to_string(off) + ")");
    }
    return v;
}

}  // namespace

IndexValue kosaki_index(const ConditionalExpectation& e, bool cross_check) {
    const double v = scalar_value(quasi_basis(e).index_element);
    if (cross_check && is_factor(e.range()) && is_factor(e.domain())) {
        const ConditionalExpectation e0 = trace_preserving_expectation(e.domain(), e.range());
        if ((e0.map() - e.map()).max_abs() < tol::kStructural) {
            const double j = jones_index(e.domain(), e.range()).value;
            if (std::abs(v - j) > tol::kIndex * std::max(1.0, j)) {
                throw Error(ErrorKind::InconsistentIndex,
                            "quasi-basis index " + std::to_string(v) + " differs from the coupling index " + std::to_string(j));
            }
        }
    }
    return IndexValue::of(v);
}

IndexValue real_kosaki_index(const ConditionalExpectation& e, const AntiAutomorphism& alpha) {
    require_preserved(alpha, e.domain(), e.range());
    const ComplexMatrix a = alpha.coordinate_matrix(e.domain());
    if ((conjugate_map(a, e.map()) - e.map()).max_abs() > tol::kStructural * std::max(1.0, e.map().max_abs())) {
        throw Error(ErrorKind::NotAlphaCovariant, "alpha E alpha differs from E");
    }
    const RealForm r = real_form(e.domain(), alpha);
    const QuasiBasis qb = quasi_basis(e, &r);
    for (const auto& u : qb.elements) {
        if (!r.contains(u)) throw Error(ErrorKind::QuasiBasisFailure, "quasi-basis left the real form");
    }
    const double v = scalar_value(qb.index_element);
    const double complex_value = kosaki_index(e, false).value;
    if (std::abs(v - complex_value) > tol::kIndex * std::max(1.0, complex_value)) {
        throw Error(ErrorKind::InconsistentIndex, "real quasi-basis index " + std::to_string(v) +
                                                      " differs from the complex one " + std::to_string(complex_value));
    }
    return IndexValue::of(v);
}

ScalarityReport scalarity_check(const ConditionalExpectation& e, std::size_t samples, std::uint64_t seed) {
    const ComplexMatrix s = quasi_basis(e).index_element;
    ScalarityReport rep;
    rep.value = normalized_trace_of(s);
    rep.scalar_residual = (s - rep.value * ComplexMatrix::identity(s.dim())).max_abs();
    std::mt19937_64 rng(seed);
    for (std::size_t k = 0; k < samples; ++k) {
        const ComplexMatrix u = random_unitary(e.domain(), rng);
        rep.invariance_residual = std::max(rep.invariance_residual, (u * s * u.adjoint() - s).max_abs());
    }
    for (double v : hermitian_eig(hermitian_part(s)).values) {
        if (rep.block_values.empty() || v - rep.block_values.back() > kScalar * std::max(1.0, std::abs(v))) {
            rep.block_values.push_back(v);
        }
    }
    rep.passed = rep.invariance_residual < kScalar && rep.scalar_residual < kScalar * std::max(1.0, std::abs(rep.value));
    return rep;
}

BasicConstruction basic_construction(const StarAlgebra& m, const StarAlgebra& n, bool generate_tower_algebra,
                                     std::uint64_t seed) {
    const ConditionalExpectation e = trace_preserving_expectation(m, n);
    const GnsSpace gns = GnsSpace::build(m);
    BasicConstruction bc;
    // L^2(M) coordinates are M's coordinates, so e_N is the matrix of E itself.
    bc.jones_projection = hermitian_part(e.map());
    bc.trace_e = normalized_trace_of(bc.jones_projection);
    bc.m_action = gns.left_algebra(m);
    if (generate_tower_algebra) {
        std::vector<ComplexMatrix> letters = bc.m_action.generators();
        if (letters.empty()) letters = bc.m_action.basis();
        letters.push_back(bc.jones_projection);
        bc.tower_algebra = generate_algebra(gns.dim(), letters, m.name().empty() ? std::string{} : "<" + m.name() + ", e>");
    }

    std::mt19937_64 rng(seed);
    const ComplexMatrix& p = bc.jones_projection;
    for (int s = 0; s < 10; ++s) {
        const ComplexMatrix x = random_element(m, rng);
        const ComplexMatrix ex = e(x);
        bc.compression_residual =
            std::max(bc.compression_residual, (p * gns.left_action(x) * p - gns.left_action(ex) * p).max_abs());
        const auto px = p * gns.vector_of(x);
        const auto hx = gns.vector_of(ex);
        for (std::size_t i = 0; i < px.size(); ++i) bc.projection_residual = std::max(bc.projection_residual, std::abs(px[i] - hx[i]));
    }
    return bc;
}

TowerReport jones_tower(const StarAlgebra& m, const StarAlgebra& n, std::size_t depth, std::size_t max_dim) {
    TowerReport rep;
    StarAlgebra big = m;
    StarAlgebra small = n;
    std::vector<ComplexMatrix> es;
    for (std::size_t k = 0; k < depth; ++k) {
        if (big.dim() > max_dim) {
            rep.truncated = true;
            break;
        }
        const bool last = k + 1 == depth;
        const ConditionalExpectation e = trace_preserving_expectation(big, small);
        const GnsSpace gns = GnsSpace::build(big);
        for (auto& prev : es) prev = gns.left_action(prev);
        const ComplexMatrix p = hermitian_part(e.map());
        es.push_back(p);
        rep.hilbert_dims.push_back(gns.dim());
        rep.traces.push_back(normalized_trace_of(p));
        if (!last) {
            // dim M_{k+1} = dim M_k * [M_k : M_{k-1}] is the next L^2 dimension.
            const double next = static_cast<double>(gns.dim()) / rep.traces.back();
            if (next > static_cast<double>(max_dim) + 0.5) {
                rep.truncated = true;
                break;
            }
            StarAlgebra action = gns.left_algebra(big);
            std::vector<ComplexMatrix> letters = action.generators();
            if (letters.empty()) letters = action.basis();
            letters.push_back(p);
            big = generate_algebra(gns.dim(), letters);
            small = std::move(action);
            rep.algebra_dims.push_back(big.dim());
        }
    }
    rep.depth = es.size();
    if (!rep.traces.empty()) rep.tau = rep.traces.front();
    for (std::size_t i = 0; i + 1 < es.size(); ++i) {
        const ComplexMatrix& a = es[i];
        const ComplexMatrix& b = es[i + 1];
        ComplexMatrix ta = a;
        ta *= cplx{rep.tau};
        ComplexMatrix tb = b;
        tb *= cplx{rep.tau};
        rep.tl_residual = std::max({rep.tl_residual, (a * b * a - ta).max_abs(), (b * a * b - tb).max_abs()});
        for (std::size_t j = i + 2; j < es.size(); ++j)
            rep.commuting_residual = std::max(rep.commuting_residual, commutator(es[i], es[j]).max_abs());
    }
    return rep;
}

}  // namespace realidx
