#include "realidx/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace realidx {

namespace {

template <typename T>
Vector<T> random_vector(std::size_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Vector<T> v(n);
    for (auto& x : v) {
        if constexpr (is_complex_v<T>) {
            const double re = u(rng);
            const double im = u(rng);
            x = cplx{re, im};
        } else {
            x = u(rng);
        }
    }
    return v;
}

template <typename T>
double normalized_trace_of(const Matrix<T>& p) {
    return real_part(p.trace()) / static_cast<double>(p.dim());
}

}  // namespace

template <typename T>
Matrix<T> cyclic_projection(const OperatorAlgebra<T>& a, const Vector<T>& xi) {
    if (xi.size() != a.hilbert_dim()) throw Error(ErrorKind::DimensionMismatch, "vector length");
    if (norm(xi) == 0.0) throw Error(ErrorKind::ZeroVector, "cyclic projection of the zero vector");
    std::vector<Vector<T>> span;
    for (const auto& b : a.basis()) {
        Vector<T> v = b * xi;
        if (orthonormalize_against(span, v)) span.push_back(std::move(v));
        if (span.size() == xi.size()) break;
    }
    return projection_onto(span, xi.size());
}

RealMatrix cyclic_projection(const RealForm& r, const ComplexVector& xi) {
    return cyclic_projection(r.realified(), realify(xi));
}

template <typename T>
CouplingResult coupling_constant(const OperatorAlgebra<T>& f, std::uint64_t seed) {
    if (!is_factor(f)) throw Error(ErrorKind::NotAFactor, "coupling constant needs a factor");
    const OperatorAlgebra<T> fp = commutant(f);
    const std::size_t n = f.hilbert_dim();
    std::mt19937_64 rng(seed);

    CouplingResult result;
    for (int sample = 0; sample < 5; ++sample) {
        for (int attempt = 0; attempt < 10; ++attempt) {
            const Vector<T> xi = random_vector<T>(n, rng);
            if (norm(xi) == 0.0) continue;
            // E^{F'}_xi lies in F'' = F and E^F_xi in F'; both traces are Trace / n.
            const double den = normalized_trace_of(cyclic_projection(f, xi));
            const double num = normalized_trace_of(cyclic_projection(fp, xi));
            if (den < 0.5 / static_cast<double>(n)) continue;
            result.samples.push_back(num / den);
            break;
        }
    }
    if (result.samples.empty()) throw Error(ErrorKind::DegenerateXi, "every sampled vector had a zero denominator");
    const auto [lo, hi] = std::minmax_element(result.samples.begin(), result.samples.end());
    result.spread = *hi - *lo;
    result.value = std::accumulate(result.samples.begin(), result.samples.end(), 0.0) /
                   static_cast<double>(result.samples.size());
    return result;
}

CouplingResult coupling_constant(const RealForm& r, std::uint64_t seed) {
    return coupling_constant(r.realified(), seed);
}

CouplingResult jones_coupling(const StarAlgebra& m, const StarAlgebra& n, std::uint64_t seed) {
    if (!subalgebra_check(n, m)) throw Error(ErrorKind::NotASubalgebra, "N is not a unital subalgebra of M");
    if (!is_factor(n)) throw Error(ErrorKind::NotAFactor, "N is not a factor");
    const GnsSpace gns = GnsSpace::build(m);
    return coupling_constant(gns.left_algebra(n), seed);
}

IndexValue jones_index(const StarAlgebra& m, const StarAlgebra& n, std::uint64_t seed) {
    return IndexValue::of(jones_coupling(m, n, seed).value);
}

IndexValue real_index(const RealForm& r, const RealForm& q, std::uint64_t seed) {
    return IndexValue::of(real_coupling(r, q, seed).value);
}

CouplingResult real_coupling(const RealForm& r, const RealForm& q, std::uint64_t seed) {
    if (r.hilbert_dim() != q.hilbert_dim()) throw Error(ErrorKind::DimensionMismatch, "real forms act on different spaces");
    for (const auto& x : q.real_basis()) {
        if (!r.contains(x)) throw Error(ErrorKind::NotASubalgebra, "Q is not contained in R");
    }
    const StarAlgebra env_q = envelope(q);
    if (!r.alpha().preserves(env_q)) throw Error(ErrorKind::AlphaNotPreserved, "alpha does not preserve Q + iQ");

    const RealGnsSpace gns = RealGnsSpace::build(r);
    CouplingResult result = coupling_constant(gns.real_algebra(q), seed);
    const double value = result.value;
    const double complex_value = jones_index(envelope(r), env_q, seed).value;
    if (std::abs(value - complex_value) > tol::kIndex * std::max(1.0, complex_value)) {
        throw Error(ErrorKind::InconsistentIndex, "real index " + std::to_string(value) +
                                                      " differs from the envelope index " + std::to_string(complex_value));
    }
    return result;
}

IndexValue mixed_index(const StarAlgebra& m, const RealForm& q, std::uint64_t seed) {
    const StarAlgebra env = envelope(q);
    if (!subalgebra_check(env, m)) throw Error(ErrorKind::NotASubalgebra, "Q + iQ is not a subalgebra of M");
    return IndexValue::of(2.0 * jones_index(m, env, seed).value);
}

HalvingReport verify_halving(const StarAlgebra& m, const AntiAutomorphism& alpha, double tol, std::uint64_t seed) {
    if (!alpha.preserves(m)) throw Error(ErrorKind::AlphaDoesNotPreserveM, "alpha(M) is not contained in M");
    HalvingReport report;
    report.complex_dim_original = coupling_constant(m, seed).value;

    StarAlgebra mh = m;
    AntiAutomorphism ah = alpha;
    if (alpha.sign() < 0) {
        // K = u conj(.) squares to -1 here, so H has no real points; on H (x) C^2 the
        // conjugation u (x) J_2 squares to +1 and still commutes with the real form.
        report.doubled = true;
        mh = tensor_identity(m, 2, m.name());
        ah = AntiAutomorphism::from_unitary(kron(alpha.u(), ComplexMatrix{{0.0, 1.0}, {-1.0, 0.0}}));
    }
    const RealForm r = real_form(mh, ah);
    report.complex_dim = report.doubled ? coupling_constant(mh, seed).value : report.complex_dim_original;

    const RealMatrix p = fixed_points(AntilinearOperator{ah.u()});
    std::vector<RealMatrix> span;
    for (const auto& x : r.real_basis()) {
        const RealMatrix rx = realify(x);
        const RealMatrix c = p.transpose() * rx * p;
        if ((rx * p - p * c).max_abs() > tol::kStructural) {
            throw Error(ErrorKind::AlphaNotPreserved, "real form does not preserve the real points");
        }
        span.push_back(c);
    }
    const RealStarAlgebra on_real_points = RealStarAlgebra::from_spanning(p.cols(), span);
    report.real_points_dim = coupling_constant(on_real_points, seed).value;
    report.real_space_dim = coupling_constant(r, seed).value;
    report.max_residual = std::max(std::abs(report.complex_dim - report.real_points_dim),
                                   std::abs(report.complex_dim - 0.5 * report.real_space_dim));
    report.passed = report.max_residual <= tol;
    return report;
}

template Matrix<double> cyclic_projection<double>(const OperatorAlgebra<double>&, const Vector<double>&);
template Matrix<cplx> cyclic_projection<cplx>(const OperatorAlgebra<cplx>&, const Vector<cplx>&);
template CouplingResult coupling_constant<double>(const OperatorAlgebra<double>&, std::uint64_t);
template CouplingResult coupling_constant<cplx>(const OperatorAlgebra<cplx>&, std::uint64_t);

}  // namespace realidx
