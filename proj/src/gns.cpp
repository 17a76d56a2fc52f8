#include "realidx/gns.hpp"

#include <cmath>
#include <random>

namespace realidx {

GnsSpace GnsSpace::build(const StarAlgebra& m, bool require_factor) {
    if (require_factor && !is_factor(m)) throw Error(ErrorKind::NotAFactor, "GNS space needs a faithful trace on a factor");
    GnsSpace g;
    g.source_ = m;
    const std::size_t d = m.dim();
    ComplexMatrix gamma(d);
    for (std::size_t j = 0; j < d; ++j) {
        const auto c = m.coordinates(m.basis()[j].adjoint());
        for (std::size_t k = 0; k < d; ++k) gamma(k, j) = c[k];
    }
    g.j_ = AntilinearOperator{std::move(gamma)};
    return g;
}

ComplexMatrix GnsSpace::left_action(const ComplexMatrix& a) const {
    const std::size_t d = dim();
    ComplexMatrix l(d);
    for (std::size_t j = 0; j < d; ++j) {
        const auto c = source_.coordinates(a * source_.basis()[j]);
        for (std::size_t k = 0; k < d; ++k) l(k, j) = c[k];
    }
    return l;
}

ComplexMatrix GnsSpace::right_action(const ComplexMatrix& a) const {
    const std::size_t d = dim();
    ComplexMatrix r(d);
    for (std::size_t j = 0; j < d; ++j) {
        const auto c = source_.coordinates(source_.basis()[j] * a);
        for (std::size_t k = 0; k < d; ++k) r(k, j) = c[k];
    }
    return r;
}

StarAlgebra GnsSpace::left_algebra(const StarAlgebra& sub) const {
    if (sub.hilbert_dim() != source_.hilbert_dim()) throw Error(ErrorKind::DimensionMismatch, "subalgebra acts elsewhere");
    std::vector<ComplexMatrix> span;
    span.reserve(sub.dim());
    for (const auto& b : sub.basis()) span.push_back(left_action(b));
    std::vector<ComplexMatrix> gens;
    for (const auto& g : sub.generators()) gens.push_back(left_action(g));
    return StarAlgebra::from_spanning(dim(), span, std::move(gens), sub.name());
}

RealMatrix fixed_points(const AntilinearOperator& k) {
    // w conj(a + ib) = a + ib splits into (wr - 1) a + wi b = 0 and wi a - (wr + 1) b = 0.
    const std::size_t d = k.w.dim();
    RealMatrix sys(2 * d, 2 * d);
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) {
            const double wr = k.w(r, c).real();
            const double wi = k.w(r, c).imag();
            const double id = r == c ? 1.0 : 0.0;
            sys(r, c) = wr - id;
            sys(r, c + d) = wi;
            sys(r + d, c) = wi;
            sys(r + d, c + d) = -wr - id;
        }
    const auto kernel = nullspace_real(sys);
    RealMatrix p(2 * d, kernel.size());
    for (std::size_t c = 0; c < kernel.size(); ++c)
        for (std::size_t r = 0; r < 2 * d; ++r) p(r, c) = kernel[c][r];
    return p;
}

RealGnsSpace RealGnsSpace::build(const RealForm& r) {
    GnsSpace gns = GnsSpace::build(r.ambient());
    const StarAlgebra& m = gns.source();
    const std::size_t d = m.dim();
    ComplexMatrix w(d);
    for (std::size_t j = 0; j < d; ++j) {
        const auto c = m.coordinates(r.alpha().star(m.basis()[j]));
        for (std::size_t k = 0; k < d; ++k) w(k, j) = c[k];
    }
    AntilinearOperator c{std::move(w)};
    if ((c.square() - ComplexMatrix::identity(d)).max_abs() > tol::kStructural) {
        throw Error(ErrorKind::GnsMismatch, "C is not an involution");
    }
    RealMatrix basis = fixed_points(c);
    if (basis.cols() != d) throw Error(ErrorKind::GnsMismatch, "Fix(C) has the wrong real dimension");
    return RealGnsSpace(std::move(gns), r, std::move(c), std::move(basis));
}

RealMatrix RealGnsSpace::restrict_operator(const ComplexMatrix& y) const {
    return basis_.transpose() * realify(y) * basis_;
}

RealStarAlgebra RealGnsSpace::real_algebra(const RealForm& q) const {
    std::vector<RealMatrix> span;
    span.reserve(q.dim());
    for (const auto& x : q.real_basis()) {
        const ComplexMatrix l = gns_.left_action(x);
        // L(x) must commute with C for the compression to be an action.
        if ((l * c_.w - c_.w * l.conjugate()).max_abs() > tol::kStructural * std::max(1.0, l.max_abs())) {
            throw Error(ErrorKind::AlphaNotPreserved, "subalgebra does not commute with the real structure");
        }
        span.push_back(restrict_operator(l));
    }
    return RealStarAlgebra::from_spanning(real_dim(), span, {}, q.name());
}

AntiAutomorphism commutant_antiautomorphism(const StarAlgebra& m, const AntiAutomorphism& alpha, const GnsSpace& gns) {
    if (gns.source().hilbert_dim() != m.hilbert_dim() || !same_span(gns.source(), m)) {
        throw Error(ErrorKind::GnsMismatch, "GNS space was built from another algebra");
    }
    if (!alpha.preserves(m)) throw Error(ErrorKind::AlphaDoesNotPreserveM, "alpha(M) is not contained in M");
    const StarAlgebra& src = gns.source();
    const std::size_t d = src.dim();

    // alpha'(y) = C y* C with C(x-hat) = (alpha(x)*)-hat, i.e. W y^t W* for C = W conj(.).
    ComplexMatrix w(d);
    for (std::size_t j = 0; j < d; ++j) {
        const auto c = src.coordinates(alpha.star(src.basis()[j]));
        for (std::size_t k = 0; k < d; ++k) w(k, j) = c[k];
    }
    AntiAutomorphism result = AntiAutomorphism::from_unitary(std::move(w));

    // Literal check of J alpha(J y J) J on random elements of M'.
    const StarAlgebra commutant_m = commutant(gns.left_algebra(src));
    const AntilinearOperator& j = gns.conjugation();
    const ComplexVector one = gns.unit_vector();
    std::mt19937_64 rng(0xa1fa);
    for (int sample = 0; sample < 10; ++sample) {
        const ComplexMatrix y = random_element(commutant_m, rng);
        const ComplexMatrix jyj = j.conjugate_operator(y);
        const ComplexMatrix x = gns.element_of(jyj * one);
        const ComplexMatrix literal = j.conjugate_operator(gns.left_action(alpha(x)));
        if ((literal - result(y)).max_abs() > tol::kStructural * std::max(1.0, y.max_abs())) {
            throw Error(ErrorKind::GnsMismatch, "commutant antiautomorphism disagrees with J alpha(J.J) J");
        }
    }
    return result;
}

}  // namespace realidx
