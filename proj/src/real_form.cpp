#include "realidx/real_form.hpp"

#include <cmath>

namespace realidx {

std::string_view to_string(RealFormKind kind) {
    return kind == RealFormKind::Orthogonal ? "orthogonal" : "symplectic";
}

AntiAutomorphism AntiAutomorphism::from_unitary(ComplexMatrix u) {
    if (!u.is_square() || !is_unitary(u)) throw Error(ErrorKind::NotUnitary, "alpha needs a unitary u");
    const ComplexMatrix ut = u.transpose();
    int sign = 0;
    if ((ut - u).max_abs() <= tol::kStructural) {
        sign = 1;
    } else if ((ut + u).max_abs() <= tol::kStructural) {
        sign = -1;
    } else {
        throw Error(ErrorKind::NotInvolutive, "u^t is neither u nor -u");
    }
    const std::size_t n = u.dim();
    if (sign < 0 && n % 2 == 1) throw Error(ErrorKind::OddDimensionSymplectic, "antisymmetric unitary in odd dimension");

    AntiAutomorphism a;
    a.u_ = std::move(u);
    a.sign_ = sign;
    // alpha^2 = id on every matrix unit.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const ComplexMatrix e = ComplexMatrix::unit(n, i, j);
            if ((a(a(e)) - e).max_abs() > tol::kStructural) {
                throw Error(ErrorKind::NotInvolutive, "alpha(alpha(x)) differs from x");
            }
        }
    return a;
}

AntiAutomorphism AntiAutomorphism::transpose(std::size_t n) {
    return from_unitary(ComplexMatrix::identity(n));
}

AntiAutomorphism AntiAutomorphism::symplectic(std::size_t n) {
    if (n % 2 == 1) throw Error(ErrorKind::OddDimensionSymplectic, "symplectic form needs even dimension");
    ComplexMatrix u(n);
    for (std::size_t k = 0; k < n; k += 2) {
        u(k, k + 1) = 1.0;
        u(k + 1, k) = -1.0;
    }
    return from_unitary(std::move(u));
}

ComplexMatrix AntiAutomorphism::operator()(const ComplexMatrix& x) const {
    if (x.rows() != u_.dim() || x.cols() != u_.dim()) throw Error(ErrorKind::DimensionMismatch, "alpha acts on another space");
    return u_ * x.transpose() * u_.adjoint();
}

ComplexMatrix AntiAutomorphism::star(const ComplexMatrix& x) const {
    if (x.rows() != u_.dim() || x.cols() != u_.dim()) throw Error(ErrorKind::DimensionMismatch, "alpha acts on another space");
    return u_ * x.conjugate() * u_.adjoint();
}

bool AntiAutomorphism::preserves(const StarAlgebra& m, double tol) const {
    if (m.hilbert_dim() != dim()) return false;
    for (const auto& b : m.basis())
        if (!m.contains((*this)(b), tol)) return false;
    return true;
}

ComplexMatrix AntiAutomorphism::coordinate_matrix(const StarAlgebra& m) const {
    if (m.hilbert_dim() != dim()) throw Error(ErrorKind::DimensionMismatch, "alpha acts on another space");
    const std::size_t d = m.dim();
    ComplexMatrix a(d);
    for (std::size_t j = 0; j < d; ++j) {
        const ComplexMatrix img = (*this)(m.basis()[j]);
        const auto c = m.coordinates(img);
        if (m.norm(img - m.element(c)) > tol::kStructural) {
            throw Error(ErrorKind::AlphaDoesNotPreserveM, "alpha(x) leaves the algebra");
        }
        for (std::size_t i = 0; i < d; ++i) a(i, j) = c[i];
    }
    return a;
}

RealForm::RealForm(StarAlgebra ambient, AntiAutomorphism alpha, std::vector<ComplexMatrix> real_basis, std::string name)
    : ambient_(std::move(ambient)), alpha_(std::move(alpha)), real_basis_(std::move(real_basis)), name_(std::move(name)) {
    std::vector<RealMatrix> rb;
    rb.reserve(real_basis_.size());
    for (const auto& x : real_basis_) rb.push_back(realify(x));
    realified_ = RealStarAlgebra::from_orthonormal(2 * ambient_.hilbert_dim(), std::move(rb), {}, name_);
}

ComplexMatrix RealForm::project(const ComplexMatrix& x) const {
    ComplexMatrix p = x + alpha_.star(x);
    p *= cplx{0.5};
    return p;
}

RealVector RealForm::coordinates(const ComplexMatrix& x) const {
    RealVector c(real_basis_.size());
    for (std::size_t k = 0; k < real_basis_.size(); ++k) c[k] = ambient_.inner(x, real_basis_[k]).real();
    return c;
}

ComplexMatrix RealForm::element(const RealVector& coords) const {
    if (coords.size() != real_basis_.size()) throw Error(ErrorKind::DimensionMismatch, "coordinate length");
    ComplexMatrix x(hilbert_dim());
    for (std::size_t k = 0; k < coords.size(); ++k) x.axpy(cplx{coords[k]}, real_basis_[k]);
    return x;
}

bool RealForm::contains(const ComplexMatrix& x, double tol) const {
    return ambient_.norm(x - element(coordinates(x))) <= tol;
}

RealForm real_form(const StarAlgebra& m, const AntiAutomorphism& alpha, std::string name) {
    // theta(x) = alpha(x)* is conjugate-linear: theta(sum c_j b_j) = sum conj(c_j) theta(b_j).
    // With Theta_kj = <theta(b_j), b_k>, the fixed points solve Theta conj(c) = c, a real
    // linear system in (Re c, Im c).
    if (!alpha.preserves(m)) throw Error(ErrorKind::AlphaDoesNotPreserveM, "alpha(M) is not contained in M");
    const std::size_t d = m.dim();
    ComplexMatrix theta(d);
    for (std::size_t j = 0; j < d; ++j) {
        const auto c = m.coordinates(alpha.star(m.basis()[j]));
        for (std::size_t k = 0; k < d; ++k) theta(k, j) = c[k];
    }
    RealMatrix sys(2 * d, 2 * d);
    for (std::size_t k = 0; k < d; ++k) {
        for (std::size_t j = 0; j < d; ++j) {
            const double tr = theta(k, j).real();
            const double ti = theta(k, j).imag();
            const double id = k == j ? 1.0 : 0.0;
            sys(k, j) = tr - id;
            sys(k, j + d) = ti;
            sys(k + d, j) = ti;
            sys(k + d, j + d) = -tr - id;
        }
    }
    const auto kernel = nullspace_real(sys);
    if (kernel.size() != d) {
        throw Error(ErrorKind::NotInvolutive, "fixed-point space has the wrong real dimension");
    }
    std::vector<ComplexMatrix> basis;
    basis.reserve(d);
    for (const auto& v : kernel) {
        ComplexVector c(d);
        for (std::size_t k = 0; k < d; ++k) c[k] = cplx{v[k], v[k + d]};
        basis.push_back(m.element(c));
    }
    return RealForm(m, alpha, std::move(basis), std::move(name));
}

StarAlgebra envelope(const RealForm& r) {
    return StarAlgebra::from_spanning(r.hilbert_dim(), r.real_basis(), {}, r.name());
}

RealFormKind classify(const AntiAutomorphism& alpha) {
    if (alpha.sign() > 0) return RealFormKind::Orthogonal;
    if (alpha.dim() % 2 == 1) throw Error(ErrorKind::OddDimensionSymplectic, "symplectic kind in odd dimension");
    return RealFormKind::Symplectic;
}

RealFormKind classify_on(const AntiAutomorphism& alpha, const StarAlgebra& f) {
    const std::size_t d = f.dim();
    const auto m = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(d))));
    if (m * m != d) throw Error(ErrorKind::NotAFactor, "algebra dimension is not a square");
    // (A + 1)/2 projects onto the alpha-symmetric part; its trace is the dimension.
    const ComplexMatrix a = alpha.coordinate_matrix(f);
    const double sym = 0.5 * (a.trace().real() + static_cast<double>(d));
    const auto s = static_cast<std::size_t>(std::llround(sym));
    if (std::abs(sym - static_cast<double>(s)) > 1e-6) throw Error(ErrorKind::NotInvolutive, "alpha is not an involution on f");
    if (s == m * (m + 1) / 2) return RealFormKind::Orthogonal;
    if (s == m * (m - 1) / 2) return RealFormKind::Symplectic;
    throw Error(ErrorKind::NotAFactor, "symmetric part does not match a matrix factor");
}

RealTypeLabel real_type(const RealForm& r) {
    const StarAlgebra env = envelope(r);
    if (!is_factor(env)) throw Error(ErrorKind::NotAFactor, "envelope has a nontrivial center");
    const auto size = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(env.dim()))));
    return {"I_fin", size};
}

ComplexMatrix random_element(const RealForm& r, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    RealVector c(r.dim());
    for (auto& v : c) v = u(rng);
    return r.element(c);
}

}  // namespace realidx
