#pragma once

#include "realidx/algebra.hpp"
#include "realidx/real_form.hpp"

namespace realidx {

/// Conjugate-linear operator v -> w conj(v).
struct AntilinearOperator {
    ComplexMatrix w;

    ComplexVector operator()(const ComplexVector& v) const { return w * conjugate(v); }
    /// K y K^{-1} = w conj(y) w* for a linear y (w unitary).
    ComplexMatrix conjugate_operator(const ComplexMatrix& y) const { return w * y.conjugate() * w.adjoint(); }
    /// K^2 = w conj(w).
    ComplexMatrix square() const { return w * w.conjugate(); }
};

/// L^2(M) for the normalized trace. The GNS basis is M's orthonormal basis, so the
/// coordinates of x-hat are the coordinates of x.
class GnsSpace {
public:
    /// Throws NotAFactor when require_factor is set and M has a nontrivial center.
    static GnsSpace build(const StarAlgebra& m, bool require_factor = true);

    const StarAlgebra& source() const noexcept { return source_; }
    std::size_t dim() const noexcept { return source_.dim(); }

    /// Matrix of x-hat -> (a x)-hat.
    ComplexMatrix left_action(const ComplexMatrix& a) const;
    /// Matrix of x-hat -> (x a)-hat.
    ComplexMatrix right_action(const ComplexMatrix& a) const;
    /// J: x-hat -> (x*)-hat.
    const AntilinearOperator& conjugation() const noexcept { return j_; }

    ComplexVector vector_of(const ComplexMatrix& x) const { return source_.coordinates(x); }
    ComplexMatrix element_of(const ComplexVector& v) const { return source_.element(v); }
    ComplexVector unit_vector() const { return vector_of(ComplexMatrix::identity(source_.hilbert_dim())); }

    /// Image of a subalgebra of M under the left action, as an algebra on L^2(M).
    StarAlgebra left_algebra(const StarAlgebra& sub) const;

private:
    StarAlgebra source_;
    AntilinearOperator j_;
};

/// Real standard form L^2(M, alpha): the fixed points of C(x-hat) = (alpha(x)*)-hat.
class RealGnsSpace {
public:
    static RealGnsSpace build(const RealForm& r);

    const GnsSpace& underlying() const noexcept { return gns_; }
    const RealForm& source() const noexcept { return source_; }
    const AntilinearOperator& conjugation() const noexcept { return c_; }
    /// Columns form an orthonormal basis of Fix(C) inside R^{2d} (real parts, then imaginary parts).
    const RealMatrix& real_subspace() const noexcept { return basis_; }
    std::size_t real_dim() const noexcept { return basis_.cols(); }

    /// Compression of a C-commuting operator on L^2(M) to Fix(C).
    RealMatrix restrict_operator(const ComplexMatrix& y) const;
    /// Left action of a real subalgebra Q of R on Fix(C).
    RealStarAlgebra real_algebra(const RealForm& q) const;

private:
    RealGnsSpace(GnsSpace gns, RealForm source, AntilinearOperator c, RealMatrix basis)
        : gns_(std::move(gns)), source_(std::move(source)), c_(std::move(c)), basis_(std::move(basis)) {}

    GnsSpace gns_;
    RealForm source_;
    AntilinearOperator c_;
    RealMatrix basis_;
};

/// Orthonormal real basis of {v : w conj(v) = v}, as columns in realified coordinates.
RealMatrix fixed_points(const AntilinearOperator& k);

}  // namespace realidx
