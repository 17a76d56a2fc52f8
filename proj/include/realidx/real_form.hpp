#pragma once

#include <random>
#include <string>
#include <vector>

#include "realidx/algebra.hpp"

namespace realidx {

enum class RealFormKind { Orthogonal, Symplectic };

std::string_view to_string(RealFormKind kind);

/// Involutive *-antiautomorphism alpha(x) = u x^t u* of B(C^n), with u^t = sign * u.
class AntiAutomorphism {
public:
    /// Throws NotUnitary, or NotInvolutive when u^t is neither u nor -u.
    static AntiAutomorphism from_unitary(ComplexMatrix u);
    static AntiAutomorphism transpose(std::size_t n);
    /// Block-diagonal copies of [[0, 1], [-1, 0]]. Throws OddDimensionSymplectic.
    static AntiAutomorphism symplectic(std::size_t n);

    ComplexMatrix operator()(const ComplexMatrix& x) const;
    /// Conjugate-linear involution x -> alpha(x)* = u conj(x) u*; the real form is its fixed set.
    ComplexMatrix star(const ComplexMatrix& x) const;

    const ComplexMatrix& u() const noexcept { return u_; }
    int sign() const noexcept { return sign_; }
    std::size_t dim() const noexcept { return u_.dim(); }

    /// True iff alpha maps every basis element of m back into span(m).
    bool preserves(const StarAlgebra& m, double tol = tol::kStructural) const;

    /// Matrix of alpha on the coordinates of m: A_ij = <alpha(b_j), b_i>.
    /// Throws AlphaDoesNotPreserveM.
    ComplexMatrix coordinate_matrix(const StarAlgebra& m) const;

private:
    ComplexMatrix u_;
    int sign_ = 1;
};

/// Real W*-algebra (M, alpha) = {x in M : alpha(x) = x*}.
class RealForm {
public:
    RealForm(StarAlgebra ambient, AntiAutomorphism alpha, std::vector<ComplexMatrix> real_basis, std::string name = {});

    const StarAlgebra& ambient() const noexcept { return ambient_; }
    const AntiAutomorphism& alpha() const noexcept { return alpha_; }
    /// Orthonormal under Re <a, b>.
    const std::vector<ComplexMatrix>& real_basis() const noexcept { return real_basis_; }
    const std::string& name() const noexcept { return name_; }
    std::size_t dim() const noexcept { return real_basis_.size(); }
    std::size_t hilbert_dim() const noexcept { return ambient_.hilbert_dim(); }

    /// (x + alpha(x)*) / 2, the real-linear projection of M onto the real form.
    ComplexMatrix project(const ComplexMatrix& x) const;
    /// Real coordinates Re <x, r_k>.
    RealVector coordinates(const ComplexMatrix& x) const;
    ComplexMatrix element(const RealVector& coords) const;
    bool contains(const ComplexMatrix& x, double tol = tol::kStructural) const;

    /// The same algebra acting on H viewed as the real space R^{2n}.
    const RealStarAlgebra& realified() const noexcept { return realified_; }

private:
    StarAlgebra ambient_;
    AntiAutomorphism alpha_;
    std::vector<ComplexMatrix> real_basis_;
    std::string name_;
    RealStarAlgebra realified_;
};

/// Solves alpha(x) = x* over the real coordinates of M. Throws AlphaDoesNotPreserveM.
RealForm real_form(const StarAlgebra& m, const AntiAutomorphism& alpha, std::string name = {});

/// Complex span R + iR.
StarAlgebra envelope(const RealForm& r);

/// Kind of alpha as an antiautomorphism of the full matrix algebra. Throws OddDimensionSymplectic.
RealFormKind classify(const AntiAutomorphism& alpha);

/// Kind of alpha restricted to a factor f it preserves, read off from the dimension
/// of the alpha-symmetric part: f = M_m has m(m+1)/2 for orthogonal, m(m-1)/2 for symplectic.
RealFormKind classify_on(const AntiAutomorphism& alpha, const StarAlgebra& f);

struct RealTypeLabel {
    std::string type;
    std::size_t size;
};

/// "I_fin" and the matrix size of the envelope. Throws NotAFactor.
RealTypeLabel real_type(const RealForm& r);

/// Random element of the real form (uniform [-1, 1] real coordinates).
ComplexMatrix random_element(const RealForm& r, std::mt19937_64& rng);

class GnsSpace;

/// alpha'(y) = J alpha(J y J) J on the commutant of M in B(L^2(M)), returned as an
/// antiautomorphism of B(L^2(M)). Checked against the literal formula on random
/// commutant elements. Throws GnsMismatch if gns was not built from M.
AntiAutomorphism commutant_antiautomorphism(const StarAlgebra& m, const AntiAutomorphism& alpha, const GnsSpace& gns);

}  // namespace realidx
