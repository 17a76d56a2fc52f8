#pragma once

#include <random>
#include <string>
#include <vector>

#include "realidx/linalg.hpp"

namespace realidx {

/// A unital *-subalgebra of the T-linear operators on T^n, stored as a basis that is
/// orthonormal under <a, b> = Trace(b* a) / n. T = cplx gives complex W*-algebras;
/// T = double gives real ones acting on a real Hilbert space.
///
/// Values are immutable once built. The constructors do not re-verify closure under
/// products; validate() does, and is meant for tests and user input.
template <typename T>
class OperatorAlgebra {
public:
    OperatorAlgebra() = default;

    /// Orthonormalizes `spanning` (modified Gram-Schmidt, drop threshold tol::kDrop).
    /// `generators` is kept for provenance and as the constraint set of commutant();
    /// an empty list means the basis itself plays that role.
    static OperatorAlgebra from_spanning(std::size_t hilbert_dim, const std::vector<Matrix<T>>& spanning,
                                         std::vector<Matrix<T>> generators = {}, std::string name = {});

    /// Trusted constructor for a basis that is already orthonormal.
    static OperatorAlgebra from_orthonormal(std::size_t hilbert_dim, std::vector<Matrix<T>> basis,
                                            std::vector<Matrix<T>> generators = {}, std::string name = {});

    /// Full matrix algebra on T^n, generated by the matrix units e_{i,i+1}.
    static OperatorAlgebra full(std::size_t n, std::string name = {});
    /// Scalars T*1 on T^n.
    static OperatorAlgebra scalars(std::size_t n, std::string name = {});

    std::size_t hilbert_dim() const noexcept { return hilbert_dim_; }
    std::size_t dim() const noexcept { return basis_.size(); }
    const std::vector<Matrix<T>>& basis() const noexcept { return basis_; }
    const std::vector<Matrix<T>>& generators() const noexcept { return generators_; }
    const std::string& name() const noexcept { return name_; }
    OperatorAlgebra renamed(std::string name) const;

    /// Trace(b* a) / hilbert_dim.
    T inner(const Matrix<T>& a, const Matrix<T>& b) const;
    double norm(const Matrix<T>& a) const;

    Vector<T> coordinates(const Matrix<T>& x) const;
    Matrix<T> element(const Vector<T>& coords) const;
    Matrix<T> project(const Matrix<T>& x) const;
    /// Normalized Hilbert-Schmidt distance from x to the span.
    double residual(const Matrix<T>& x) const;
    bool contains(const Matrix<T>& x, double tol = tol::kStructural) const;

    /// Self-adjoint generating set used for commutation constraints, with scalar
    /// multiples of the identity removed.
    std::vector<Matrix<T>> constraint_set() const;

    /// Throws if 1 is missing, or the span is not closed under adjoints and products.
    void validate(double tol = tol::kStructural) const;

private:
    std::size_t hilbert_dim_ = 0;
    std::vector<Matrix<T>> basis_;
    std::vector<Matrix<T>> generators_;
    std::string name_;
};

using StarAlgebra = OperatorAlgebra<cplx>;
using RealStarAlgebra = OperatorAlgebra<double>;

/// Normalized trace tr(x) = Trace(x) / hilbert_dim, the unique tracial state on a factor.
template <typename T>
class TraceFunctional {
public:
    explicit TraceFunctional(std::size_t hilbert_dim) : hilbert_dim_(hilbert_dim) {}
    T operator()(const Matrix<T>& x) const { return x.trace() / static_cast<double>(hilbert_dim_); }

private:
    std::size_t hilbert_dim_;
};

/// Smallest unital *-subalgebra containing the generators. Throws DimensionMismatch
/// on size errors and NonConvergence if the span outgrows hilbert_dim^2.
template <typename T>
OperatorAlgebra<T> generate_algebra(std::size_t hilbert_dim, const std::vector<Matrix<T>>& generators,
                                    std::string name = {});

template <typename T>
OperatorAlgebra<T> commutant(const OperatorAlgebra<T>& a);

template <typename T>
OperatorAlgebra<T> center(const OperatorAlgebra<T>& a);

template <typename T>
bool is_factor(const OperatorAlgebra<T>& a);

/// Throws NotAFactor when the center is nontrivial.
template <typename T>
TraceFunctional<T> normalized_trace(const OperatorAlgebra<T>& a);

/// True iff N's basis lies in span(M) and both contain 1. Throws DimensionMismatch.
template <typename T>
bool subalgebra_check(const OperatorAlgebra<T>& n, const OperatorAlgebra<T>& m);

/// Mutual containment of the spans.
template <typename T>
bool same_span(const OperatorAlgebra<T>& a, const OperatorAlgebra<T>& b, double tol = tol::kStructural);

/// N' ∩ M.
template <typename T>
OperatorAlgebra<T> relative_commutant(const OperatorAlgebra<T>& n, const OperatorAlgebra<T>& m);

/// Orthonormal basis of the span of `candidates` commuting with every constraint.
/// `candidates` must be orthonormal under the normalized trace pairing.
template <typename T>
std::vector<Matrix<T>> commuting_span(std::size_t hilbert_dim, const std::vector<Matrix<T>>& candidates,
                                      const std::vector<Matrix<T>>& constraints);

/// Element with i.i.d. uniform [-1, 1] coordinates (real and imaginary parts for T = cplx).
template <typename T>
Matrix<T> random_element(const OperatorAlgebra<T>& a, std::mt19937_64& rng);

/// Random self-adjoint element of the algebra.
template <typename T>
Matrix<T> random_hermitian(const OperatorAlgebra<T>& a, std::mt19937_64& rng);

/// exp(i h) for a random self-adjoint h in the algebra.
ComplexMatrix random_unitary(const StarAlgebra& a, std::mt19937_64& rng);

/// x ⊗ 1_c for every generator of `a`, as an algebra on T^{n c}.
template <typename T>
OperatorAlgebra<T> tensor_identity(const OperatorAlgebra<T>& a, std::size_t c, std::string name = {});

}  // namespace realidx
