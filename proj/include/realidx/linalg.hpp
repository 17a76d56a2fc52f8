#pragma once

#include <functional>
#include <vector>

#include "realidx/matrix.hpp"

namespace realidx {

/// Closed real interval [lo, hi].
struct Interval {
    double lo;
    double hi;

    Interval(double lo_, double hi_);
};

template <typename T>
struct EigenDecomposition {
    std::vector<double> values;  ///< ascending
    Matrix<T> vectors;           ///< columns are eigenvectors
};

/// Cyclic Jacobi eigensolver for Hermitian (or real symmetric) matrices.
/// Throws NotHermitian when ||x - x*|| exceeds the structural tolerance.
template <typename T>
EigenDecomposition<T> hermitian_eig(const Matrix<T>& x);

/// Orthogonal projection onto the eigenspaces whose eigenvalue lies in the closed
/// window, with endpoints widened by tol::kBoundary. Degenerate eigenvalues are
/// handled by summing every eigenprojection in the window.
template <typename T>
Matrix<T> spectral_projection(const Matrix<T>& x, const Interval& w);

/// Same as above, reusing a precomputed decomposition.
template <typename T>
Matrix<T> spectral_projection(const EigenDecomposition<T>& eig, const Interval& w);

/// f(x) for Hermitian x via the spectral theorem.
template <typename T>
Matrix<T> apply_function(const Matrix<T>& x, const std::function<double(double)>& f);

template <typename T>
double min_eigenvalue(const Matrix<T>& x);

/// Positive semidefinite within an absolute tolerance on the smallest eigenvalue.
template <typename T>
bool is_positive(const Matrix<T>& x, double tol = tol::kStructural);

/// Orthonormal basis (columns of the returned list) of {v : A v = 0}. The kernel is
/// detected by one-sided Jacobi SVD with singular values below
/// tol::kNullspacePerDim * max(rows, cols) counted as zero.
std::vector<RealVector> nullspace_real(const RealMatrix& a);

/// Singular values of a rectangular real matrix, descending.
std::vector<double> singular_values(const RealMatrix& a);

/// Orthonormalizes `v` against `basis` (modified Gram-Schmidt, two passes).
/// Returns false and leaves `v` unspecified when the residual is below
/// tol::kDrop relative to the original norm.
template <typename T>
bool orthonormalize_against(const std::vector<Vector<T>>& basis, Vector<T>& v,
                            double drop = tol::kDrop);

/// Column-vector projection onto span(vectors) built from an orthonormal family.
template <typename T>
Matrix<T> projection_onto(const std::vector<Vector<T>>& orthonormal, std::size_t dim);

}  // namespace realidx
