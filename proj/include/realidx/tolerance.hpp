#pragma once

#include <cstddef>

namespace realidx::tol {

/// Absolute tolerance for the structural predicates (hermitian, unitary, projection).
inline constexpr double kStructural = 1e-8;

/// Reconstruction tolerance for eigendecompositions, multiplied by the matrix dimension.
inline constexpr double kReconstructionPerDim = 1e-10;

/// Eigenvalues this close to an interval endpoint count as inside the interval.
inline constexpr double kBoundary = 1e-9;

/// Gram-Schmidt drop threshold relative to the candidate norm.
inline constexpr double kDrop = 1e-9;

/// Singular-value threshold for kernels, multiplied by max(rows, cols).
inline constexpr double kNullspacePerDim = 1e-9;

/// Default tolerance for index comparisons and the Jones-spectrum classifier.
inline constexpr double kIndex = 1e-6;

inline constexpr double reconstruction(std::size_t dim) {
    return kReconstructionPerDim * static_cast<double>(dim);
}

}  // namespace realidx::tol
