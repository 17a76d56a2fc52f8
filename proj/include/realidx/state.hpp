#pragma once

#include <random>
#include <vector>

#include "realidx/linalg.hpp"

namespace realidx {

/// Normal state f(x) = Trace(density * x) on B(C^n).
class StateFunctional {
public:
    /// Throws NotPositive unless density is positive semidefinite with unit trace.
    explicit StateFunctional(ComplexMatrix density);

    static StateFunctional normalized_trace(std::size_t dim);
    static StateFunctional random(std::size_t dim, std::mt19937_64& rng);

    cplx operator()(const ComplexMatrix& x) const;
    const ComplexMatrix& density() const noexcept { return density_; }

private:
    ComplexMatrix density_;
};

/// Disjoint spectral windows of a positive operator: window n (n = 1, 2, ...) holds the
/// eigenvalues in (n-1, n], eigenvalues within tol::kBoundary of an integer going to
/// the lower window. The kernel projection is kept separately.
struct SpectralWindows {
    std::vector<ComplexMatrix> windows;
    ComplexMatrix kernel;
    ComplexMatrix support;
};

SpectralWindows spectral_windows(const ComplexMatrix& x);

/// Sum over the nonempty windows of f(e_n x). For bounded x the infinite part of the
/// extended positive part is absent and the sum equals f(x).
double evaluate_weight_function(const ComplexMatrix& x, const StateFunctional& f);

}  // namespace realidx
