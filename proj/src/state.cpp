#include "realidx/state.hpp"

#include <cmath>

namespace realidx {

StateFunctional::StateFunctional(ComplexMatrix density) : density_(std::move(density)) {
    if (!is_positive(density_)) throw Error(ErrorKind::NotPositive, "state density is not positive");
    if (std::abs(density_.trace() - cplx{1.0}) > tol::kStructural) {
        throw Error(ErrorKind::NotPositive, "state density does not have unit trace");
    }
}

StateFunctional StateFunctional::normalized_trace(std::size_t dim) {
    ComplexMatrix rho = ComplexMatrix::identity(dim);
    rho *= cplx{1.0 / static_cast<double>(dim)};
    return StateFunctional(std::move(rho));
}

StateFunctional StateFunctional::random(std::size_t dim, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ComplexMatrix g(dim);
    for (auto& v : g.data()) v = cplx{u(rng), u(rng)};
    ComplexMatrix rho = g * g.adjoint();
    rho *= cplx{1.0 / rho.trace().real()};
    return StateFunctional(std::move(rho));
}

cplx StateFunctional::operator()(const ComplexMatrix& x) const {
    return (density_ * x).trace();
}

SpectralWindows spectral_windows(const ComplexMatrix& x) {
    const auto eig = hermitian_eig(x);
    if (!eig.values.empty() && eig.values.front() < -tol::kStructural) {
        throw Error(ErrorKind::NotPositive, "spectral windows need a positive operator");
    }
    const std::size_t n = x.dim();
    const double top = eig.values.empty() ? 0.0 : eig.values.back();
    const auto count = static_cast<std::size_t>(std::ceil(std::max(top - tol::kBoundary, 0.0))) + 1;

    SpectralWindows out{std::vector<ComplexMatrix>(count, ComplexMatrix(n)), ComplexMatrix(n), ComplexMatrix(n)};
    for (std::size_t col = 0; col < n; ++col) {
        const double lambda = eig.values[col];
        ComplexVector v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = eig.vectors(i, col);
        const ComplexMatrix p = outer(v, v);
        if (lambda <= tol::kBoundary) {
            out.kernel += p;
            continue;
        }
        // (n-1, n] with the boundary slack pushing ties downward.
        const auto w = static_cast<std::size_t>(std::max(std::ceil(lambda - tol::kBoundary), 1.0));
        out.windows[w - 1] += p;
        out.support += p;
    }
    return out;
}

double evaluate_weight_function(const ComplexMatrix& x, const StateFunctional& f) {
    const auto windows = spectral_windows(x);
    double total = 0.0;
    for (const auto& e : windows.windows) total += f(e * x).real();
    return total;
}

}  // namespace realidx
