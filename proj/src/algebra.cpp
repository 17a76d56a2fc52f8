#include "realidx/algebra.hpp"

#include <cmath>
#include <optional>

namespace realidx {

namespace {

template <typename T>
bool is_scalar_identity(const Matrix<T>& x) {
    const std::size_t n = x.dim();
    const T mean = x.trace() / static_cast<double>(n);
    Matrix<T> d = x;
    for (std::size_t i = 0; i < n; ++i) d(i, i) -= mean;
    return d.max_abs() <= tol::kStructural * std::max(1.0, x.max_abs());
}

// Adds the normalized remainder of `candidate` to `basis` unless it is already in the span.
// `scale` is the size of an exact-arithmetic nonzero candidate; remainders below
// kDrop of max(original norm, scale) are rounding noise.
template <typename T>
bool extend_basis(std::vector<Matrix<T>>& basis, Matrix<T> candidate, double inv_dim, double scale) {
    const double original = std::sqrt(real_part(hs_inner(candidate, candidate)) * inv_dim);
    if (original == 0.0) return false;
    const double floor = tol::kDrop * std::max(original, scale);
    for (int pass = 0; pass < 2; ++pass) {
        for (const auto& b : basis) {
            const T c = hs_inner(candidate, b) * inv_dim;
            if (c != T{}) candidate.axpy(-c, b);
        }
        const double r = std::sqrt(real_part(hs_inner(candidate, candidate)) * inv_dim);
        if (r <= floor) return false;
        if (pass == 1) {
            candidate *= T{1.0 / r};
            basis.push_back(std::move(candidate));
            return true;
        }
    }
    return false;
}

template <typename T>
void check_size(const Matrix<T>& x, std::size_t n) {
    if (x.rows() != n || x.cols() != n) {
        throw Error(ErrorKind::DimensionMismatch, "operator size does not match hilbert_dim");
    }
}

}  // namespace

template <typename T>
OperatorAlgebra<T> OperatorAlgebra<T>::from_spanning(std::size_t hilbert_dim, const std::vector<Matrix<T>>& spanning,
                                                     std::vector<Matrix<T>> generators, std::string name) {
    if (hilbert_dim == 0) throw Error(ErrorKind::DimensionMismatch, "hilbert_dim must be positive");
    OperatorAlgebra out;
    out.hilbert_dim_ = hilbert_dim;
    out.name_ = std::move(name);
    const double inv = 1.0 / static_cast<double>(hilbert_dim);
    double scale = 0.0;
    for (const auto& s : spanning) {
        check_size(s, hilbert_dim);
        scale = std::max(scale, std::sqrt(real_part(hs_inner(s, s)) * inv));
    }
    for (const auto& s : spanning) extend_basis(out.basis_, s, inv, scale);
    for (const auto& g : generators) check_size(g, hilbert_dim);
    out.generators_ = std::move(generators);
    return out;
}

template <typename T>
OperatorAlgebra<T> OperatorAlgebra<T>::from_orthonormal(std::size_t hilbert_dim, std::vector<Matrix<T>> basis,
                                                        std::vector<Matrix<T>> generators, std::string name) {
    if (hilbert_dim == 0) throw Error(ErrorKind::DimensionMismatch, "hilbert_dim must be positive");
    for (const auto& b : basis) check_size(b, hilbert_dim);
    for (const auto& g : generators) check_size(g, hilbert_dim);
    OperatorAlgebra out;
    out.hilbert_dim_ = hilbert_dim;
    out.basis_ = std::move(basis);
    out.generators_ = std::move(generators);
    out.name_ = std::move(name);
    return out;
}

template <typename T>
OperatorAlgebra<T> OperatorAlgebra<T>::full(std::size_t n, std::string name) {
    std::vector<Matrix<T>> units;
    units.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) units.push_back(Matrix<T>::unit(n, i, j));
    std::vector<Matrix<T>> gens;
    for (std::size_t i = 0; i + 1 < n; ++i) gens.push_back(Matrix<T>::unit(n, i, i + 1));
    return from_spanning(n, units, std::move(gens), std::move(name));
}

template <typename T>
OperatorAlgebra<T> OperatorAlgebra<T>::scalars(std::size_t n, std::string name) {
    return from_spanning(n, {Matrix<T>::identity(n)}, {}, std::move(name));
}

template <typename T>
OperatorAlgebra<T> OperatorAlgebra<T>::renamed(std::string name) const {
    OperatorAlgebra out = *this;
    out.name_ = std::move(name);
    return out;
}

template <typename T>
T OperatorAlgebra<T>::inner(const Matrix<T>& a, const Matrix<T>& b) const {
    return hs_inner(a, b) / static_cast<double>(hilbert_dim_);
}

template <typename T>
double OperatorAlgebra<T>::norm(const Matrix<T>& a) const {
    return std::sqrt(std::max(real_part(inner(a, a)), 0.0));
}

template <typename T>
Vector<T> OperatorAlgebra<T>::coordinates(const Matrix<T>& x) const {
    check_size(x, hilbert_dim_);
    Vector<T> c(basis_.size());
    for (std::size_t k = 0; k < basis_.size(); ++k) c[k] = inner(x, basis_[k]);
    return c;
}

template <typename T>
Matrix<T> OperatorAlgebra<T>::element(const Vector<T>& coords) const {
    if (coords.size() != basis_.size()) throw Error(ErrorKind::DimensionMismatch, "coordinate length");
    Matrix<T> x(hilbert_dim_);
    for (std::size_t k = 0; k < basis_.size(); ++k)
        if (coords[k] != T{}) x.axpy(coords[k], basis_[k]);
    return x;
}

template <typename T>
Matrix<T> OperatorAlgebra<T>::project(const Matrix<T>& x) const {
    return element(coordinates(x));
}

template <typename T>
double OperatorAlgebra<T>::residual(const Matrix<T>& x) const {
    return norm(x - project(x));
}

template <typename T>
bool OperatorAlgebra<T>::contains(const Matrix<T>& x, double tol) const {
    return residual(x) <= tol;
}

template <typename T>
std::vector<Matrix<T>> OperatorAlgebra<T>::constraint_set() const {
    const auto& source = generators_.empty() ? basis_ : generators_;
    std::vector<Matrix<T>> out;
    for (const auto& g : source) {
        const Matrix<T> herm = g + g.adjoint();
        if (!is_scalar_identity(herm)) out.push_back(herm);
        if constexpr (is_complex_v<T>) {
            Matrix<T> skew = g - g.adjoint();
            skew *= cplx{0.0, 1.0};
            if (!is_scalar_identity(skew)) out.push_back(std::move(skew));
        } else {
            const Matrix<T> skew = g - g.adjoint();
            if (skew.max_abs() > tol::kStructural) out.push_back(skew);
        }
    }
    return out;
}

template <typename T>
void OperatorAlgebra<T>::validate(double tol) const {
    if (!contains(Matrix<T>::identity(hilbert_dim_), tol)) {
        throw Error(ErrorKind::NotASubalgebra, "identity is not in the span");
    }
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        if (residual(basis_[i].adjoint()) > tol) throw Error(ErrorKind::NotASubalgebra, "span not closed under adjoint");
        for (std::size_t j = 0; j < basis_.size(); ++j) {
            if (residual(basis_[i] * basis_[j]) > tol) {
                throw Error(ErrorKind::NotASubalgebra, "span not closed under products");
            }
        }
    }
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        for (std::size_t j = 0; j < basis_.size(); ++j) {
            const T g = inner(basis_[i], basis_[j]);
            const T expected = i == j ? T{1} : T{};
            if (std::sqrt(abs2(g - expected)) > tol) throw Error(ErrorKind::InvalidInput, "basis not orthonormal");
        }
    }
}

template <typename T>
OperatorAlgebra<T> generate_algebra(std::size_t hilbert_dim, const std::vector<Matrix<T>>& generators,
                                    std::string name) {
    if (hilbert_dim == 0) throw Error(ErrorKind::DimensionMismatch, "hilbert_dim must be positive");
    for (const auto& g : generators) check_size(g, hilbert_dim);

    std::vector<Matrix<T>> letters;
    for (const auto& g : generators) {
        letters.push_back(g);
        if (!is_hermitian(g)) letters.push_back(g.adjoint());
    }

    // Span of all words in the letters: close span{1} under left multiplication.
    const double inv = 1.0 / static_cast<double>(hilbert_dim);
    // Basis elements have unit norm, so |letter * b| is at most the operator norm of
    // the letter, itself at most sqrt(n) times its normalized Hilbert-Schmidt norm.
    std::vector<double> scales;
    for (const auto& l : letters) {
        scales.push_back(std::sqrt(real_part(hs_inner(l, l))));
    }
    std::vector<Matrix<T>> basis;
    extend_basis(basis, Matrix<T>::identity(hilbert_dim), inv, 1.0);
    const std::size_t cap = hilbert_dim * hilbert_dim;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t l = 0; l < letters.size(); ++l) {
            extend_basis(basis, letters[l] * basis[i], inv, scales[l]);
            if (basis.size() > cap) throw Error(ErrorKind::NonConvergence, "span exceeds hilbert_dim^2");
        }
    }
    return OperatorAlgebra<T>::from_orthonormal(hilbert_dim, std::move(basis), generators, std::move(name));
}

template <typename T>
std::vector<Matrix<T>> commuting_span(std::size_t n, const std::vector<Matrix<T>>& candidates,
                                      const std::vector<Matrix<T>>& constraints) {
    if (constraints.empty() || candidates.empty()) return candidates;
    const std::size_t k = candidates.size();
    const double inv = 1.0 / static_cast<double>(n);

    // Gram matrix of the commutator map restricted to the candidates; its kernel is
    // the commuting subspace.
    Matrix<T> gram(k);
    std::vector<Matrix<T>> images(k);
    for (const auto& g : constraints) {
        for (std::size_t j = 0; j < k; ++j) images[j] = commutator(g, candidates[j]);
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = i; j < k; ++j) {
                const T v = hs_inner(images[j], images[i]) * inv;
                gram(i, j) += v;
                if (j != i) gram(j, i) += realidx::conj(v);
            }
        }
    }
    const auto eig = hermitian_eig(gram);
    const double top = eig.values.empty() ? 0.0 : std::max(eig.values.back(), 1.0);
    const double threshold = 1e-10 * top;

    std::vector<Matrix<T>> out;
    for (std::size_t col = 0; col < k; ++col) {
        if (eig.values[col] > threshold) continue;
        Matrix<T> y(n);
        for (std::size_t j = 0; j < k; ++j) {
            const T c = eig.vectors(j, col);
            if (c != T{}) y.axpy(c, candidates[j]);
        }
        out.push_back(std::move(y));
    }
    return out;
}

template <typename T>
Matrix<T> random_element(const OperatorAlgebra<T>& a, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Vector<T> c(a.dim());
    for (auto& v : c) {
        if constexpr (is_complex_v<T>) {
            const double re = u(rng);
            const double im = u(rng);
            v = cplx{re, im};
        } else {
            v = u(rng);
        }
    }
    return a.element(c);
}

template <typename T>
Matrix<T> random_hermitian(const OperatorAlgebra<T>& a, std::mt19937_64& rng) {
    Matrix<T> x = random_element(a, rng);
    Matrix<T> h = x + x.adjoint();
    h *= T{0.5};
    return h;
}

ComplexMatrix random_unitary(const StarAlgebra& a, std::mt19937_64& rng) {
    const ComplexMatrix h = random_hermitian(a, rng);
    const auto eig = hermitian_eig(h);
    const std::size_t n = h.dim();
    ComplexMatrix u(n);
    for (std::size_t col = 0; col < n; ++col) {
        const cplx phase = std::exp(cplx{0.0, eig.values[col]});
        for (std::size_t i = 0; i < n; ++i) {
            const cplx vi = eig.vectors(i, col) * phase;
            for (std::size_t j = 0; j < n; ++j) u(i, j) += vi * std::conj(eig.vectors(j, col));
        }
    }
    return u;
}

namespace {

// Commutant of a complex algebra from a system of matrix units. A generic self-adjoint
// h has minimal projections of A as its spectral projections; a generic x then links
// the projections inside each factor block, and p_j x p_1 rescales to a partial
// isometry f_j1. On a block M_m (x) 1_k the commutant is spanned by
// sum_j (f_j1 w_a)(f_j1 w_b)* with w_a a basis of the range of p_1.
// Returns an empty optional if any genericity check fails.
std::optional<std::vector<ComplexMatrix>> commutant_by_matrix_units(const StarAlgebra& a) {
    const std::size_t n = a.hilbert_dim();
    std::mt19937_64 rng(0x5eedc0de1234ULL);
    const ComplexMatrix h = random_hermitian(a, rng);
    const ComplexMatrix x = random_element(a, rng);
    const auto eig = hermitian_eig(h);
    const double gap = 1e-7 * (1.0 + h.max_abs());

    std::vector<std::vector<std::size_t>> clusters;
    for (std::size_t col = 0; col < n; ++col) {
        if (clusters.empty() || eig.values[col] - eig.values[clusters.back().back()] > gap) clusters.emplace_back();
        clusters.back().push_back(col);
    }
    const ComplexMatrix xt = eig.vectors.adjoint() * x * eig.vectors;
    const double scale = std::max(1.0, xt.max_abs());
    const double zero = 1e-9 * scale;

    auto block = [&](std::size_t c, std::size_t d) {
        ComplexMatrix b(clusters[c].size(), clusters[d].size());
        for (std::size_t i = 0; i < clusters[c].size(); ++i)
            for (std::size_t j = 0; j < clusters[d].size(); ++j) b(i, j) = xt(clusters[c][i], clusters[d][j]);
        return b;
    };

    const std::size_t nc = clusters.size();
    for (std::size_t c = 0; c < nc; ++c) {
        // Minimality: p x p must be a multiple of p.
        ComplexMatrix b = block(c, c);
        const cplx s = b.trace() / static_cast<double>(b.rows());
        for (std::size_t i = 0; i < b.rows(); ++i) b(i, i) -= s;
        if (b.max_abs() > zero) return std::nullopt;
    }

    std::vector<bool> used(nc, false);
    std::vector<ComplexMatrix> out;
    for (std::size_t c = 0; c < nc; ++c) {
        if (used[c]) continue;
        const std::size_t k = clusters[c].size();
        std::vector<ComplexMatrix> isometries;  // columns f_j1 w_a in original coordinates
        for (std::size_t d = c; d < nc; ++d) {
            if (used[d]) continue;
            ComplexMatrix f;
            if (d == c) {
                f = ComplexMatrix::identity(k);
            } else {
                f = block(d, c);
                if (f.max_abs() <= zero) continue;
                if (f.rows() != k) return std::nullopt;
                const ComplexMatrix ff = f.adjoint() * f;
                const double lambda = ff.trace().real() / static_cast<double>(k);
                if (lambda <= zero * zero) return std::nullopt;
                f *= cplx{1.0 / std::sqrt(lambda)};
                if (!is_unitary(f, 1e-7)) return std::nullopt;
            }
            used[d] = true;
            ComplexMatrix v(n, k);
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t i = 0; i < k; ++i) {
                    cplx acc = 0.0;
                    for (std::size_t t = 0; t < k; ++t) acc += eig.vectors(r, clusters[d][t]) * f(t, i);
                    v(r, i) = acc;
                }
            isometries.push_back(std::move(v));
        }
        const double norm = std::sqrt(static_cast<double>(n) / static_cast<double>(isometries.size()));
        for (std::size_t ia = 0; ia < k; ++ia) {
            for (std::size_t ib = 0; ib < k; ++ib) {
                ComplexMatrix y(n);
                for (const auto& v : isometries)
                    for (std::size_t r = 0; r < n; ++r) {
                        const cplx vr = norm * v(r, ia);
                        for (std::size_t s = 0; s < n; ++s) y(r, s) += vr * std::conj(v(s, ib));
                    }
                out.push_back(std::move(y));
            }
        }
    }

    // Spot check against the constraints with one random combination.
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ComplexMatrix y(n);
    for (const auto& b : out) {
        const double re = u(rng);
        const double im = u(rng);
        y.axpy(cplx{re, im}, b);
    }
    const double ynorm = std::max(1.0, y.max_abs());
    for (const auto& g : a.constraint_set()) {
        if (commutator(g, y).max_abs() > 1e-8 * ynorm * std::max(1.0, g.max_abs())) return std::nullopt;
    }
    return out;
}

}  // namespace

template <typename T>
OperatorAlgebra<T> commutant(const OperatorAlgebra<T>& a) {
    const std::size_t n = a.hilbert_dim();
    std::string name = a.name().empty() ? std::string{} : a.name() + "'";
    if constexpr (is_complex_v<T>) {
        if (a.dim() > 0) {
            if (auto basis = commutant_by_matrix_units(a)) {
                return OperatorAlgebra<T>::from_orthonormal(n, std::move(*basis), {}, std::move(name));
            }
        }
    }
    const double scale = std::sqrt(static_cast<double>(n));
    const auto constraints = a.constraint_set();

    // A generic self-adjoint element h of A: A' sits inside the block-diagonal algebra
    // of h's eigenspaces, which is written down from the eigenvectors directly.
    std::mt19937_64 rng(0x5eedc0de1234ULL);
    const Matrix<T> h = a.dim() > 0 ? random_hermitian(a, rng) : Matrix<T>(n);
    const auto eig = hermitian_eig(h);
    const double cluster_gap = 1e-7 * (1.0 + h.max_abs());

    std::vector<std::vector<std::size_t>> clusters;
    for (std::size_t col = 0; col < n; ++col) {
        if (clusters.empty() || eig.values[col] - eig.values[clusters.back().back()] > cluster_gap) {
            clusters.emplace_back();
        }
        clusters.back().push_back(col);
    }
    std::vector<Matrix<T>> candidates;
    for (const auto& cl : clusters) {
        for (std::size_t i : cl) {
            for (std::size_t j : cl) {
                Matrix<T> y(n);
                for (std::size_t r = 0; r < n; ++r)
                    for (std::size_t c = 0; c < n; ++c)
                        y(r, c) = scale * eig.vectors(r, i) * realidx::conj(eig.vectors(c, j));
                candidates.push_back(std::move(y));
            }
        }
    }
    auto basis = commuting_span(n, candidates, constraints);
    return OperatorAlgebra<T>::from_orthonormal(n, std::move(basis), {}, std::move(name));
}

template <typename T>
OperatorAlgebra<T> center(const OperatorAlgebra<T>& a) {
    auto basis = commuting_span(a.hilbert_dim(), a.basis(), a.constraint_set());
    return OperatorAlgebra<T>::from_spanning(a.hilbert_dim(), basis);
}

template <typename T>
bool is_factor(const OperatorAlgebra<T>& a) {
    return center(a).dim() == 1;
}

template <typename T>
TraceFunctional<T> normalized_trace(const OperatorAlgebra<T>& a) {
    if (!is_factor(a)) throw Error(ErrorKind::NotAFactor, "normalized trace is unique only on a factor");
    return TraceFunctional<T>(a.hilbert_dim());
}

template <typename T>
bool subalgebra_check(const OperatorAlgebra<T>& n, const OperatorAlgebra<T>& m) {
    if (n.hilbert_dim() != m.hilbert_dim()) throw Error(ErrorKind::DimensionMismatch, "algebras act on different spaces");
    const auto one = Matrix<T>::identity(m.hilbert_dim());
    if (!m.contains(one) || !n.contains(one)) return false;
    for (const auto& b : n.basis()) {
        if (!m.contains(b)) return false;
    }
    return true;
}

template <typename T>
bool same_span(const OperatorAlgebra<T>& a, const OperatorAlgebra<T>& b, double tol) {
    if (a.hilbert_dim() != b.hilbert_dim() || a.dim() != b.dim()) return false;
    for (const auto& x : a.basis())
        if (!b.contains(x, tol)) return false;
    for (const auto& x : b.basis())
        if (!a.contains(x, tol)) return false;
    return true;
}

template <typename T>
OperatorAlgebra<T> relative_commutant(const OperatorAlgebra<T>& n, const OperatorAlgebra<T>& m) {
    if (n.hilbert_dim() != m.hilbert_dim()) throw Error(ErrorKind::DimensionMismatch, "algebras act on different spaces");
    auto basis = commuting_span(m.hilbert_dim(), m.basis(), n.constraint_set());
    return OperatorAlgebra<T>::from_spanning(m.hilbert_dim(), basis);
}

template <typename T>
OperatorAlgebra<T> tensor_identity(const OperatorAlgebra<T>& a, std::size_t c, std::string name) {
    const auto one = Matrix<T>::identity(c);
    std::vector<Matrix<T>> span;
    for (const auto& b : a.basis()) span.push_back(kron(b, one));
    std::vector<Matrix<T>> gens;
    for (const auto& g : a.generators()) gens.push_back(kron(g, one));
    return OperatorAlgebra<T>::from_spanning(a.hilbert_dim() * c, span, std::move(gens), std::move(name));
}

#define REALIDX_INSTANTIATE(T)                                                                             \
    template class OperatorAlgebra<T>;                                                                     \
    template OperatorAlgebra<T> generate_algebra<T>(std::size_t, const std::vector<Matrix<T>>&, std::string); \
    template OperatorAlgebra<T> commutant<T>(const OperatorAlgebra<T>&);                                  \
    template OperatorAlgebra<T> center<T>(const OperatorAlgebra<T>&);                                     \
    template bool is_factor<T>(const OperatorAlgebra<T>&);                                                \
    template TraceFunctional<T> normalized_trace<T>(const OperatorAlgebra<T>&);                           \
    template bool subalgebra_check<T>(const OperatorAlgebra<T>&, const OperatorAlgebra<T>&);              \
    template bool same_span<T>(const OperatorAlgebra<T>&, const OperatorAlgebra<T>&, double);             \
    template OperatorAlgebra<T> relative_commutant<T>(const OperatorAlgebra<T>&, const OperatorAlgebra<T>&); \
    template std::vector<Matrix<T>> commuting_span<T>(std::size_t, const std::vector<Matrix<T>>&,         \
                                                      const std::vector<Matrix<T>>&);                     \
    template Matrix<T> random_element<T>(const OperatorAlgebra<T>&, std::mt19937_64&);                    \
    template Matrix<T> random_hermitian<T>(const OperatorAlgebra<T>&, std::mt19937_64&);                  \
    template OperatorAlgebra<T> tensor_identity<T>(const OperatorAlgebra<T>&, std::size_t, std::string);

REALIDX_INSTANTIATE(double)
REALIDX_INSTANTIATE(cplx)

#undef REALIDX_INSTANTIATE

}  // namespace realidx
