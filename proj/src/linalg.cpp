#include "realidx/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace realidx {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NotHermitian: return "NotHermitian";
        case ErrorKind::NotPositive: return "NotPositive";
        case ErrorKind::NotUnitary: return "NotUnitary";
        case ErrorKind::NotInvolutive: return "NotInvolutive";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::NonConvergence: return "NonConvergence";
        case ErrorKind::NotAFactor: return "NotAFactor";
        case ErrorKind::NotASubalgebra: return "NotASubalgebra";
        case ErrorKind::AlphaDoesNotPreserveM: return "AlphaDoesNotPreserveM";
        case ErrorKind::AlphaNotPreserved: return "AlphaNotPreserved";
        case ErrorKind::NotAlphaCovariant: return "NotAlphaCovariant";
        case ErrorKind::OddDimensionSymplectic: return "OddDimensionSymplectic";
        case ErrorKind::GnsMismatch: return "GnsMismatch";
        case ErrorKind::ZeroVector: return "ZeroVector";
        case ErrorKind::DegenerateXi: return "DegenerateXi";
        case ErrorKind::QuasiBasisFailure: return "QuasiBasisFailure";
        case ErrorKind::NonScalarIndex: return "NonScalarIndex";
        case ErrorKind::InconsistentIndex: return "InconsistentIndex";
        case ErrorKind::InvalidQ: return "InvalidQ";
        case ErrorKind::InvalidInput: return "InvalidInput";
    }
    return "Unknown";
}

RealMatrix realify(const ComplexMatrix& x) {
    const std::size_t r = x.rows();
    const std::size_t c = x.cols();
    RealMatrix out(2 * r, 2 * c);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < c; ++j) {
            const cplx v = x(i, j);
            out(i, j) = v.real();
            out(i, j + c) = -v.imag();
            out(i + r, j) = v.imag();
            out(i + r, j + c) = v.real();
        }
    }
    return out;
}

RealVector realify(const ComplexVector& v) {
    RealVector out(2 * v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        out[i] = v[i].real();
        out[i + v.size()] = v[i].imag();
    }
    return out;
}

ComplexVector complexify(const RealVector& v) {
    if (v.size() % 2 != 0) throw Error(ErrorKind::DimensionMismatch, "odd real length");
    const std::size_t n = v.size() / 2;
    ComplexVector out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = cplx{v[i], v[i + n]};
    return out;
}

Interval::Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
    if (!(lo <= hi)) throw Error(ErrorKind::InvalidInput, "interval with lo > hi");
}

namespace {

template <typename T>
T phase_of(T v) {
    const double a = std::sqrt(abs2(v));
    return a == 0.0 ? T{1} : v / a;
}

}  // namespace

template <typename T>
EigenDecomposition<T> hermitian_eig(const Matrix<T>& x) {
    if (!x.is_square()) throw Error(ErrorKind::DimensionMismatch, "eigenproblem needs a square matrix");
    if (!x.all_finite()) throw Error(ErrorKind::InvalidInput, "non-finite matrix entry");
    if ((x - x.adjoint()).max_abs() > tol::kStructural) {
        throw Error(ErrorKind::NotHermitian, "||x - x*|| exceeds tolerance");
    }
    const std::size_t n = x.dim();
    Matrix<T> a = x + x.adjoint();
    a *= T{0.5};
    Matrix<T> v = Matrix<T>::identity(n);

    const double scale = std::max(a.frobenius_norm(), 1e-300);
    constexpr int kMaxSweeps = 100;
    bool converged = n <= 1;
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += abs2(a(p, q));
        if (std::sqrt(off) <= 1e-15 * scale) {
            converged = true;
            break;
        }
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const T apq = a(p, q);
                const double mag = std::sqrt(abs2(apq));
                if (mag <= 1e-300) continue;
                const double app = real_part(a(p, p));
                const double aqq = real_part(a(q, q));
                if (sweep > 3 && mag <= 1e-18 * (std::abs(app) + std::abs(aqq))) {
                    a(p, q) = T{};
                    a(q, p) = T{};
                    continue;
                }
                const double theta = (aqq - app) / (2.0 * mag);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const T ph = phase_of(apq);  // e^{i phi}
                const T phc = realidx::conj(ph);
                // A <- A G with G = [[c, s], [-s e^{-i phi}, c e^{-i phi}]] on (p, q)
                for (std::size_t k = 0; k < n; ++k) {
                    const T akp = a(k, p);
                    const T akq = a(k, q);
                    a(k, p) = c * akp - s * phc * akq;
                    a(k, q) = s * akp + c * phc * akq;
                }
                // A <- G* A
                for (std::size_t k = 0; k < n; ++k) {
                    const T apk = a(p, k);
                    const T aqk = a(q, k);
                    a(p, k) = c * apk - s * ph * aqk;
                    a(q, k) = s * apk + c * ph * aqk;
                }
                a(p, q) = T{};
                a(q, p) = T{};
                a(p, p) = T{real_part(a(p, p))};
                a(q, q) = T{real_part(a(q, q))};
                for (std::size_t k = 0; k < n; ++k) {
                    const T vkp = v(k, p);
                    const T vkq = v(k, q);
                    v(k, p) = c * vkp - s * phc * vkq;
                    v(k, q) = s * vkp + c * phc * vkq;
                }
            }
        }
    }
    if (!converged) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += abs2(a(p, q));
        if (std::sqrt(off) > 1e-12 * scale) throw Error(ErrorKind::NonConvergence, "Jacobi sweeps exhausted");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return real_part(a(i, i)) < real_part(a(j, j)); });
    EigenDecomposition<T> out{std::vector<double>(n), Matrix<T>(n)};
    for (std::size_t col = 0; col < n; ++col) {
        out.values[col] = real_part(a(order[col], order[col]));
        for (std::size_t k = 0; k < n; ++k) out.vectors(k, col) = v(k, order[col]);
    }
    return out;
}

template <typename T>
Matrix<T> spectral_projection(const EigenDecomposition<T>& eig, const Interval& w) {
    const std::size_t n = eig.vectors.rows();
    Matrix<T> p(n);
    for (std::size_t col = 0; col < eig.values.size(); ++col) {
        const double lambda = eig.values[col];
        if (lambda < w.lo - tol::kBoundary || lambda > w.hi + tol::kBoundary) continue;
        for (std::size_t i = 0; i < n; ++i) {
            const T vi = eig.vectors(i, col);
            for (std::size_t j = 0; j < n; ++j) p(i, j) += vi * realidx::conj(eig.vectors(j, col));
        }
    }
    return p;
}

template <typename T>
Matrix<T> spectral_projection(const Matrix<T>& x, const Interval& w) {
    return spectral_projection(hermitian_eig(x), w);
}

template <typename T>
Matrix<T> apply_function(const Matrix<T>& x, const std::function<double(double)>& f) {
    const auto eig = hermitian_eig(x);
    const std::size_t n = x.dim();
    Matrix<T> out(n);
    for (std::size_t col = 0; col < n; ++col) {
        const double fl = f(eig.values[col]);
        if (fl == 0.0) continue;
        for (std::size_t i = 0; i < n; ++i) {
            const T vi = eig.vectors(i, col) * fl;
            for (std::size_t j = 0; j < n; ++j) out(i, j) += vi * realidx::conj(eig.vectors(j, col));
        }
    }
    return out;
}

template <typename T>
double min_eigenvalue(const Matrix<T>& x) {
    const auto eig = hermitian_eig(x);
    return eig.values.empty() ? 0.0 : eig.values.front();
}

template <typename T>
bool is_positive(const Matrix<T>& x, double tol) {
    if (!is_hermitian(x)) return false;
    return min_eigenvalue(x) >= -tol;
}

namespace {

// Householder QR; returns the n x n upper factor R of an m x n matrix with m >= n.
RealMatrix householder_r(RealMatrix a) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    std::vector<double> v(m);
    for (std::size_t k = 0; k < n; ++k) {
        double alpha = 0.0;
        for (std::size_t i = k; i < m; ++i) alpha += a(i, k) * a(i, k);
        alpha = std::sqrt(alpha);
        if (alpha == 0.0) continue;
        if (a(k, k) > 0) alpha = -alpha;
        for (std::size_t i = k; i < m; ++i) v[i] = a(i, k);
        v[k] -= alpha;
        double vv = 0.0;
        for (std::size_t i = k; i < m; ++i) vv += v[i] * v[i];
        if (vv == 0.0) continue;
        for (std::size_t j = k; j < n; ++j) {
            double s = 0.0;
            for (std::size_t i = k; i < m; ++i) s += v[i] * a(i, j);
            s = 2.0 * s / vv;
            for (std::size_t i = k; i < m; ++i) a(i, j) -= s * v[i];
        }
    }
    RealMatrix r(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) r(i, j) = a(i, j);
    return r;
}

struct OneSidedSvd {
    std::vector<double> sigma;  // column norms after convergence
    RealMatrix v;               // right singular vectors as columns
};

OneSidedSvd one_sided_jacobi(RealMatrix u) {
    const std::size_t m = u.rows();
    const std::size_t n = u.cols();
    RealMatrix v = RealMatrix::identity(n);
    constexpr int kMaxSweeps = 80;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                double alpha = 0.0, beta = 0.0, gamma = 0.0;
                for (std::size_t k = 0; k < m; ++k) {
                    alpha += u(k, i) * u(k, i);
                    beta += u(k, j) * u(k, j);
                    gamma += u(k, i) * u(k, j);
                }
                if (gamma == 0.0 || std::abs(gamma) <= 1e-15 * std::sqrt(alpha * beta)) continue;
                rotated = true;
                const double zeta = (beta - alpha) / (2.0 * gamma);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (std::size_t k = 0; k < m; ++k) {
                    const double ui = u(k, i);
                    const double uj = u(k, j);
                    u(k, i) = c * ui - s * uj;
                    u(k, j) = s * ui + c * uj;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vi = v(k, i);
                    const double vj = v(k, j);
                    v(k, i) = c * vi - s * vj;
                    v(k, j) = s * vi + c * vj;
                }
            }
        }
        if (!rotated) break;
    }
    OneSidedSvd out{std::vector<double>(n), std::move(v)};
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < m; ++k) s += u(k, j) * u(k, j);
        out.sigma[j] = std::sqrt(s);
    }
    return out;
}

OneSidedSvd reduced_svd(const RealMatrix& a) {
    if (a.rows() > a.cols()) return one_sided_jacobi(householder_r(a));
    return one_sided_jacobi(a);
}

}  // namespace

std::vector<RealVector> nullspace_real(const RealMatrix& a) {
    if (!a.all_finite()) throw Error(ErrorKind::InvalidInput, "non-finite matrix entry");
    const std::size_t n = a.cols();
    if (n == 0) return {};
    if (a.rows() == 0) {
        std::vector<RealVector> all;
        for (std::size_t j = 0; j < n; ++j) {
            RealVector e(n, 0.0);
            e[j] = 1.0;
            all.push_back(std::move(e));
        }
        return all;
    }
    const auto svd = reduced_svd(a);
    const double threshold = tol::kNullspacePerDim * static_cast<double>(std::max(a.rows(), a.cols()));
    std::vector<RealVector> kernel;
    for (std::size_t j = 0; j < n; ++j) {
        if (svd.sigma[j] > threshold) continue;
        RealVector col(n);
        for (std::size_t k = 0; k < n; ++k) col[k] = svd.v(k, j);
        kernel.push_back(std::move(col));
    }
    return kernel;
}

std::vector<double> singular_values(const RealMatrix& a) {
    if (a.cols() == 0 || a.rows() == 0) return {};
    auto sigma = reduced_svd(a).sigma;
    std::sort(sigma.begin(), sigma.end(), std::greater<>());
    return sigma;
}

template <typename T>
bool orthonormalize_against(const std::vector<Vector<T>>& basis, Vector<T>& v, double drop) {
    const double original = norm(v);
    if (original == 0.0) return false;
    for (int pass = 0; pass < 2; ++pass) {
        for (const auto& b : basis) {
            const T c = dot(b, v);
            for (std::size_t k = 0; k < v.size(); ++k) v[k] -= c * b[k];
        }
        if (pass == 0 && norm(v) <= drop * original) return false;
    }
    const double r = norm(v);
    if (r <= drop * original) return false;
    for (auto& x : v) x /= r;
    return true;
}

template <typename T>
Matrix<T> projection_onto(const std::vector<Vector<T>>& orthonormal, std::size_t dim) {
    Matrix<T> p(dim);
    for (const auto& b : orthonormal) p += outer(b, b);
    return p;
}

#define REALIDX_INSTANTIATE(T)                                                                  \
    template EigenDecomposition<T> hermitian_eig<T>(const Matrix<T>&);                          \
    template Matrix<T> spectral_projection<T>(const Matrix<T>&, const Interval&);               \
    template Matrix<T> spectral_projection<T>(const EigenDecomposition<T>&, const Interval&);   \
    template Matrix<T> apply_function<T>(const Matrix<T>&, const std::function<double(double)>&); \
    template double min_eigenvalue<T>(const Matrix<T>&);                                        \
    template bool is_positive<T>(const Matrix<T>&, double);                                     \
    template bool orthonormalize_against<T>(const std::vector<Vector<T>>&, Vector<T>&, double); \
    template Matrix<T> projection_onto<T>(const std::vector<Vector<T>>&, std::size_t);

REALIDX_INSTANTIATE(double)
REALIDX_INSTANTIATE(cplx)

#undef REALIDX_INSTANTIATE

}  // namespace realidx
