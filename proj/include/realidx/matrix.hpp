#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <type_traits>
#include <vector>

#include "realidx/error.hpp"
#include "realidx/tolerance.hpp"

namespace realidx {

using cplx = std::complex<double>;

template <typename T>
inline constexpr bool is_complex_v = std::is_same_v<T, cplx>;

inline double conj(double x) { return x; }
inline cplx conj(cplx x) { return std::conj(x); }
inline double real_part(double x) { return x; }
inline double real_part(cplx x) { return x.real(); }
inline double abs2(double x) { return x * x; }
inline double abs2(cplx x) { return std::norm(x); }

template <typename T>
using Vector = std::vector<T>;

/// Dense row-major matrix over double or std::complex<double>.
template <typename T>
class Matrix {
public:
    using value_type = T;

    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T{}) {}
    explicit Matrix(std::size_t dim) : Matrix(dim, dim) {}

    Matrix(std::initializer_list<std::initializer_list<T>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& row : rows) {
            if (row.size() != cols_) {
                throw Error(ErrorKind::DimensionMismatch, "ragged matrix literal");
            }
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static Matrix identity(std::size_t dim) {
        Matrix m(dim);
        for (std::size_t i = 0; i < dim; ++i) m(i, i) = T{1};
        return m;
    }

    static Matrix unit(std::size_t dim, std::size_t i, std::size_t j) {
        Matrix m(dim);
        m(i, j) = T{1};
        return m;
    }

    static Matrix diagonal(std::span<const T> values) {
        Matrix m(values.size());
        for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t dim() const noexcept { return rows_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<T> data() noexcept { return data_; }
    std::span<const T> data() const noexcept { return data_; }

    Matrix& operator+=(const Matrix& o) {
        check_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        check_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }
    Matrix& operator*=(T s) {
        for (auto& v : data_) v *= s;
        return *this;
    }

    /// Adds s * o in place.
    void axpy(T s, const Matrix& o) {
        check_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += s * o.data_[k];
    }

    Matrix adjoint() const {
        Matrix r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = realidx::conj((*this)(i, j));
        return r;
    }

    Matrix transpose() const {
        Matrix r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    Matrix conjugate() const {
        Matrix r(*this);
        for (auto& v : r.data_) v = realidx::conj(v);
        return r;
    }

    T trace() const {
        T t{};
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
        return t;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const auto& v : data_) s += abs2(v);
        return std::sqrt(s);
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& v : data_) m = std::max(m, std::sqrt(abs2(v)));
        return m;
    }

    bool all_finite() const {
        for (const auto& v : data_) {
            if constexpr (is_complex_v<T>) {
                if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
            } else {
                if (!std::isfinite(v)) return false;
            }
        }
        return true;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    void check_same_shape(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) {
            throw Error(ErrorKind::DimensionMismatch, "matrix shapes differ");
        }
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using ComplexMatrix = Matrix<cplx>;
using RealMatrix = Matrix<double>;
using ComplexVector = Vector<cplx>;
using RealVector = Vector<double>;

template <typename T>
Matrix<T> operator+(Matrix<T> a, const Matrix<T>& b) {
    a += b;
    return a;
}

template <typename T>
Matrix<T> operator-(Matrix<T> a, const Matrix<T>& b) {
    a -= b;
    return a;
}

template <typename T>
Matrix<T> operator*(T s, Matrix<T> a) {
    a *= s;
    return a;
}

inline ComplexMatrix operator*(double s, ComplexMatrix a) {
    a *= cplx{s, 0.0};
    return a;
}

template <typename T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.cols() != b.rows()) throw Error(ErrorKind::DimensionMismatch, "matrix product shapes");
    Matrix<T> c(a.rows(), b.cols());
    const std::size_t n = b.cols();
    const T* bd = b.data().data();
    T* cd = c.data().data();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        T* crow = cd + i * n;
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const T aik = a(i, k);
            if (aik == T{}) continue;
            const T* brow = bd + k * n;
            for (std::size_t j = 0; j < n; ++j) crow[j] += aik * brow[j];
        }
    }
    return c;
}

template <typename T>
Vector<T> operator*(const Matrix<T>& a, const Vector<T>& v) {
    if (a.cols() != v.size()) throw Error(ErrorKind::DimensionMismatch, "matrix-vector shapes");
    Vector<T> r(a.rows(), T{});
    for (std::size_t i = 0; i < a.rows(); ++i) {
        T s{};
        for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

/// Hilbert-Schmidt pairing Trace(b* a), without normalization.
template <typename T>
T hs_inner(const Matrix<T>& a, const Matrix<T>& b) {
    T s{};
    const auto ad = a.data();
    const auto bd = b.data();
    for (std::size_t k = 0; k < ad.size(); ++k) s += realidx::conj(bd[k]) * ad[k];
    return s;
}

template <typename T>
Matrix<T> kron(const Matrix<T>& a, const Matrix<T>& b) {
    Matrix<T> r(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return r;
}

template <typename T>
Matrix<T> commutator(const Matrix<T>& a, const Matrix<T>& b) {
    return a * b - b * a;
}

// Vector helpers.

template <typename T>
T dot(const Vector<T>& a, const Vector<T>& b) {
    T s{};
    for (std::size_t k = 0; k < a.size(); ++k) s += realidx::conj(a[k]) * b[k];
    return s;
}

template <typename T>
double norm(const Vector<T>& v) {
    double s = 0.0;
    for (const auto& x : v) s += abs2(x);
    return std::sqrt(s);
}

template <typename T>
Vector<T> conjugate(Vector<T> v) {
    for (auto& x : v) x = realidx::conj(x);
    return v;
}

/// Outer product v w*.
template <typename T>
Matrix<T> outer(const Vector<T>& v, const Vector<T>& w) {
    Matrix<T> r(v.size(), w.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < w.size(); ++j) r(i, j) = v[i] * realidx::conj(w[j]);
    return r;
}

// Structural predicates, all at an absolute tolerance.

template <typename T>
bool is_hermitian(const Matrix<T>& x, double tol = tol::kStructural) {
    return x.is_square() && (x - x.adjoint()).max_abs() <= tol;
}

template <typename T>
bool is_unitary(const Matrix<T>& u, double tol = tol::kStructural) {
    return u.is_square() && (u.adjoint() * u - Matrix<T>::identity(u.dim())).max_abs() <= tol;
}

template <typename T>
bool is_projection(const Matrix<T>& p, double tol = tol::kStructural) {
    return is_hermitian(p, tol) && (p * p - p).max_abs() <= tol;
}

/// Realification x = a + ib  ->  [[a, -b], [b, a]] acting on R^{2n}.
RealMatrix realify(const ComplexMatrix& x);
RealVector realify(const ComplexVector& v);
ComplexVector complexify(const RealVector& v);

inline ComplexMatrix to_complex(const RealMatrix& x) {
    ComplexMatrix r(x.rows(), x.cols());
    for (std::size_t k = 0; k < x.data().size(); ++k) r.data()[k] = x.data()[k];
    return r;
}

}  // namespace realidx
