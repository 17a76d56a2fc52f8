#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "realidx/linalg.hpp"
#include "realidx/state.hpp"

using namespace realidx;

namespace {

ComplexMatrix reconstruct(const EigenDecomposition<cplx>& e) {
    const std::size_t n = e.vectors.rows();
    ComplexMatrix d(n);
    for (std::size_t i = 0; i < n; ++i) d(i, i) = e.values[i];
    return e.vectors * d * e.vectors.adjoint();
}

}  // namespace

TEST_CASE("hermitian_eig on the identity and a diagonal") {
    const auto e = hermitian_eig(ComplexMatrix::identity(2));
    CHECK(e.values[0] == doctest::Approx(1.0));
    CHECK(e.values[1] == doctest::Approx(1.0));
    CHECK(is_unitary(e.vectors, 1e-10));

    const ComplexMatrix d{{3.0, 0.0}, {0.0, 1.0}};
    const auto f = hermitian_eig(d);
    CHECK(f.values[0] == doctest::Approx(1.0));
    CHECK(f.values[1] == doctest::Approx(3.0));
}

TEST_CASE("hermitian_eig on random Hermitian matrices") {
    std::mt19937_64 rng(11);
    for (std::size_t n : {1u, 2u, 3u, 6u, 10u, 16u}) {
        const ComplexMatrix x = oracle::random_hermitian(n, rng);
        const auto e = hermitian_eig(x);
        CHECK(std::is_sorted(e.values.begin(), e.values.end()));
        CHECK(is_unitary(e.vectors, 1e-10));
        CHECK(oracle::dist(reconstruct(e), x) < tol::reconstruction(n));

        // Residual x v - lambda v column by column, by direct multiplication.
        const ComplexMatrix xv = x * e.vectors;
        for (std::size_t c = 0; c < n; ++c)
            for (std::size_t r = 0; r < n; ++r) CHECK(std::abs(xv(r, c) - e.values[c] * e.vectors(r, c)) < 1e-10 * n);

        // Each eigenvalue is a root of the characteristic polynomial.
        for (double lambda : e.values) {
            ComplexMatrix shifted = x;
            for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= lambda;
            ComplexMatrix bump = x;
            for (std::size_t i = 0; i < n; ++i) bump(i, i) -= lambda + 0.5;
            CHECK(std::abs(oracle::determinant(shifted)) < 1e-8 * std::max(1.0, std::abs(oracle::determinant(bump))));
        }
    }
}

TEST_CASE("hermitian_eig recovers prescribed spectra, including degenerate ones") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 2 + trial % 6;
        std::vector<double> lambda(n);
        std::uniform_real_distribution<double> u(-3.0, 3.0);
        for (auto& l : lambda) l = u(rng);
        if (n > 2) lambda[1] = lambda[0];
        const ComplexMatrix q = hermitian_eig(oracle::random_hermitian(n, rng)).vectors;
        ComplexMatrix d(n);
        for (std::size_t i = 0; i < n; ++i) d(i, i) = lambda[i];
        const auto e = hermitian_eig(ComplexMatrix(q * d * q.adjoint()));
        std::sort(lambda.begin(), lambda.end());
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(e.values[i] - lambda[i]) < 1e-9);
    }
}

TEST_CASE("hermitian_eig rejects non-Hermitian input") {
    const ComplexMatrix x{{0.0, 1.0}, {0.0, 0.0}};
    CHECK_THROWS_AS(hermitian_eig(x), Error);
    try {
        hermitian_eig(x);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotHermitian);
    }
}

TEST_CASE("real symmetric eigensolver") {
    const RealMatrix x{{2.0, 1.0}, {1.0, 2.0}};
    const auto e = hermitian_eig(x);
    CHECK(e.values[0] == doctest::Approx(1.0));
    CHECK(e.values[1] == doctest::Approx(3.0));
}

TEST_CASE("spectral_projection") {
    CHECK(oracle::dist(spectral_projection(ComplexMatrix::identity(3), Interval(0.5, 1.5)), oracle::eye(3)) < 1e-12);
    const ComplexMatrix d{{1.0, 0.0}, {0.0, 3.0}};
    CHECK(oracle::dist(spectral_projection(d, Interval(0.0, 2.0)), oracle::unit(2, 0, 0)) < 1e-12);
    CHECK_THROWS_AS(Interval(2.0, 1.0), Error);

    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + trial % 7;
        const ComplexMatrix x = oracle::random_hermitian(n, rng);
        const auto e = hermitian_eig(x);
        const ComplexMatrix p = spectral_projection(x, Interval(-0.3, 0.8));
        CHECK(is_projection(p, 1e-9));
        CHECK(commutator(p, x).max_abs() < 1e-9);
        // Oracle: sum of rank-one eigenprojections in the window.
        ComplexMatrix ref(n);
        for (std::size_t c = 0; c < n; ++c) {
            if (e.values[c] < -0.3 || e.values[c] > 0.8) continue;
            ComplexVector v(n);
            for (std::size_t r = 0; r < n; ++r) v[r] = e.vectors(r, c);
            ref += outer(v, v);
        }
        CHECK(oracle::dist(p, ref) < 1e-9);
    }
}

TEST_CASE("windows [n-1, n] and the kernel resolve the identity") {
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + trial % 7;
        ComplexMatrix x = oracle::random_positive(n, 1 + trial % n, rng);
        x *= cplx{1.7};
        const auto w = spectral_windows(x);
        ComplexMatrix sum = w.kernel;
        for (const auto& p : w.windows) {
            CHECK(is_projection(p, 1e-9));
            sum += p;
        }
        CHECK(oracle::dist(sum, oracle::eye(n)) < 1e-9);
        CHECK(oracle::dist(w.support + w.kernel, oracle::eye(n)) < 1e-9);
        // Support is the range of x: x = support * x.
        CHECK(oracle::dist(w.support * x, x) < 1e-9);
    }
}

TEST_CASE("evaluate_weight_function collapses to f(x)") {
    CHECK(evaluate_weight_function(ComplexMatrix::identity(3), StateFunctional::normalized_trace(3)) ==
          doctest::Approx(1.0));
    const ComplexMatrix d{{0.5, 0.0}, {0.0, 2.5}};
    CHECK(evaluate_weight_function(d, StateFunctional::normalized_trace(2)) == doctest::Approx(1.5));

    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + trial % 7;
        const ComplexMatrix x = oracle::random_positive(n, n, rng);
        const auto f = StateFunctional::random(n, rng);
        // Oracle: Trace(density x) summed by hand.
        cplx direct = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) direct += f.density()(i, j) * x(j, i);
        CHECK(std::abs(evaluate_weight_function(x, f) - direct.real()) < 1e-10);
    }

    const ComplexMatrix neg{{-1.0, 0.0}, {0.0, 1.0}};
    CHECK_THROWS_AS(evaluate_weight_function(neg, StateFunctional::normalized_trace(2)), Error);
}

TEST_CASE("StateFunctional validates its density") {
    CHECK_THROWS_AS(StateFunctional(ComplexMatrix::identity(2)), Error);
    const ComplexMatrix bad{{1.5, 0.0}, {0.0, -0.5}};
    CHECK_THROWS_AS(StateFunctional{bad}, Error);
    std::mt19937_64 rng(16);
    const auto f = StateFunctional::random(4, rng);
    CHECK(std::abs(f.density().trace() - 1.0) < 1e-12);
    CHECK(is_positive(f.density()));
}

TEST_CASE("nullspace_real") {
    CHECK(nullspace_real(RealMatrix(4, 4)).size() == 4);
    CHECK(nullspace_real(RealMatrix::identity(5)).empty());

    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> small(-3, 3);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t rows = 2 + trial % 9;
        const std::size_t cols = 2 + (trial * 5) % 11;
        const std::size_t inner = 1 + trial % std::min(rows, cols);
        std::vector<std::vector<std::int64_t>> b(rows, std::vector<std::int64_t>(inner));
        std::vector<std::vector<std::int64_t>> c(inner, std::vector<std::int64_t>(cols));
        for (auto& row : b)
            for (auto& v : row) v = small(rng);
        for (auto& row : c)
            for (auto& v : row) v = small(rng);
        std::vector<std::vector<std::int64_t>> a(rows, std::vector<std::int64_t>(cols, 0));
        RealMatrix af(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) {
                for (std::size_t k = 0; k < inner; ++k) a[i][j] += b[i][k] * c[k][j];
                af(i, j) = static_cast<double>(a[i][j]);
            }
        const std::size_t rank = oracle::integer_rank(a);
        const auto kernel = nullspace_real(af);
        CHECK(kernel.size() == cols - rank);
        for (std::size_t p = 0; p < kernel.size(); ++p) {
            CHECK(norm(af * kernel[p]) < 1e-9);
            for (std::size_t q = 0; q < kernel.size(); ++q)
                CHECK(std::abs(dot(kernel[p], kernel[q]) - (p == q ? 1.0 : 0.0)) < 1e-10);
        }
    }
}

TEST_CASE("structural predicates and realification") {
    const ComplexMatrix j{{0.0, 1.0}, {-1.0, 0.0}};
    CHECK(is_unitary(j));
    CHECK_FALSE(is_hermitian(j));
    CHECK(is_projection(oracle::unit(3, 1, 1)));
    CHECK_FALSE(is_positive(ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}}));

    std::mt19937_64 rng(18);
    const ComplexMatrix a = oracle::random_complex(3, 3, rng);
    const ComplexMatrix b = oracle::random_complex(3, 3, rng);
    CHECK((realify(ComplexMatrix(a * b)) - realify(a) * realify(b)).max_abs() < 1e-12);
    CHECK((realify(a.adjoint()) - realify(a).transpose()).max_abs() < 1e-12);
    ComplexVector v{cplx{1.0, 2.0}, cplx{-0.5, 0.25}, cplx{0.0, -1.0}};
    const auto round = complexify(realify(v));
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(std::abs(round[i] - v[i]) == 0.0);
    const auto av = a * v;
    const auto rav = realify(a) * realify(v);
    const auto back = complexify(rav);
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(std::abs(back[i] - av[i]) < 1e-12);
}
