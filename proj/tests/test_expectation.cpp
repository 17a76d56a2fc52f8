#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "realidx/expectation.hpp"

using namespace realidx;
using fixture::left_tensor;

namespace {

// (id (x) tr)(x) (x) 1_c on C^m (x) C^c, entry by entry.
ComplexMatrix partial_trace_oracle(const ComplexMatrix& x, std::size_t m, std::size_t c) {
    ComplexMatrix out(m * c);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            cplx s = 0.0;
            for (std::size_t k = 0; k < c; ++k) s += x(i * c + k, j * c + k);
            s /= static_cast<double>(c);
            for (std::size_t k = 0; k < c; ++k) out(i * c + k, j * c + k) = s;
        }
    return out;
}

// C 1_2 (+) M_2 inside M_2 (+) M_2.
StarAlgebra scalar_plus_block() {
    ComplexMatrix p(4);
    p(0, 0) = p(1, 1) = 1.0;
    std::vector<ComplexMatrix> gens{p};
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) gens.push_back(oracle::unit(4, i + 2, j + 2));
    return generate_algebra(4, gens);
}

// phi(x) 1 for the state phi = Trace(rho .).
ConditionalExpectation state_expectation(const StarAlgebra& m, const ComplexMatrix& rho) {
    const auto n = StarAlgebra::scalars(m.hilbert_dim());
    return ConditionalExpectation(CoordinateMap::from_function(
        m, n, [&](const ComplexMatrix& x) { return (rho * x).trace() * oracle::eye(x.dim()); }));
}

struct Pair {
    StarAlgebra m;
    StarAlgebra n;
    AntiAutomorphism alpha;
};

std::vector<Pair> real_pairs() {
    const auto m4 = StarAlgebra::full(4);
    return {{m4, left_tensor(2, 2), AntiAutomorphism::transpose(4)},
            {m4, left_tensor(2, 2), fixture::symplectic_outer()},
            {m4, StarAlgebra::scalars(4), AntiAutomorphism::transpose(4)},
            {m4, StarAlgebra::scalars(4), fixture::symplectic_outer()},
            {StarAlgebra::full(5), StarAlgebra::scalars(5), AntiAutomorphism::transpose(5)}};
}

}  // namespace

TEST_CASE("trace-preserving expectation examples") {
    std::mt19937_64 rng(51);
    const auto m4 = StarAlgebra::full(4);
    {
        const auto e = trace_preserving_expectation(m4, m4);
        CHECK(oracle::dist(e.map(), oracle::eye(16)) < 1e-12);
    }
    {
        const auto e = trace_preserving_expectation(m4, left_tensor(2, 2));
        const auto e11 = oracle::unit(2, 0, 0);
        CHECK(e(kron(e11, oracle::unit(2, 0, 1))).max_abs() < 1e-12);
        CHECK(oracle::dist(e(kron(e11, oracle::eye(2))), kron(e11, oracle::eye(2))) < 1e-12);
        for (int k = 0; k < 20; ++k) {
            const ComplexMatrix x = oracle::random_complex(4, 4, rng);
            CHECK(oracle::dist(e(x), partial_trace_oracle(x, 2, 2)) < 1e-12);
            CHECK(std::abs(e(x).trace() - x.trace()) < 1e-12);
        }
    }
    {
        const auto e = trace_preserving_expectation(m4, StarAlgebra::scalars(4));
        const ComplexMatrix x = oracle::random_complex(4, 4, rng);
        CHECK(oracle::dist(e(x), (x.trace() / 4.0) * oracle::eye(4)) < 1e-12);
    }
    CHECK_THROWS_AS(trace_preserving_expectation(left_tensor(2, 2), m4), Error);
}

TEST_CASE("expectation axioms") {
    const auto m4 = StarAlgebra::full(4);
    for (const auto& [m, n] : std::vector<std::pair<StarAlgebra, StarAlgebra>>{
             {m4, left_tensor(2, 2)}, {m4, m4}, {m4, StarAlgebra::scalars(4)}, {StarAlgebra::full(3), StarAlgebra::scalars(3)}}) {
        const auto rep = check_expectation_axioms(trace_preserving_expectation(m, n), 200);
        CHECK(rep.passed);
        CHECK(rep.min_schwarz_eigenvalue > -1e-9);
    }

    // x -> tr(x) 1 viewed as a map onto N = M. The three products in the multiplicative
    // identity all collapse to tr(x) tr(y) 1, so that identity survives; the failure is
    // that E does not fix N and is not N-bimodular. Direct evaluation on x = e11, y = e12:
    const auto tr_map = CoordinateMap::from_function(
        m4, m4, [](const ComplexMatrix& x) { return (x.trace() / 4.0) * oracle::eye(4); });
    const auto x = oracle::unit(4, 0, 0);
    const auto y = oracle::unit(4, 0, 1);
    CHECK(oracle::dist(tr_map(tr_map(x) * y), tr_map(x) * tr_map(y)) < 1e-15);
    CHECK(oracle::dist(tr_map(x * y), x * tr_map(y)) < 1e-15);  // both zero
    CHECK(oracle::dist(tr_map(x), x) > 0.5);
    const auto bad = check_expectation_axioms(tr_map, 50);
    CHECK(!bad.passed);
    CHECK(bad.multiplicative_residual < 1e-12);
    CHECK(bad.range_residual > 0.1);
    CHECK(bad.bimodule_residual > 0.1);

    // Conjugation by a nontrivial unitary: unital and positive but not multiplicative in (ii).
    std::mt19937_64 rng(52);
    const ComplexMatrix u = random_unitary(m4, rng);
    const auto ad = CoordinateMap::from_function(m4, m4, [&](const ComplexMatrix& z) { return u * z * u.adjoint(); });
    const auto rep = check_expectation_axioms(ad, 50);
    CHECK(!rep.passed);
    CHECK(rep.unit_residual < 1e-12);
    CHECK(rep.multiplicative_residual > 0.1);
}

TEST_CASE("kosaki_index") {
    const auto m4 = StarAlgebra::full(4);
    CHECK(std::abs(kosaki_index(trace_preserving_expectation(m4, m4)).value - 1.0) < 1e-9);
    CHECK(std::abs(kosaki_index(trace_preserving_expectation(m4, left_tensor(2, 2))).value - 4.0) < 1e-9);
    for (std::size_t m : {1u, 2u, 3u})
        for (std::size_t c : {1u, 2u, 3u}) {
            const auto big = StarAlgebra::full(m * c);
            const auto small = left_tensor(m, c);
            const double q = kosaki_index(trace_preserving_expectation(big, small), false).value;
            CHECK(std::abs(q - double(c * c)) < 1e-6);
            CHECK(std::abs(q - jones_index(big, small).value) < 1e-6);
        }

    // A non-tracial state phi = Trace(rho .) onto the scalars: u_ij = e_ij / sqrt(rho_j)
    // is a quasi-basis, so the index is Trace(rho^-1).
    const std::vector<cplx> diag{0.1, 0.2, 0.3, 0.4};
    const auto rho = ComplexMatrix::diagonal(diag);
    const auto phi = state_expectation(m4, rho);
    CHECK(check_expectation_axioms(phi, 50).passed);
    CHECK(std::abs(kosaki_index(phi).value - (10.0 + 5.0 + 10.0 / 3.0 + 2.5)) < 1e-8);

    // A non-faithful state has no quasi-basis.
    const std::vector<cplx> pure{1.0, 0.0, 0.0, 0.0};
    CHECK_THROWS_AS(kosaki_index(state_expectation(m4, ComplexMatrix::diagonal(pure))), Error);
}

TEST_CASE("real_kosaki_index") {
    const auto m4 = StarAlgebra::full(4);
    const auto t4 = AntiAutomorphism::transpose(4);
    CHECK(std::abs(real_kosaki_index(trace_preserving_expectation(m4, m4), t4).value - 1.0) < 1e-9);
    for (const auto& p : real_pairs()) {
        const auto e = trace_preserving_expectation(p.m, p.n);
        const double real_value = real_kosaki_index(e, p.alpha).value;
        CHECK(std::abs(real_value - kosaki_index(e).value) < 1e-6);
        const auto r = real_form(p.m, p.alpha);
        const auto q = real_form(p.n, p.alpha);
        CHECK(std::abs(real_value - real_index(r, q).value) < 1e-6);
    }
    CHECK(std::abs(real_kosaki_index(trace_preserving_expectation(m4, left_tensor(2, 2)), t4).value - 4.0) < 1e-9);
    CHECK(std::abs(real_kosaki_index(trace_preserving_expectation(m4, left_tensor(2, 2)), fixture::symplectic_outer()).value -
                   4.0) < 1e-9);

    // rho not transpose-invariant: the state expectation does not commute with alpha.
    ComplexMatrix rho = 0.25 * oracle::eye(4);
    rho(0, 1) = cplx{0.0, 0.1};
    rho(1, 0) = cplx{0.0, -0.1};
    try {
        real_kosaki_index(state_expectation(m4, rho), t4);
        FAIL("expected NotAlphaCovariant");
    } catch (const Error& err) {
        CHECK(err.kind() == ErrorKind::NotAlphaCovariant);
    }
}

TEST_CASE("scalarity_check") {
    const auto m4 = StarAlgebra::full(4);
    {
        const auto rep = scalarity_check(trace_preserving_expectation(m4, left_tensor(2, 2)));
        CHECK(rep.passed);
        CHECK(std::abs(rep.value - 4.0) < 1e-9);
    }
    {
        const auto rep = scalarity_check(trace_preserving_expectation(m4, m4));
        CHECK(rep.passed);
        CHECK(std::abs(rep.value - 1.0) < 1e-9);
    }
    // M_2 (+) M_2 over C (+) M_2: the first block contributes index 4, the second 1.
    const auto e = trace_preserving_expectation(fixture::block_m2_m2(), scalar_plus_block());
    const auto rep = scalarity_check(e);
    CHECK(!rep.passed);
    CHECK(rep.invariance_residual < 1e-7);
    REQUIRE(rep.block_values.size() == 2);
    CHECK(std::abs(rep.block_values[0] - 1.0) < 1e-9);
    CHECK(std::abs(rep.block_values[1] - 4.0) < 1e-9);
    CHECK_THROWS_AS(kosaki_index(e), Error);
}

TEST_CASE("symmetrized weights") {
    std::uint64_t seed = 1000;
    for (const auto& p : real_pairs()) {
        for (int k = 0; k < 4; ++k) {
            const auto t1 = random_weight(p.m, p.n, seed++);
            const auto rep = audit_symmetrized_weight(t1, p.alpha, 100, seed++);
            CHECK(rep.passed);
            CHECK(rep.kernel_dim == 0);
            CHECK(rep.idempotence_residual < 1e-10);
        }
        // A valid weight on the real pair exists exactly when one exists on the complex pair.
        const auto t = symmetrize_weight(OperatorWeight(trace_preserving_expectation(p.m, p.n)), p.alpha);
        CHECK(t.faithful);
        CHECK(t.normal);
        CHECK(t.semifinite);
        // The trace-preserving expectation is already covariant.
        CHECK(oracle::dist(t.map(), trace_preserving_expectation(p.m, p.n).map()) < 1e-12);
    }

    // Identity with the transpose: T = identity, and T(x) = x on R+.
    const auto m3 = StarAlgebra::full(3);
    const auto t3 = AntiAutomorphism::transpose(3);
    const OperatorWeight id(CoordinateMap(m3, m3, oracle::eye(9)));
    const auto t = symmetrize_weight(id, t3);
    CHECK(oracle::dist(t.map(), oracle::eye(9)) < 1e-12);
    std::mt19937_64 rng(53);
    const auto r = real_form(m3, t3);
    for (int k = 0; k < 10; ++k) {
        const ComplexMatrix x = random_element(r, rng);
        const ComplexMatrix pos = x.adjoint() * x;
        CHECK(oracle::dist(t(pos), pos) < 1e-12);
    }

    // Conjugating by a unitary of N' cap M leaves E0 unchanged, so covariance is broken
    // with a generic invertible conjugator instead; averaging keeps bimodularity over Q.
    const auto m4 = StarAlgebra::full(4);
    const auto n = StarAlgebra::scalars(4);
    const ComplexMatrix u = random_unitary(m4, rng);
    CHECK(oracle::dist(weight_from_conjugator(m4, n, u).map(), trace_preserving_expectation(m4, n).map()) < 1e-12);
    const auto t1 = random_weight(m4, n, 54);
    const auto a4 = AntiAutomorphism::transpose(4);
    const auto sym = symmetrize_weight(t1, a4);
    const auto q = real_form(n, a4);
    for (int k = 0; k < 100; ++k) {
        const ComplexMatrix x = random_element(m4, rng);
        const ComplexMatrix y = random_element(q, rng);
        CHECK(oracle::dist(sym(y * x * y.adjoint()), y * sym(x) * y.adjoint()) < 1e-9);
    }
    CHECK(oracle::dist(a4.coordinate_matrix(m4) * t1.map() * a4.coordinate_matrix(m4), t1.map()) > 1e-3);

    // Error kinds.
    const OperatorWeight neg(CoordinateMap(m3, m3, -1.0 * oracle::eye(9)));
    CHECK_THROWS_AS(symmetrize_weight(neg, t3), Error);
    const ComplexMatrix v = random_unitary(m4, rng);
    std::vector<ComplexMatrix> rotated;
    const auto n22 = left_tensor(2, 2);
    for (const auto& g : n22.generators()) rotated.push_back(v * g * v.adjoint());
    const auto tilted = generate_algebra(4, rotated);
    try {
        symmetrize_weight(random_weight(m4, tilted, 7), a4);
        FAIL("expected AlphaNotPreserved");
    } catch (const Error& err) {
        CHECK(err.kind() == ErrorKind::AlphaNotPreserved);
    }
}

TEST_CASE("basic construction") {
    const auto m4 = StarAlgebra::full(4);
    {
        const auto bc = basic_construction(m4, m4);
        CHECK(oracle::dist(bc.jones_projection, oracle::eye(16)) < 1e-12);
        CHECK(same_span(bc.tower_algebra, bc.m_action));
    }
    const auto n = left_tensor(2, 2);
    const auto bc = basic_construction(m4, n);
    CHECK(is_projection(bc.jones_projection, 1e-12));
    // L^2(N) has dimension 4 inside L^2(M) of dimension 16.
    CHECK(std::abs(bc.trace_e - 4.0 / 16.0) < 1e-12);
    CHECK(bc.compression_residual < 1e-9);
    CHECK(bc.projection_residual < 1e-9);
    CHECK(bc.tower_algebra.dim() == 64);
    CHECK(is_factor(bc.tower_algebra));
    const double index = kosaki_index(trace_preserving_expectation(m4, n)).value;
    CHECK(std::abs(bc.trace_e * index - 1.0) < 1e-7);
    CHECK_THROWS_AS(basic_construction(n, m4), Error);
}

TEST_CASE("Temperley-Lieb relations in the tower") {
    {
        const auto rep = jones_tower(StarAlgebra::full(4), left_tensor(2, 2), 2);
        CHECK(rep.depth == 2);
        CHECK(std::abs(rep.tau - 0.25) < 1e-12);
        CHECK(rep.tl_residual < 1e-8);
        CHECK(rep.hilbert_dims == std::vector<std::size_t>{16, 64});
    }
    {
        const auto rep = jones_tower(StarAlgebra::full(2), StarAlgebra::scalars(2), 3);
        CHECK(rep.depth == 3);
        CHECK(rep.tl_residual < 1e-8);
        CHECK(rep.commuting_residual < 1e-8);
        for (double t : rep.traces) CHECK(std::abs(t - 0.25) < 1e-9);
    }
    // Index 1: every e_k is the identity.
    const auto triv = jones_tower(StarAlgebra::full(2), StarAlgebra::full(2), 2);
    CHECK(std::abs(triv.tau - 1.0) < 1e-12);
    CHECK(triv.tl_residual < 1e-9);
    // The cap stops the tower instead of building huge spaces.
    const auto capped = jones_tower(StarAlgebra::full(4), StarAlgebra::scalars(4), 5, 256);
    CHECK(capped.truncated);
}
