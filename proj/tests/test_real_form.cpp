#include <functional>
#include <numbers>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "realidx/gns.hpp"

using namespace realidx;
using fixture::left_tensor;

namespace {

void check_antiautomorphism(const AntiAutomorphism& a, std::mt19937_64& rng) {
    const std::size_t n = a.dim();
    for (int k = 0; k < 10; ++k) {
        const ComplexMatrix x = oracle::random_complex(n, n, rng);
        const ComplexMatrix y = oracle::random_complex(n, n, rng);
        CHECK(oracle::dist(a(x * y), a(y) * a(x)) < 1e-9);
        CHECK(oracle::dist(a(x.adjoint()), a(x).adjoint()) < 1e-9);
        CHECK(oracle::dist(a(a(x)), x) < 1e-9);
    }
}

int kind_error(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return static_cast<int>(e.kind());
    }
    return -1;
}

}  // namespace

TEST_CASE("antiautomorphism_from_unitary") {
    std::mt19937_64 rng(31);
    const auto t = AntiAutomorphism::from_unitary(oracle::eye(3));
    CHECK(t.sign() == 1);
    const ComplexMatrix x = oracle::random_complex(3, 3, rng);
    CHECK(oracle::dist(t(x), x.transpose()) < 1e-15);
    check_antiautomorphism(t, rng);

    const auto s = AntiAutomorphism::from_unitary(fixture::j2());
    CHECK(s.sign() == -1);
    check_antiautomorphism(s, rng);

    // u = diag(1, e^{i pi/3}) is symmetric with u conj(u) = 1, so alpha^2 = id holds.
    const ComplexMatrix d{{1.0, 0.0}, {0.0, std::polar(1.0, std::numbers::pi / 3.0)}};
    const auto a = AntiAutomorphism::from_unitary(d);
    CHECK(a.sign() == 1);
    for (const auto& e : fixture::units(2)) CHECK(oracle::dist(a(a(e)), e) < 1e-12);

    CHECK(kind_error([] { AntiAutomorphism::from_unitary(ComplexMatrix{{2.0, 0.0}, {0.0, 1.0}}); }) ==
          static_cast<int>(ErrorKind::NotUnitary));
    // A unitary that is neither symmetric nor antisymmetric.
    const double c = std::sqrt(0.5);
    CHECK(kind_error([&] { AntiAutomorphism::from_unitary(ComplexMatrix{{c, c}, {-c, c}}); }) ==
          static_cast<int>(ErrorKind::NotInvolutive));
    CHECK(kind_error([] { AntiAutomorphism::symplectic(3); }) == static_cast<int>(ErrorKind::OddDimensionSymplectic));
}

TEST_CASE("real form of M4 under the transpose is M4(R)") {
    const auto r = real_form(StarAlgebra::full(4), AntiAutomorphism::transpose(4));
    CHECK(r.dim() == 16);
    for (const auto& x : r.real_basis()) {
        double imag = 0.0;
        for (const auto& v : x.data()) imag = std::max(imag, std::abs(v.imag()));
        CHECK(imag < 1e-12);
    }
    std::mt19937_64 rng(32);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int k = 0; k < 100; ++k) {
        ComplexMatrix x(4);
        for (auto& v : x.data()) v = u(rng);
        CHECK(r.contains(x, 1e-9));
        CHECK(oracle::dist(r.alpha()(x), x.adjoint()) < 1e-12);
    }
    const ComplexMatrix ix = cplx{0.0, 1.0} * ComplexMatrix(oracle::eye(4));
    CHECK_FALSE(r.contains(ix));
}

TEST_CASE("real form of M2 under the symplectic alpha is the quaternions") {
    const auto r = real_form(StarAlgebra::full(2), AntiAutomorphism::symplectic(2));
    CHECK(r.dim() == 4);
    const cplx i{0.0, 1.0};
    const ComplexMatrix qi = i * fixture::pauli(3);
    const ComplexMatrix qj = i * fixture::pauli(2);
    const ComplexMatrix qk = i * fixture::pauli(1);
    for (const auto& q : {oracle::eye(2), qi, qj, qk}) CHECK(r.contains(q));
    const ComplexMatrix minus_one = cplx{-1.0} * oracle::eye(2);
    CHECK(oracle::dist(qi * qi, minus_one) < 1e-15);
    CHECK(oracle::dist(qj * qj, minus_one) < 1e-15);
    CHECK(oracle::dist(qk * qk, minus_one) < 1e-15);
    CHECK(oracle::dist(qi * qj * qk, minus_one) < 1e-15);
    CHECK_FALSE(r.contains(fixture::pauli(3)));
}

TEST_CASE("real form of the scalars") {
    const auto r = real_form(StarAlgebra::scalars(1), AntiAutomorphism::transpose(1));
    CHECK(r.dim() == 1);
    CHECK(same_span(envelope(r), StarAlgebra::scalars(1)));
}

TEST_CASE("real form invariants") {
    std::mt19937_64 rng(33);
    std::vector<std::pair<StarAlgebra, AntiAutomorphism>> cases{
        {StarAlgebra::full(2), AntiAutomorphism::transpose(2)},
        {StarAlgebra::full(3), AntiAutomorphism::transpose(3)},
        {StarAlgebra::full(4), AntiAutomorphism::symplectic(4)},
        {StarAlgebra::full(4), fixture::symplectic_outer()},
        {left_tensor(2, 2), AntiAutomorphism::transpose(4)},
        {left_tensor(2, 2), fixture::symplectic_outer()},
        {StarAlgebra::scalars(4), AntiAutomorphism::symplectic(4)},
    };
    for (const auto& [m, alpha] : cases) {
        const auto r = real_form(m, alpha);
        CHECK(r.dim() == m.dim());
        for (const auto& x : r.real_basis()) CHECK(oracle::dist(alpha(x), x.adjoint()) < 1e-8);
        // Orthonormal over the reals.
        for (std::size_t a = 0; a < r.dim(); ++a)
            for (std::size_t b = 0; b < r.dim(); ++b)
                CHECK(std::abs(m.inner(r.real_basis()[a], r.real_basis()[b]).real() - (a == b ? 1.0 : 0.0)) < 1e-10);
        // R and iR meet only in zero: the real span of R and iR has full real dimension.
        {
            std::vector<RealVector> stacked;
            for (const auto& x : r.real_basis())
                for (const cplx s : {cplx{1.0}, cplx{0.0, 1.0}}) {
                    ComplexVector c = m.coordinates(s * ComplexMatrix(x));
                    RealVector v = realify(c);
                    if (orthonormalize_against(stacked, v, 1e-8)) stacked.push_back(v);
                }
            CHECK(stacked.size() == 2 * r.dim());
        }
        CHECK(same_span(envelope(r), m, 1e-8));
        // The projection x -> (x + alpha(x)*)/2.
        for (int k = 0; k < 5; ++k) {
            const ComplexMatrix x = random_element(m, rng);
            const ComplexMatrix p = r.project(x);
            CHECK(r.contains(p, 1e-9));
            CHECK(oracle::dist(r.project(p), p) < 1e-9);
            const ComplexMatrix y = random_element(r, rng);
            CHECK(oracle::dist(r.project(y), y) < 1e-9);
        }
    }
}

TEST_CASE("orthogonal forms become real matrices after a change of basis") {
    // u = v v^t for a unitary v; then v* x v is real for every x in the real form.
    std::mt19937_64 rng(34);
    for (std::size_t n : {2u, 3u, 4u}) {
        const ComplexMatrix v = random_unitary(StarAlgebra::full(n), rng);
        const auto alpha = AntiAutomorphism::from_unitary(v * v.transpose());
        CHECK(classify(alpha) == RealFormKind::Orthogonal);
        const auto r = real_form(StarAlgebra::full(n), alpha);
        for (const auto& x : r.real_basis()) {
            const ComplexMatrix y = v.adjoint() * x * v;
            double imag = 0.0;
            for (const auto& e : y.data()) imag = std::max(imag, std::abs(e.imag()));
            CHECK(imag < 1e-9);
        }
    }
}

TEST_CASE("classify") {
    CHECK(classify(AntiAutomorphism::transpose(5)) == RealFormKind::Orthogonal);
    const auto s4 = AntiAutomorphism::symplectic(4);
    CHECK(classify(s4) == RealFormKind::Symplectic);
    CHECK(classify_on(s4, StarAlgebra::full(4)) == RealFormKind::Symplectic);
    CHECK(classify_on(AntiAutomorphism::transpose(5), StarAlgebra::full(5)) == RealFormKind::Orthogonal);
    // J_2 (x) 1_2 restricted to M_2 (x) 1_2 is still symplectic.
    CHECK(classify_on(fixture::symplectic_outer(), left_tensor(2, 2)) == RealFormKind::Symplectic);

    // The symplectic form of M4 has quaternionic 2x2 blocks.
    const auto r = real_form(StarAlgebra::full(4), s4);
    std::mt19937_64 rng(35);
    for (int k = 0; k < 20; ++k) {
        const ComplexMatrix x = random_element(r, rng);
        for (std::size_t bi = 0; bi < 2; ++bi)
            for (std::size_t bj = 0; bj < 2; ++bj) {
                ComplexMatrix b(2);
                for (std::size_t i = 0; i < 2; ++i)
                    for (std::size_t j = 0; j < 2; ++j) b(i, j) = x(2 * bi + i, 2 * bj + j);
                // Quaternion blocks [[a, b], [-conj b, conj a]].
                CHECK(std::abs(b(0, 0) - std::conj(b(1, 1))) < 1e-9);
                CHECK(std::abs(b(0, 1) + std::conj(b(1, 0))) < 1e-9);
            }
    }
}

TEST_CASE("real_type") {
    const auto r4 = real_form(StarAlgebra::full(4), AntiAutomorphism::transpose(4));
    CHECK(real_type(r4).type == "I_fin");
    CHECK(real_type(r4).size == 4);
    const auto h = real_form(StarAlgebra::full(2), AntiAutomorphism::symplectic(2));
    CHECK(real_type(h).size == 2);
    const auto b = real_form(fixture::block_m2_m2(), AntiAutomorphism::transpose(4));
    CHECK(kind_error([&] { real_type(b); }) == static_cast<int>(ErrorKind::NotAFactor));
}

TEST_CASE("real_form rejects alpha that leaves M") {
    // The transpose does not preserve the upper-triangular-generated span of a rotated algebra.
    std::mt19937_64 rng(36);
    const ComplexMatrix v = random_unitary(StarAlgebra::full(4), rng);
    std::vector<ComplexMatrix> gens;
    for (const auto& e : fixture::units(2)) gens.push_back(v * kron(e, oracle::eye(2)) * v.adjoint());
    const auto m = generate_algebra(4, gens);
    CHECK(kind_error([&] { real_form(m, AntiAutomorphism::transpose(4)); }) ==
          static_cast<int>(ErrorKind::AlphaDoesNotPreserveM));
}

TEST_CASE("commutant antiautomorphism") {
    std::mt19937_64 rng(37);
    {
        const auto m = StarAlgebra::scalars(1);
        const auto gns = GnsSpace::build(m);
        const auto ap = commutant_antiautomorphism(m, AntiAutomorphism::transpose(1), gns);
        CHECK(ap.dim() == 1);
        CHECK(std::abs(ap.u()(0, 0)) == doctest::Approx(1.0));
    }
    struct Case {
        StarAlgebra m;
        AntiAutomorphism alpha;
        RealFormKind kind;
    };
    const std::vector<Case> cases{
        {StarAlgebra::full(2), AntiAutomorphism::transpose(2), RealFormKind::Orthogonal},
        {StarAlgebra::full(3), AntiAutomorphism::transpose(3), RealFormKind::Orthogonal},
        {StarAlgebra::full(2), AntiAutomorphism::symplectic(2), RealFormKind::Symplectic},
        {StarAlgebra::full(4), AntiAutomorphism::symplectic(4), RealFormKind::Symplectic},
    };
    for (const auto& c : cases) {
        const auto gns = GnsSpace::build(c.m);
        const auto ap = commutant_antiautomorphism(c.m, c.alpha, gns);
        const auto mp = commutant(gns.left_algebra(c.m));
        CHECK(mp.dim() == c.m.dim());
        CHECK(ap.preserves(mp));
        CHECK(classify_on(ap, mp) == c.kind);

        // Oracle: J is x-hat -> (x*)-hat evaluated through the algebra, not via the GNS matrices.
        const auto j_apply = [&](const ComplexVector& v) { return gns.vector_of(gns.element_of(v).adjoint()); };
        for (int k = 0; k < 50; ++k) {
            const ComplexMatrix y = random_element(mp, rng);
            const ComplexMatrix z = random_element(mp, rng);
            CHECK(oracle::dist(ap(ap(y)), y) < 1e-8);
            CHECK(oracle::dist(ap(y * z), ap(z) * ap(y)) < 1e-8);
            CHECK(mp.contains(ap(y), 1e-8));
            if (k < 5) {
                // J y J as a matrix, column by column.
                const std::size_t d = gns.dim();
                ComplexMatrix jyj(d);
                for (std::size_t col = 0; col < d; ++col) {
                    ComplexVector e(d);
                    e[col] = 1.0;
                    const auto out = j_apply(y * j_apply(e));
                    for (std::size_t row = 0; row < d; ++row) jyj(row, col) = out[row];
                }
                const ComplexMatrix x = gns.element_of(jyj * gns.unit_vector());
                const ComplexMatrix lx = gns.left_action(c.alpha(x));
                ComplexMatrix literal(d);
                for (std::size_t col = 0; col < d; ++col) {
                    ComplexVector e(d);
                    e[col] = 1.0;
                    const auto out = j_apply(lx * j_apply(e));
                    for (std::size_t row = 0; row < d; ++row) literal(row, col) = out[row];
                }
                CHECK(oracle::dist(literal, ap(y)) < 1e-8);
            }
        }
    }
}
