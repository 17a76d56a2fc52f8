// Hand-built algebras shared by the tests.
#pragma once

#include <vector>

#include "oracles.hpp"
#include "realidx/algebra.hpp"
#include "realidx/real_form.hpp"

namespace fixture {

using namespace realidx;

inline std::vector<ComplexMatrix> units(std::size_t n) {
    std::vector<ComplexMatrix> out;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out.push_back(oracle::unit(n, i, j));
    return out;
}

// M_m (x) 1_c on C^{mc}.
inline StarAlgebra left_tensor(std::size_t m, std::size_t c) {
    std::vector<ComplexMatrix> gens;
    for (const auto& e : units(m)) gens.push_back(kron(e, oracle::eye(c)));
    return generate_algebra(m * c, gens);
}

inline ComplexMatrix j2() { return ComplexMatrix{{0.0, 1.0}, {-1.0, 0.0}}; }

// u = J_2 (x) 1_2, which preserves M_2 (x) 1_2.
inline AntiAutomorphism symplectic_outer() { return AntiAutomorphism::from_unitary(kron(j2(), oracle::eye(2))); }

inline StarAlgebra block_m2_m2() {
    std::vector<ComplexMatrix> gens;
    for (const auto& e : units(2)) {
        ComplexMatrix a(4), b(4);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) {
                a(i, j) = e(i, j);
                b(i + 2, j + 2) = e(i, j);
            }
        gens.push_back(a);
        gens.push_back(b);
    }
    return generate_algebra(4, gens);
}

inline ComplexMatrix pauli(int k) {
    const cplx i{0.0, 1.0};
    switch (k) {
        case 1: return ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}};
        case 2: return ComplexMatrix{{0.0, -i}, {i, 0.0}};
        default: return ComplexMatrix{{1.0, 0.0}, {0.0, -1.0}};
    }
}

}  // namespace fixture
