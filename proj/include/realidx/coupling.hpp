#pragma once

#include <cstdint>
#include <vector>

#include "realidx/gns.hpp"
#include "realidx/index_value.hpp"

namespace realidx {

inline constexpr std::uint64_t kDefaultSeed = 20020101;

/// Orthogonal projection onto span{a xi : a in basis(A)}, using scalars of the
/// algebra's own field. Throws ZeroVector.
template <typename T>
Matrix<T> cyclic_projection(const OperatorAlgebra<T>& a, const Vector<T>& xi);

/// Real cyclic projection of a real form acting on H viewed as R^{2n}.
RealMatrix cyclic_projection(const RealForm& r, const ComplexVector& xi);

struct CouplingResult {
    double value = 0.0;
    std::vector<double> samples;
    double spread = 0.0;

    /// spread < 1e-7 * value.
    bool xi_independent() const { return spread < 1e-7 * value; }
};

/// dim_F(H) = tr_F(E^{F'}_xi) / tr_{F'}(E^F_xi) for F acting on T^n, averaged over five
/// seeded random xi. Throws NotAFactor or DegenerateXi.
template <typename T>
CouplingResult coupling_constant(const OperatorAlgebra<T>& f, std::uint64_t seed = kDefaultSeed);

/// Coupling of a real form acting on H viewed as a real space of dimension 2n.
CouplingResult coupling_constant(const RealForm& r, std::uint64_t seed = kDefaultSeed);

/// [M : N] = dim_N(L^2(M)). Throws NotASubalgebra or NotAFactor.
IndexValue jones_index(const StarAlgebra& m, const StarAlgebra& n, std::uint64_t seed = kDefaultSeed);
/// The coupling behind jones_index, with its per-vector samples.
CouplingResult jones_coupling(const StarAlgebra& m, const StarAlgebra& n, std::uint64_t seed = kDefaultSeed);

/// [R : Q] = dim_Q(L^2(M, alpha)), checked against the index of the envelopes.
/// Throws NotASubalgebra, AlphaNotPreserved, or InconsistentIndex.
IndexValue real_index(const RealForm& r, const RealForm& q, std::uint64_t seed = kDefaultSeed);
CouplingResult real_coupling(const RealForm& r, const RealForm& q, std::uint64_t seed = kDefaultSeed);

/// [M : Q] = 2 [M : Q + iQ]. Throws NotASubalgebra.
IndexValue mixed_index(const StarAlgebra& m, const RealForm& q, std::uint64_t seed = kDefaultSeed);

struct HalvingReport {
    double complex_dim = 0.0;      ///< dim_M(H)
    double real_points_dim = 0.0;  ///< dim_(M,alpha)(H_r)
    double real_space_dim = 0.0;   ///< dim_(M,alpha)(H as a real space)
    /// Symplectic alpha has no real points on H itself; H is replaced by H (x) C^2.
    bool doubled = false;
    double complex_dim_original = 0.0;  ///< dim_M(H) before doubling
    double max_residual = 0.0;
    bool passed = false;
};

/// Compares dim_M(H), dim_R(H_r) and half of dim_R(H) within tol.
HalvingReport verify_halving(const StarAlgebra& m, const AntiAutomorphism& alpha, double tol = tol::kIndex,
                             std::uint64_t seed = kDefaultSeed);

}  // namespace realidx
