#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "realidx/coupling.hpp"
#include "realidx/index_value.hpp"
#include "realidx/real_form.hpp"

namespace realidx {

/// Linear map M -> N stored as a matrix on the coordinates of M.
class CoordinateMap {
public:
    CoordinateMap() = default;
    CoordinateMap(StarAlgebra domain, StarAlgebra range, ComplexMatrix map);
    static CoordinateMap from_function(StarAlgebra domain, StarAlgebra range,
                                       const std::function<ComplexMatrix(const ComplexMatrix&)>& f);

    const StarAlgebra& domain() const noexcept { return domain_; }
    const StarAlgebra& range() const noexcept { return range_; }
    const ComplexMatrix& map() const noexcept { return map_; }

    ComplexMatrix operator()(const ComplexMatrix& x) const;

protected:
    StarAlgebra domain_;
    StarAlgebra range_;
    ComplexMatrix map_;
};

/// Unital positive idempotent N-bimodule map M -> N (validated, not assumed).
class ConditionalExpectation : public CoordinateMap {
public:
    using CoordinateMap::CoordinateMap;
    explicit ConditionalExpectation(CoordinateMap m) : CoordinateMap(std::move(m)) {}
};

/// Positive N-bimodule map M -> N, not necessarily unital. Normality and
/// semifiniteness hold automatically in finite dimensions.
class OperatorWeight : public CoordinateMap {
public:
    using CoordinateMap::CoordinateMap;
    explicit OperatorWeight(CoordinateMap m) : CoordinateMap(std::move(m)) {}

    bool faithful = true;
    bool normal = true;
    bool semifinite = true;
};

/// Orthogonal projection of M onto N for <x, y> = tr(y* x). Throws NotASubalgebra.
ConditionalExpectation trace_preserving_expectation(const StarAlgebra& m, const StarAlgebra& n);

struct AxiomReport {
    double unit_residual = 0.0;        ///< |E(1) - 1|
    double multiplicative_residual = 0.0;  ///< (ii): E(E(x)y), E(x)E(y), E(xE(y))
    double min_schwarz_eigenvalue = 0.0;   ///< (iii): min eig of E(x*x) - E(x)*E(x)
    double range_residual = 0.0;       ///< E(n) = n on N and E(x) in N
    double bimodule_residual = 0.0;    ///< E(a x b) = a E(x) b for a, b in N
    double idempotent_residual = 0.0;  ///< E(E(x)) = E(x)
    std::size_t samples = 0;
    double tol = 1e-8;
    bool passed = false;
};

AxiomReport check_expectation_axioms(const CoordinateMap& e, std::size_t samples = 200,
                                     std::uint64_t seed = kDefaultSeed, double tol = 1e-8);

/// T(x) = E0(a x a*) for an invertible a in the relative commutant N' cap M.
OperatorWeight weight_from_conjugator(const StarAlgebra& m, const StarAlgebra& n, const ComplexMatrix& a);

/// weight_from_conjugator with a seeded random invertible a.
OperatorWeight random_weight(const StarAlgebra& m, const StarAlgebra& n, std::uint64_t seed);

/// T(x) = (T1(x) + alpha(T1(alpha(x)))) / 2. Throws AlphaNotPreserved or NotPositive.
OperatorWeight symmetrize_weight(const OperatorWeight& t1, const AntiAutomorphism& alpha);

struct WeightReport {
    double min_positivity_eigenvalue = 0.0;  ///< min eig of T(x*x) over samples
    double faithfulness_min_eigenvalue = 0.0;  ///< min eig of the Gram form tr(T(x*x))
    std::size_t kernel_dim = 0;
    double bimodule_residual = 0.0;     ///< over the real form Q of N
    double alpha_covariance_residual = 0.0;
    double idempotence_residual = 0.0;  ///< symmetrizing twice vs once
    double positive_part_residual = 0.0;  ///< T(x) = (T1(x) + alpha(T1(x)))/2 on R+
    double real_range_residual = 0.0;     ///< T maps R+ into the real form of N
    bool passed = false;
};

/// Audits T = symmetrize_weight(t1, alpha) on seeded samples.
WeightReport audit_symmetrized_weight(const OperatorWeight& t1, const AntiAutomorphism& alpha, std::size_t samples,
                                      std::uint64_t seed, double tol = 1e-8);

struct QuasiBasis {
    std::vector<ComplexMatrix> elements;
    ComplexMatrix index_element;  ///< sum u_i u_i*
    double reconstruction_residual = 0.0;
};

/// N-valued Gram-Schmidt over a linear basis of M (or R's real basis when `over` is
/// given). Throws QuasiBasisFailure.
QuasiBasis quasi_basis(const CoordinateMap& e, const RealForm* over = nullptr);

/// E^{-1}(1) = sum u_i u_i*. Throws NonScalarIndex if not scalar; for the trace-preserving
/// expectation with cross_check set, throws InconsistentIndex when it disagrees with jones_index.
IndexValue kosaki_index(const ConditionalExpectation& e, bool cross_check = true);

/// Same over R = (M, alpha) and Q = (N, alpha) with real scalars. Throws NotAlphaCovariant,
/// AlphaNotPreserved, QuasiBasisFailure, or InconsistentIndex.
IndexValue real_kosaki_index(const ConditionalExpectation& e, const AntiAutomorphism& alpha);

struct ScalarityReport {
    double value = 0.0;  ///< tr(sum u_i u_i*)
    double invariance_residual = 0.0;
    double scalar_residual = 0.0;
    std::vector<double> block_values;  ///< eigenvalues of the index element, ascending
    bool passed = false;
};

/// Conjugation invariance of sum u_i u_i* under random unitaries of M, and its distance from scalars.
ScalarityReport scalarity_check(const ConditionalExpectation& e, std::size_t samples = 20,
                                std::uint64_t seed = kDefaultSeed);

struct BasicConstruction {
    StarAlgebra m_action;          ///< M acting on L^2(M)
    StarAlgebra tower_algebra;     ///< M1 = <M, e_N>; empty if not generated
    ComplexMatrix jones_projection;
    double trace_e = 0.0;          ///< tr(e_N) on L^2(M)
    double compression_residual = 0.0;  ///< e_N x e_N - E(x) e_N
    double projection_residual = 0.0;   ///< e_N x-hat vs E(x)-hat
};

/// Throws NotASubalgebra or NotAFactor.
BasicConstruction basic_construction(const StarAlgebra& m, const StarAlgebra& n, bool generate_tower_algebra = true,
                                     std::uint64_t seed = kDefaultSeed);

struct TowerReport {
    double tau = 0.0;  ///< tr(e_1)
    std::vector<std::size_t> hilbert_dims;
    std::vector<std::size_t> algebra_dims;
    std::vector<double> traces;  ///< tr(e_k)
    double tl_residual = 0.0;    ///< e_i e_{i+-1} e_i - tau e_i
    double commuting_residual = 0.0;  ///< [e_i, e_j] for |i - j| >= 2
    std::size_t depth = 0;
    bool truncated = false;
};

/// Jones projections e_1..e_depth of M0 = N, M1 = M, ... represented on the last
/// L^2 space. Stops before a step whose L^2 space would exceed max_dim.
TowerReport jones_tower(const StarAlgebra& m, const StarAlgebra& n, std::size_t depth, std::size_t max_dim = 256);

}  // namespace realidx
