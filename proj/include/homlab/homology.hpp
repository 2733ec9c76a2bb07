#ifndef HOMLAB_HOMOLOGY_HPP
#define HOMLAB_HOMOLOGY_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "homlab/chain.hpp"
#include "homlab/chebyshev.hpp"
#include "homlab/complex.hpp"

namespace homlab {

enum class Method { Exact, Stochastic };

std::string_view to_string(Method m);

/// How rank questions are answered: exact rational elimination or the stochastic pipeline.
struct Mode {
    Method method = Method::Exact;
    StochasticParams params;

    static Mode exact() { return {}; }
    static Mode stochastic(const StochasticParams& p) { return {Method::Stochastic, p}; }
};

/// ∂_r c = 0 in exact arithmetic. Chains of dimension 0 are always cycles.
bool is_cycle_exact(const SimplicialComplex& k, const Chain& c);

enum class CycleVerdict { LikelyCycle, NotCycle };

std::string_view to_string(CycleVerdict v);

struct CycleDetection {
    CycleVerdict verdict = CycleVerdict::LikelyCycle;
    double success_probability = 0.0; // p per trial
    std::size_t trials = 0;           // ceil(1/eta)
    std::size_t successes = 0;
};

/// p = ‖(∂ᵀ∂ / ((r+1)|S_r|)) ĉ‖², exactly zero when ∂c = 0. Throws ZeroChain.
double cycle_detection_probability(const SimplicialComplex& k, const Chain& c);

/// Bernoulli emulation of repeated ancilla measurements; one-sided (cycles are never rejected).
CycleDetection detect_cycle_stochastic(const SimplicialComplex& k, const Chain& c, double eta, std::uint64_t seed);

/**
 * Outcome of a triviality or equivalence test.
 *
 * In stochastic mode `confident` is false when either rounded rank sits within
 * two standard errors of a rounding boundary, when the paired difference of the
 * two estimates is within two standard errors of 1/2, or when the paired
 * difference disagrees with the rounded comparison.
 */
struct HomologyTest {
    bool answer = false; // trivial, or equivalent for pairs
    Method method = Method::Exact;
    bool confident = true;
    std::size_t rank_boundary = 0;  // rank ∂_{r+1} (rounded estimate in stochastic mode)
    std::size_t rank_augmented = 0; // rank [∂_{r+1} | c]
    std::optional<RankEstimate> boundary_estimate;
    std::optional<RankEstimate> augmented_estimate;
    double paired_difference = 0.0; // N × mean of per-probe differences
    double paired_std_error = 0.0;
};

/// Is the cycle c a boundary? Throws NotACycle.
HomologyTest test_trivial(const SimplicialComplex& k, const Chain& c, const Mode& mode);

/// test_trivial on c1 − c2, with the difference taken exactly. Throws NotACycle, DimensionMismatch.
HomologyTest test_equivalent(const SimplicialComplex& k, const Chain& c1, const Chain& c2, const Mode& mode);

struct StageResult {
    std::size_t stage = 0; // 0-based filtration index
    bool answer = false;   // trivial, or equivalent when two cycles are tracked
    Method method = Method::Exact;
    bool confident = true;
};

struct ClassReport {
    bool pair = false;
    std::vector<StageResult> stages;
};

/**
 * Tracks one cycle (triviality) or two cycles (equivalence) through a
 * filtration. The cycles index layer r of stages[0]; they are carried to later
 * stages by simplex identity. Throws NotAFiltrationChain, NotACycle.
 */
ClassReport track_classes(const std::vector<SimplicialComplex>& stages, const std::vector<Chain>& cycles,
                          const Mode& mode);

/// `count` random integer combinations (coefficients in {−2..2}, not all zero) of an exact basis of ker ∂_r.
std::vector<Chain> sample_cycles(const SimplicialComplex& k, int r, std::size_t count, std::uint64_t seed);

struct TrackingBetti {
    std::size_t betti = 0;           // rank of the nontrivial representatives modulo boundaries
    std::size_t representatives = 0; // classes kept after deduplication
    std::size_t chain_rank = 0;      // plain rank of the representative matrix (exact mode)
    std::optional<RankEstimate> estimate;
};

/**
 * Lower bound on β_r from sampled cycles.
 *
 * Cycles are deduplicated by test_equivalent (first seen wins) and trivial
 * ones dropped. The count is the rank of the representatives modulo im ∂_{r+1};
 * in stochastic mode the representatives are projected off im ∂_{r+1} and the
 * rank of their normalized Gram matrix is estimated.
 */
TrackingBetti betti_via_tracking(const SimplicialComplex& k, int r, const std::vector<Chain>& cycles,
                                 const Mode& mode);

} // namespace homlab

#endif
