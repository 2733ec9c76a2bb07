#ifndef HOMLAB_CHEBYSHEV_HPP
#define HOMLAB_CHEBYSHEV_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "homlab/sparse.hpp"

namespace homlab {

/**
 * Polynomial approximation of the spectral indicator 1{x > delta} on [0, 1].
 *
 * The step is smoothed into an erf ramp centred at delta/2 with width delta/2
 * and projected onto Chebyshev polynomials of the shifted variable t = 2x - 1,
 * which puts the zero eigenvalue at the endpoint t = -1 where the polynomial
 * basis has its finest resolution:
 *
 *     filter(x) = sum_j coeffs[j] * T_j(2x - 1)
 */
struct ChebyshevStepFilter {
    double delta = 0.0;
    int degree = 0;
    std::vector<double> coeffs;

    double operator()(double x) const;
};

/// Throws BadParameter unless 0 < delta < 1 and degree >= 1.
ChebyshevStepFilter chebyshev_filter(double delta, int degree);

enum class ProbeKind { Rademacher, HadamardColumn };

std::string_view to_string(ProbeKind kind);
std::optional<ProbeKind> parse_probe_kind(std::string_view name);

struct ProbeOptions {
    std::size_t probes = 200;
    ProbeKind kind = ProbeKind::Rademacher;
    std::uint64_t seed = 0;
    unsigned threads = 1;
};

struct RankEstimate {
    double normalized = 0.0; // clamped to [0, 1]
    double raw = 0.0;        // before clamping
    double std_error = 0.0;  // sample standard deviation of per-probe values / sqrt(probes)
    std::size_t dimension = 0;
    std::size_t probes = 0;
    int degree = 0;
    double delta = 0.0;
    ProbeKind probe_kind = ProbeKind::Rademacher;
    std::uint64_t seed = 0;
    double rescale = 1.0; // the input was divided by this before filtering
    std::vector<double> samples; // per-probe values, already mapped to the rank/N scale
};

/**
 * Hutchinson estimate of rank(A)/N with T_j applied by the three-term recurrence.
 *
 * A must be symmetric with spectrum in [0, 1]. Throws SpectralNormExceeded when
 * a 30-step power iteration puts ‖A‖ above 1 + 1e-6. The result depends only
 * on the inputs and the seed, not on `threads`.
 */
RankEstimate stochastic_rank(const RealSparse& a, const ChebyshevStepFilter& filter, const ProbeOptions& probes);
RankEstimate stochastic_rank(const RealMatrix& a, const ChebyshevStepFilter& filter, const ProbeOptions& probes);

/// Largest degree accepted by power_moments_rank.
inline constexpr int kMaxMomentDegree = 30;

/**
 * Same estimand as stochastic_rank, evaluating each vᵀT_j v from the moments
 * vᵀ(2A - I)^s v through the explicit power-sum form of T_j. With the same
 * seed and probe kind it consumes exactly the same probe vectors.
 */
RankEstimate power_moments_rank(const RealSparse& a, const ChebyshevStepFilter& filter, const ProbeOptions& probes);

/// Coefficient of x^{j-2i} in T_j(x), from the closed power-sum expansion (j >= 1).
long double chebyshev_power_coefficient(int j, int i);

/// Rayleigh quotient after `iterations` power steps from a fixed pseudo-random start.
double power_iteration_norm(const RealSparse& a, int iterations = 30);

/// Row-sum bound on the spectral norm of a symmetric matrix.
double gershgorin_bound(const RealSparse& a);

/// Parameters of the rescale-filter-estimate pipeline used by every estimation endpoint.
struct StochasticParams {
    double delta = 0.0; // <= 0 selects it automatically
    int degree = 64;
    std::size_t probes = 1000;
    ProbeKind probe_kind = ProbeKind::Rademacher;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    /// Automatic delta may use a dense eigensolve when N is at most this.
    std::size_t oracle_gate = 500;
    bool spectral_oracle = true;
};

/// Upper bound used to rescale: min(Gershgorin, 1.01 × 30-step power iteration).
double rescale_bound(const RealSparse& a);

struct ScaledFilter {
    double rescale = 1.0;
    ChebyshevStepFilter filter;
};

/**
 * Common rescale and filter for a family of symmetric PSD matrices of equal size.
 *
 * The rescale is the largest per-matrix bound; with the spectral oracle on and
 * N <= oracle_gate that bound is min(Gershgorin, 1.01 λ_max) from a dense
 * eigensolve, otherwise rescale_bound. Automatic delta is 0.9 × the smallest
 * nonzero eigenvalue over the family after rescaling, else gap_hint / rescale.
 */
ScaledFilter prepare_filter(const std::vector<const RealSparse*>& mats, const StochasticParams& params,
                            double gap_hint);

/**
 * Rescales symmetric PSD `a` into [0, 1], picks delta and estimates rank/N.
 *
 * Automatic delta is 0.9 × the smallest nonzero eigenvalue of the rescaled
 * matrix when the spectral oracle is enabled and N <= oracle_gate; otherwise
 * `gap_hint` (a gap guess for the unscaled matrix) divided by the rescale.
 */
RankEstimate estimate_rank(const RealSparse& a, const StochasticParams& params, double gap_hint);

/// Smallest eigenvalue above rel_tol × the largest; nullopt for a zero matrix.
std::optional<double> smallest_nonzero_eigenvalue(const RealMatrix& symmetric, double rel_tol = 1e-9);

} // namespace homlab

#endif
