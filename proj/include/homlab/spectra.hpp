#ifndef HOMLAB_SPECTRA_HPP
#define HOMLAB_SPECTRA_HPP

#include <cstddef>

#include "homlab/chebyshev.hpp"
#include "homlab/complex.hpp"
#include "homlab/exact.hpp"

namespace homlab {

/// |S_r| − rank(Δ_r), with the rank taken exactly.
std::size_t exact_betti(const SimplicialComplex& k, int r);

struct PersistentBetti {
    std::size_t quotient_route = 0;  // dim ker ∂_r^{K1} − dim(im ∂_{r+1}^{K2} ∩ ker ∂_r^{K1})
    std::size_t laplacian_route = 0; // numeric nullity of the persistent Laplacian
};

/// Eigenvalues at or below this fraction of max(1, λ_max) count as zero in numeric kernels.
inline constexpr double kKernelTolerance = 1e-8;

std::size_t numeric_nullity(const RealMatrix& symmetric, double rel_tol = kKernelTolerance);

/// Both routes to the persistent Betti number; throws RouteDisagreement if they differ.
PersistentBetti exact_persistent_betti(const FiltrationPair& f, int r);

/// Quotient-definition route alone (no numerics).
std::size_t persistent_betti_by_quotient(const FiltrationPair& f, int r);

struct BettiEstimate {
    double normalized_betti = 0.0; // 1 − rank/N, in [0, 1]
    RankEstimate rank;
    double normalizer = 1.0;       // divisor applied to the Laplacian before rescaling
};

BettiEstimate estimate_normalized_betti(const SimplicialComplex& k, int r, const StochasticParams& params);
BettiEstimate estimate_normalized_persistent_betti(const FiltrationPair& f, int r, const StochasticParams& params);

} // namespace homlab

#endif
