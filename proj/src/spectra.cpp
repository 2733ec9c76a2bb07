#include "homlab/spectra.hpp"

#include <algorithm>
#include <string>

#include <Eigen/Eigenvalues>

#include "homlab/errors.hpp"
#include "homlab/operators.hpp"

namespace homlab {

std::size_t exact_betti(const SimplicialComplex& k, int r)
{
    const IntSparse lap = laplacian(k, r);
    return k.size(r) - exact_rank(lap);
}

std::size_t numeric_nullity(const RealMatrix& symmetric, double rel_tol)
{
    if (symmetric.rows() == 0)
        return 0;
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(symmetric, Eigen::EigenvaluesOnly);
    const RealVector& ev = es.eigenvalues();
    const double cutoff = rel_tol * std::max(1.0, ev.cwiseAbs().maxCoeff());
    return static_cast<std::size_t>((ev.array().abs() <= cutoff).count());
}

std::size_t persistent_betti_by_quotient(const FiltrationPair& f, int r)
{
    if (r < 0 || f.k1.size(r) == 0)
        throw Error(ErrorKind::EmptyLayer, "persistent Betti needs a nonempty layer r=" + std::to_string(r) +
                                               " in K1");
    const std::size_t new_n = f.k2.size(r);

    const RationalMatrix down = RationalMatrix::from_sparse(boundary_or_zero(f.k1, r));
    const std::vector<RationalVector> cycles = nullspace_basis(down);

    // Embed the K1 cycle basis into C_r^{K2}; K1 occupies the index prefix.
    std::vector<RationalVector> embedded;
    for (const RationalVector& z : cycles) {
        RationalVector e(new_n, Rational(0));
        std::copy(z.begin(), z.end(), e.begin());
        embedded.push_back(std::move(e));
    }

    const RationalMatrix up = RationalMatrix::from_sparse(boundary_or_zero(f.k2, r + 1));
    const std::size_t rank_up = exact_rank(up);
    const std::size_t rank_sum = exact_rank(up.hcat(RationalMatrix::from_columns(new_n, embedded)));
    const std::size_t intersection = rank_up + embedded.size() - rank_sum;
    return embedded.size() - intersection;
}

PersistentBetti exact_persistent_betti(const FiltrationPair& f, int r)
{
    PersistentBetti out;
    out.quotient_route = persistent_betti_by_quotient(f, r);
    out.laplacian_route = numeric_nullity(persistent_laplacian(f, r).total);
    if (out.quotient_route != out.laplacian_route)
        throw Error(ErrorKind::RouteDisagreement, "quotient route " + std::to_string(out.quotient_route) +
                                                      " vs Laplacian route " + std::to_string(out.laplacian_route));
    return out;
}

BettiEstimate estimate_normalized_betti(const SimplicialComplex& k, int r, const StochasticParams& params)
{
    BettiEstimate out;
    out.normalizer = laplacian_normalizer(k, r);
    const RealSparse a = normalized_laplacian(k, r);
    out.rank = estimate_rank(a, params, 1.0 / out.normalizer);
    out.normalized_betti = 1.0 - out.rank.normalized;
    return out;
}

BettiEstimate estimate_normalized_persistent_betti(const FiltrationPair& f, int r, const StochasticParams& params)
{
    BettiEstimate out;
    out.normalizer = laplacian_normalizer(f.k2, r);
    const RealMatrix lap = persistent_laplacian(f, r).total / out.normalizer;
    out.rank = estimate_rank(lap.sparseView(), params, 1.0 / out.normalizer);
    out.normalized_betti = 1.0 - out.rank.normalized;
    return out;
}

} // namespace homlab
