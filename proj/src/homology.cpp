#include "homlab/homology.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "homlab/errors.hpp"
#include "homlab/exact.hpp"
#include "homlab/operators.hpp"
#include "homlab/random.hpp"

namespace homlab {

namespace {

void require_cycle(const SimplicialComplex& k, const Chain& c)
{
    if (!is_cycle_exact(k, c))
        throw Error(ErrorKind::NotACycle, "the " + std::to_string(c.dimension()) + "-chain has nonzero boundary");
}

RationalMatrix boundary_above(const SimplicialComplex& k, int r)
{
    return RationalMatrix::from_sparse(boundary_or_zero(k, r + 1));
}

std::size_t round_rank(double normalized, std::size_t n)
{
    const double x = std::round(normalized * static_cast<double>(n));
    return x <= 0.0 ? 0 : static_cast<std::size_t>(x);
}

double distance_to_half_integer(double x)
{
    return std::abs(x - std::floor(x) - 0.5);
}

HomologyTest trivial_exact(const SimplicialComplex& k, const Chain& c)
{
    const int r = c.dimension();
    const RationalMatrix d = boundary_above(k, r);
    HomologyTest out;
    out.method = Method::Exact;
    out.rank_boundary = exact_rank(d);
    const RationalMatrix col = RationalMatrix::from_columns(k.size(r), {c.dense(k.size(r))});
    out.rank_augmented = exact_rank(d.hcat(col));
    out.answer = out.rank_augmented == out.rank_boundary;
    return out;
}

HomologyTest trivial_stochastic(const SimplicialComplex& k, const Chain& c, const StochasticParams& params)
{
    const int r = c.dimension();
    const std::size_t n = k.size(r);
    const RealMatrix d = boundary_or_zero(k, r + 1).to_dense();
    const RealVector v = c.real(n);
    const RealMatrix g1 = d * d.transpose();
    const RealMatrix g2 = g1 + v * v.transpose();
    const RealSparse s1 = g1.sparseView();
    const RealSparse s2 = g2.sparseView();

    // One rescale, one filter and one probe stream for both Grams, so the per-probe difference is paired.
    const ScaledFilter sf = prepare_filter({&s1, &s2}, params, 1.0);
    const ProbeOptions probes{params.probes, params.probe_kind, params.seed, params.threads};
    RankEstimate e1 = stochastic_rank(RealMatrix(g1 / sf.rescale), sf.filter, probes);
    RankEstimate e2 = stochastic_rank(RealMatrix(g2 / sf.rescale), sf.filter, probes);
    e1.rescale = e2.rescale = sf.rescale;

    const double nd = static_cast<double>(n);
    HomologyTest out;
    out.method = Method::Stochastic;
    out.rank_boundary = round_rank(e1.raw, n);
    out.rank_augmented = round_rank(e2.raw, n);
    out.answer = out.rank_augmented == out.rank_boundary;

    const std::size_t m = e1.samples.size();
    double mean = 0.0;
    for (std::size_t l = 0; l < m; ++l)
        mean += e2.samples[l] - e1.samples[l];
    mean /= static_cast<double>(m);
    double ss = 0.0;
    for (std::size_t l = 0; l < m; ++l) {
        const double dl = e2.samples[l] - e1.samples[l] - mean;
        ss += dl * dl;
    }
    const double se_d = m > 1 ? std::sqrt(ss / static_cast<double>(m - 1) / static_cast<double>(m)) : 0.0;
    out.paired_difference = nd * mean;
    out.paired_std_error = nd * se_d;

    const bool near_tie_1 = distance_to_half_integer(nd * e1.raw) <= 2.0 * nd * e1.std_error;
    const bool near_tie_2 = distance_to_half_integer(nd * e2.raw) <= 2.0 * nd * e2.std_error;
    const bool near_tie_d = std::abs(out.paired_difference - 0.5) <= 2.0 * out.paired_std_error;
    const bool paired_says_trivial = out.paired_difference < 0.5;
    out.confident = !near_tie_1 && !near_tie_2 && !near_tie_d && paired_says_trivial == out.answer;

    out.boundary_estimate = std::move(e1);
    out.augmented_estimate = std::move(e2);
    return out;
}

} // namespace

std::string_view to_string(Method m)
{
    return m == Method::Exact ? "exact" : "stochastic";
}

std::string_view to_string(CycleVerdict v)
{
    return v == CycleVerdict::LikelyCycle ? "likely_cycle" : "not_cycle";
}

bool is_cycle_exact(const SimplicialComplex& k, const Chain& c)
{
    require_bound(k, c, c.dimension());
    if (c.dimension() <= 0)
        return true;
    return is_zero(boundary_of(k, c));
}

double cycle_detection_probability(const SimplicialComplex& k, const Chain& c)
{
    require_bound(k, c, c.dimension());
    if (c.is_zero())
        throw Error(ErrorKind::ZeroChain, "cycle detection needs a nonzero chain");
    const int r = c.dimension();
    if (r <= 0 || is_zero(boundary_of(k, c)))
        return 0.0;
    const RealSparse d = boundary_or_zero(k, r).to_eigen();
    const RealVector chat = c.real(k.size(r)) / c.norm();
    const double scale = static_cast<double>(r + 1) * static_cast<double>(k.size(r));
    const RealVector y = (d.transpose() * (d * chat)) / scale;
    return y.squaredNorm();
}

CycleDetection detect_cycle_stochastic(const SimplicialComplex& k, const Chain& c, double eta, std::uint64_t seed)
{
    if (!(eta > 0.0 && eta < 1.0))
        throw Error(ErrorKind::BadParameter, "eta must lie in (0, 1)");
    CycleDetection out;
    out.success_probability = cycle_detection_probability(k, c);
    out.trials = static_cast<std::size_t>(std::ceil(1.0 / eta));
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (std::size_t t = 0; t < out.trials; ++t)
        if (u(rng) < out.success_probability)
            ++out.successes;
    out.verdict = out.successes > 0 ? CycleVerdict::NotCycle : CycleVerdict::LikelyCycle;
    return out;
}

HomologyTest test_trivial(const SimplicialComplex& k, const Chain& c, const Mode& mode)
{
    require_cycle(k, c);
    if (mode.method == Method::Exact || k.size(c.dimension()) == 0)
        return trivial_exact(k, c);
    return trivial_stochastic(k, c, mode.params);
}

HomologyTest test_equivalent(const SimplicialComplex& k, const Chain& c1, const Chain& c2, const Mode& mode)
{
    if (c1.dimension() != c2.dimension())
        throw Error(ErrorKind::DimensionMismatch, "cycles of dimension " + std::to_string(c1.dimension()) + " and " +
                                                      std::to_string(c2.dimension()));
    require_cycle(k, c1);
    require_cycle(k, c2);
    return test_trivial(k, c1 - c2, mode);
}

ClassReport track_classes(const std::vector<SimplicialComplex>& stages, const std::vector<Chain>& cycles,
                          const Mode& mode)
{
    if (stages.empty())
        throw Error(ErrorKind::EmptyInput, "no filtration stages");
    if (cycles.empty() || cycles.size() > 2)
        throw Error(ErrorKind::BadParameter, "track one cycle or a pair of cycles");
    for (std::size_t s = 0; s + 1 < stages.size(); ++s) {
        try {
            validate_filtration(stages[s], stages[s + 1]);
        } catch (const Error& e) {
            throw Error(ErrorKind::NotAFiltrationChain,
                        "stage " + std::to_string(s + 1) + " is not contained in stage " + std::to_string(s + 2) +
                            ": " + e.detail());
        }
    }
    const int r = cycles.front().dimension();
    for (const Chain& c : cycles)
        require_cycle(stages.front(), c);

    ClassReport report;
    report.pair = cycles.size() == 2;
    for (std::size_t s = 0; s < stages.size(); ++s) {
        const SimplicialComplex& k = stages[s];
        std::vector<Chain> moved;
        for (const Chain& c : cycles) {
            Chain m(r);
            for (const auto& [i, x] : c.coeffs())
                m.set(*k.index_of(stages.front().layer(r)[i]), x);
            moved.push_back(std::move(m));
        }
        const HomologyTest t =
            report.pair ? test_equivalent(k, moved[0], moved[1], mode) : test_trivial(k, moved[0], mode);
        report.stages.push_back(StageResult{s, t.answer, t.method, t.confident});
    }
    return report;
}

std::vector<Chain> sample_cycles(const SimplicialComplex& k, int r, std::size_t count, std::uint64_t seed)
{
    if (count == 0)
        throw Error(ErrorKind::BadParameter, "sample count must be at least 1");
    if (r < 0 || k.size(r) == 0)
        throw Error(ErrorKind::EmptyLayer, "no " + std::to_string(r) + "-simplices to sample cycles from");
    const std::vector<RationalVector> basis = nullspace_basis(RationalMatrix::from_sparse(boundary_or_zero(k, r)));
    if (basis.empty())
        throw Error(ErrorKind::TrivialKernel, "ker ∂_" + std::to_string(r) + " is zero");

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coef(-2, 2);
    std::vector<Chain> out;
    const std::size_t n = k.size(r);
    while (out.size() < count) {
        std::vector<int> w(basis.size());
        bool any = false;
        for (int& x : w) {
            x = coef(rng);
            any = any || x != 0;
        }
        if (!any)
            continue;
        RationalVector v(n, Rational(0));
        for (std::size_t b = 0; b < basis.size(); ++b)
            if (w[b] != 0)
                for (std::size_t i = 0; i < n; ++i)
                    v[i] += w[b] * basis[b][i];
        out.push_back(Chain::from_dense(r, v));
    }
    return out;
}

TrackingBetti betti_via_tracking(const SimplicialComplex& k, int r, const std::vector<Chain>& cycles,
                                 const Mode& mode)
{
    for (const Chain& c : cycles) {
        require_bound(k, c, r);
        require_cycle(k, c);
    }
    std::vector<Chain> reps;
    for (const Chain& c : cycles) {
        if (test_trivial(k, c, mode).answer)
            continue;
        const bool seen = std::any_of(reps.begin(), reps.end(),
                                      [&](const Chain& h) { return test_equivalent(k, h, c, mode).answer; });
        if (!seen)
            reps.push_back(c);
    }

    TrackingBetti out;
    out.representatives = reps.size();
    if (reps.empty())
        return out;
    const std::size_t n = k.size(r);

    if (mode.method == Method::Exact) {
        std::vector<RationalVector> cols;
        for (const Chain& h : reps)
            cols.push_back(h.dense(n));
        const RationalMatrix c = RationalMatrix::from_columns(n, cols);
        const RationalMatrix d = boundary_above(k, r);
        out.chain_rank = exact_rank(c);
        out.betti = exact_rank(d.hcat(c)) - exact_rank(d);
        return out;
    }

    // Components along im ∂_{r+1} carry no class information; remove them before the rank estimate.
    const RealMatrix boundary_rows = boundary_or_zero(k, r + 1).to_dense().transpose();
    RealMatrix c(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(reps.size()));
    for (std::size_t j = 0; j < reps.size(); ++j)
        c.col(static_cast<Eigen::Index>(j)) = project_to_kernel(boundary_rows, reps[j].real(n));
    const double fro = c.squaredNorm();
    if (fro == 0.0)
        return out;
    const RealMatrix gram = c.transpose() * c / fro;
    const RealSparse g = gram.sparseView();
    out.estimate = estimate_rank(g, mode.params, 0.01 / static_cast<double>(reps.size()));
    out.betti = round_rank(out.estimate->normalized, reps.size());
    return out;
}

} // namespace homlab
