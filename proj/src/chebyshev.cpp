#include "homlab/chebyshev.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <thread>

#include <Eigen/Eigenvalues>

#include "homlab/errors.hpp"
#include "homlab/random.hpp"

namespace homlab {

namespace {

constexpr std::size_t kProbeBlock = 16;

double smoothed_step(double x, double delta)
{
    return 0.5 * (1.0 + std::erf((x - 0.5 * delta) / (0.25 * delta)));
}

template <class Mat>
double power_iteration(const Mat& a, int iterations)
{
    const Eigen::Index n = a.rows();
    if (n == 0)
        return 0.0;
    RealVector v(n);
    for (Eigen::Index i = 0; i < n; ++i)
        v(i) = 0.5 + static_cast<double>(splitmix64(static_cast<std::uint64_t>(i)) >> 11) * 0x1.0p-53;
    v.normalize();
    double rayleigh = 0.0;
    for (int it = 0; it < iterations; ++it) {
        RealVector w = a * v;
        rayleigh = v.dot(w);
        const double norm = w.norm();
        if (norm == 0.0)
            return 0.0;
        v = w / norm;
    }
    return std::abs(rayleigh);
}

std::size_t next_power_of_two(std::size_t n)
{
    return std::bit_ceil(std::max<std::size_t>(n, 1));
}

/// Probe columns [first, first + count) of the probe sequence, plus the factor mapping vᵀMv to rank/N.
RealMatrix make_probes(std::size_t n, std::size_t first, std::size_t count, const ProbeOptions& opts,
                       double& scale)
{
    RealMatrix v(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(count));
    const std::size_t padded = next_power_of_two(n);
    scale = 1.0;
    for (std::size_t k = 0; k < count; ++k) {
        std::mt19937_64 rng(sub_seed(opts.seed, first + k));
        const auto col = static_cast<Eigen::Index>(k);
        if (opts.kind == ProbeKind::Rademacher) {
            const double amp = 1.0 / std::sqrt(static_cast<double>(n));
            std::uint64_t bits = 0;
            for (std::size_t i = 0; i < n; ++i) {
                if (i % 64 == 0)
                    bits = rng();
                v(static_cast<Eigen::Index>(i), col) = (bits >> (i % 64)) & 1U ? amp : -amp;
            }
        } else {
            // Column of the padded Hadamard matrix restricted to the first n rows; the padded
            // zero block contributes nothing to vᵀAv and is dropped.
            const std::uint64_t c = rng() % padded;
            const double amp = 1.0 / std::sqrt(static_cast<double>(padded));
            for (std::size_t i = 0; i < n; ++i)
                v(static_cast<Eigen::Index>(i), col) = (std::popcount(i & c) % 2 == 0) ? amp : -amp;
            scale = static_cast<double>(padded) / static_cast<double>(n);
        }
    }
    return v;
}

template <class Mat>
RealMatrix shifted_apply(const Mat& a, const RealMatrix& w)
{
    RealMatrix out = a * w;
    out *= 2.0;
    out -= w;
    return out;
}

template <class Mat>
void recurrence_block(const Mat& a, const ChebyshevStepFilter& filter, const RealMatrix& v,
                      Eigen::Ref<RealVector> out)
{
    RealMatrix prev = v;
    RealVector acc = filter.coeffs[0] * v.colwise().squaredNorm().transpose();
    if (filter.degree >= 1) {
        RealMatrix cur = shifted_apply(a, v);
        acc += filter.coeffs[1] * v.cwiseProduct(cur).colwise().sum().transpose();
        for (int j = 2; j <= filter.degree; ++j) {
            RealMatrix next = 2.0 * shifted_apply(a, cur) - prev;
            prev = std::move(cur);
            cur = std::move(next);
            acc += filter.coeffs[static_cast<std::size_t>(j)] * v.cwiseProduct(cur).colwise().sum().transpose();
        }
    }
    out = acc;
}

template <class Mat>
void moments_block(const Mat& a, const ChebyshevStepFilter& filter, const RealMatrix& v,
                   Eigen::Ref<RealVector> out)
{
    const int m = filter.degree;
    const Eigen::Index cols = v.cols();
    std::vector<RealVector> moments;
    RealMatrix w = v;
    moments.push_back(v.colwise().squaredNorm().transpose());
    for (int s = 1; s <= m; ++s) {
        w = shifted_apply(a, w);
        moments.push_back(v.cwiseProduct(w).colwise().sum().transpose());
    }
    for (Eigen::Index col = 0; col < cols; ++col) {
        long double total = static_cast<long double>(filter.coeffs[0]) * moments[0](col);
        for (int j = 1; j <= m; ++j) {
            long double theta = 0.0L;
            for (int i = 0; i <= j / 2; ++i)
                theta += chebyshev_power_coefficient(j, i) * moments[static_cast<std::size_t>(j - 2 * i)](col);
            total += static_cast<long double>(filter.coeffs[static_cast<std::size_t>(j)]) * theta;
        }
        out(col) = static_cast<double>(total);
    }
}

template <class Mat, class BlockFn>
RankEstimate run_estimator(const Mat& a, const ChebyshevStepFilter& filter, const ProbeOptions& opts, BlockFn block_fn)
{
    if (a.rows() != a.cols())
        throw Error(ErrorKind::DimensionMismatch, "rank estimation needs a square matrix");
    if (opts.probes == 0)
        throw Error(ErrorKind::BadParameter, "probe count must be positive");
    if (filter.coeffs.size() != static_cast<std::size_t>(filter.degree) + 1)
        throw Error(ErrorKind::BadParameter, "filter coefficient count does not match its degree");
    const double norm = power_iteration(a, 30);
    if (norm > 1.0 + 1e-6)
        throw Error(ErrorKind::SpectralNormExceeded, "power iteration gives ‖A‖ ≈ " + std::to_string(norm));

    RankEstimate est;
    est.dimension = static_cast<std::size_t>(a.rows());
    est.probes = opts.probes;
    est.degree = filter.degree;
    est.delta = filter.delta;
    est.probe_kind = opts.kind;
    est.seed = opts.seed;
    if (est.dimension == 0)
        return est;

    RealVector values(static_cast<Eigen::Index>(opts.probes));
    const std::size_t blocks = (opts.probes + kProbeBlock - 1) / kProbeBlock;
    auto worker = [&](std::size_t offset, std::size_t stride) {
        for (std::size_t b = offset; b < blocks; b += stride) {
            const std::size_t first = b * kProbeBlock;
            const std::size_t count = std::min(kProbeBlock, opts.probes - first);
            double scale = 1.0;
            const RealMatrix v = make_probes(est.dimension, first, count, opts, scale);
            auto seg = values.segment(static_cast<Eigen::Index>(first), static_cast<Eigen::Index>(count));
            block_fn(a, filter, v, seg);
            seg *= scale;
        }
    };
    const std::size_t threads = std::clamp<std::size_t>(opts.threads, 1, blocks);
    if (threads == 1) {
        worker(0, 1);
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t)
            pool.emplace_back(worker, t, threads);
    }

    double sum = 0.0;
    for (Eigen::Index l = 0; l < values.size(); ++l)
        sum += values(l);
    const double mean = sum / static_cast<double>(opts.probes);
    double ss = 0.0;
    for (Eigen::Index l = 0; l < values.size(); ++l)
        ss += (values(l) - mean) * (values(l) - mean);
    const double n = static_cast<double>(opts.probes);
    est.std_error = opts.probes > 1 ? std::sqrt(ss / (n - 1.0)) / std::sqrt(n) : 0.0;
    est.raw = mean;
    est.samples.assign(values.begin(), values.end());
    est.normalized = std::clamp(mean, 0.0, 1.0);
    return est;
}

} // namespace

double ChebyshevStepFilter::operator()(double x) const
{
    const double t = 2.0 * x - 1.0;
    double prev = 1.0;
    double cur = t;
    double sum = coeffs.empty() ? 0.0 : coeffs[0];
    if (degree >= 1)
        sum += coeffs[1] * t;
    for (int j = 2; j <= degree; ++j) {
        const double next = 2.0 * t * cur - prev;
        prev = cur;
        cur = next;
        sum += coeffs[static_cast<std::size_t>(j)] * cur;
    }
    return sum;
}

ChebyshevStepFilter chebyshev_filter(double delta, int degree)
{
    if (!(delta > 0.0 && delta < 1.0))
        throw Error(ErrorKind::BadParameter, "filter threshold must lie in (0, 1)");
    if (degree < 1)
        throw Error(ErrorKind::BadParameter, "filter degree must be at least 1");

    const std::size_t nodes = std::max<std::size_t>(4 * (static_cast<std::size_t>(degree) + 1), 256);
    std::vector<double> theta(nodes), f(nodes);
    for (std::size_t k = 0; k < nodes; ++k) {
        theta[k] = std::numbers::pi * (static_cast<double>(k) + 0.5) / static_cast<double>(nodes);
        const double x = 0.5 * (std::cos(theta[k]) + 1.0);
        f[k] = smoothed_step(x, delta);
    }
    ChebyshevStepFilter filter;
    filter.delta = delta;
    filter.degree = degree;
    filter.coeffs.resize(static_cast<std::size_t>(degree) + 1);
    for (int j = 0; j <= degree; ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < nodes; ++k)
            s += f[k] * std::cos(j * theta[k]);
        filter.coeffs[static_cast<std::size_t>(j)] = 2.0 * s / static_cast<double>(nodes);
    }
    filter.coeffs[0] *= 0.5;
    return filter;
}

std::string_view to_string(ProbeKind kind)
{
    return kind == ProbeKind::Rademacher ? "rademacher" : "hadamard_column";
}

std::optional<ProbeKind> parse_probe_kind(std::string_view name)
{
    if (name == "rademacher")
        return ProbeKind::Rademacher;
    if (name == "hadamard_column" || name == "hadamard")
        return ProbeKind::HadamardColumn;
    return std::nullopt;
}

RankEstimate stochastic_rank(const RealSparse& a, const ChebyshevStepFilter& filter, const ProbeOptions& probes)
{
    return run_estimator(a, filter, probes, recurrence_block<RealSparse>);
}

RankEstimate stochastic_rank(const RealMatrix& a, const ChebyshevStepFilter& filter, const ProbeOptions& probes)
{
    return run_estimator(a, filter, probes, recurrence_block<RealMatrix>);
}

long double chebyshev_power_coefficient(int j, int i)
{
    auto binom = [](int n, int k) {
        long double r = 1.0L;
        for (int t = 1; t <= k; ++t)
            r = r * static_cast<long double>(n - k + t) / static_cast<long double>(t);
        return r;
    };
    const long double sign = (i % 2 == 0) ? 1.0L : -1.0L;
    return sign * std::ldexp(1.0L, j - (2 * i + 1)) * binom(2 * i, i) * binom(j, 2 * i) / binom(j - 1, i);
}

RankEstimate power_moments_rank(const RealSparse& a, const ChebyshevStepFilter& filter, const ProbeOptions& probes)
{
    if (filter.degree > kMaxMomentDegree)
        throw Error(ErrorKind::DegreeTooHigh, "power expansion supports degree <= " +
                                                  std::to_string(kMaxMomentDegree) + ", got " +
                                                  std::to_string(filter.degree));
    return run_estimator(a, filter, probes, moments_block<RealSparse>);
}

double power_iteration_norm(const RealSparse& a, int iterations)
{
    return power_iteration(a, iterations);
}

double gershgorin_bound(const RealSparse& a)
{
    RealVector rowsum = RealVector::Zero(a.rows());
    for (Eigen::Index k = 0; k < a.outerSize(); ++k)
        for (RealSparse::InnerIterator it(a, k); it; ++it)
            rowsum(it.row()) += std::abs(it.value());
    return rowsum.size() ? rowsum.maxCoeff() : 0.0;
}

double rescale_bound(const RealSparse& a)
{
    const double power = 1.01 * power_iteration(a, 30);
    return std::min(gershgorin_bound(a), power);
}

std::optional<double> smallest_nonzero_eigenvalue(const RealMatrix& symmetric, double rel_tol)
{
    if (symmetric.rows() == 0)
        return std::nullopt;
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(symmetric, Eigen::EigenvaluesOnly);
    const RealVector& ev = es.eigenvalues();
    const double top = ev.cwiseAbs().maxCoeff();
    if (top == 0.0)
        return std::nullopt;
    for (Eigen::Index i = 0; i < ev.size(); ++i)
        if (ev(i) > rel_tol * top)
            return ev(i);
    return std::nullopt;
}

ScaledFilter prepare_filter(const std::vector<const RealSparse*>& mats, const StochasticParams& params,
                            double gap_hint)
{
    ScaledFilter out;
    double bound = 0.0;
    const bool dense_oracle = params.spectral_oracle && !mats.empty() &&
                              static_cast<std::size_t>(mats.front()->rows()) <= params.oracle_gate;
    std::vector<RealVector> spectra;
    for (const RealSparse* a : mats) {
        double b = rescale_bound(*a);
        if (dense_oracle) {
            Eigen::SelfAdjointEigenSolver<RealMatrix> es{RealMatrix(*a), Eigen::EigenvaluesOnly};
            spectra.push_back(es.eigenvalues());
            const double top = spectra.back().size() ? spectra.back().cwiseAbs().maxCoeff() : 0.0;
            b = std::min(gershgorin_bound(*a), 1.01 * top);
        }
        bound = std::max(bound, b);
    }
    if (bound <= 0.0)
        bound = 1.0;
    out.rescale = bound;

    double delta = params.delta;
    if (delta <= 0.0) {
        std::optional<double> gap;
        for (const RealVector& ev : spectra) {
            const double top = ev.size() ? ev.cwiseAbs().maxCoeff() : 0.0;
            for (Eigen::Index i = 0; i < ev.size(); ++i)
                if (top > 0.0 && ev(i) > 1e-9 * top) {
                    gap = std::min(gap.value_or(ev(i)), ev(i));
                    break;
                }
        }
        if (gap)
            delta = 0.9 * *gap / bound;
        else if (gap_hint > 0.0)
            delta = gap_hint / bound;
        else
            delta = 0.5;
        delta = std::clamp(delta, 1e-12, 0.5);
    }
    out.filter = chebyshev_filter(delta, params.degree);
    return out;
}

RankEstimate estimate_rank(const RealSparse& a, const StochasticParams& params, double gap_hint)
{
    const ScaledFilter sf = prepare_filter({&a}, params, gap_hint);
    const RealSparse scaled = a / sf.rescale;
    RankEstimate est =
        stochastic_rank(scaled, sf.filter, ProbeOptions{params.probes, params.probe_kind, params.seed, params.threads});
    est.rescale = sf.rescale;
    return est;
}

} // namespace homlab
