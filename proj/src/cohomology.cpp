#include "homlab/cohomology.hpp"

#include <random>
#include <string>
#include <vector>

#include "homlab/errors.hpp"
#include "homlab/homology.hpp"
#include "homlab/random.hpp"
#include "homlab/spectra.hpp"

namespace homlab {

namespace {

void require_layer(const SimplicialComplex& k, int r)
{
    if (r < 0 || k.size(r) == 0)
        throw Error(ErrorKind::EmptyLayer, "layer " + std::to_string(r) + " is empty");
}

void require_upper_layer(const SimplicialComplex& k, int r)
{
    require_layer(k, r);
    if (k.size(r + 1) == 0)
        throw Error(ErrorKind::EmptyLayer, "layer " + std::to_string(r + 1) + " is empty");
}

} // namespace

double evaluate(const SimplicialComplex& k, const Cochain& w, const Chain& c)
{
    if (w.r != c.dimension())
        throw Error(ErrorKind::DimensionMismatch, "cochain of dimension " + std::to_string(w.r) +
                                                      " applied to a " + std::to_string(c.dimension()) + "-chain");
    require_bound(k, c, w.r);
    if (static_cast<std::size_t>(w.values.size()) != k.size(w.r))
        throw Error(ErrorKind::DimensionMismatch, "cochain length does not match layer " + std::to_string(w.r));
    double s = 0.0;
    for (const auto& [i, x] : c.coeffs())
        s += w.values(static_cast<Eigen::Index>(i)) * x.get_d();
    return s;
}

bool is_cocycle(const SimplicialComplex& k, const Cochain& w)
{
    const RealSparse d = coboundary(k, w.r).to_eigen();
    if (d.rows() == 0)
        return true;
    return (d * w.values).norm() <= 1e-8 * w.values.norm();
}

Cochain project_to_cocycle(const SimplicialComplex& k, int r, const Cochain& w, double tol)
{
    if (w.r != r || static_cast<std::size_t>(w.values.size()) != k.size(r))
        throw Error(ErrorKind::DimensionMismatch, "cochain does not live on layer " + std::to_string(r));
    Cochain out{r, w.values, true, false};
    if (k.size(r + 1) == 0)
        return out;
    out.values = project_to_kernel(coboundary(k, r).to_dense(), w.values, tol);
    return out;
}

Cochain random_cocycle(const SimplicialComplex& k, int r, std::uint64_t seed)
{
    require_layer(k, r);
    const std::size_t n = k.size(r);
    const RealMatrix d = coboundary(k, r).to_dense();
    if (d.rows() > 0 && numeric_nullity(d.transpose() * d) == 0)
        throw Error(ErrorKind::TrivialCocycleSpace, "ker δ^" + std::to_string(r) + " is zero");

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Cochain w{r, RealVector(static_cast<Eigen::Index>(n)), false, false};
    for (std::size_t i = 0; i < n; ++i)
        w.values(static_cast<Eigen::Index>(i)) = gauss(rng);
    w.values.normalize();
    Cochain out = project_to_cocycle(k, r, w);
    const double norm = out.values.norm();
    out.degenerate = norm < 1e-6;
    if (norm > 0.0)
        out.values /= norm;
    return out;
}

Cochain manual_cocycle(const SimplicialComplex& k, int r, std::uint64_t seed)
{
    require_upper_layer(k, r);
    const std::size_t n = k.size(r);
    std::vector<std::optional<Rational>> value(n);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(-9, 9);

    for (const Simplex& s : k.layer(r + 1)) {
        std::vector<std::size_t> face(static_cast<std::size_t>(r) + 2);
        std::vector<int> sign(face.size());
        std::vector<std::size_t> open;
        for (std::size_t p = 0; p < face.size(); ++p) {
            face[p] = *k.index_of(s.facet(p));
            sign[p] = p % 2 == 0 ? 1 : -1;
            if (!value[face[p]])
                open.push_back(p);
        }
        for (std::size_t t = 0; t + 1 < open.size(); ++t)
            value[face[open[t]]] = Rational(pick(rng));
        Rational sum = 0;
        for (std::size_t p = 0; p < face.size(); ++p)
            if (value[face[p]])
                sum += sign[p] * *value[face[p]];
        if (open.empty()) {
            if (sgn(sum) != 0)
                throw Error(ErrorKind::ConstructionFailed, "constraint on " + s.to_string() + " is violated by " +
                                                               "earlier assignments (ω(∂σ) = " + sum.get_str() + ")");
        } else {
            const std::size_t last = open.back();
            value[face[last]] = Rational(-sum / sign[last]);
        }
    }

    Cochain out{r, RealVector(static_cast<Eigen::Index>(n)), false, false};
    RationalVector exact(n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
        if (value[i])
            exact[i] = *value[i];
        out.values(static_cast<Eigen::Index>(i)) = exact[i].get_d();
    }
    const RationalVector check = RationalMatrix::from_sparse(coboundary(k, r)).apply(exact);
    for (std::size_t j = 0; j < check.size(); ++j)
        if (sgn(check[j]) != 0)
            throw Error(ErrorKind::ConstructionFailed,
                        "global check failed on " + k.layer(r + 1)[j].to_string());
    out.cocycle = true;
    return out;
}

Cochain pair_cocycle(const SimplicialComplex& k, int r)
{
    require_upper_layer(k, r);
    const IntSparse d = boundary_or_zero(k, r + 1);
    const std::size_t n = k.size(r);
    // For each row of ∂_{r+1}: its only nonzero (column, value), when it has exactly one.
    std::vector<int> count(n, 0);
    std::vector<std::size_t> column(n, 0);
    std::vector<std::int64_t> entry(n, 0);
    for (std::size_t j = 0; j < d.cols(); ++j)
        for (const auto& [i, v] : d.column(j)) {
            ++count[i];
            column[i] = j;
            entry[i] = v;
        }
    for (std::size_t p = 0; p < n; ++p) {
        if (count[p] != 1)
            continue;
        for (std::size_t q = p + 1; q < n; ++q) {
            if (count[q] != 1 || column[q] != column[p])
                continue;
            Cochain out{r, RealVector::Zero(static_cast<Eigen::Index>(n)), false, false};
            const int sp = entry[p] > 0 ? 1 : -1;
            const int sq = entry[q] > 0 ? 1 : -1;
            out.values(static_cast<Eigen::Index>(p)) = 1.0;
            out.values(static_cast<Eigen::Index>(q)) = -static_cast<double>(sp * sq);
            if (!is_cocycle(k, out))
                throw Error(ErrorKind::StructuralViolation, "pair cochain on rows " + std::to_string(p + 1) + ", " +
                                                                std::to_string(q + 1) + " is not a cocycle");
            out.cocycle = true;
            return out;
        }
    }
    throw Error(ErrorKind::NotFound, "no two rows of ∂_" + std::to_string(r + 1) +
                                         " have a single nonzero in a shared column");
}

CohomologyTest test_equivalent_cohomological(const SimplicialComplex& k, const Chain& c1, const Chain& c2,
                                             std::size_t witnesses, double tol, std::uint64_t seed)
{
    if (c1.dimension() != c2.dimension())
        throw Error(ErrorKind::DimensionMismatch, "cycles of dimension " + std::to_string(c1.dimension()) + " and " +
                                                      std::to_string(c2.dimension()));
    for (const Chain* c : {&c1, &c2})
        if (!is_cycle_exact(k, *c))
            throw Error(ErrorKind::NotACycle, "the " + std::to_string(c->dimension()) + "-chain has nonzero boundary");
    if (witnesses == 0)
        throw Error(ErrorKind::BadParameter, "at least one witness is required");

    const int r = c1.dimension();
    const double scale = tol * (1.0 + c1.norm() + c2.norm());
    CohomologyTest out;
    for (std::size_t i = 0; i < witnesses; ++i) {
        Cochain w;
        try {
            w = random_cocycle(k, r, sub_seed(seed, i));
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::TrivialCocycleSpace)
                return out;
            throw;
        }
        ++out.witnesses_drawn;
        const double gap = std::abs(evaluate(k, w, c1) - evaluate(k, w, c2));
        if (gap > scale) {
            out.equivalent = false;
            out.distinguishing_index = i;
            out.witness = std::move(w);
            out.gap = gap;
            return out;
        }
    }
    return out;
}

} // namespace homlab
