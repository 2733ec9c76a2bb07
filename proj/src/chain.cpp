#include "homlab/chain.hpp"

#include <cmath>
#include <string>

#include "homlab/errors.hpp"

namespace homlab {

Chain::Chain(int r, std::map<std::size_t, Rational> coeffs) : r_(r)
{
    for (auto& [i, v] : coeffs)
        set(i, v);
}

Chain Chain::from_dense(int r, const RationalVector& values)
{
    Chain c(r);
    for (std::size_t i = 0; i < values.size(); ++i)
        c.set(i, values[i]);
    return c;
}

void Chain::set(std::size_t index, const Rational& value)
{
    if (sgn(value) == 0)
        coeffs_.erase(index);
    else
        coeffs_[index] = value;
}

Rational Chain::get(std::size_t index) const
{
    auto it = coeffs_.find(index);
    return it == coeffs_.end() ? Rational(0) : it->second;
}

RationalVector Chain::dense(std::size_t length) const
{
    RationalVector v(length, Rational(0));
    for (const auto& [i, x] : coeffs_)
        v.at(i) = x;
    return v;
}

RealVector Chain::real(std::size_t length) const
{
    RealVector v = RealVector::Zero(static_cast<Eigen::Index>(length));
    for (const auto& [i, x] : coeffs_) {
        if (i >= length)
            throw Error(ErrorKind::DimensionMismatch, "chain index outside the layer");
        v(static_cast<Eigen::Index>(i)) = x.get_d();
    }
    return v;
}

double Chain::norm() const
{
    double s = 0.0;
    for (const auto& [i, x] : coeffs_) {
        const double d = x.get_d();
        s += d * d;
    }
    return std::sqrt(s);
}

Chain operator+(const Chain& a, const Chain& b)
{
    if (a.r_ != b.r_)
        throw Error(ErrorKind::DimensionMismatch, "adding chains of different dimension");
    Chain out = a;
    for (const auto& [i, x] : b.coeffs_)
        out.set(i, out.get(i) + x);
    return out;
}

Chain operator-(const Chain& a, const Chain& b)
{
    if (a.r_ != b.r_)
        throw Error(ErrorKind::DimensionMismatch, "subtracting chains of different dimension");
    Chain out = a;
    for (const auto& [i, x] : b.coeffs_)
        out.set(i, out.get(i) - x);
    return out;
}

Chain operator*(const Rational& s, const Chain& c)
{
    Chain out(c.r_);
    for (const auto& [i, x] : c.coeffs_)
        out.set(i, s * x);
    return out;
}

void require_bound(const SimplicialComplex& k, const Chain& c, int r)
{
    if (c.dimension() != r)
        throw Error(ErrorKind::DimensionMismatch, "expected a " + std::to_string(r) + "-chain, got dimension " +
                                                      std::to_string(c.dimension()));
    const std::size_t n = k.size(r);
    if (!c.coeffs().empty() && c.coeffs().rbegin()->first >= n)
        throw Error(ErrorKind::DimensionMismatch, "chain index " + std::to_string(c.coeffs().rbegin()->first + 1) +
                                                      " exceeds layer size " + std::to_string(n));
}

RationalVector boundary_of(const SimplicialComplex& k, const Chain& c)
{
    const int r = c.dimension();
    require_bound(k, c, r);
    if (r <= 0)
        return {};
    RationalVector out(k.size(r - 1), Rational(0));
    for (const auto& [i, x] : c.coeffs()) {
        const Simplex& s = k.layer(r)[i];
        for (std::size_t p = 0; p <= static_cast<std::size_t>(r); ++p) {
            const std::size_t row = *k.index_of(s.facet(p));
            if (p % 2 == 0)
                out[row] += x;
            else
                out[row] -= x;
        }
    }
    return out;
}

} // namespace homlab
