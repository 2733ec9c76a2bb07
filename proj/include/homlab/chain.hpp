#ifndef HOMLAB_CHAIN_HPP
#define HOMLAB_CHAIN_HPP

#include <cstddef>
#include <map>

#include "homlab/complex.hpp"
#include "homlab/exact.hpp"

namespace homlab {

/// Sparse rational r-chain; indices are 0-based positions in layer r and zero coefficients are never stored.
class Chain {
public:
    Chain() = default;
    explicit Chain(int r) : r_(r) {}
    Chain(int r, std::map<std::size_t, Rational> coeffs);

    static Chain from_dense(int r, const RationalVector& values);

    int dimension() const noexcept { return r_; }
    const std::map<std::size_t, Rational>& coeffs() const noexcept { return coeffs_; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    std::size_t support_size() const noexcept { return coeffs_.size(); }

    void set(std::size_t index, const Rational& value);
    Rational get(std::size_t index) const;

    RationalVector dense(std::size_t length) const;
    RealVector real(std::size_t length) const;
    double norm() const;

    friend Chain operator+(const Chain& a, const Chain& b);
    friend Chain operator-(const Chain& a, const Chain& b);
    friend Chain operator*(const Rational& s, const Chain& c);
    friend bool operator==(const Chain& a, const Chain& b) = default;

private:
    int r_ = 0;
    std::map<std::size_t, Rational> coeffs_;
};

/// Throws DimensionMismatch unless the chain's dimension is `r` and all indices fall inside layer r of `k`.
void require_bound(const SimplicialComplex& k, const Chain& c, int r);

/// Exact ∂_r c (dense, length |S_{r-1}|); the zero vector of length 0 when r = 0.
RationalVector boundary_of(const SimplicialComplex& k, const Chain& c);

} // namespace homlab

#endif
