#ifndef HOMLAB_EXACT_HPP
#define HOMLAB_EXACT_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "homlab/sparse.hpp"

namespace homlab {

using Rational = mpq_class;
using BigInt = mpz_class;
using RationalVector = std::vector<Rational>;

/// Dense row-major matrix over the rationals.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols);

    static RationalMatrix from_sparse(const IntSparse& m);
    /// Columns given as vectors of equal length `rows`.
    static RationalMatrix from_columns(std::size_t rows, const std::vector<RationalVector>& columns);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    RationalVector column(std::size_t j) const;
    RationalMatrix transpose() const;
    /// [this | other]; row counts must agree.
    RationalMatrix hcat(const RationalMatrix& other) const;
    RationalVector apply(const RationalVector& x) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

/// Rank by fraction-free (Bareiss) elimination after clearing row denominators.
std::size_t exact_rank(const RationalMatrix& m);
std::size_t exact_rank(const IntSparse& m);

struct ReducedEchelon {
    RationalMatrix reduced;
    std::vector<std::size_t> pivot_columns;
};

/// Reduced row echelon form over the rationals.
ReducedEchelon rref(RationalMatrix m);

/// Basis of {x : m x = 0}, each vector scaled to a primitive integer vector.
std::vector<RationalVector> nullspace_basis(const RationalMatrix& m);

/// Some x with m x = b, or nullopt when b is outside the column space.
std::optional<RationalVector> solve(const RationalMatrix& m, const RationalVector& b);

bool is_zero(const RationalVector& v);

} // namespace homlab

#endif
