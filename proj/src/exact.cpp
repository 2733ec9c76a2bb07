#include "homlab/exact.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace homlab {

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Rational(0))
{
}

RationalMatrix RationalMatrix::from_sparse(const IntSparse& m)
{
    RationalMatrix out(m.rows(), m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j)
        for (const auto& [i, v] : m.column(j))
            out(i, j) = Rational(static_cast<long>(v));
    return out;
}

RationalMatrix RationalMatrix::from_columns(std::size_t rows, const std::vector<RationalVector>& columns)
{
    RationalMatrix out(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
        if (columns[j].size() != rows)
            throw std::invalid_argument("column length differs from row count");
        for (std::size_t i = 0; i < rows; ++i)
            out(i, j) = columns[j][i];
    }
    return out;
}

RationalVector RationalMatrix::column(std::size_t j) const
{
    RationalVector c(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        c[i] = (*this)(i, j);
    return c;
}

RationalMatrix RationalMatrix::transpose() const
{
    RationalMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

RationalMatrix RationalMatrix::hcat(const RationalMatrix& other) const
{
    if (other.rows_ != rows_)
        throw std::invalid_argument("hcat row mismatch");
    RationalMatrix out(rows_, cols_ + other.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j)
            out(i, j) = (*this)(i, j);
        for (std::size_t j = 0; j < other.cols_; ++j)
            out(i, cols_ + j) = other(i, j);
    }
    return out;
}

RationalVector RationalMatrix::apply(const RationalVector& x) const
{
    if (x.size() != cols_)
        throw std::invalid_argument("apply length mismatch");
    RationalVector y(rows_, Rational(0));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (sgn(x[j]) != 0)
                y[i] += (*this)(i, j) * x[j];
    return y;
}

namespace {

std::size_t bareiss_rank(std::vector<std::vector<BigInt>> a, std::size_t cols)
{
    const std::size_t rows = a.size();
    std::size_t pivot_row = 0;
    BigInt prev = 1;
    for (std::size_t c = 0; c < cols && pivot_row < rows; ++c) {
        std::size_t p = pivot_row;
        while (p < rows && sgn(a[p][c]) == 0)
            ++p;
        if (p == rows)
            continue;
        std::swap(a[p], a[pivot_row]);
        const BigInt& piv = a[pivot_row][c];
        for (std::size_t i = pivot_row + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                BigInt t = piv * a[i][j] - a[i][c] * a[pivot_row][j];
                mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a[i][c] = 0;
        }
        prev = piv;
        ++pivot_row;
    }
    return pivot_row;
}

} // namespace

std::size_t exact_rank(const RationalMatrix& m)
{
    std::vector<std::vector<BigInt>> a(m.rows(), std::vector<BigInt>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        BigInt lcm = 1;
        for (std::size_t j = 0; j < m.cols(); ++j)
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), m(i, j).get_den_mpz_t());
        for (std::size_t j = 0; j < m.cols(); ++j)
            a[i][j] = m(i, j).get_num() * (lcm / m(i, j).get_den());
    }
    return bareiss_rank(std::move(a), m.cols());
}

std::size_t exact_rank(const IntSparse& m)
{
    std::vector<std::vector<BigInt>> a(m.rows(), std::vector<BigInt>(m.cols()));
    for (std::size_t j = 0; j < m.cols(); ++j)
        for (const auto& [i, v] : m.column(j))
            a[i][j] = static_cast<long>(v);
    return bareiss_rank(std::move(a), m.cols());
}

ReducedEchelon rref(RationalMatrix m)
{
    ReducedEchelon out;
    std::size_t row = 0;
    for (std::size_t c = 0; c < m.cols() && row < m.rows(); ++c) {
        std::size_t p = row;
        while (p < m.rows() && sgn(m(p, c)) == 0)
            ++p;
        if (p == m.rows())
            continue;
        if (p != row)
            for (std::size_t j = 0; j < m.cols(); ++j)
                std::swap(m(p, j), m(row, j));
        const Rational inv = 1 / m(row, c);
        for (std::size_t j = c; j < m.cols(); ++j)
            m(row, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || sgn(m(i, c)) == 0)
                continue;
            const Rational factor = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j)
                if (sgn(m(row, j)) != 0)
                    m(i, j) -= factor * m(row, j);
        }
        out.pivot_columns.push_back(c);
        ++row;
    }
    out.reduced = std::move(m);
    return out;
}

std::vector<RationalVector> nullspace_basis(const RationalMatrix& m)
{
    const ReducedEchelon e = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : e.pivot_columns)
        is_pivot[c] = true;

    std::vector<RationalVector> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free])
            continue;
        RationalVector v(m.cols(), Rational(0));
        v[free] = 1;
        for (std::size_t k = 0; k < e.pivot_columns.size(); ++k)
            v[e.pivot_columns[k]] = -e.reduced(k, free);

        BigInt den_lcm = 1;
        BigInt num_gcd = 0;
        for (const Rational& x : v)
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), x.get_den_mpz_t());
        for (Rational& x : v) {
            x *= den_lcm;
            mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), x.get_num_mpz_t());
        }
        for (Rational& x : v)
            x /= num_gcd;
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<RationalVector> solve(const RationalMatrix& m, const RationalVector& b)
{
    if (b.size() != m.rows())
        throw std::invalid_argument("solve right-hand side length mismatch");
    RationalMatrix aug = m.hcat(RationalMatrix::from_columns(m.rows(), {b}));
    const ReducedEchelon e = rref(std::move(aug));
    if (!e.pivot_columns.empty() && e.pivot_columns.back() == m.cols())
        return std::nullopt;
    RationalVector x(m.cols(), Rational(0));
    for (std::size_t k = 0; k < e.pivot_columns.size(); ++k)
        x[e.pivot_columns[k]] = e.reduced(k, m.cols());
    return x;
}

bool is_zero(const RationalVector& v)
{
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) == 0; });
}

} // namespace homlab
