#ifndef HOMLAB_SPARSE_HPP
#define HOMLAB_SPARSE_HPP

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace homlab {

using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using RealSparse = Eigen::SparseMatrix<double>;

/**
 * Column-compressed integer matrix with exact int64 arithmetic.
 *
 * Each column is a row-sorted list of (row, value) pairs with no explicit
 * zeros. Boundary, specification and Laplacian matrices all live here so the
 * algebraic identities (boundary of a boundary, Frobenius counts) can be
 * checked without rounding.
 */
class IntSparse {
public:
    using Entry = std::pair<std::size_t, std::int64_t>;
    using Column = std::vector<Entry>;

    IntSparse() = default;
    IntSparse(std::size_t rows, std::size_t cols);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_.size(); }
    std::size_t nonzeros() const noexcept;

    const Column& column(std::size_t j) const { return cols_[j]; }
    std::int64_t at(std::size_t i, std::size_t j) const;

    /// Adds `value` to entry (i, j); entries that cancel to zero are dropped.
    void add(std::size_t i, std::size_t j, std::int64_t value);
    void append_column(Column column);

    IntSparse transpose() const;
    IntSparse abs() const;
    std::int64_t frobenius_squared() const;
    bool is_zero() const;

    /// Sub-block with rows [r0, r1) and columns [c0, c1).
    IntSparse block(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const;

    RealMatrix to_dense() const;
    RealSparse to_eigen() const;

    friend IntSparse operator*(const IntSparse& a, const IntSparse& b);
    friend IntSparse operator+(const IntSparse& a, const IntSparse& b);
    friend bool operator==(const IntSparse& a, const IntSparse& b);

private:
    std::size_t rows_ = 0;
    std::vector<Column> cols_;
};

} // namespace homlab

#endif
