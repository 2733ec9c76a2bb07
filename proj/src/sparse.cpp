#include "homlab/sparse.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <stdexcept>

namespace homlab {

IntSparse::IntSparse(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

std::size_t IntSparse::nonzeros() const noexcept
{
    std::size_t n = 0;
    for (const auto& c : cols_)
        n += c.size();
    return n;
}

std::int64_t IntSparse::at(std::size_t i, std::size_t j) const
{
    const auto& col = cols_.at(j);
    auto it = std::lower_bound(col.begin(), col.end(), i,
                               [](const Entry& e, std::size_t row) { return e.first < row; });
    return (it != col.end() && it->first == i) ? it->second : 0;
}

void IntSparse::add(std::size_t i, std::size_t j, std::int64_t value)
{
    if (i >= rows_ || j >= cols_.size())
        throw std::out_of_range("IntSparse::add index out of range");
    if (value == 0)
        return;
    auto& col = cols_[j];
    auto it = std::lower_bound(col.begin(), col.end(), i,
                               [](const Entry& e, std::size_t row) { return e.first < row; });
    if (it != col.end() && it->first == i) {
        it->second += value;
        if (it->second == 0)
            col.erase(it);
    } else {
        col.insert(it, {i, value});
    }
}

void IntSparse::append_column(Column column)
{
    std::sort(column.begin(), column.end());
    Column merged;
    for (const auto& [row, value] : column) {
        if (row >= rows_)
            throw std::out_of_range("IntSparse::append_column row out of range");
        if (!merged.empty() && merged.back().first == row)
            merged.back().second += value;
        else
            merged.push_back({row, value});
        if (merged.back().second == 0)
            merged.pop_back();
    }
    cols_.push_back(std::move(merged));
}

IntSparse IntSparse::transpose() const
{
    IntSparse t(cols(), rows_);
    for (std::size_t j = 0; j < cols(); ++j)
        for (const auto& [i, v] : cols_[j])
            t.cols_[i].push_back({j, v});
    return t;
}

IntSparse IntSparse::abs() const
{
    IntSparse out = *this;
    for (auto& col : out.cols_)
        for (auto& e : col)
            e.second = std::llabs(e.second);
    return out;
}

std::int64_t IntSparse::frobenius_squared() const
{
    std::int64_t s = 0;
    for (const auto& col : cols_)
        for (const auto& e : col)
            s += e.second * e.second;
    return s;
}

bool IntSparse::is_zero() const
{
    return std::all_of(cols_.begin(), cols_.end(), [](const Column& c) { return c.empty(); });
}

IntSparse IntSparse::block(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const
{
    if (r0 > r1 || r1 > rows_ || c0 > c1 || c1 > cols())
        throw std::out_of_range("IntSparse::block range");
    IntSparse out(r1 - r0, 0);
    for (std::size_t j = c0; j < c1; ++j) {
        Column col;
        for (const auto& [i, v] : cols_[j])
            if (i >= r0 && i < r1)
                col.push_back({i - r0, v});
        out.cols_.push_back(std::move(col));
    }
    return out;
}

RealMatrix IntSparse::to_dense() const
{
    RealMatrix m = RealMatrix::Zero(static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(cols()));
    for (std::size_t j = 0; j < cols(); ++j)
        for (const auto& [i, v] : cols_[j])
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = static_cast<double>(v);
    return m;
}

RealSparse IntSparse::to_eigen() const
{
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(nonzeros());
    for (std::size_t j = 0; j < cols(); ++j)
        for (const auto& [i, v] : cols_[j])
            trips.emplace_back(static_cast<int>(i), static_cast<int>(j), static_cast<double>(v));
    RealSparse m(static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(cols()));
    m.setFromTriplets(trips.begin(), trips.end());
    return m;
}

IntSparse operator*(const IntSparse& a, const IntSparse& b)
{
    if (a.cols() != b.rows())
        throw std::invalid_argument("IntSparse product shape mismatch");
    IntSparse out(a.rows(), 0);
    for (std::size_t j = 0; j < b.cols(); ++j) {
        std::map<std::size_t, std::int64_t> acc;
        for (const auto& [k, bv] : b.column(j))
            for (const auto& [i, av] : a.column(k))
                acc[i] += av * bv;
        IntSparse::Column col;
        for (const auto& [i, v] : acc)
            if (v != 0)
                col.push_back({i, v});
        out.cols_.push_back(std::move(col));
    }
    return out;
}

IntSparse operator+(const IntSparse& a, const IntSparse& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("IntSparse sum shape mismatch");
    IntSparse out(a.rows(), 0);
    for (std::size_t j = 0; j < a.cols(); ++j) {
        IntSparse::Column col = a.column(j);
        col.insert(col.end(), b.column(j).begin(), b.column(j).end());
        out.append_column(std::move(col));
    }
    return out;
}

bool operator==(const IntSparse& a, const IntSparse& b)
{
    return a.rows_ == b.rows_ && a.cols_ == b.cols_;
}

} // namespace homlab
