#pragma once

/**
 * @file matrix.hpp
 * @brief Dense row-major matrices over GF(p) and the exact linear algebra the
 * codes need: products, Gauss-Jordan inversion, linear solves, rank,
 * Vandermonde construction and block-diagonal assembly.
 *
 * A `Mat` does not carry its field; every arithmetic routine takes the
 * `Field` explicitly. Pivot search always takes the first nonzero entry in
 * the column, so results (and any transcript built from them) are
 * reproducible.
 */

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"
#include "gf.hpp"

namespace earc {

using Vec = std::vector<Fe>;

class Mat {
public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    /// Builds from nested integer rows, reducing each entry into the field.
    Mat(const Field& F, std::initializer_list<std::initializer_list<std::int64_t>> rows)
        : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0)
    {
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_)
                throw Error(Errc::DimensionMismatch, "ragged matrix literal");
            for (auto x : r)
                data_.push_back(F.from_int(x));
        }
    }

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] bool empty() const noexcept { return data_.empty(); }
    [[nodiscard]] bool square() const noexcept { return rows_ == cols_; }

    Fe& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    const Fe& operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

    [[nodiscard]] std::span<Fe> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
    [[nodiscard]] std::span<const Fe> row(std::size_t r) const noexcept
    {
        return {data_.data() + r * cols_, cols_};
    }

    [[nodiscard]] Vec row_vec(std::size_t r) const { return {row(r).begin(), row(r).end()}; }

    [[nodiscard]] Vec col_vec(std::size_t c) const
    {
        Vec out(rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            out[r] = (*this)(r, c);
        return out;
    }

    [[nodiscard]] const std::vector<Fe>& data() const noexcept { return data_; }

    [[nodiscard]] Mat transpose() const
    {
        Mat t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                t(c, r) = (*this)(r, c);
        return t;
    }

    /// Rows picked by index, in the given order.
    [[nodiscard]] Mat select_rows(std::span<const std::size_t> idx) const
    {
        Mat out(idx.size(), cols_);
        for (std::size_t i = 0; i < idx.size(); ++i)
            std::copy_n(row(idx[i]).begin(), cols_, out.row(i).begin());
        return out;
    }

    [[nodiscard]] Mat block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const
    {
        Mat out(nr, nc);
        for (std::size_t r = 0; r < nr; ++r)
            for (std::size_t c = 0; c < nc; ++c)
                out(r, c) = (*this)(r0 + r, c0 + c);
        return out;
    }

    [[nodiscard]] bool is_zero() const noexcept
    {
        return std::all_of(data_.begin(), data_.end(), [](Fe x) { return x.is_zero(); });
    }

    bool operator==(const Mat&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Fe> data_;
};

inline Mat identity(const Field& F, std::size_t n)
{
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = F.one();
    return m;
}

inline Mat diag(std::span<const Fe> entries)
{
    Mat m(entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i)
        m(i, i) = entries[i];
    return m;
}

inline Mat row_matrix(std::span<const Fe> v)
{
    Mat m(1, v.size());
    std::copy(v.begin(), v.end(), m.row(0).begin());
    return m;
}

inline Mat col_matrix(std::span<const Fe> v) { return row_matrix(v).transpose(); }

inline Mat mat_mul(const Field& F, const Mat& a, const Mat& b)
{
    if (a.cols() != b.rows())
        throw Error(Errc::DimensionMismatch,
                    "mat_mul " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " by "
                        + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    const std::uint64_t p = F.prime();
    Mat c(a.rows(), b.cols());
    std::vector<std::uint64_t> acc(b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        std::fill(acc.begin(), acc.end(), 0);
        for (std::size_t l = 0; l < a.cols(); ++l) {
            const std::uint64_t x = a(i, l).value;
            if (x == 0)
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                acc[j] = (acc[j] + x * b(l, j).value) % p;
        }
        for (std::size_t j = 0; j < b.cols(); ++j)
            c(i, j) = Fe(static_cast<std::uint32_t>(acc[j]));
    }
    return c;
}

inline Vec mat_vec(const Field& F, const Mat& a, std::span<const Fe> x)
{
    if (a.cols() != x.size())
        throw Error(Errc::DimensionMismatch, "mat_vec width " + std::to_string(a.cols()) + " vs vector "
                                                 + std::to_string(x.size()));
    Vec y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Fe s = F.zero();
        for (std::size_t j = 0; j < a.cols(); ++j)
            s = F.add(s, F.mul(a(i, j), x[j]));
        y[i] = s;
    }
    return y;
}

inline Fe dot(const Field& F, std::span<const Fe> a, std::span<const Fe> b)
{
    if (a.size() != b.size())
        throw Error(Errc::DimensionMismatch, "dot of lengths " + std::to_string(a.size()) + " and "
                                                 + std::to_string(b.size()));
    Fe s = F.zero();
    for (std::size_t i = 0; i < a.size(); ++i)
        s = F.add(s, F.mul(a[i], b[i]));
    return s;
}

inline Mat mat_add(const Field& F, const Mat& a, const Mat& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw Error(Errc::DimensionMismatch, "mat_add shape mismatch");
    Mat c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            c(i, j) = F.add(a(i, j), b(i, j));
    return c;
}

inline Mat mat_scale(const Field& F, Fe s, const Mat& a)
{
    Mat c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            c(i, j) = F.mul(s, a(i, j));
    return c;
}

/// Side-by-side concatenation [a | b].
inline Mat hstack(const Mat& a, const Mat& b)
{
    if (a.rows() != b.rows())
        throw Error(Errc::DimensionMismatch, "hstack row mismatch");
    Mat c(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        std::copy_n(a.row(i).begin(), a.cols(), c.row(i).begin());
        std::copy_n(b.row(i).begin(), b.cols(), c.row(i).begin() + static_cast<std::ptrdiff_t>(a.cols()));
    }
    return c;
}

/// Stacked concatenation [a; b].
inline Mat vstack(const Mat& a, const Mat& b)
{
    if (a.cols() != b.cols())
        throw Error(Errc::DimensionMismatch, "vstack column mismatch");
    Mat c(a.rows() + b.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        std::copy_n(a.row(i).begin(), a.cols(), c.row(i).begin());
    for (std::size_t i = 0; i < b.rows(); ++i)
        std::copy_n(b.row(i).begin(), b.cols(), c.row(a.rows() + i).begin());
    return c;
}

/// Entry (i, j) = points[i]^j.
inline Mat vandermonde(const Field& F, std::span<const Fe> points, std::size_t cols)
{
    Mat v(points.size(), cols);
    for (std::size_t i = 0; i < points.size(); ++i) {
        Fe x = F.one();
        for (std::size_t j = 0; j < cols; ++j) {
            v(i, j) = x;
            x = F.mul(x, points[i]);
        }
    }
    return v;
}

inline Mat blkdiag(std::span<const Mat> blocks)
{
    std::size_t r = 0, c = 0;
    for (const auto& b : blocks) {
        r += b.rows();
        c += b.cols();
    }
    Mat out(r, c);
    std::size_t r0 = 0, c0 = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j)
                out(r0 + i, c0 + j) = b(i, j);
        r0 += b.rows();
        c0 += b.cols();
    }
    return out;
}

inline Mat blkdiag(std::initializer_list<Mat> blocks)
{
    return blkdiag(std::span<const Mat>(blocks.begin(), blocks.size()));
}

namespace detail {

// Reduces [a | b] in place to [I | a^{-1} b]. Returns false if a is singular.
inline bool gauss_jordan(const Field& F, Mat& a, Mat& b)
{
    const std::size_t n = a.rows();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a(piv, col).is_zero())
            ++piv;
        if (piv == n)
            return false;
        if (piv != col) {
            std::swap_ranges(a.row(piv).begin(), a.row(piv).end(), a.row(col).begin());
            std::swap_ranges(b.row(piv).begin(), b.row(piv).end(), b.row(col).begin());
        }
        const Fe s = F.inv(a(col, col));
        for (auto& x : a.row(col))
            x = F.mul(x, s);
        for (auto& x : b.row(col))
            x = F.mul(x, s);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a(r, col).is_zero())
                continue;
            const Fe f = a(r, col);
            for (std::size_t j = 0; j < a.cols(); ++j)
                a(r, j) = F.sub(a(r, j), F.mul(f, a(col, j)));
            for (std::size_t j = 0; j < b.cols(); ++j)
                b(r, j) = F.sub(b(r, j), F.mul(f, b(col, j)));
        }
    }
    return true;
}

} // namespace detail

/// Solves a * x = b for square nonsingular a.
inline Mat solve(const Field& F, const Mat& a, const Mat& b)
{
    if (!a.square())
        throw Error(Errc::DimensionMismatch, "solve needs a square coefficient matrix");
    if (a.rows() != b.rows())
        throw Error(Errc::DimensionMismatch, "solve right-hand side has wrong height");
    Mat lhs = a;
    Mat rhs = b;
    if (!detail::gauss_jordan(F, lhs, rhs))
        throw Error(Errc::Singular, std::to_string(a.rows()) + "x" + std::to_string(a.cols())
                                        + " matrix is singular over GF(" + std::to_string(F.prime()) + ")");
    return rhs;
}

inline Mat mat_inv(const Field& F, const Mat& a)
{
    if (!a.square())
        throw Error(Errc::DimensionMismatch, "inverse of a non-square matrix");
    return solve(F, a, identity(F, a.rows()));
}

inline std::size_t rank(const Field& F, Mat a)
{
    std::size_t r = 0;
    for (std::size_t col = 0; col < a.cols() && r < a.rows(); ++col) {
        std::size_t piv = r;
        while (piv < a.rows() && a(piv, col).is_zero())
            ++piv;
        if (piv == a.rows())
            continue;
        std::swap_ranges(a.row(piv).begin(), a.row(piv).end(), a.row(r).begin());
        const Fe s = F.inv(a(r, col));
        for (auto& x : a.row(r))
            x = F.mul(x, s);
        for (std::size_t i = r + 1; i < a.rows(); ++i) {
            if (a(i, col).is_zero())
                continue;
            const Fe f = a(i, col);
            for (std::size_t j = col; j < a.cols(); ++j)
                a(i, j) = F.sub(a(i, j), F.mul(f, a(r, j)));
        }
        ++r;
    }
    return r;
}

/// Basis of the right null space {x : a x = 0}, one basis vector per row.
inline Mat null_space(const Field& F, Mat a)
{
    const std::size_t m = a.rows(), n = a.cols();
    std::vector<std::size_t> pivcols;
    std::size_t r = 0;
    for (std::size_t col = 0; col < n && r < m; ++col) {
        std::size_t piv = r;
        while (piv < m && a(piv, col).is_zero())
            ++piv;
        if (piv == m)
            continue;
        std::swap_ranges(a.row(piv).begin(), a.row(piv).end(), a.row(r).begin());
        const Fe s = F.inv(a(r, col));
        for (auto& x : a.row(r))
            x = F.mul(x, s);
        for (std::size_t i = 0; i < m; ++i) {
            if (i == r || a(i, col).is_zero())
                continue;
            const Fe f = a(i, col);
            for (std::size_t j = 0; j < n; ++j)
                a(i, j) = F.sub(a(i, j), F.mul(f, a(r, j)));
        }
        pivcols.push_back(col);
        ++r;
    }
    std::vector<std::size_t> free;
    for (std::size_t c = 0, k = 0; c < n; ++c) {
        if (k < pivcols.size() && pivcols[k] == c)
            ++k;
        else
            free.push_back(c);
    }
    Mat basis(free.size(), n);
    for (std::size_t b = 0; b < free.size(); ++b) {
        basis(b, free[b]) = F.one();
        for (std::size_t i = 0; i < pivcols.size(); ++i)
            basis(b, pivcols[i]) = F.neg(a(i, free[b]));
    }
    return basis;
}

} // namespace earc
