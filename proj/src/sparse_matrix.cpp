#include "spencer/sparse_matrix.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace spencer {

namespace {
constexpr std::size_t kDenseColumnThreshold = 64;
}

std::size_t SparseRationalMatrix::nnz() const
{
    std::size_t n = 0;
    for (const auto& r : row_)
        n += r.size();
    return n;
}

void SparseRationalMatrix::set(std::size_t r, std::size_t c, const Rational& v)
{
    if (r >= rows_ || c >= cols_)
        throw std::out_of_range("SparseRationalMatrix::set: index out of range");
    if (is_zero(v))
        row_[r].erase(c);
    else
        row_[r][c] = v;
}

void SparseRationalMatrix::add(std::size_t r, std::size_t c, const Rational& v)
{
    if (r >= rows_ || c >= cols_)
        throw std::out_of_range("SparseRationalMatrix::add: index out of range");
    auto it = row_[r].find(c);
    if (it == row_[r].end()) {
        if (!is_zero(v))
            row_[r][c] = v;
        return;
    }
    it->second += v;
    if (is_zero(it->second))
        row_[r].erase(it);
}

Rational SparseRationalMatrix::at(std::size_t r, std::size_t c) const
{
    if (r >= rows_ || c >= cols_)
        throw std::out_of_range("SparseRationalMatrix::at: index out of range");
    auto it = row_[r].find(c);
    return it == row_[r].end() ? Rational(0) : it->second;
}

SparseRationalMatrix SparseRationalMatrix::transpose() const
{
    SparseRationalMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (const auto& [c, v] : row_[r])
            t.row_[c][r] = v;
    return t;
}

void SparseRationalMatrix::append_column(const std::vector<Rational>& v)
{
    if (v.size() != rows_)
        throw std::invalid_argument("append_column: dimension mismatch");
    for (std::size_t r = 0; r < rows_; ++r)
        if (!is_zero(v[r]))
            row_[r][cols_] = v[r];
    ++cols_;
}

std::vector<Rational> SparseRationalMatrix::apply(const std::vector<Rational>& x) const
{
    if (x.size() != cols_)
        throw std::invalid_argument("apply: dimension mismatch");
    std::vector<Rational> y(rows_, Rational(0));
    for (std::size_t r = 0; r < rows_; ++r)
        for (const auto& [c, v] : row_[r])
            y[r] += v * x[c];
    return y;
}

SparseRationalMatrix SparseRationalMatrix::from_columns(
    std::size_t rows, const std::vector<std::vector<Rational>>& cols)
{
    SparseRationalMatrix m(rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (cols[c].size() != rows)
            throw std::invalid_argument("from_columns: column length mismatch");
        for (std::size_t r = 0; r < rows; ++r)
            if (!is_zero(cols[c][r]))
                m.row_[r][c] = cols[c][r];
    }
    return m;
}

std::size_t SparseRationalMatrix::rank_dense() const
{
    std::vector<std::vector<Rational>> a(rows_, std::vector<Rational>(cols_, Rational(0)));
    for (std::size_t r = 0; r < rows_; ++r)
        for (const auto& [c, v] : row_[r])
            a[r][c] = v;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols_ && rank < rows_; ++c) {
        std::size_t piv = rank;
        while (piv < rows_ && is_zero(a[piv][c]))
            ++piv;
        if (piv == rows_)
            continue;
        std::swap(a[rank], a[piv]);
        for (std::size_t r = rank + 1; r < rows_; ++r) {
            if (is_zero(a[r][c]))
                continue;
            Rational f = a[r][c] / a[rank][c];
            for (std::size_t k = c; k < cols_; ++k)
                a[r][k] -= f * a[rank][k];
        }
        ++rank;
    }
    return rank;
}

// Markowitz-style sparse elimination; pivot choice does not affect the rank.
std::size_t SparseRationalMatrix::rank_sparse() const
{
    std::vector<std::map<std::size_t, Rational>> rows(row_);
    std::vector<std::size_t> col_count(cols_, 0);
    std::vector<bool> row_active(rows_, true), col_active(cols_, true);
    for (const auto& r : rows)
        for (const auto& [c, v] : r)
            ++col_count[c];

    std::size_t rank = 0;
    for (;;) {
        std::size_t best_r = rows_, best_c = cols_;
        std::size_t best_cost = std::numeric_limits<std::size_t>::max();
        for (std::size_t r = 0; r < rows_; ++r) {
            if (!row_active[r] || rows[r].empty())
                continue;
            std::size_t rnnz = rows[r].size();
            for (const auto& [c, v] : rows[r]) {
                std::size_t cost = (rnnz - 1) * (col_count[c] - 1);
                if (cost < best_cost) {
                    best_cost = cost;
                    best_r = r;
                    best_c = c;
                    if (cost == 0)
                        break;
                }
            }
            if (best_cost == 0)
                break;
        }
        if (best_r == rows_)
            break;

        const Rational piv = rows[best_r][best_c];
        for (std::size_t r = 0; r < rows_; ++r) {
            if (!row_active[r] || r == best_r)
                continue;
            auto it = rows[r].find(best_c);
            if (it == rows[r].end())
                continue;
            Rational f = it->second / piv;
            for (const auto& [c, v] : rows[best_r]) {
                if (!col_active[c])
                    continue;
                auto jt = rows[r].find(c);
                if (jt == rows[r].end()) {
                    Rational nv = -f * v;
                    if (!is_zero(nv)) {
                        rows[r][c] = nv;
                        ++col_count[c];
                    }
                } else {
                    jt->second -= f * v;
                    if (is_zero(jt->second)) {
                        rows[r].erase(jt);
                        --col_count[c];
                    }
                }
            }
        }
        for (const auto& [c, v] : rows[best_r])
            --col_count[c];
        row_active[best_r] = false;
        col_active[best_c] = false;
        rows[best_r].clear();
        ++rank;
    }
    return rank;
}

std::size_t SparseRationalMatrix::rank() const
{
    if (cols_ == 0 || rows_ == 0)
        return 0;
    return cols_ < kDenseColumnThreshold ? rank_dense() : rank_sparse();
}

namespace {

// Strict left-to-right reduced row echelon form, in place. Returns the pivot
// column of each surviving row; the RREF is unique, so every caller gets a
// canonical result independent of pivot-row choices.
std::vector<std::pair<std::size_t, std::size_t>> rref_rows(
    std::vector<std::map<std::size_t, Rational>>& rows, std::size_t cols)
{
    std::vector<std::pair<std::size_t, std::size_t>> pivots; // (col, row)
    std::vector<bool> used(rows.size(), false);
    for (std::size_t c = 0; c < cols; ++c) {
        std::size_t piv = rows.size();
        std::size_t piv_nnz = std::numeric_limits<std::size_t>::max();
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (used[r])
                continue;
            auto it = rows[r].find(c);
            if (it != rows[r].end() && rows[r].size() < piv_nnz) {
                piv = r;
                piv_nnz = rows[r].size();
            }
        }
        if (piv == rows.size())
            continue;
        used[piv] = true;
        pivots.emplace_back(c, piv);
        Rational inv = 1 / rows[piv][c];
        if (inv != 1)
            for (auto& [cc, v] : rows[piv])
                v *= inv;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == piv)
                continue;
            auto it = rows[r].find(c);
            if (it == rows[r].end())
                continue;
            Rational f = it->second;
            for (const auto& [cc, v] : rows[piv]) {
                auto jt = rows[r].find(cc);
                if (jt == rows[r].end()) {
                    Rational nv = -f * v;
                    if (!is_zero(nv))
                        rows[r][cc] = nv;
                } else {
                    jt->second -= f * v;
                    if (is_zero(jt->second))
                        rows[r].erase(jt);
                }
            }
        }
    }
    return pivots;
}

} // namespace

std::vector<std::vector<Rational>> SparseRationalMatrix::kernel_basis(
    std::vector<std::size_t>* free_cols) const
{
    if (free_cols)
        free_cols->clear();
    std::vector<std::map<std::size_t, Rational>> rows(row_);
    auto pivots = rref_rows(rows, cols_);
    std::vector<std::size_t> pivot_row_of_col(cols_, std::numeric_limits<std::size_t>::max());
    for (const auto& [c, r] : pivots)
        pivot_row_of_col[c] = r;

    std::vector<std::map<std::size_t, Rational>> kernel_rows;
    for (std::size_t f = 0; f < cols_; ++f) {
        if (pivot_row_of_col[f] != std::numeric_limits<std::size_t>::max())
            continue;
        std::map<std::size_t, Rational> v;
        v[f] = 1;
        for (const auto& [c, pr] : pivots) {
            auto it = rows[pr].find(f);
            if (it != rows[pr].end())
                v[c] = -it->second;
        }
        kernel_rows.push_back(std::move(v));
    }

    // Reduce the kernel itself to row-echelon form so the output is the
    // canonical RREF of the null space (pivots ascending, leading ones).
    auto kpivots = rref_rows(kernel_rows, cols_);
    std::vector<std::vector<Rational>> basis;
    for (const auto& [c, r] : kpivots) {
        if (free_cols)
            free_cols->push_back(c);
        std::vector<Rational> v(cols_, Rational(0));
        for (const auto& [cc, val] : kernel_rows[r])
            v[cc] = val;
        basis.push_back(std::move(v));
    }
    return basis;
}

bool SparseRationalMatrix::in_span(const std::vector<Rational>& v) const
{
    if (v.size() != rows_)
        throw std::invalid_argument("in_span: dimension mismatch");
    SparseRationalMatrix ext(*this);
    ext.append_column(v);
    return ext.rank() == rank();
}

} // namespace spencer
