#pragma once

#include "spencer/rational.hpp"

#include <cstddef>
#include <map>
#include <vector>

namespace spencer {

// Sparse matrix over the rationals with exact rank, canonical kernel basis
// and column-span membership. Row-major storage, no explicit zeros.
class SparseRationalMatrix {
public:
    SparseRationalMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), row_(rows)
    {
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t nnz() const;

    void set(std::size_t r, std::size_t c, const Rational& v);
    void add(std::size_t r, std::size_t c, const Rational& v);
    Rational at(std::size_t r, std::size_t c) const;
    const std::map<std::size_t, Rational>& row(std::size_t r) const { return row_[r]; }

    SparseRationalMatrix transpose() const;

    // Appends v as a new last column; v.size() must equal rows().
    void append_column(const std::vector<Rational>& v);

    std::vector<Rational> apply(const std::vector<Rational>& x) const; // M*x

    // Exact rank over Q. Deterministic (the value is basis-independent).
    std::size_t rank() const;

    // Canonical basis of the right null space: the reduced-echelon kernel
    // with ascending free columns, one basis vector per free column. When
    // free_cols is given it receives the free column index of each vector.
    std::vector<std::vector<Rational>> kernel_basis(std::vector<std::size_t>* free_cols = nullptr) const;

    // True iff v lies in the column span. v.size() must equal rows().
    bool in_span(const std::vector<Rational>& v) const;

    static SparseRationalMatrix from_columns(std::size_t rows,
                                             const std::vector<std::vector<Rational>>& cols);

private:
    std::size_t rows_, cols_;
    std::vector<std::map<std::size_t, Rational>> row_;

    std::size_t rank_dense() const;
    std::size_t rank_sparse() const;
};

} // namespace spencer
