#pragma once

#include <cstddef>
#include <initializer_list>
#include <tuple>
#include <string>
#include <utility>
#include <vector>

#include "tilecoh/integer.hpp"

namespace tilecoh {

using IntVector = std::vector<Int>;

// Dense row-major integer matrix.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
    IntMatrix(std::initializer_list<std::initializer_list<long>> init);
    static IntMatrix identity(size_t n);
    static IntMatrix from_rows(const std::vector<std::vector<long>>& rows, size_t cols = 0);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    Int& operator()(size_t r, size_t c) { return a_[r * cols_ + c]; }
    const Int& operator()(size_t r, size_t c) const { return a_[r * cols_ + c]; }
    Int& at(size_t r, size_t c);
    const Int& at(size_t r, size_t c) const;
    Int* row_ptr(size_t r) { return a_.data() + r * cols_; }
    const Int* row_ptr(size_t r) const { return a_.data() + r * cols_; }

    IntVector row(size_t r) const;
    IntVector col(size_t c) const;
    IntMatrix transpose() const;
    bool is_zero() const;
    IntMatrix submatrix(const std::vector<size_t>& rows, const std::vector<size_t>& cols) const;

    void swap_rows(size_t i, size_t j);
    void swap_cols(size_t i, size_t j);
    // row_i += k * row_j (and the column analogue).
    void add_row_multiple(size_t i, size_t j, const Int& k);
    void add_col_multiple(size_t i, size_t j, const Int& k);
    void negate_row(size_t i);
    void negate_col(size_t i);

    friend bool operator==(const IntMatrix& x, const IntMatrix& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }
    friend bool operator!=(const IntMatrix& x, const IntMatrix& y) { return !(x == y); }

private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<Int> a_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
IntMatrix scalar_multiple(const IntMatrix& a, const Int& k);
IntVector operator*(const IntMatrix& a, const IntVector& x);
IntMatrix hstack(const IntMatrix& a, const IntMatrix& b);
IntMatrix vstack(const IntMatrix& a, const IntMatrix& b);
IntMatrix matrix_power(const IntMatrix& a, unsigned k);
IntMatrix column_matrix(const std::vector<IntVector>& cols, size_t rows);

bool is_zero(const IntVector& v);
Int content(const IntVector& v);
// Divide by the content and fix the sign so the first nonzero entry is positive.
IntVector make_primitive(IntVector v);

// Sparse matrix in compressed-column form; each column is sorted by row.
class SparseMatrix {
public:
    using Entry = std::pair<size_t, Int>;
    using Column = std::vector<Entry>;

    SparseMatrix() = default;
    SparseMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), c_(cols) {}
    static SparseMatrix from_dense(const IntMatrix& m);
    static SparseMatrix from_triplets(size_t rows, size_t cols,
                                      std::vector<std::tuple<size_t, size_t, Int>> triplets);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    const Column& column(size_t c) const { return c_[c]; }
    Column& column(size_t c) { return c_[c]; }
    size_t nnz() const;
    Int get(size_t r, size_t c) const;

    IntMatrix to_dense() const;
    SparseMatrix transpose() const;
    // y = A x for sparse x given densely.
    IntVector apply(const IntVector& x) const;
    // y = A^T x.
    IntVector apply_transpose(const IntVector& x) const;
    bool is_zero() const { return nnz() == 0; }

    friend bool operator==(const SparseMatrix& x, const SparseMatrix& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.c_ == y.c_;
    }

private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<Column> c_;
};

SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b);

// Matrix text formats: CSV is row-major decimal, JSON is nested arrays.
std::string to_csv(const IntMatrix& m);
IntMatrix matrix_from_csv(const std::string& text);
std::string to_json_text(const IntMatrix& m);
IntMatrix matrix_from_json_text(const std::string& text);

std::string to_string(const IntVector& v);

}  // namespace tilecoh
