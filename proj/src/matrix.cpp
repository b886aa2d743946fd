#include "tilecoh/matrix.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "tilecoh/errors.hpp"

namespace tilecoh {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    a_.reserve(rows_ * cols_);
    for (const auto& r : init) {
        if (r.size() != cols_) throw DimensionMismatch("ragged matrix literal");
        for (long v : r) a_.emplace_back(v);
    }
}

IntMatrix IntMatrix::identity(size_t n) {
    IntMatrix m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long>>& rows, size_t cols) {
    if (!rows.empty()) cols = rows[0].size();
    IntMatrix m(rows.size(), cols);
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw DimensionMismatch("ragged rows");
        for (size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

Int& IntMatrix::at(size_t r, size_t c) {
    if (r >= rows_ || c >= cols_) throw std::out_of_range("IntMatrix::at");
    return (*this)(r, c);
}

const Int& IntMatrix::at(size_t r, size_t c) const {
    if (r >= rows_ || c >= cols_) throw std::out_of_range("IntMatrix::at");
    return (*this)(r, c);
}

IntVector IntMatrix::row(size_t r) const { return IntVector(row_ptr(r), row_ptr(r) + cols_); }

IntVector IntMatrix::col(size_t c) const {
    IntVector v(rows_);
    for (size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, c);
    return v;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

bool IntMatrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const Int& x) { return x.is_zero(); });
}

IntMatrix IntMatrix::submatrix(const std::vector<size_t>& rows, const std::vector<size_t>& cols) const {
    IntMatrix s(rows.size(), cols.size());
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < cols.size(); ++j) s(i, j) = (*this)(rows[i], cols[j]);
    return s;
}

void IntMatrix::swap_rows(size_t i, size_t j) {
    if (i == j) return;
    for (size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
}

void IntMatrix::swap_cols(size_t i, size_t j) {
    if (i == j) return;
    for (size_t r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
}

void IntMatrix::add_row_multiple(size_t i, size_t j, const Int& k) {
    if (k.is_zero()) return;
    Int* ri = row_ptr(i);
    const Int* rj = row_ptr(j);
    for (size_t c = 0; c < cols_; ++c)
        if (!rj[c].is_zero()) addmul(ri[c], k, rj[c]);
}

void IntMatrix::add_col_multiple(size_t i, size_t j, const Int& k) {
    if (k.is_zero()) return;
    for (size_t r = 0; r < rows_; ++r) {
        const Int& x = (*this)(r, j);
        if (!x.is_zero()) addmul((*this)(r, i), k, x);
    }
}

void IntMatrix::negate_row(size_t i) {
    for (size_t c = 0; c < cols_; ++c) (*this)(i, c) = -(*this)(i, c);
}

void IntMatrix::negate_col(size_t i) {
    for (size_t r = 0; r < rows_; ++r) (*this)(r, i) = -(*this)(r, i);
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionMismatch("matrix product");
    IntMatrix c(a.rows(), b.cols());
    for (size_t i = 0; i < a.rows(); ++i) {
        Int* ci = c.row_ptr(i);
        for (size_t k = 0; k < a.cols(); ++k) {
            const Int& x = a(i, k);
            if (x.is_zero()) continue;
            const Int* bk = b.row_ptr(k);
            for (size_t j = 0; j < b.cols(); ++j)
                if (!bk[j].is_zero()) addmul(ci[j], x, bk[j]);
        }
    }
    return c;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("matrix sum");
    IntMatrix c = a;
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) c(i, j) += b(i, j);
    return c;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("matrix difference");
    IntMatrix c = a;
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) c(i, j) -= b(i, j);
    return c;
}

IntMatrix scalar_multiple(const IntMatrix& a, const Int& k) {
    IntMatrix c = a;
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) c(i, j) *= k;
    return c;
}

IntVector operator*(const IntMatrix& a, const IntVector& x) {
    if (a.cols() != x.size()) throw DimensionMismatch("matrix-vector product");
    IntVector y(a.rows());
    for (size_t i = 0; i < a.rows(); ++i) {
        const Int* r = a.row_ptr(i);
        for (size_t j = 0; j < a.cols(); ++j)
            if (!r[j].is_zero() && !x[j].is_zero()) addmul(y[i], r[j], x[j]);
    }
    return y;
}

IntMatrix hstack(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows()) throw DimensionMismatch("hstack");
    IntMatrix c(a.rows(), a.cols() + b.cols());
    for (size_t i = 0; i < a.rows(); ++i) {
        for (size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
        for (size_t j = 0; j < b.cols(); ++j) c(i, a.cols() + j) = b(i, j);
    }
    return c;
}

IntMatrix vstack(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.cols()) throw DimensionMismatch("vstack");
    IntMatrix c(a.rows() + b.rows(), a.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
    for (size_t i = 0; i < b.rows(); ++i)
        for (size_t j = 0; j < b.cols(); ++j) c(a.rows() + i, j) = b(i, j);
    return c;
}

IntMatrix matrix_power(const IntMatrix& a, unsigned k) {
    if (!a.square()) throw DimensionMismatch("matrix power of non-square matrix");
    IntMatrix result = IntMatrix::identity(a.rows()), base = a;
    while (k) {
        if (k & 1u) result = result * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return result;
}

IntMatrix column_matrix(const std::vector<IntVector>& cols, size_t rows) {
    IntMatrix m(rows, cols.size());
    for (size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != rows) throw DimensionMismatch("column_matrix");
        for (size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
}

bool is_zero(const IntVector& v) {
    return std::all_of(v.begin(), v.end(), [](const Int& x) { return x.is_zero(); });
}

Int content(const IntVector& v) {
    Int g = 0;
    for (const auto& x : v) {
        if (x.is_zero()) continue;
        g = gcd(g, x);
        if (g.is_one()) break;
    }
    return g;
}

IntVector make_primitive(IntVector v) {
    Int g = content(v);
    if (g.is_zero()) return v;
    auto first = std::find_if(v.begin(), v.end(), [](const Int& x) { return !x.is_zero(); });
    if (first->sign() < 0) g = -g;
    if (!g.is_one())
        for (auto& x : v) x = divexact(x, g);
    return v;
}

// Sparse ------------------------------------------------------------------

SparseMatrix SparseMatrix::from_dense(const IntMatrix& m) {
    SparseMatrix s(m.rows(), m.cols());
    for (size_t j = 0; j < m.cols(); ++j)
        for (size_t i = 0; i < m.rows(); ++i)
            if (!m(i, j).is_zero()) s.c_[j].emplace_back(i, m(i, j));
    return s;
}

SparseMatrix SparseMatrix::from_triplets(size_t rows, size_t cols,
                                         std::vector<std::tuple<size_t, size_t, Int>> triplets) {
    std::sort(triplets.begin(), triplets.end(), [](const auto& a, const auto& b) {
        return std::tie(std::get<1>(a), std::get<0>(a)) < std::tie(std::get<1>(b), std::get<0>(b));
    });
    SparseMatrix s(rows, cols);
    for (auto& [r, c, v] : triplets) {
        if (r >= rows || c >= cols) throw std::out_of_range("SparseMatrix triplet");
        auto& col = s.c_[c];
        if (!col.empty() && col.back().first == r)
            col.back().second += v;
        else
            col.emplace_back(r, std::move(v));
        if (col.back().second.is_zero()) col.pop_back();
    }
    return s;
}

size_t SparseMatrix::nnz() const {
    size_t n = 0;
    for (const auto& c : c_) n += c.size();
    return n;
}

Int SparseMatrix::get(size_t r, size_t c) const {
    const auto& col = c_.at(c);
    auto it = std::lower_bound(col.begin(), col.end(), r,
                               [](const Entry& e, size_t row) { return e.first < row; });
    if (it != col.end() && it->first == r) return it->second;
    return Int(0);
}

IntMatrix SparseMatrix::to_dense() const {
    IntMatrix m(rows_, cols_);
    for (size_t j = 0; j < cols_; ++j)
        for (const auto& [i, v] : c_[j]) m(i, j) = v;
    return m;
}

SparseMatrix SparseMatrix::transpose() const {
    SparseMatrix t(cols_, rows_);
    for (size_t j = 0; j < cols_; ++j)
        for (const auto& [i, v] : c_[j]) t.c_[i].emplace_back(j, v);
    return t;
}

IntVector SparseMatrix::apply(const IntVector& x) const {
    if (x.size() != cols_) throw DimensionMismatch("sparse apply");
    IntVector y(rows_);
    for (size_t j = 0; j < cols_; ++j) {
        if (x[j].is_zero()) continue;
        for (const auto& [i, v] : c_[j]) addmul(y[i], v, x[j]);
    }
    return y;
}

IntVector SparseMatrix::apply_transpose(const IntVector& x) const {
    if (x.size() != rows_) throw DimensionMismatch("sparse apply_transpose");
    IntVector y(cols_);
    for (size_t j = 0; j < cols_; ++j)
        for (const auto& [i, v] : c_[j])
            if (!x[i].is_zero()) addmul(y[j], v, x[i]);
    return y;
}

SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionMismatch("sparse product");
    SparseMatrix c(a.rows(), b.cols());
    std::vector<Int> acc(a.rows());
    std::vector<char> used(a.rows(), 0);
    std::vector<size_t> touched;
    for (size_t j = 0; j < b.cols(); ++j) {
        touched.clear();
        for (const auto& [k, bv] : b.column(j))
            for (const auto& [i, av] : a.column(k)) {
                if (!used[i]) {
                    used[i] = 1;
                    touched.push_back(i);
                }
                addmul(acc[i], av, bv);
            }
        std::sort(touched.begin(), touched.end());
        for (size_t i : touched) {
            if (!acc[i].is_zero()) c.column(j).emplace_back(i, acc[i]);
            acc[i] = 0;
            used[i] = 0;
        }
    }
    return c;
}

SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("sparse difference");
    SparseMatrix c(a.rows(), a.cols());
    for (size_t j = 0; j < a.cols(); ++j) {
        const auto& x = a.column(j);
        const auto& y = b.column(j);
        auto& out = c.column(j);
        size_t p = 0, q = 0;
        while (p < x.size() || q < y.size()) {
            if (q == y.size() || (p < x.size() && x[p].first < y[q].first)) {
                out.push_back(x[p++]);
            } else if (p == x.size() || y[q].first < x[p].first) {
                out.emplace_back(y[q].first, -y[q].second);
                ++q;
            } else {
                Int v = x[p].second - y[q].second;
                if (!v.is_zero()) out.emplace_back(x[p].first, std::move(v));
                ++p;
                ++q;
            }
        }
    }
    return c;
}

// Text formats --------------------------------------------------------------

std::string to_csv(const IntMatrix& m) {
    std::string out;
    for (size_t i = 0; i < m.rows(); ++i) {
        for (size_t j = 0; j < m.cols(); ++j) {
            if (j) out += ',';
            out += m(i, j).to_string();
        }
        out += '\n';
    }
    return out;
}

IntMatrix matrix_from_csv(const std::string& text) {
    std::vector<std::vector<Int>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        std::vector<Int> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            auto b = cell.find_first_not_of(" \t");
            auto e = cell.find_last_not_of(" \t");
            if (b == std::string::npos) throw SchemaError("empty CSV cell");
            row.emplace_back(cell.substr(b, e - b + 1));
        }
        if (!rows.empty() && row.size() != rows[0].size()) throw DimensionMismatch("ragged CSV");
        rows.push_back(std::move(row));
    }
    IntMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[i].size(); ++j) m(i, j) = std::move(rows[i][j]);
    return m;
}

std::string to_json_text(const IntMatrix& m) {
    std::string out = "[";
    for (size_t i = 0; i < m.rows(); ++i) {
        out += i ? ",[" : "[";
        for (size_t j = 0; j < m.cols(); ++j) {
            if (j) out += ',';
            out += m(i, j).to_string();
        }
        out += ']';
    }
    out += ']';
    return out;
}

namespace {

// Minimal parser for nested integer arrays; integers of any size are kept
// exact, which a double-based JSON parser would not guarantee.
struct ArrayParser {
    const std::string& s;
    size_t p = 0;
    void ws() {
        while (p < s.size() && std::isspace(static_cast<unsigned char>(s[p]))) ++p;
    }
    void expect(char c) {
        ws();
        if (p >= s.size() || s[p] != c) throw SchemaError(std::string("expected '") + c + "' in matrix JSON");
        ++p;
    }
    bool peek(char c) {
        ws();
        return p < s.size() && s[p] == c;
    }
    Int integer() {
        ws();
        bool quoted = peek('"');
        if (quoted) ++p;
        size_t b = p;
        if (p < s.size() && (s[p] == '-' || s[p] == '+')) ++p;
        while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) ++p;
        if (p == b) throw SchemaError("expected integer in matrix JSON");
        Int v(s.substr(b, p - b));
        if (quoted) expect('"');
        return v;
    }
};

}  // namespace

IntMatrix matrix_from_json_text(const std::string& text) {
    ArrayParser ps{text};
    std::vector<std::vector<Int>> rows;
    ps.expect('[');
    if (!ps.peek(']')) {
        do {
            ps.expect('[');
            std::vector<Int> row;
            if (!ps.peek(']')) {
                do {
                    row.push_back(ps.integer());
                } while (ps.peek(',') && (++ps.p, true));
            }
            ps.expect(']');
            if (!rows.empty() && row.size() != rows[0].size()) throw DimensionMismatch("ragged JSON matrix");
            rows.push_back(std::move(row));
        } while (ps.peek(',') && (++ps.p, true));
    }
    ps.expect(']');
    IntMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[i].size(); ++j) m(i, j) = std::move(rows[i][j]);
    return m;
}

std::string to_string(const IntVector& v) {
    std::string out = "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += v[i].to_string();
    }
    return out + ")";
}

}  // namespace tilecoh
