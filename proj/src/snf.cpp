#include "tilecoh/snf.hpp"

#include "tilecoh/errors.hpp"
#include "tilecoh/linalg.hpp"

namespace tilecoh {

std::vector<Int> SnfDecomposition::invariant_factors() const {
    std::vector<Int> d;
    for (size_t i = 0; i < rank; ++i) d.push_back(D(i, i));
    return d;
}

namespace {

// Elimination state with optional transform tracking. Row operations on A are
// mirrored on U (and inversely on U_inv as column operations); column
// operations are mirrored on V (and inversely on V_inv as row operations).
struct SnfState {
    IntMatrix A, U, V, Ui, Vi;
    SnfOptions o;

    void swap_rows(size_t i, size_t j) {
        if (i == j) return;
        A.swap_rows(i, j);
        if (o.want_u) U.swap_rows(i, j);
        if (o.want_u_inv) Ui.swap_cols(i, j);
    }
    void swap_cols(size_t i, size_t j) {
        if (i == j) return;
        A.swap_cols(i, j);
        if (o.want_v) V.swap_cols(i, j);
        if (o.want_v_inv) Vi.swap_rows(i, j);
    }
    // row_i += k row_j
    void add_row(size_t i, size_t j, const Int& k) {
        if (k.is_zero()) return;
        A.add_row_multiple(i, j, k);
        if (o.want_u) U.add_row_multiple(i, j, k);
        if (o.want_u_inv) Ui.add_col_multiple(j, i, -k);
    }
    // col_i += k col_j
    void add_col(size_t i, size_t j, const Int& k) {
        if (k.is_zero()) return;
        A.add_col_multiple(i, j, k);
        if (o.want_v) V.add_col_multiple(i, j, k);
        if (o.want_v_inv) Vi.add_row_multiple(j, i, -k);
    }
    void negate_row(size_t i) {
        A.negate_row(i);
        if (o.want_u) U.negate_row(i);
        if (o.want_u_inv) Ui.negate_col(i);
    }
};

}  // namespace

SnfDecomposition smith_normal_form(const IntMatrix& a, const SnfOptions& opts) {
    const size_t m = a.rows(), n = a.cols();
    SnfState s;
    s.A = a;
    s.o = opts;
    if (opts.want_u) s.U = IntMatrix::identity(m);
    if (opts.want_u_inv) s.Ui = IntMatrix::identity(m);
    if (opts.want_v) s.V = IntMatrix::identity(n);
    if (opts.want_v_inv) s.Vi = IntMatrix::identity(n);

    size_t t = 0;
    for (; t < m && t < n; ++t) {
        for (;;) {
            // Minimal |entry| pivot in the trailing block; ties go to the
            // lowest row, then the lowest column.
            size_t pr = m, pc = n;
            for (size_t i = t; i < m; ++i)
                for (size_t j = t; j < n; ++j) {
                    const Int& x = s.A(i, j);
                    if (x.is_zero()) continue;
                    if (pr == m || Int::cmp_abs(x, s.A(pr, pc)) < 0) {
                        pr = i;
                        pc = j;
                    }
                }
            if (pr == m) goto done;
            s.swap_rows(t, pr);
            s.swap_cols(t, pc);
            bool clean = true;
            for (size_t i = t + 1; i < m; ++i) {
                if (s.A(i, t).is_zero()) continue;
                Int q = tdiv_q(s.A(i, t), s.A(t, t));
                s.add_row(i, t, -q);
                if (!s.A(i, t).is_zero()) clean = false;
            }
            for (size_t j = t + 1; j < n; ++j) {
                if (s.A(t, j).is_zero()) continue;
                Int q = tdiv_q(s.A(t, j), s.A(t, t));
                s.add_col(j, t, -q);
                if (!s.A(t, j).is_zero()) clean = false;
            }
            if (!clean) continue;
            // Enforce divisibility of the trailing block by the pivot.
            bool divisible = true;
            for (size_t i = t + 1; i < m && divisible; ++i)
                for (size_t j = t + 1; j < n; ++j)
                    if (!divides(s.A(t, t), s.A(i, j))) {
                        s.add_row(t, i, Int(1));
                        divisible = false;
                        break;
                    }
            if (divisible) break;
        }
        if (s.A(t, t).sign() < 0) s.negate_row(t);
    }
done:
    SnfDecomposition out;
    out.rank = t;
    out.D = std::move(s.A);
    out.U = std::move(s.U);
    out.V = std::move(s.V);
    out.U_inv = std::move(s.Ui);
    out.V_inv = std::move(s.Vi);
    return out;
}

std::vector<IntVector> integer_kernel(const IntMatrix& a) {
    if (a.cols() == 0) return {};
    if (a.rows() <= 64 && a.cols() <= 64) {
        SnfOptions o;
        o.want_u = false;
        auto snf = smith_normal_form(a, o);
        std::vector<IntVector> basis;
        for (size_t j = snf.rank; j < a.cols(); ++j) basis.push_back(snf.V.col(j));
        return basis;
    }
    return saturate(rational_kernel(a), a.cols());
}

std::optional<IntVector> solve_linear_integer(const IntMatrix& a, const IntVector& b) {
    if (b.size() != a.rows()) throw DimensionMismatch("solve_linear_integer");
    auto snf = smith_normal_form(a);
    IntVector c = snf.U * b;
    IntVector y(a.cols());
    for (size_t i = 0; i < c.size(); ++i) {
        if (i < snf.rank) {
            const Int& d = snf.D(i, i);
            if (!divides(d, c[i])) return std::nullopt;
            y[i] = divexact(c[i], d);
        } else if (!c[i].is_zero()) {
            return std::nullopt;
        }
    }
    return snf.V * y;
}

std::vector<IntVector> saturate(const std::vector<IntVector>& vectors, size_t n) {
    if (vectors.empty()) return {};
    IntMatrix b = column_matrix(vectors, n);
    SnfOptions o;
    o.want_u = false;
    o.want_v = false;
    o.want_u_inv = true;
    auto snf = smith_normal_form(b, o);
    std::vector<IntVector> out;
    for (size_t j = 0; j < snf.rank; ++j) out.push_back(snf.U_inv.col(j));
    return out;
}

}  // namespace tilecoh
