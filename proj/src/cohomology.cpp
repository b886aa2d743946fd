#include "tilecoh/cohomology.hpp"

#include <algorithm>

#include "tilecoh/errors.hpp"
#include "tilecoh/snf.hpp"

namespace tilecoh {

namespace {

using SparseMap = std::map<size_t, Int>;

struct Workspace {
    // For delta^q: cols[q][x] = entries of delta(x) (x in C^q); rows[q][y] =
    // entries of row y (y in C^{q+1}).
    std::vector<std::vector<SparseMap>> cols, rows;
};

}  // namespace

ReducedCochainComplex::ReducedCochainComplex(const CellComplexData& cx) {
    d = cx.d;
    const size_t nd = cx.cells.size();
    for (const auto& c : cx.cells) original_counts.push_back(c.size());
    Workspace ws;
    ws.cols.resize(nd);
    ws.rows.resize(nd);
    for (size_t q = 0; q + 1 < nd; ++q) {
        ws.cols[q].resize(cx.cells[q].size());
        ws.rows[q].resize(cx.cells[q + 1].size());
        const SparseMatrix& bd = cx.boundary[q + 1];  // C_{q+1} -> C_q; delta^q is its transpose
        for (size_t y = 0; y < bd.cols(); ++y)
            for (const auto& [x, v] : bd.column(y)) {
                ws.cols[q][x][y] = v;
                ws.rows[q][y][x] = v;
            }
    }
    auto cancel = [&](size_t q, size_t a, size_t b) {
        Step st;
        st.q = static_cast<int>(q);
        st.a = a;
        st.b = b;
        st.u = ws.cols[q][a].at(b);
        for (const auto& [x, v] : ws.rows[q][b])
            if (x != a) st.row_b.emplace_back(x, v);
        for (const auto& [y, v] : ws.cols[q][a])
            if (y != b) st.col_a.emplace_back(y, v);
        for (const auto& [x, cxv] : st.row_b) {
            Int factor = cxv * st.u;
            for (const auto& [y, ay] : st.col_a) {
                Int& e = ws.cols[q][x][y];
                submul(e, factor, ay);
                if (e.is_zero()) {
                    ws.cols[q][x].erase(y);
                    ws.rows[q][y].erase(x);
                } else {
                    ws.rows[q][y][x] = e;
                }
            }
        }
        for (const auto& [y, v] : ws.cols[q][a]) ws.rows[q][y].erase(a);
        ws.cols[q][a].clear();
        for (const auto& [x, v] : ws.rows[q][b]) ws.cols[q][x].erase(b);
        ws.rows[q][b].clear();
        if (q > 0) {
            for (const auto& [w, v] : ws.rows[q - 1][a]) ws.cols[q - 1][w].erase(a);
            ws.rows[q - 1][a].clear();
        }
        if (q + 2 < nd) {
            for (const auto& [z, v] : ws.cols[q + 1][b]) ws.rows[q + 1][z].erase(b);
            ws.cols[q + 1][b].clear();
        }
        steps_.push_back(std::move(st));
    };
    std::vector<std::vector<bool>> alive(nd);
    for (size_t q = 0; q < nd; ++q) alive[q].assign(cx.cells[q].size(), true);
    for (size_t q = 0; q + 1 < nd; ++q) {
        for (;;) {
            bool progress = false;
            size_t best_cost = SIZE_MAX, ba = 0, bb = 0;
            for (size_t x = 0; x < ws.cols[q].size(); ++x) {
                if (!alive[q][x]) continue;
                std::optional<size_t> zero_cost;
                for (const auto& [y, v] : ws.cols[q][x]) {
                    if (!v.is_unit()) continue;
                    size_t cost = (ws.rows[q][y].size() - 1) * (ws.cols[q][x].size() - 1);
                    if (cost == 0) {
                        zero_cost = y;
                        break;
                    }
                    if (cost < best_cost) {
                        best_cost = cost;
                        ba = x;
                        bb = y;
                    }
                }
                if (zero_cost) {
                    cancel(q, x, *zero_cost);
                    alive[q][x] = false;
                    alive[q + 1][*zero_cost] = false;
                    progress = true;
                }
            }
            if (progress) continue;
            if (best_cost == SIZE_MAX) break;
            cancel(q, ba, bb);
            alive[q][ba] = false;
            alive[q + 1][bb] = false;
        }
    }
    kept.resize(nd);
    for (size_t q = 0; q < nd; ++q)
        for (size_t c = 0; c < alive[q].size(); ++c)
            if (alive[q][c]) kept[q].push_back(c);
    for (size_t q = 0; q + 1 < nd; ++q) {
        IntMatrix m(kept[q + 1].size(), kept[q].size());
        std::vector<size_t> pos(cx.cells[q + 1].size(), SIZE_MAX);
        for (size_t i = 0; i < kept[q + 1].size(); ++i) pos[kept[q + 1][i]] = i;
        for (size_t j = 0; j < kept[q].size(); ++j)
            for (const auto& [y, v] : ws.cols[q][kept[q][j]]) m(pos[y], j) = v;
        delta.push_back(std::move(m));
    }
}

IntVector ReducedCochainComplex::project(int q, const IntVector& cochain) const {
    if (cochain.size() != original_counts.at(static_cast<size_t>(q))) throw DimensionMismatch("cochain length");
    IntVector a = cochain;
    for (const auto& st : steps_) {
        if (st.q == q) {
            a[st.a] = 0;
        } else if (st.q + 1 == q && !a[st.b].is_zero()) {
            Int beta = a[st.b] * st.u;
            for (const auto& [y, ay] : st.col_a) submul(a[y], beta, ay);
            a[st.b] = 0;
        }
    }
    IntVector out;
    out.reserve(kept[static_cast<size_t>(q)].size());
    for (size_t c : kept[static_cast<size_t>(q)]) out.push_back(a[c]);
    return out;
}

IntVector ReducedCochainComplex::lift(int q, const IntVector& reduced) const {
    const auto& k = kept.at(static_cast<size_t>(q));
    if (reduced.size() != k.size()) throw DimensionMismatch("reduced cochain length");
    IntVector a(original_counts[static_cast<size_t>(q)]);
    for (size_t i = 0; i < k.size(); ++i) a[k[i]] = reduced[i];
    for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) {
        if (it->q != q) continue;
        Int s;
        for (const auto& [x, v] : it->row_b) addmul(s, a[x], v);
        a[it->a] = -(s * it->u);
    }
    return a;
}

IntVector FgAbGroup::normalize(IntVector coords) const {
    for (size_t i = 0; i < torsion.size() && i < coords.size(); ++i) coords[i] = fdiv_r(coords[i], torsion[i]);
    return coords;
}

std::string FgAbGroup::describe() const {
    std::map<std::string, size_t> groups;
    std::vector<std::string> order;
    for (const auto& t : torsion) {
        std::string k = "Z_" + t.to_string();
        if (!groups.count(k)) order.push_back(k);
        ++groups[k];
    }
    std::string out;
    for (const auto& k : order) {
        if (!out.empty()) out += " + ";
        out += k;
        if (groups[k] > 1) out += "^" + std::to_string(groups[k]);
    }
    if (rank > 0) {
        if (!out.empty()) out += " + ";
        out += "Z";
        if (rank > 1) out += "^" + std::to_string(rank);
    }
    return out.empty() ? "0" : out;
}

CohomologyEngine::CohomologyEngine(const CellComplexData& complex) : complex_(&complex), reduced_(complex) {}

CohomologyEngine::Data& CohomologyEngine::data(int q) {
    if (q < 0 || q > complex_->d) throw RangeError("cohomology degree out of range");
    auto it = cache_.find(q);
    if (it != cache_.end()) return *it->second;
    auto dat = std::make_unique<Data>();
    const size_t n = reduced_.kept[static_cast<size_t>(q)].size();
    const size_t uq = static_cast<size_t>(q);
    // Cocycle lattice Z (columns) and a left inverse L with L Z = I.
    IntMatrix Z, L;
    bool full = uq >= reduced_.delta.size() || reduced_.delta[uq].is_zero();
    if (full) {
        Z = IntMatrix::identity(n);
        L = IntMatrix::identity(n);
    } else {
        auto basis = integer_kernel(reduced_.delta[uq]);
        Z = column_matrix(basis, n);
        if (!basis.empty()) {
            auto s = smith_normal_form(Z);
            IntMatrix top(basis.size(), n);
            for (size_t i = 0; i < basis.size(); ++i)
                for (size_t j = 0; j < n; ++j) top(i, j) = s.U(i, j);
            L = s.V * top;
        } else {
            L = IntMatrix(0, n);
        }
    }
    const size_t z = Z.cols();
    IntMatrix Y = (uq == 0) ? IntMatrix(z, 0) : L * reduced_.delta[uq - 1];
    IntMatrix Uy = IntMatrix::identity(z), Uy_inv = IntMatrix::identity(z);
    size_t rank = 0;
    std::vector<Int> diag;
    if (Y.cols() > 0 && z > 0 && !Y.is_zero()) {
        SnfOptions o;
        o.want_v = false;
        o.want_u_inv = true;
        auto s = smith_normal_form(Y, o);
        Uy = s.U;
        Uy_inv = s.U_inv;
        rank = s.rank;
        for (size_t i = 0; i < rank; ++i) diag.push_back(s.D(i, i));
    }
    std::vector<size_t> idx;
    FgAbGroup& g = dat->group;
    g.q = q;
    for (size_t i = 0; i < rank; ++i)
        if (!diag[i].is_one()) {
            idx.push_back(i);
            g.torsion.push_back(diag[i]);
        }
    for (size_t i = rank; i < z; ++i) idx.push_back(i);
    g.rank = z - rank;
    IntMatrix rows(idx.size(), z);
    for (size_t r = 0; r < idx.size(); ++r)
        for (size_t j = 0; j < z; ++j) rows(r, j) = Uy(idx[r], j);
    dat->coord_rows = rows;
    dat->left_inverse = L;
    for (size_t i : idx) {
        IntVector red = Z * Uy_inv.col(i);
        g.generators.push_back(reduced_.lift(q, red));
    }
    auto& ref = *dat;
    cache_.emplace(q, std::move(dat));
    return ref;
}

const FgAbGroup& CohomologyEngine::group(int q) { return data(q).group; }

IntVector CohomologyEngine::coboundary(int q, const IntVector& cochain) const {
    if (q >= complex_->d) return {};
    return complex_->boundary[static_cast<size_t>(q) + 1].apply_transpose(cochain);
}

bool CohomologyEngine::is_cocycle(int q, const IntVector& cochain) const { return is_zero(coboundary(q, cochain)); }

IntVector CohomologyEngine::project_cocycle(int q, const IntVector& cochain) {
    if (cochain.size() != complex_->count(q)) throw DimensionMismatch("cochain length does not match cell count");
    if (!is_cocycle(q, cochain)) throw NotACocycle("cochain in degree " + std::to_string(q) + " is not a cocycle");
    Data& dat = data(q);
    IntVector red = reduced_.project(q, cochain);
    IntVector zc = dat.left_inverse * red;
    return dat.group.normalize(dat.coord_rows * zc);
}

FgAbGroup cochain_cohomology(const CellComplexData& complex, int q) {
    CohomologyEngine e(complex);
    return e.group(q);
}

IntMatrix induced_cohomology_map(CohomologyEngine& engine, const CellMap& map, int q) {
    try {
        assert_chain_map(engine.complex(), map);
    } catch (const ChainMapViolation& e) {
        throw NotCochainMap(e.what());
    }
    const FgAbGroup& g = engine.group(q);
    IntMatrix out(g.size(), g.size());
    for (size_t j = 0; j < g.size(); ++j) {
        IntVector img = map.M[static_cast<size_t>(q)].apply_transpose(g.generators[j]);
        IntVector c = engine.project_cocycle(q, img);
        for (size_t i = 0; i < c.size(); ++i) out(i, j) = c[i];
    }
    return out;
}

}  // namespace tilecoh
