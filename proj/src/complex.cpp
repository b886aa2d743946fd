#include "tilecoh/complex.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "tilecoh/errors.hpp"
#include "tilecoh/linalg.hpp"

namespace tilecoh {

std::string model_name(ComplexModel m) {
    switch (m) {
        case ComplexModel::Dual: return "dual";
        case ComplexModel::ApUncollared: return "ap-uncollared";
        case ComplexModel::Quotient: return "quotient";
    }
    return "unknown";
}

std::vector<size_t> CellComplexData::counts() const {
    std::vector<size_t> out;
    for (const auto& c : cells) out.push_back(c.size());
    return out;
}

std::vector<Shape> dual_shapes(int d) {
    auto s = box_shapes(d, 1, 2);
    return {s.begin(), s.end()};
}

std::set<Shape> ap_shapes(int d) {
    std::set<Shape> out;
    for (int a = 0; a < d; ++a) {
        Shape s(static_cast<size_t>(d), 1);
        s[static_cast<size_t>(a)] = 2;
        out.insert(s);
    }
    return out;
}

namespace {

int sign_for(size_t position, bool high) {
    int s = (position % 2 == 0) ? 1 : -1;
    return high ? s : -s;
}

SparseMatrix boundary_from_faces(const std::vector<std::pair<size_t, size_t>>* faces_begin, size_t ncells,
                                 size_t nrows) {
    std::vector<std::tuple<size_t, size_t, Int>> trip;
    for (size_t c = 0; c < ncells; ++c) {
        const auto& f = faces_begin[c];
        for (size_t i = 0; i < f.size(); ++i) {
            trip.emplace_back(f[i].second, c, Int(sign_for(i, true)));
            trip.emplace_back(f[i].first, c, Int(sign_for(i, false)));
        }
    }
    return SparseMatrix::from_triplets(nrows, ncells, std::move(trip));
}

void fill_boundaries(CellComplexData& cx) {
    cx.boundary.assign(static_cast<size_t>(cx.d) + 1, SparseMatrix());
    cx.boundary[0] = SparseMatrix(0, cx.cells[0].size());
    for (size_t q = 1; q <= static_cast<size_t>(cx.d); ++q)
        cx.boundary[q] = boundary_from_faces(cx.faces[q].data(), cx.cells[q].size(), cx.cells[q - 1].size());
}

struct UnionFind {
    std::vector<size_t> parent;
    explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), size_t{0}); }
    size_t find(size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(size_t a, size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (b < a) std::swap(a, b);
        parent[b] = a;
    }
};

size_t face_code(const std::vector<int>& f) {
    size_t code = 0;
    for (int x : f) code = code * 3 + static_cast<size_t>(x);
    return code;
}

std::vector<int> face_from_code(size_t code, int d) {
    std::vector<int> f(static_cast<size_t>(d));
    for (int a = d - 1; a >= 0; --a) {
        f[static_cast<size_t>(a)] = static_cast<int>(code % 3);
        code /= 3;
    }
    return f;
}

SparseMatrix signed_permutation(const std::vector<size_t>& perm, const std::vector<int>& sign) {
    std::vector<std::tuple<size_t, size_t, Int>> trip;
    for (size_t c = 0; c < perm.size(); ++c) trip.emplace_back(perm[c], c, Int(sign[c]));
    return SparseMatrix::from_triplets(perm.size(), perm.size(), std::move(trip));
}

// Solves P x = v for the pullback P (one representative row per column).
IntVector solve_pullback(const SparseMatrix& p, const std::vector<size_t>& rep_row, const IntVector& v,
                         const std::string& what) {
    IntVector x(p.cols());
    for (size_t o = 0; o < p.cols(); ++o) {
        Int w = p.get(rep_row[o], o);
        if (!divides(w, v[rep_row[o]])) throw NonCommuting(what + " does not descend to the quotient");
        x[o] = divexact(v[rep_row[o]], w);
    }
    if (p.apply(x) != v) throw NonCommuting(what + " does not descend to the quotient");
    return x;
}

}  // namespace

CellComplexData build_dual_complex(const SubstitutionRule& rule, const WindowLanguage& language) {
    const int d = rule.d;
    CellComplexData cx;
    cx.model = ComplexModel::Dual;
    cx.d = d;
    cx.cells.resize(static_cast<size_t>(d) + 1);
    cx.faces.resize(static_cast<size_t>(d) + 1);
    std::map<Shape, size_t> offset;
    for (const auto& s : dual_shapes(d)) {
        if (!language.has_shape(s)) throw MissingShape("window language lacks a {1,2}^d shape");
        size_t q = static_cast<size_t>(std::count(s.begin(), s.end(), 2));
        offset[s] = cx.cells[q].size();
        std::vector<int> spanned;
        for (int a = 0; a < d; ++a)
            if (s[static_cast<size_t>(a)] == 2) spanned.push_back(a);
        for (const auto& w : language.windows(s)) cx.cells[q].push_back(Cell{s, w, {}, spanned, 1});
    }
    for (size_t q = 1; q <= static_cast<size_t>(d); ++q) {
        auto& fq = cx.faces[q];
        fq.resize(cx.cells[q].size());
        for (size_t c = 0; c < cx.cells[q].size(); ++c) {
            const Cell& cell = cx.cells[q][c];
            LatticePatch patch{cell.extents, cell.colors};
            for (int a : cell.spanned) {
                Shape fs = cell.extents;
                fs[static_cast<size_t>(a)] = 1;
                std::pair<size_t, size_t> lh;
                for (int layer = 0; layer < 2; ++layer) {
                    std::vector<int> off(static_cast<size_t>(d), 0);
                    off[static_cast<size_t>(a)] = layer;
                    auto idx = language.index(fs, extract_window(patch, off, fs));
                    if (!idx) throw IllegalFace("face of a legal window is not legal");
                    (layer == 0 ? lh.first : lh.second) = offset[fs] + *idx;
                }
                fq[c].push_back(lh);
            }
        }
    }
    fill_boundaries(cx);
    return cx;
}

CellComplexData build_ap_uncollared(const SubstitutionRule& rule, const WindowLanguage& language,
                                    const ApOptions& opts) {
    if (!opts.assume_border && !rule.forces_border.value_or(false))
        throw BorderNotAsserted("the uncollared AP complex needs a border-forcing assertion");
    const int d = rule.d;
    const size_t nf = ipow(3, static_cast<unsigned>(d));
    const size_t m = static_cast<size_t>(rule.m);
    UnionFind uf(m * nf);
    auto key = [&](size_t color, size_t code) { return color * nf + code; };
    for (int a = 0; a < d; ++a) {
        Shape s(static_cast<size_t>(d), 1);
        s[static_cast<size_t>(a)] = 2;
        if (!language.has_shape(s)) throw MissingShape("window language lacks an adjacency shape");
        for (const auto& w : language.windows(s)) {
            size_t lo = static_cast<size_t>(w[0]), hi = static_cast<size_t>(w[1]);
            for (size_t code = 0; code < nf; ++code) {
                auto f = face_from_code(code, d);
                if (f[static_cast<size_t>(a)] != FaceHigh) continue;
                f[static_cast<size_t>(a)] = FaceLow;
                uf.unite(key(lo, code), key(hi, face_code(f)));
            }
        }
    }
    CellComplexData cx;
    cx.model = ComplexModel::ApUncollared;
    cx.d = d;
    cx.cells.resize(static_cast<size_t>(d) + 1);
    cx.faces.resize(static_cast<size_t>(d) + 1);
    // Classes ordered by their smallest (color, face code) member, which is the root.
    std::vector<size_t> class_index(m * nf, SIZE_MAX);
    std::vector<size_t> members(m * nf, 0);
    for (size_t k = 0; k < m * nf; ++k) ++members[uf.find(k)];
    for (size_t k = 0; k < m * nf; ++k) {
        if (uf.find(k) != k) continue;
        auto f = face_from_code(k % nf, d);
        std::vector<int> spanned;
        for (int a = 0; a < d; ++a)
            if (f[static_cast<size_t>(a)] == FaceSpanned) spanned.push_back(a);
        size_t q = spanned.size();
        class_index[k] = cx.cells[q].size();
        cx.cells[q].push_back(Cell{{}, {static_cast<int>(k / nf)}, f, spanned, members[k]});
    }
    cx.ap_class_of.resize(m * nf);
    for (size_t k = 0; k < m * nf; ++k) cx.ap_class_of[k] = class_index[uf.find(k)];
    auto cell_of = [&](size_t color, const std::vector<int>& f) { return cx.ap_class_of[key(color, face_code(f))]; };
    for (size_t q = 1; q <= static_cast<size_t>(d); ++q) {
        auto& fq = cx.faces[q];
        fq.resize(cx.cells[q].size());
        for (size_t c = 0; c < cx.cells[q].size(); ++c) {
            const Cell& cell = cx.cells[q][c];
            for (int a : cell.spanned) {
                auto f = cell.face;
                f[static_cast<size_t>(a)] = FaceLow;
                size_t lo = cell_of(static_cast<size_t>(cell.colors[0]), f);
                f[static_cast<size_t>(a)] = FaceHigh;
                size_t hi = cell_of(static_cast<size_t>(cell.colors[0]), f);
                fq[c].emplace_back(lo, hi);
            }
        }
    }
    fill_boundaries(cx);
    return cx;
}

namespace {

CellMap dual_chain_map(const SubstitutionRule& rule, const CellComplexData& cx, int shift) {
    const int d = cx.d;
    const int lam = rule.lambda;
    std::map<Shape, std::pair<size_t, std::map<std::vector<int>, size_t>>> lookup;
    for (size_t q = 0; q < cx.cells.size(); ++q)
        for (size_t c = 0; c < cx.cells[q].size(); ++c) {
            auto& entry = lookup[cx.cells[q][c].extents];
            entry.first = q;
            entry.second.emplace(cx.cells[q][c].colors, c);
        }
    CellMap map;
    map.shift = shift;
    for (size_t q = 0; q < cx.cells.size(); ++q) {
        std::vector<std::tuple<size_t, size_t, Int>> trip;
        for (size_t c = 0; c < cx.cells[q].size(); ++c) {
            const Cell& cell = cx.cells[q][c];
            LatticePatch img = substitute_patch(rule, LatticePatch{cell.extents, cell.colors}, 1);
            Shape range(static_cast<size_t>(d), 1);
            for (int a : cell.spanned) range[static_cast<size_t>(a)] = lam;
            const auto& table = lookup.at(cell.extents).second;
            for (size_t i = 0; i < shape_volume(range); ++i) {
                auto off = unflatten(i, range);
                for (auto& o : off) o += shift;
                auto it = table.find(extract_window(img, off, cell.extents));
                if (it == table.end()) throw ChainMapViolation("child window of a cell is not a cell");
                trip.emplace_back(it->second, c, Int(1));
            }
        }
        map.M.push_back(SparseMatrix::from_triplets(cx.cells[q].size(), cx.cells[q].size(), std::move(trip)));
    }
    return map;
}

CellMap ap_chain_map(const SubstitutionRule& rule, const CellComplexData& cx) {
    const int d = cx.d;
    const int lam = rule.lambda;
    const size_t nf = ipow(3, static_cast<unsigned>(d));
    if (cx.ap_class_of.size() != static_cast<size_t>(rule.m) * nf)
        throw ChainMapViolation("complex was not built from this rule");
    const Shape block(static_cast<size_t>(d), lam);
    CellMap map;
    map.shift = 0;
    for (size_t q = 0; q < cx.cells.size(); ++q) map.M.emplace_back(cx.cells[q].size(), cx.cells[q].size());
    std::vector<std::vector<bool>> done(cx.cells.size());
    std::vector<std::vector<std::map<size_t, long>>> images(cx.cells.size());
    for (size_t q = 0; q < cx.cells.size(); ++q) {
        done[q].assign(cx.cells[q].size(), false);
        images[q].resize(cx.cells[q].size());
    }
    for (size_t key = 0; key < cx.ap_class_of.size(); ++key) {
        const size_t color = key / nf;
        const auto f = face_from_code(key % nf, d);
        Shape range(static_cast<size_t>(d), 1);
        size_t q = 0;
        for (int a = 0; a < d; ++a)
            if (f[static_cast<size_t>(a)] == FaceSpanned) {
                range[static_cast<size_t>(a)] = lam;
                ++q;
            }
        std::map<size_t, long> img;
        for (size_t i = 0; i < shape_volume(range); ++i) {
            auto pos = unflatten(i, range);
            for (int a = 0; a < d; ++a)
                if (f[static_cast<size_t>(a)] == FaceHigh) pos[static_cast<size_t>(a)] = lam - 1;
            size_t child = static_cast<size_t>(rule.table[color][flat_index(pos, block)]);
            ++img[cx.ap_class_of[child * nf + (key % nf)]];
        }
        size_t c = cx.ap_class_of[key];
        if (!done[q][c]) {
            images[q][c] = std::move(img);
            done[q][c] = true;
        } else if (images[q][c] != img) {
            throw ChainMapViolation("identified prototile faces have different substitution images");
        }
    }
    for (size_t q = 0; q < cx.cells.size(); ++q) {
        std::vector<std::tuple<size_t, size_t, Int>> trip;
        for (size_t c = 0; c < cx.cells[q].size(); ++c)
            for (const auto& [r, v] : images[q][c]) trip.emplace_back(r, c, Int(v));
        map.M[q] = SparseMatrix::from_triplets(cx.cells[q].size(), cx.cells[q].size(), std::move(trip));
    }
    return map;
}

}  // namespace

void assert_chain_map(const CellComplexData& cx, const CellMap& map) {
    for (size_t q = 1; q < cx.cells.size(); ++q) {
        SparseMatrix lhs = cx.boundary[q] * map.M[q];
        SparseMatrix rhs = map.M[q - 1] * cx.boundary[q];
        if (!(lhs - rhs).is_zero())
            throw ChainMapViolation("boundary does not commute with the chain map in dimension " + std::to_string(q));
    }
}

CellMap induced_chain_map(const SubstitutionRule& rule, const CellComplexData& complex, int shift) {
    if (complex.d != rule.d) throw DimensionMismatch("complex and rule have different dimensions");
    CellMap map;
    switch (complex.model) {
        case ComplexModel::Dual:
            if (shift < 0 || shift > rule.lambda - 1) throw RangeError("chain-map shift must lie in [0, lambda-1]");
            map = dual_chain_map(rule, complex, shift);
            break;
        case ComplexModel::ApUncollared: map = ap_chain_map(rule, complex); break;
        case ComplexModel::Quotient: throw SchemaError("quotient complexes carry their own chain map");
    }
    assert_chain_map(complex, map);
    return map;
}

CellInvolution identity_involution(const CellComplexData& cx) {
    CellInvolution inv;
    for (const auto& cells : cx.cells) {
        std::vector<size_t> p(cells.size());
        std::iota(p.begin(), p.end(), size_t{0});
        inv.perm.push_back(std::move(p));
        inv.sign.emplace_back(cells.size(), 1);
        inv.folded.emplace_back(cells.size(), false);
    }
    return inv;
}

CellInvolution induced_cell_involution(const CellComplexData& cx, const WindowLanguage& language,
                                       const ColorInvolution& g) {
    if (cx.model != ComplexModel::Dual) throw SchemaError("color involutions induce cell involutions on dual complexes only");
    CellInvolution inv = identity_involution(cx);
    std::map<Shape, size_t> offset;
    for (size_t q = 0; q < cx.cells.size(); ++q)
        for (size_t c = 0; c < cx.cells[q].size(); ++c) offset.emplace(cx.cells[q][c].extents, c);
    for (size_t q = 0; q < cx.cells.size(); ++q)
        for (size_t c = 0; c < cx.cells[q].size(); ++c) {
            const Cell& cell = cx.cells[q][c];
            std::vector<int> image = cell.colors;
            for (auto& x : image) x = g.perm.at(static_cast<size_t>(x));
            auto idx = language.index(cell.extents, image);
            if (!idx) throw IncompatibleInvolution("involution image of a cell window is not legal");
            inv.perm[q][c] = offset.at(cell.extents) + *idx;
        }
    return inv;
}

namespace {

size_t resolve_cell(const nlohmann::json& ref, const CellComplexData& cx, size_t q) {
    if (ref.is_number_integer()) {
        auto c = ref.get<long>();
        if (c < 0 || static_cast<size_t>(c) >= cx.cells[q].size()) throw RangeError("involution cell index out of range");
        return static_cast<size_t>(c);
    }
    if (ref.is_array()) {
        std::vector<int> spanned = ref.get<std::vector<int>>();
        std::optional<size_t> hit;
        for (size_t c = 0; c < cx.cells[q].size(); ++c)
            if (cx.cells[q][c].spanned == spanned) {
                if (hit) throw SchemaError("spanned-axis reference matches several cells");
                hit = c;
            }
        if (!hit) throw SchemaError("spanned-axis reference matches no cell");
        return *hit;
    }
    throw SchemaError("cell reference must be an index or a list of spanned axes");
}

}  // namespace

CellInvolution parse_cell_involution(const nlohmann::json& doc, const CellComplexData& cx) {
    if (!doc.is_object()) throw SchemaError("involution document must be an object");
    CellInvolution inv = identity_involution(cx);
    auto dim_of = [&](const nlohmann::json& e) {
        if (!e.contains("dim") || !e["dim"].is_number_integer()) throw SchemaError("involution entry needs an integer dim");
        long q = e["dim"].get<long>();
        if (q < 0 || q > cx.d) throw RangeError("involution dim out of range");
        return static_cast<size_t>(q);
    };
    for (const auto& e : doc.value("swap", nlohmann::json::array())) {
        size_t q = dim_of(e);
        size_t a = resolve_cell(e.at("a"), cx, q), b = resolve_cell(e.at("b"), cx, q);
        int s = e.value("sign", 1);
        if (s != 1 && s != -1) throw SchemaError("involution sign must be +1 or -1");
        inv.perm[q][a] = b;
        inv.perm[q][b] = a;
        inv.sign[q][a] = inv.sign[q][b] = s;
    }
    for (const auto& e : doc.value("reverse", nlohmann::json::array())) {
        size_t q = dim_of(e);
        inv.sign[q][resolve_cell(e.at("cell"), cx, q)] = -1;
    }
    for (const auto& e : doc.value("fold", nlohmann::json::array())) {
        size_t q = dim_of(e);
        if (e.value("all", false)) {
            std::fill(inv.folded[q].begin(), inv.folded[q].end(), true);
        } else {
            inv.folded[q][resolve_cell(e.at("cell"), cx, q)] = true;
        }
    }
    return inv;
}

QuotientResult quotient_by_involution(const CellComplexData& cx, const CellInvolution& inv, const CellMap& map) {
    const size_t nd = cx.cells.size();
    if (inv.perm.size() != nd || inv.sign.size() != nd || inv.folded.size() != nd)
        throw SchemaError("involution does not match the complex dimensions");
    for (size_t q = 0; q < nd; ++q) {
        const size_t n = cx.cells[q].size();
        if (inv.perm[q].size() != n || inv.sign[q].size() != n || inv.folded[q].size() != n)
            throw SchemaError("involution does not match the cell counts");
        for (size_t c = 0; c < n; ++c) {
            size_t g = inv.perm[q][c];
            if (g >= n || inv.perm[q][g] != c) throw SchemaError("cell map is not an involution");
            if (inv.sign[q][c] * inv.sign[q][g] != 1) throw SchemaError("involution signs are inconsistent");
            if (g == c && inv.sign[q][c] != 1)
                throw OrientationReversingFixedCell("cell " + std::to_string(c) + " in dimension " + std::to_string(q) +
                                                    " is fixed with reversed orientation");
            if (g != c && inv.folded[q][c]) throw SchemaError("only fixed cells can be folded");
        }
    }
    std::vector<SparseMatrix> G;
    for (size_t q = 0; q < nd; ++q) G.push_back(signed_permutation(inv.perm[q], inv.sign[q]));
    for (size_t q = 1; q < nd; ++q)
        if (!((cx.boundary[q] * G[q]) - (G[q - 1] * cx.boundary[q])).is_zero())
            throw NonCommuting("involution does not commute with the boundary in dimension " + std::to_string(q));
    for (size_t q = 0; q < nd; ++q)
        if (!((map.M[q] * G[q]) - (G[q] * map.M[q])).is_zero())
            throw NonCommuting("involution does not commute with the chain map in dimension " + std::to_string(q));

    QuotientResult out;
    CellComplexData& qc = out.complex;
    qc.model = ComplexModel::Quotient;
    qc.d = cx.d;
    qc.cells.resize(nd);
    std::vector<std::vector<size_t>> rep(nd);
    for (size_t q = 0; q < nd; ++q) {
        std::vector<std::tuple<size_t, size_t, Int>> trip;
        for (size_t c = 0; c < cx.cells[q].size(); ++c) {
            size_t g = inv.perm[q][c];
            if (g < c) continue;
            size_t o = qc.cells[q].size();
            Cell cell = cx.cells[q][c];
            cell.members = (g == c) ? 1 : 2;
            qc.cells[q].push_back(cell);
            rep[q].push_back(c);
            Int w = inv.folded[q][c] ? Int(2) : Int(1);
            trip.emplace_back(c, o, w);
            if (g != c) trip.emplace_back(g, o, w * Int(inv.sign[q][c]));
        }
        qc.pullback.push_back(SparseMatrix::from_triplets(cx.cells[q].size(), qc.cells[q].size(), std::move(trip)));
    }
    // Coboundary and cochain map of the quotient from P delta_Q = delta P and P M_Q^T = M^T P.
    qc.boundary.assign(nd, SparseMatrix());
    qc.boundary[0] = SparseMatrix(0, qc.cells[0].size());
    for (size_t q = 1; q < nd; ++q) {
        std::vector<std::tuple<size_t, size_t, Int>> trip;
        for (size_t o = 0; o < qc.cells[q - 1].size(); ++o) {
            IntVector e(qc.cells[q - 1].size());
            e[o] = 1;
            IntVector v = cx.boundary[q].apply_transpose(qc.pullback[q - 1].apply(e));
            IntVector x = solve_pullback(qc.pullback[q], rep[q], v, "coboundary");
            for (size_t r = 0; r < x.size(); ++r)
                if (!x[r].is_zero()) trip.emplace_back(o, r, x[r]);
        }
        qc.boundary[q] = SparseMatrix::from_triplets(qc.cells[q - 1].size(), qc.cells[q].size(), std::move(trip));
    }
    out.map.shift = map.shift;
    for (size_t q = 0; q < nd; ++q) {
        std::vector<std::tuple<size_t, size_t, Int>> trip;
        for (size_t o = 0; o < qc.cells[q].size(); ++o) {
            IntVector e(qc.cells[q].size());
            e[o] = 1;
            IntVector v = map.M[q].apply_transpose(qc.pullback[q].apply(e));
            IntVector x = solve_pullback(qc.pullback[q], rep[q], v, "chain map");
            // x is column o of M_Q^T, i.e. row o of M_Q.
            for (size_t r = 0; r < x.size(); ++r)
                if (!x[r].is_zero()) trip.emplace_back(o, r, x[r]);
        }
        out.map.M.push_back(SparseMatrix::from_triplets(qc.cells[q].size(), qc.cells[q].size(), std::move(trip)));
    }
    qc.cover = std::make_shared<CellComplexData>(cx);
    assert_chain_map(qc, out.map);
    return out;
}

ComplexDiagnostics verify_complex(const CellComplexData& cx, const CellMap* map) {
    ComplexDiagnostics diag;
    const size_t nd = cx.cells.size();
    for (size_t q = 2; q < nd; ++q)
        if (!(cx.boundary[q - 1] * cx.boundary[q]).is_zero()) {
            diag.boundary_squared_zero = false;
            if (!diag.first_violation)
                diag.first_violation = "boundary squared is nonzero in dimension " + std::to_string(q);
        }
    if (map) {
        for (size_t q = 1; q < nd; ++q)
            if (!((cx.boundary[q] * map->M[q]) - (map->M[q - 1] * cx.boundary[q])).is_zero()) {
                diag.chain_map_ok = false;
                if (!diag.first_violation)
                    diag.first_violation = "chain-map identity fails in dimension " + std::to_string(q);
            }
    }
    std::vector<size_t> ranks(nd + 1, 0);
    for (size_t q = 1; q < nd; ++q) ranks[q] = rank(cx.boundary[q].to_dense());
    for (size_t q = 0; q < nd; ++q) {
        size_t b = cx.cells[q].size() - ranks[q] - ranks[q + 1];
        diag.betti.push_back(b);
        long sgn = (q % 2 == 0) ? 1 : -1;
        diag.euler_cells += sgn * static_cast<long>(cx.cells[q].size());
        diag.euler_betti += sgn * static_cast<long>(b);
    }
    if (diag.euler_cells != diag.euler_betti && !diag.first_violation)
        diag.first_violation = "Euler characteristic mismatch";
    return diag;
}

nlohmann::json sparse_to_json(const SparseMatrix& m) {
    nlohmann::json entries = nlohmann::json::array();
    for (size_t c = 0; c < m.cols(); ++c)
        for (const auto& [r, v] : m.column(c)) {
            nlohmann::json val = v.fits_int64() ? nlohmann::json(v.to_int64()) : nlohmann::json(v.to_string());
            entries.push_back({r, c, val});
        }
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

nlohmann::json complex_to_json(const CellComplexData& cx, const CellMap* map) {
    nlohmann::json out;
    out["model"] = model_name(cx.model);
    out["dimension"] = cx.d;
    out["counts"] = cx.counts();
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& dim : cx.cells) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& c : dim) {
            nlohmann::json e{{"colors", c.colors}, {"spanned", c.spanned}};
            if (!c.extents.empty()) e["extents"] = c.extents;
            if (!c.face.empty()) e["face"] = c.face;
            if (c.members != 1) e["members"] = c.members;
            arr.push_back(std::move(e));
        }
        cells.push_back(std::move(arr));
    }
    out["cells"] = std::move(cells);
    nlohmann::json bd = nlohmann::json::array();
    for (const auto& b : cx.boundary) bd.push_back(sparse_to_json(b));
    out["boundary"] = std::move(bd);
    if (map) {
        nlohmann::json ms = nlohmann::json::array();
        for (const auto& m : map->M) ms.push_back(sparse_to_json(m));
        out["chain_map"] = {{"shift", map->shift}, {"matrices", ms}};
    }
    return out;
}

}  // namespace tilecoh
