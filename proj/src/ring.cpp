#include "tilecoh/ring.hpp"

#include <algorithm>

#include "tilecoh/errors.hpp"
#include "tilecoh/linalg.hpp"
#include "tilecoh/poly.hpp"

namespace tilecoh {

namespace {

// Face of cell c (dimension n) after collapsing the given spanned positions,
// each to its low or high side.
size_t collapse(const CellComplexData& cx, size_t n, size_t c, const std::vector<size_t>& positions, bool high) {
    std::vector<size_t> pos = positions;
    std::sort(pos.rbegin(), pos.rend());
    for (size_t i : pos) {
        const auto& f = cx.faces[n][c][i];
        c = high ? f.second : f.first;
        --n;
    }
    return c;
}

IntVector cup_direct(const CellComplexData& cx, int p, const IntVector& alpha, int q, const IntVector& beta) {
    const size_t n = static_cast<size_t>(p + q);
    IntVector out(cx.cells[n].size());
    // Subsets H of {0..n-1} with |H| = p, as bit masks.
    std::vector<std::pair<std::vector<size_t>, std::vector<size_t>>> splits;
    std::vector<int> signs;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (__builtin_popcount(mask) != p) continue;
        std::vector<size_t> h, k;
        for (size_t i = 0; i < n; ++i) ((mask >> i) & 1u ? h : k).push_back(i);
        int inv = 0;
        for (size_t a : h)
            for (size_t b : k)
                if (b < a) ++inv;
        splits.emplace_back(h, k);
        signs.push_back(inv % 2 == 0 ? 1 : -1);
    }
    for (size_t c = 0; c < out.size(); ++c) {
        Int acc;
        for (size_t s = 0; s < splits.size(); ++s) {
            const auto& [h, k] = splits[s];
            size_t front = collapse(cx, n, c, k, false);
            size_t back = collapse(cx, n, c, h, true);
            const Int& a = alpha[front];
            const Int& b = beta[back];
            if (a.is_zero() || b.is_zero()) continue;
            if (signs[s] > 0)
                addmul(acc, a, b);
            else
                submul(acc, a, b);
        }
        out[c] = acc;
    }
    return out;
}

}  // namespace

IntVector cup_cochain(const CellComplexData& cx, int p, const IntVector& alpha, int q, const IntVector& beta) {
    if (p < 0 || q < 0 || p + q > cx.d) throw DimensionOverflow("cup product degree exceeds the complex dimension");
    if (alpha.size() != cx.count(p) || beta.size() != cx.count(q)) throw DimensionMismatch("cochain length");
    if (cx.model != ComplexModel::Quotient) return cup_direct(cx, p, alpha, q, beta);
    const auto& P = cx.pullback;
    IntVector up = cup_direct(*cx.cover, p, P[static_cast<size_t>(p)].apply(alpha), q, P[static_cast<size_t>(q)].apply(beta));
    const SparseMatrix& pn = P[static_cast<size_t>(p + q)];
    IntVector x(pn.cols());
    for (size_t o = 0; o < pn.cols(); ++o) {
        const auto& [row, w] = pn.column(o).front();
        if (!divides(w, up[row])) throw NotACocycle("cup product does not descend to the quotient");
        x[o] = divexact(up[row], w);
    }
    if (pn.apply(x) != up) throw NotACocycle("cup product does not descend to the quotient");
    return x;
}

std::vector<std::vector<IntVector>> cup_cohomology(CohomologyEngine& engine, int p, int q) {
    const auto& cx = engine.complex();
    if (p + q > cx.d) throw DimensionOverflow("cup product degree exceeds the complex dimension");
    const auto& gp = engine.group(p);
    const auto& gq = engine.group(q);
    std::vector<std::vector<IntVector>> table(gp.size(), std::vector<IntVector>(gq.size()));
    for (size_t i = 0; i < gp.size(); ++i)
        for (size_t j = 0; j < gq.size(); ++j)
            table[i][j] = engine.project_cocycle(p + q, cup_cochain(cx, p, gp.generators[i], q, gq.generators[j]));
    return table;
}

std::vector<EigenBlock> eigen_blocks(const IntMatrix& phi, size_t torsion_count) {
    const size_t n = phi.rows();
    std::vector<size_t> fre;
    for (size_t i = torsion_count; i < n; ++i) fre.push_back(i);
    IntMatrix F = phi.submatrix(fre, fre);
    std::vector<EigenBlock> out;
    if (fre.empty()) return out;
    auto fac = factor_polynomial(characteristic_polynomial(F));
    for (const auto& f : fac.factors) {
        EigenBlock b;
        b.label = poly_to_string(f.poly);
        b.multiplicity = f.multiplicity;
        if (f.poly.size() == 2 && f.poly[1].is_one()) {
            Int mu = -f.poly[0];
            b.value = mu;
            b.label = mu.to_string();
            b.basis = rational_eigenspace(F, mu);
            if (b.basis.size() < f.multiplicity) {
                IntMatrix shifted = F - scalar_multiple(IntMatrix::identity(F.rows()), mu);
                b.basis = rational_kernel(matrix_power(shifted, f.multiplicity));
                b.generalized = true;
            }
        }
        out.push_back(std::move(b));
    }
    return out;
}

namespace {

std::string q_to_string(const mpq_class& x) { return x.get_str(); }

// Rows give the coefficients of a vector along the given right eigenbasis of
// an eigenvalue block, computed from the matching left eigenbasis.
std::vector<std::vector<mpq_class>> dual_rows(const IntMatrix& F, const EigenBlock& block) {
    const size_t n = F.rows();
    const size_t k = block.basis.size();
    std::vector<IntVector> left;
    IntMatrix Ft = F.transpose();
    if (!block.generalized) {
        left = rational_eigenspace(Ft, *block.value);
    } else {
        IntMatrix shifted = Ft - scalar_multiple(IntMatrix::identity(n), *block.value);
        left = rational_kernel(matrix_power(shifted, block.multiplicity));
    }
    if (left.size() != k) throw NotPrimitiveSpectrum("left and right eigenspaces differ in dimension");
    // G = L E (k x k); coefficients c = G^{-1} L v.
    IntMatrix L = column_matrix(left, n).transpose();
    IntMatrix E = column_matrix(block.basis, n);
    IntMatrix G = L * E;
    std::vector<std::vector<mpq_class>> rows(k, std::vector<mpq_class>(n));
    for (size_t col = 0; col < n; ++col) {
        auto sol = solve_rational(G, L.col(col));
        if (!sol) throw NotPrimitiveSpectrum("eigenbasis pairing is singular");
        for (size_t r = 0; r < k; ++r) rows[r][col] = (*sol)[r];
    }
    return rows;
}

IntVector free_part(const IntVector& v, size_t torsion_count) { return IntVector(v.begin() + static_cast<long>(torsion_count), v.end()); }

}  // namespace

BilinearFormsReport bilinear_forms_by_eigenvalue(CohomologyEngine& engine, const CellMap& map, int p, int q) {
    BilinearFormsReport rep;
    rep.p = p;
    rep.q = q;
    const int r = p + q;
    IntMatrix php = induced_cohomology_map(engine, map, p);
    IntMatrix phq = induced_cohomology_map(engine, map, q);
    IntMatrix phr = induced_cohomology_map(engine, map, r);
    const auto& gp = engine.group(p);
    const auto& gq = engine.group(q);
    const auto& gr = engine.group(r);
    auto table = cup_cohomology(engine, p, q);
    struct Vec {
        std::string label;
        Int value;
        IntVector v;
    };
    auto gather = [](const std::vector<EigenBlock>& blocks, std::vector<std::string>& labels) {
        std::vector<Vec> out;
        for (const auto& b : blocks) {
            if (!b.value || b.value->is_zero()) continue;
            for (size_t i = 0; i < b.basis.size(); ++i) {
                std::string l = "e_" + b.label + (b.basis.size() > 1 ? "." + std::to_string(i + 1) : "");
                labels.push_back(l);
                out.push_back(Vec{l, *b.value, b.basis[i]});
            }
        }
        return out;
    };
    auto bp = gather(eigen_blocks(php, gp.torsion.size()), rep.labels_p);
    auto bq = gather(eigen_blocks(phq, gq.torsion.size()), rep.labels_q);
    auto blocks_r = eigen_blocks(phr, gr.torsion.size());
    std::vector<size_t> fre;
    for (size_t i = gr.torsion.size(); i < gr.size(); ++i) fre.push_back(i);
    IntMatrix Fr = phr.submatrix(fre, fre);
    // Products of eigen-generators, in free H^r coordinates.
    std::vector<std::vector<IntVector>> prod(bp.size(), std::vector<IntVector>(bq.size()));
    const size_t tp = gp.torsion.size(), tq = gq.torsion.size();
    for (size_t a = 0; a < bp.size(); ++a)
        for (size_t b = 0; b < bq.size(); ++b) {
            IntVector acc(gr.rank);
            for (size_t i = 0; i < gp.rank; ++i) {
                if (bp[a].v[i].is_zero()) continue;
                for (size_t j = 0; j < gq.rank; ++j) {
                    if (bq[b].v[j].is_zero()) continue;
                    Int c = bp[a].v[i] * bq[b].v[j];
                    IntVector t = free_part(table[tp + i][tq + j], gr.torsion.size());
                    for (size_t k = 0; k < acc.size(); ++k) addmul(acc[k], c, t[k]);
                }
            }
            prod[a][b] = std::move(acc);
        }
    for (const auto& blk : blocks_r) {
        if (!blk.value || blk.value->is_zero()) continue;
        auto rows = dual_rows(Fr, blk);
        for (size_t e = 0; e < rows.size(); ++e) {
            BilinearForm form;
            form.target = "e_" + blk.label + (rows.size() > 1 ? "." + std::to_string(e + 1) : "");
            form.target_value = blk.value;
            rep.labels_pq.push_back(form.target);
            form.matrix.assign(bp.size(), std::vector<mpq_class>(bq.size()));
            for (size_t a = 0; a < bp.size(); ++a)
                for (size_t b = 0; b < bq.size(); ++b) {
                    mpq_class s = 0;
                    for (size_t k = 0; k < prod[a][b].size(); ++k)
                        if (!prod[a][b][k].is_zero()) s += rows[e][k] * mpq_class(prod[a][b][k].to_mpz());
                    form.matrix[a][b] = s;
                    if (s != 0) {
                        form.surjective = true;
                        if (bp[a].value * bq[b].value != *blk.value) rep.eigenvalue_compatible = false;
                    }
                }
            rep.forms.push_back(std::move(form));
        }
    }
    return rep;
}

nlohmann::json BilinearFormsReport::to_json() const {
    nlohmann::json out{{"p", p}, {"q", q}, {"labels_p", labels_p}, {"labels_q", labels_q}, {"labels_pq", labels_pq},
                       {"eigenvalue_compatible", eigenvalue_compatible}};
    nlohmann::json fs = nlohmann::json::array();
    for (const auto& f : forms) {
        nlohmann::json m = nlohmann::json::array();
        for (const auto& row : f.matrix) {
            nlohmann::json r = nlohmann::json::array();
            for (const auto& x : row) r.push_back(q_to_string(x));
            m.push_back(r);
        }
        fs.push_back({{"target", f.target}, {"eigenvalue", f.target_value ? f.target_value->to_string() : ""},
                      {"matrix", m}, {"surjective", f.surjective}});
    }
    out["forms"] = fs;
    return out;
}

ChernVerdict chern_integrality_check(CohomologyEngine& engine, const CellMap& map) {
    if (engine.complex().d != 4) throw WrongDimension("the Chern integrality check needs a 4-dimensional complex");
    IntMatrix phi4 = induced_cohomology_map(engine, map, 4);
    DirectLimitGroup lim(engine.group(4), phi4);
    return chern_integrality_check(engine, map, lim);
}

namespace {

// Square of the class with H^2 coordinates v, with its 2-divisibility facts.
ChernWitness examine_square(CohomologyEngine& engine, const DirectLimitGroup& lim, const IntVector& v) {
    const auto& cx = engine.complex();
    const auto& g2 = engine.group(2);
    IntVector cochain(cx.count(2));
    for (size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero())
            for (size_t c = 0; c < cochain.size(); ++c) addmul(cochain[c], v[i], g2.generators[i][c]);
    ChernWitness w;
    w.v = v;
    w.square = engine.project_cocycle(4, cup_cochain(cx, 2, cochain, 2, cochain));
    auto div = divisible_by(lim, LimitElement{0, w.square}, Int(2));
    w.divisible = div.divisible;
    w.unique = div.unique;
    const auto& red = lim.reduced();
    IntVector y = lim.to_reduced(w.square);
    bool pattern = false;
    for (size_t k = 0; k < red.size(); ++k) {
        if (red.orders[k].is_zero()) continue;
        w.stable_torsion_coordinates.push_back(y[k]);
        if (divides(Int(4), red.orders[k]) && y[k] == divexact(red.orders[k], Int(2))) pattern = true;
    }
    if (!w.divisible)
        w.reason = "square is not divisible by 2 in the direct limit";
    else if (!w.unique && pattern)
        w.reason =
            "square is divisible by 2 only non-uniquely and has coordinate of order 2 in a stable cyclic summand of order divisible by 4";
    return w;
}

}  // namespace

ChernVerdict chern_integrality_check(CohomologyEngine& engine, const CellMap& map, const DirectLimitGroup& lim) {
    const auto& cx = engine.complex();
    if (cx.d != 4) throw WrongDimension("the Chern integrality check needs a 4-dimensional complex");
    const auto& g2 = engine.group(2);
    ChernVerdict verdict;
    // (a+b)^2 = a^2 + b^2 + 2ab for degree-2 classes, so squaring is additive
    // modulo 2 H^4 and the generators of H^2/2H^2 decide every square.
    for (size_t i = 0; i < g2.size(); ++i) {
        // Odd-order torsion generators are 2-divisible and vanish in H^2/2H^2.
        if (!g2.order(i).is_zero() && !divides(Int(2), g2.order(i))) continue;
        IntVector v(g2.size());
        v[i] = 1;
        ChernWitness w = examine_square(engine, lim, v);
        w.generator = i;
        if (!w.reason.empty() && !verdict.witness) {
            verdict.status = ChernStatus::NotIntegral;
            verdict.witness = w;
        }
        verdict.checked.push_back(std::move(w));
    }
    IntMatrix phi2 = induced_cohomology_map(engine, map, 2);
    for (const auto& blk : eigen_blocks(phi2, g2.torsion.size())) {
        if (!blk.value || blk.value->is_zero() || blk.generalized) continue;
        for (const auto& b : blk.basis) {
            IntVector v(g2.size());
            for (size_t i = 0; i < b.size(); ++i) v[g2.torsion.size() + i] = b[i];
            ChernWitness w = examine_square(engine, lim, v);
            if (w.reason.empty()) continue;
            w.eigenvalue = blk.value;
            verdict.eigen_witnesses.push_back(std::move(w));
        }
    }
    return verdict;
}

nlohmann::json ChernVerdict::to_json() const {
    auto wj = [](const ChernWitness& w) {
        nlohmann::json st = nlohmann::json::array();
        for (const auto& x : w.stable_torsion_coordinates) st.push_back(x.to_string());
        nlohmann::json sq = nlohmann::json::array();
        for (const auto& x : w.square) sq.push_back(x.to_string());
        nlohmann::json j{{"square", sq}, {"divisible_by_2", w.divisible}, {"unique", w.unique},
                         {"stable_torsion_coordinates", st}};
        if (w.eigenvalue) {
            nlohmann::json v = nlohmann::json::array();
            for (const auto& x : w.v) v.push_back(x.to_string());
            j["eigenvalue"] = w.eigenvalue->to_string();
            j["class"] = v;
        } else {
            j["generator"] = w.generator;
        }
        if (!w.reason.empty()) j["reason"] = w.reason;
        return j;
    };
    nlohmann::json out;
    out["status"] = status == ChernStatus::NotIntegral ? "NOT_INTEGRAL" : "NO_OBSTRUCTION_FOUND";
    if (witness) out["witness"] = wj(*witness);
    nlohmann::json ch = nlohmann::json::array();
    for (const auto& w : checked) ch.push_back(wj(w));
    out["checked"] = ch;
    nlohmann::json ew = nlohmann::json::array();
    for (const auto& w : eigen_witnesses) ew.push_back(wj(w));
    out["eigen_witnesses"] = ew;
    return out;
}

}  // namespace tilecoh
