#include "tilecoh/limits.hpp"

#include <algorithm>

#include "tilecoh/errors.hpp"
#include "tilecoh/linalg.hpp"
#include "tilecoh/snf.hpp"

namespace tilecoh {

IntVector GroupPresentation::normalize(IntVector x) const {
    for (size_t i = 0; i < orders.size(); ++i)
        if (!orders[i].is_zero()) x[i] = fdiv_r(x[i], orders[i]);
    return x;
}

bool GroupPresentation::is_zero(const IntVector& x) const { return tilecoh::is_zero(normalize(x)); }

namespace {

IntMatrix relation_matrix(const std::vector<Int>& orders) {
    IntMatrix r(orders.size(), orders.size());
    for (size_t i = 0; i < orders.size(); ++i) r(i, i) = orders[i];
    return r;
}

// Basis (columns) of the lattice spanned by the columns of gens.
IntMatrix lattice_basis(const IntMatrix& gens) {
    const size_t n = gens.rows();
    if (gens.cols() == 0 || gens.is_zero()) return IntMatrix(n, 0);
    SnfOptions o;
    o.want_u = false;
    o.want_v = false;
    o.want_u_inv = true;
    auto s = smith_normal_form(gens, o);
    IntMatrix out(n, s.rank);
    for (size_t j = 0; j < s.rank; ++j)
        for (size_t i = 0; i < n; ++i) out(i, j) = s.U_inv(i, j) * s.D(j, j);
    return out;
}

// {x : phi x in span(lambda)}.
IntMatrix preimage(const IntMatrix& phi, const IntMatrix& lambda) {
    const size_t n = phi.cols();
    IntMatrix neg = scalar_multiple(lambda, Int(-1));
    auto ker = integer_kernel(hstack(phi, neg));
    IntMatrix gens(n, ker.size());
    for (size_t j = 0; j < ker.size(); ++j)
        for (size_t i = 0; i < n; ++i) gens(i, j) = ker[j][i];
    return lattice_basis(gens);
}

bool lattice_contains(const IntMatrix& lambda, const IntVector& v) {
    if (tilecoh::is_zero(v)) return true;
    if (lambda.cols() == 0) return false;
    return solve_linear_integer(lambda, v).has_value();
}

bool lattice_subset(const IntMatrix& a, const IntMatrix& b) {
    for (size_t j = 0; j < a.cols(); ++j)
        if (!lattice_contains(b, a.col(j))) return false;
    return true;
}

// Ascending chain ker phi^k inside Z^n / diag(orders); returns the stable
// lattice and the exponent where it stabilized.
std::pair<IntMatrix, size_t> eventual_kernel_lattice(const IntMatrix& phi, const std::vector<Int>& orders) {
    IntMatrix cur = lattice_basis(relation_matrix(orders));
    size_t k = 0;
    for (;;) {
        IntMatrix next = preimage(phi, cur);
        if (lattice_subset(next, cur)) return {cur, k};
        cur = std::move(next);
        ++k;
    }
}

unsigned prime_factor_count(const Int& n) {
    if (!n.fits_int64()) throw RangeError("divisor too large");
    uint64_t v = static_cast<uint64_t>(n.to_int64());
    unsigned count = 0;
    for (uint64_t p = 2; p * p <= v; ++p)
        while (v % p == 0) {
            v /= p;
            ++count;
        }
    if (v > 1) ++count;
    return count;
}

IntVector apply_phi(const IntMatrix& phi, const GroupPresentation& g, const IntVector& x, size_t k) {
    IntVector y = g.normalize(x);
    for (size_t i = 0; i < k; ++i) y = g.normalize(phi * y);
    return y;
}

IntMatrix normalize_columns(IntMatrix m, const GroupPresentation& g) {
    for (size_t i = 0; i < m.rows(); ++i)
        if (!g.orders[i].is_zero())
            for (size_t j = 0; j < m.cols(); ++j) m(i, j) = fdiv_r(m(i, j), g.orders[i]);
    return m;
}

}  // namespace

DirectLimitGroup::DirectLimitGroup(GroupPresentation base, IntMatrix phi) : base_(std::move(base)), phi_(std::move(phi)) {
    if (phi_.rows() != base_.size() || phi_.cols() != base_.size())
        throw DimensionMismatch("endomorphism does not match the group");
    compute();
}

DirectLimitGroup::DirectLimitGroup(const FgAbGroup& g, IntMatrix phi) : phi_(std::move(phi)) {
    for (size_t i = 0; i < g.size(); ++i) base_.orders.push_back(g.order(i));
    if (phi_.rows() != base_.size() || phi_.cols() != base_.size())
        throw DimensionMismatch("endomorphism does not match the group");
    compute();
}

void DirectLimitGroup::compute() {
    const size_t n = base_.size();
    phi_ = normalize_columns(phi_, base_);
    // Well-definedness: an order-d generator must map to an element killed by d.
    for (size_t j = 0; j < n; ++j) {
        if (base_.orders[j].is_zero()) continue;
        IntVector c = phi_.col(j);
        for (auto& v : c) v *= base_.orders[j];
        if (!base_.is_zero(c)) throw NotCochainMap("endomorphism is not well defined on torsion");
    }
    std::vector<size_t> tor, fre;
    for (size_t i = 0; i < n; ++i) (base_.orders[i].is_zero() ? fre : tor).push_back(i);
    IntMatrix ff = phi_.submatrix(fre, fre);
    charpoly_ = characteristic_polynomial(ff);
    rational_ = factor_polynomial(charpoly_);
    const bool ff_invertible = fre.empty() || !charpoly_[0].is_zero();
    if (ff_invertible) {
        // The eventual kernel lies in the torsion subgroup.
        std::vector<Int> tord;
        for (size_t i : tor) tord.push_back(base_.orders[i]);
        auto [kt, k] = eventual_kernel_lattice(phi_.submatrix(tor, tor), tord);
        stab_ = k;
        kernel_ = IntMatrix(n, kt.cols());
        for (size_t j = 0; j < kt.cols(); ++j)
            for (size_t r = 0; r < tor.size(); ++r) kernel_(tor[r], j) = kt(r, j);
    } else {
        auto [kl, k] = eventual_kernel_lattice(phi_, base_.orders);
        kernel_ = kl;
        stab_ = k;
    }
    // G' = Z^n / kernel lattice.
    SnfOptions o;
    o.want_v = false;
    o.want_u_inv = true;
    std::vector<size_t> keep;
    IntMatrix U = IntMatrix::identity(n), Uinv = IntMatrix::identity(n);
    std::vector<Int> diag(n, Int(0));
    if (kernel_.cols() > 0) {
        auto s = smith_normal_form(kernel_, o);
        U = s.U;
        Uinv = s.U_inv;
        for (size_t i = 0; i < s.rank; ++i) diag[i] = s.D(i, i);
    }
    for (size_t i = 0; i < n; ++i)
        if (!diag[i].is_one()) {
            keep.push_back(i);
            reduced_.orders.push_back(diag[i]);
        }
    proj_ = IntMatrix(keep.size(), n);
    sect_ = IntMatrix(n, keep.size());
    for (size_t r = 0; r < keep.size(); ++r)
        for (size_t j = 0; j < n; ++j) {
            proj_(r, j) = U(keep[r], j);
            sect_(j, r) = Uinv(j, keep[r]);
        }
    phi_red_ = normalize_columns(proj_ * phi_ * sect_, reduced_);
    // phi' must be injective on G'.
    IntMatrix rel = lattice_basis(relation_matrix(reduced_.orders));
    if (!lattice_subset(preimage(phi_red_, rel), rel)) throw NotCochainMap("induced map on G/N is not injective");
    // Stable torsion and the inverse of phi' on it.
    std::vector<size_t> rt;
    std::vector<Int> rto;
    for (size_t i = 0; i < reduced_.size(); ++i)
        if (!reduced_.orders[i].is_zero()) {
            rt.push_back(i);
            rto.push_back(reduced_.orders[i]);
        }
    torsion_map_ = phi_red_.submatrix(rt, rt);
    const size_t t = rt.size();
    torsion_inverse_ = IntMatrix(t, t);
    GroupPresentation tg{rto};
    IntMatrix sys = hstack(torsion_map_, relation_matrix(rto));
    for (size_t j = 0; j < t; ++j) {
        IntVector e(t);
        e[j] = 1;
        auto z = solve_linear_integer(sys, e);
        if (!z) throw NotCochainMap("stable torsion map is not invertible");
        IntVector col(z->begin(), z->begin() + static_cast<long>(t));
        col = tg.normalize(col);
        for (size_t i = 0; i < t; ++i) torsion_inverse_(i, j) = col[i];
    }
    IntMatrix check = torsion_map_ * torsion_inverse_;
    for (size_t j = 0; j < t; ++j) {
        IntVector c = check.col(j);
        c[j] -= 1;
        if (!tg.is_zero(c)) throw NotCochainMap("stable torsion inverse failed verification");
    }
}

IntVector DirectLimitGroup::to_reduced(const IntVector& x) const { return reduced_.normalize(proj_ * x); }

IntVector DirectLimitGroup::from_reduced(const IntVector& y) const { return base_.normalize(sect_ * y); }

std::vector<Int> DirectLimitGroup::stable_torsion() const {
    std::vector<Int> out;
    for (const auto& o : reduced_.orders)
        if (!o.is_zero()) out.push_back(o);
    return out;
}

nlohmann::json DirectLimitGroup::summary() const {
    auto orders_json = [](const GroupPresentation& g) {
        nlohmann::json tor = nlohmann::json::array();
        size_t rank = 0;
        for (const auto& o : g.orders) {
            if (o.is_zero())
                ++rank;
            else
                tor.push_back(o.to_string());
        }
        return nlohmann::json{{"torsion", tor}, {"rank", rank}};
    };
    nlohmann::json out;
    out["base"] = orders_json(base_);
    out["eventual_kernel_exponent"] = stab_;
    out["injective_quotient"] = orders_json(reduced_);
    nlohmann::json st = nlohmann::json::array();
    for (const auto& o : stable_torsion()) st.push_back(o.to_string());
    out["stable_torsion"] = st;
    if (torsion_map_.rows() > 0) out["stable_torsion_map"] = nlohmann::json::parse(to_json_text(torsion_map_));
    nlohmann::json fac = nlohmann::json::array();
    nlohmann::json eig = nlohmann::json::array();
    for (const auto& f : rational_.factors) {
        nlohmann::json e{{"factor", poly_to_string(f.poly)}, {"multiplicity", f.multiplicity}};
        if (f.poly.size() == 2 && f.poly[1].is_one()) {
            Int root = -f.poly[0];
            e["eigenvalue"] = root.to_string();
            if (!root.is_zero()) {
                e["scaling"] = abs(root).is_one() ? std::string("Z") : "Z[1/" + abs(root).to_string() + "]";
                eig.push_back({{"eigenvalue", root.to_string()}, {"multiplicity", f.multiplicity}});
            }
        }
        fac.push_back(std::move(e));
    }
    out["rational_charpoly_factors"] = fac;
    size_t rational_rank = 0;
    for (const auto& f : rational_.factors)
        if (!(f.poly.size() == 2 && f.poly[0].is_zero())) rational_rank += (f.poly.size() - 1) * f.multiplicity;
    out["rational"] = {{"rank", rational_rank}, {"integer_eigenvalues", eig}, {"complete", rational_.complete}};
    return out;
}

DirectLimitGroup direct_limit_summary(const FgAbGroup& group, const IntMatrix& phi) { return DirectLimitGroup(group, phi); }

namespace {
IntVector operator_minus(const IntVector& a, const IntVector& b) {
    IntVector c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
    return c;
}
}  // namespace

bool limit_equal(const DirectLimitGroup& lim, const LimitElement& x, const LimitElement& y) {
    const auto& g = lim.base();
    if (x.coords.size() != g.size() || y.coords.size() != g.size()) throw DimensionMismatch("limit element size");
    size_t n = std::max(x.stage, y.stage);
    IntVector a = apply_phi(lim.phi(), g, x.coords, n - x.stage);
    IntVector b = apply_phi(lim.phi(), g, y.coords, n - y.stage);
    return lim.reduced().is_zero(lim.to_reduced(operator_minus(a, b)));
}

DivisibilityResult divisible_by(const DirectLimitGroup& lim, const LimitElement& x, const Int& n) {
    if (Int::cmp(n, Int(2)) < 0) throw RangeError("divisor must be at least 2");
    if (x.coords.size() != lim.base().size()) throw DimensionMismatch("limit element size");
    const auto& gr = lim.reduced();
    const size_t m = gr.size();
    std::vector<Int> mod(m);
    unsigned length = 0;
    DivisibilityResult res;
    for (size_t i = 0; i < m; ++i) {
        mod[i] = gr.orders[i].is_zero() ? n : gcd(n, gr.orders[i]);
        length += prime_factor_count(mod[i]);
        if (!gr.orders[i].is_zero() && !gcd(n, gr.orders[i]).is_one()) res.unique = false;
    }
    IntVector state = lim.to_reduced(x.coords);
    auto reduce = [&](IntVector v) {
        for (size_t i = 0; i < m; ++i) v[i] = fdiv_r(v[i], mod[i]);
        return v;
    };
    IntVector s = reduce(state);
    std::optional<size_t> hit;
    for (size_t k = 0; k <= length; ++k) {
        if (tilecoh::is_zero(s)) {
            hit = k;
            break;
        }
        s = reduce(lim.reduced_phi() * s);
    }
    if (!hit) return res;
    res.divisible = true;
    res.steps = *hit;
    IntVector target = state;
    for (size_t k = 0; k < *hit; ++k) target = gr.normalize(lim.reduced_phi() * target);
    IntMatrix sys = hstack(scalar_multiple(IntMatrix::identity(m), n), relation_matrix(gr.orders));
    auto z = solve_linear_integer(sys, target);
    if (!z) throw NotCochainMap("divisibility witness could not be solved");
    IntVector w(z->begin(), z->begin() + static_cast<long>(m));
    res.witness = LimitElement{x.stage + *hit, lim.from_reduced(gr.normalize(w))};
    return res;
}

std::vector<ProbeLevel> divisibility_probe(const DirectLimitGroup& lim, const LimitElement& x, const Int& p, int depth) {
    if (depth < 1) throw RangeError("probe depth must be at least 1");
    std::vector<ProbeLevel> out;
    Int pk = 1;
    bool ok = true;
    for (int k = 1; k <= depth; ++k) {
        pk *= p;
        if (ok) ok = divisible_by(lim, x, pk).divisible;
        out.push_back(ProbeLevel{pk, ok});
    }
    return out;
}

std::optional<DivisibilityCertificate> eigen_divisibility_certificate(const DirectLimitGroup& lim,
                                                                      const LimitElement& x, const Int& p,
                                                                      int verify_depth) {
    const auto& gr = lim.reduced();
    const size_t m = gr.size();
    IntVector xr = lim.to_reduced(x.coords);
    std::vector<size_t> fre;
    for (size_t i = 0; i < m; ++i)
        if (gr.orders[i].is_zero()) fre.push_back(i);
    bool free_zero = true;
    for (size_t i : fre)
        if (!xr[i].is_zero()) free_zero = false;
    DivisibilityCertificate cert;
    if (free_zero) {
        Int order = 1;
        for (size_t i = 0; i < m; ++i)
            if (!gr.orders[i].is_zero()) order = lcm(order, divexact(gr.orders[i], gcd(gr.orders[i], xr[i])));
        if (!gcd(order, p).is_one()) return std::nullopt;
        cert.kind = "prime-to-p-torsion";
        cert.explanation = "x is torsion of order " + order.to_string() + ", prime to p, so multiplication by p is invertible on its subgroup";
    } else {
        // Krylov sequence x, phi x, ... on G' until linearly dependent over Q.
        const IntMatrix& ph = lim.reduced_phi();
        std::vector<IntVector> kry{xr};
        std::vector<IntVector> kf;
        auto free_part = [&](const IntVector& v) {
            IntVector f;
            for (size_t i : fre) f.push_back(v[i]);
            return f;
        };
        kf.push_back(free_part(xr));
        std::optional<std::vector<mpq_class>> coeffs;
        for (size_t step = 0; step <= fre.size(); ++step) {
            IntVector next = gr.normalize(ph * kry.back());
            IntMatrix basis = column_matrix(kf, fre.size());
            auto sol = solve_rational(basis, free_part(next));
            if (sol) {
                coeffs = sol;
                kry.push_back(next);
                break;
            }
            kry.push_back(next);
            kf.push_back(free_part(next));
        }
        if (!coeffs) return std::nullopt;
        const size_t deg = coeffs->size();
        // Relation phi^deg x = sum a_i phi^i x; c_i = -a_i must be integers divisible by p.
        std::vector<Int> c(deg);
        for (size_t i = 0; i < deg; ++i) {
            if ((*coeffs)[i].get_den() != 1) return std::nullopt;
            c[i] = -Int(mpz_class((*coeffs)[i].get_num()));
            if (!divides(p, c[i])) return std::nullopt;
        }
        IntVector rel = kry[deg];
        for (size_t i = 0; i < deg; ++i)
            for (size_t r = 0; r < m; ++r) addmul(rel[r], c[i], kry[i][r]);
        if (!gr.is_zero(rel)) return std::nullopt;
        cert.kind = "invariant-subspace";
        cert.relation = c;
        cert.relation.push_back(Int(1));
        cert.explanation = "the phi-invariant lattice spanned by x, ..., phi^" + std::to_string(deg - 1) +
                           " x satisfies phi^" + std::to_string(deg) + " = 0 mod p, so phi^(" + std::to_string(deg) +
                           "k) x lies in p^k times that lattice";
    }
    for (int k = 1; k <= verify_depth; ++k) {
        if (!divisible_by(lim, x, pow(p, static_cast<unsigned>(k))).divisible)
            throw NotCochainMap("divisibility certificate contradicted by direct check");
        cert.verified_depth = k;
    }
    return cert;
}

}  // namespace tilecoh
