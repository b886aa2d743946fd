#include "tilecoh/poly.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include <gmpxx.h>

#include "tilecoh/modular.hpp"

namespace tilecoh {

IntPoly poly_normalize(IntPoly f) {
    while (!f.empty() && f.back().is_zero()) f.pop_back();
    return f;
}

int poly_degree(const IntPoly& f) { return static_cast<int>(f.size()) - 1; }

IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
    if (a.empty() || b.empty()) return {};
    IntPoly c(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (size_t j = 0; j < b.size(); ++j) addmul(c[i + j], a[i], b[j]);
    }
    return poly_normalize(std::move(c));
}

IntPoly poly_sub(const IntPoly& a, const IntPoly& b) {
    IntPoly c(std::max(a.size(), b.size()));
    for (size_t i = 0; i < a.size(); ++i) c[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) c[i] -= b[i];
    return poly_normalize(std::move(c));
}

Int poly_eval(const IntPoly& f, const Int& x) {
    Int acc = 0;
    for (size_t i = f.size(); i-- > 0;) {
        acc *= x;
        acc += f[i];
    }
    return acc;
}

Int poly_content(const IntPoly& f) {
    Int g = 0;
    for (const auto& c : f) g = gcd(g, c);
    return g;
}

bool poly_divexact(const IntPoly& f, const IntPoly& g, IntPoly& q) {
    if (g.empty()) return false;
    if (f.empty()) {
        q.clear();
        return true;
    }
    if (f.size() < g.size()) return false;
    IntPoly r = f;
    q.assign(f.size() - g.size() + 1, Int(0));
    const Int& lc = g.back();
    for (size_t i = q.size(); i-- > 0;) {
        const Int& top = r[i + g.size() - 1];
        if (top.is_zero()) continue;
        if (!divides(lc, top)) return false;
        Int c = divexact(top, lc);
        for (size_t j = 0; j < g.size(); ++j) submul(r[i + j], c, g[j]);
        q[i] = std::move(c);
    }
    for (const auto& x : r)
        if (!x.is_zero()) return false;
    q = poly_normalize(std::move(q));
    return true;
}

std::string poly_to_string(const IntPoly& f, const std::string& var) {
    if (f.empty()) return "0";
    std::string out;
    for (size_t i = f.size(); i-- > 0;) {
        const Int& c = f[i];
        if (c.is_zero()) continue;
        Int a = abs(c);
        if (out.empty())
            out += c.sign() < 0 ? "-" : "";
        else
            out += c.sign() < 0 ? " - " : " + ";
        bool show_coef = !a.is_one() || i == 0;
        if (show_coef) out += a.to_string();
        if (i > 0) {
            if (show_coef) out += "*";
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

namespace {

// ---------------------------------------------------------------------------
// Polynomials over Z/p for a word-size prime, coefficients low to high.

using PolyP = std::vector<uint64_t>;

struct Fp {
    uint64_t p;

    uint64_t mul(uint64_t a, uint64_t b) const { return modular::mul_mod(a, b, p); }
    uint64_t add(uint64_t a, uint64_t b) const { return (a + b) % p; }
    uint64_t sub(uint64_t a, uint64_t b) const { return (a + p - b) % p; }
    uint64_t inv(uint64_t a) const { return modular::inv_mod(a, p); }

    static void trim(PolyP& f) {
        while (!f.empty() && f.back() == 0) f.pop_back();
    }

    PolyP from_int(const IntPoly& f) const {
        PolyP r(f.size());
        for (size_t i = 0; i < f.size(); ++i) r[i] = f[i].mod_u64(p);
        trim(r);
        return r;
    }

    PolyP sub(const PolyP& a, const PolyP& b) const {
        PolyP c(std::max(a.size(), b.size()), 0);
        for (size_t i = 0; i < a.size(); ++i) c[i] = a[i];
        for (size_t i = 0; i < b.size(); ++i) c[i] = sub(c[i], b[i]);
        trim(c);
        return c;
    }

    PolyP mul(const PolyP& a, const PolyP& b) const {
        if (a.empty() || b.empty()) return {};
        PolyP c(a.size() + b.size() - 1, 0);
        for (size_t i = 0; i < a.size(); ++i) {
            if (!a[i]) continue;
            for (size_t j = 0; j < b.size(); ++j) c[i + j] = add(c[i + j], mul(a[i], b[j]));
        }
        trim(c);
        return c;
    }

    void divrem(const PolyP& a, const PolyP& b, PolyP& q, PolyP& r) const {
        r = a;
        q.clear();
        if (a.size() < b.size()) return;
        q.assign(a.size() - b.size() + 1, 0);
        const uint64_t li = inv(b.back());
        for (size_t i = q.size(); i-- > 0;) {
            uint64_t c = mul(r[i + b.size() - 1], li);
            q[i] = c;
            if (!c) continue;
            for (size_t j = 0; j < b.size(); ++j) r[i + j] = sub(r[i + j], mul(c, b[j]));
        }
        trim(q);
        trim(r);
    }

    PolyP rem(const PolyP& a, const PolyP& b) const {
        PolyP q, r;
        divrem(a, b, q, r);
        return r;
    }

    PolyP quo(const PolyP& a, const PolyP& b) const {
        PolyP q, r;
        divrem(a, b, q, r);
        return q;
    }

    PolyP monic(PolyP f) const {
        if (f.empty()) return f;
        uint64_t li = inv(f.back());
        for (auto& c : f) c = mul(c, li);
        return f;
    }

    PolyP gcd(PolyP a, PolyP b) const {
        while (!b.empty()) {
            PolyP r = rem(a, b);
            a = std::move(b);
            b = std::move(r);
        }
        return monic(a);
    }

    // s a + t b = g (monic gcd).
    PolyP xgcd(const PolyP& a, const PolyP& b, PolyP& s, PolyP& t) const {
        PolyP r0 = a, r1 = b, s0 = {1}, s1 = {}, t0 = {}, t1 = {1};
        while (!r1.empty()) {
            PolyP q, r;
            divrem(r0, r1, q, r);
            PolyP s2 = sub(s0, mul(q, s1)), t2 = sub(t0, mul(q, t1));
            r0 = std::move(r1);
            r1 = std::move(r);
            s0 = std::move(s1);
            s1 = std::move(s2);
            t0 = std::move(t1);
            t1 = std::move(t2);
        }
        uint64_t li = inv(r0.back());
        for (auto& c : s0) c = mul(c, li);
        for (auto& c : t0) c = mul(c, li);
        s = s0;
        t = t0;
        return monic(r0);
    }

    PolyP powmod(PolyP base, const mpz_class& e, const PolyP& m) const {
        PolyP result = {1};
        base = rem(base, m);
        const size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
        for (size_t i = bits; i-- > 0;) {
            result = rem(mul(result, result), m);
            if (mpz_tstbit(e.get_mpz_t(), i)) result = rem(mul(result, base), m);
        }
        return result;
    }

    PolyP derivative(const PolyP& f) const {
        PolyP d;
        for (size_t i = 1; i < f.size(); ++i) d.push_back(mul(f[i], i % p));
        trim(d);
        return d;
    }

    bool squarefree(const PolyP& f) const {
        PolyP d = derivative(f);
        if (d.empty()) return false;
        return gcd(f, d).size() == 1;
    }

    // Distinct-degree then equal-degree factorization of a monic squarefree f.
    std::vector<PolyP> factor(PolyP f, std::mt19937_64& rng) const {
        std::vector<PolyP> out;
        PolyP h = {0, 1};
        const PolyP x = {0, 1};
        const mpz_class pz(static_cast<unsigned long>(p));
        for (size_t d = 1; 2 * d <= f.size() - 1; ++d) {
            h = powmod(h, pz, f);
            PolyP g = gcd(f, sub(h, x));
            if (g.size() > 1) {
                split(g, d, rng, out);
                f = quo(f, g);
                h = rem(h, f);
            }
        }
        if (f.size() > 1) out.push_back(monic(f));
        return out;
    }

    void split(const PolyP& g, size_t d, std::mt19937_64& rng, std::vector<PolyP>& out) const {
        if (g.size() - 1 == d) {
            out.push_back(monic(g));
            return;
        }
        mpz_class e;
        mpz_ui_pow_ui(e.get_mpz_t(), p, d);
        e = (e - 1) / 2;
        for (;;) {
            PolyP a(g.size() - 1);
            for (auto& c : a) c = rng() % p;
            trim(a);
            if (a.size() < 2) continue;
            PolyP b = powmod(a, e, g);
            b = sub(b, PolyP{1});
            PolyP c = gcd(g, b);
            if (c.size() > 1 && c.size() < g.size()) {
                split(c, d, rng, out);
                split(quo(g, c), d, rng, out);
                return;
            }
        }
    }
};

// ---------------------------------------------------------------------------
// Polynomials over Z/m (m = p^k) with mpz coefficients, for Hensel lifting.

using PolyZ = std::vector<mpz_class>;

void trimz(PolyZ& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

PolyZ modz(PolyZ f, const mpz_class& m) {
    for (auto& c : f) {
        c %= m;
        if (c < 0) c += m;
    }
    trimz(f);
    return f;
}

PolyZ mulz(const PolyZ& a, const PolyZ& b) {
    if (a.empty() || b.empty()) return {};
    PolyZ c(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    trimz(c);
    return c;
}

PolyZ from_p(const PolyP& f) {
    PolyZ r(f.size());
    for (size_t i = 0; i < f.size(); ++i) r[i] = static_cast<unsigned long>(f[i]);
    return r;
}

PolyP to_p(const PolyZ& f, uint64_t p) {
    PolyP r(f.size());
    for (size_t i = 0; i < f.size(); ++i) r[i] = mpz_fdiv_ui(f[i].get_mpz_t(), p);
    Fp::trim(r);
    return r;
}

// Lift f = g h (mod p) with g monic to f = G H (mod p^k).
void hensel_pair(const PolyZ& f, PolyZ& g, PolyZ& h, uint64_t p, unsigned k) {
    Fp F{p};
    PolyP s, t;
    F.xgcd(to_p(g, p), to_p(h, p), s, t);
    mpz_class pj = static_cast<unsigned long>(p);
    for (unsigned j = 1; j < k; ++j) {
        PolyZ e = mulz(g, h);
        PolyZ diff(std::max(f.size(), e.size()));
        for (size_t i = 0; i < f.size(); ++i) diff[i] += f[i];
        for (size_t i = 0; i < e.size(); ++i) diff[i] -= e[i];
        for (auto& c : diff) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), pj.get_mpz_t());
        PolyP ep = to_p(diff, p);
        PolyP dg = F.rem(F.mul(t, ep), to_p(g, p));
        PolyP dh = F.rem(F.mul(s, ep), to_p(h, p));
        for (size_t i = 0; i < dg.size(); ++i) {
            if (i >= g.size()) g.resize(i + 1);
            g[i] += pj * static_cast<unsigned long>(dg[i]);
        }
        for (size_t i = 0; i < dh.size(); ++i) {
            if (i >= h.size()) h.resize(i + 1);
            h[i] += pj * static_cast<unsigned long>(dh[i]);
        }
        pj *= static_cast<unsigned long>(p);
        g = modz(g, pj);
        h = modz(h, pj);
    }
}

IntPoly to_int_symmetric(const PolyZ& f, const mpz_class& m) {
    mpz_class half = m / 2;
    IntPoly r(f.size());
    for (size_t i = 0; i < f.size(); ++i) {
        mpz_class c = f[i] % m;
        if (c < 0) c += m;
        if (c > half) c -= m;
        r[i] = Int(c);
    }
    return poly_normalize(std::move(r));
}

double log2_norm(const IntPoly& f) {
    double s = 0;
    double mx = 0;
    for (const auto& c : f) mx = std::max(mx, static_cast<double>(c.bit_length()));
    for (const auto& c : f) {
        double b = static_cast<double>(c.bit_length());
        s += std::exp2(2 * (b - mx));
    }
    return mx + std::log2(s) / 2;
}

struct Zassenhaus {
    size_t budget = 200000;
    bool complete = true;

    // Irreducible factors of a monic squarefree integer polynomial.
    std::vector<IntPoly> run(const IntPoly& f) {
        if (f.size() <= 2) return {f};
        // Choose the prime giving the fewest modular factors among a few candidates.
        std::mt19937_64 rng(0x5eed);
        uint64_t best_p = 0;
        std::vector<PolyP> best;
        int tried = 0;
        for (uint64_t p = 3; tried < 6 && p < 100000; p += 2) {
            bool prime = true;
            for (uint64_t d = 3; d * d <= p; d += 2)
                if (p % d == 0) {
                    prime = false;
                    break;
                }
            if (!prime) continue;
            Fp F{p};
            PolyP fp = F.from_int(f);
            if (fp.size() != f.size() || !F.squarefree(fp)) continue;
            ++tried;
            auto facs = F.factor(fp, rng);
            if (best_p == 0 || facs.size() < best.size()) {
                best_p = p;
                best = std::move(facs);
            }
            if (best.size() == 1) break;
        }
        if (best_p == 0) {
            complete = false;
            return {f};
        }
        if (best.size() == 1) return {f};
        const uint64_t p = best_p;
        // Coefficient bound for factors (Mignotte) and the lifting exponent.
        double bits = static_cast<double>(f.size()) + log2_norm(f) + 2;
        unsigned k = 1;
        mpz_class m = static_cast<unsigned long>(p);
        while (std::log2(static_cast<double>(p)) * k < bits) {
            ++k;
            m *= static_cast<unsigned long>(p);
        }
        // Multifactor lifting by peeling one factor at a time.
        std::vector<PolyZ> lifted;
        PolyZ rest(f.size());
        for (size_t i = 0; i < f.size(); ++i) rest[i] = f[i].to_mpz();
        Fp F{p};
        for (size_t i = 0; i + 1 < best.size(); ++i) {
            PolyP hp = {1};
            for (size_t j = i + 1; j < best.size(); ++j) hp = F.mul(hp, best[j]);
            PolyZ g = from_p(best[i]), h = from_p(hp);
            hensel_pair(rest, g, h, p, k);
            lifted.push_back(g);
            rest = h;
        }
        lifted.push_back(rest);
        return recombine(f, lifted, m);
    }

    std::vector<IntPoly> recombine(IntPoly f, const std::vector<PolyZ>& lifted, const mpz_class& m) {
        std::vector<IntPoly> out;
        std::vector<size_t> alive(lifted.size());
        for (size_t i = 0; i < alive.size(); ++i) alive[i] = i;
        size_t s = 1;
        size_t trials = 0;
        while (2 * s <= alive.size()) {
            bool found = false;
            std::vector<size_t> pick(s);
            for (size_t i = 0; i < s; ++i) pick[i] = i;
            for (;;) {
                if (++trials > budget) {
                    complete = false;
                    out.push_back(f);
                    return out;
                }
                PolyZ g = {1};
                for (size_t i : pick) g = modz(mulz(g, lifted[alive[i]]), m);
                IntPoly gi = to_int_symmetric(g, m);
                IntPoly q;
                bool const_ok = gi.empty() || f[0].is_zero() || (!gi[0].is_zero() && divides(gi[0], f[0]));
                if (const_ok && poly_divexact(f, gi, q)) {
                    out.push_back(gi);
                    f = q;
                    std::vector<size_t> next;
                    for (size_t i = 0, j = 0; i < alive.size(); ++i) {
                        if (j < pick.size() && pick[j] == i) {
                            ++j;
                            continue;
                        }
                        next.push_back(alive[i]);
                    }
                    alive = std::move(next);
                    found = true;
                    break;
                }
                // Next combination.
                long i = static_cast<long>(s) - 1;
                const size_t navail = alive.size();
                while (i >= 0 && pick[i] == static_cast<size_t>(i) + navail - s) --i;
                if (i < 0) break;
                ++pick[i];
                for (size_t j = static_cast<size_t>(i) + 1; j < s; ++j) pick[j] = pick[j - 1] + 1;
            }
            if (!found) ++s;
        }
        if (f.size() > 1) out.push_back(f);
        return out;
    }
};

// ---------------------------------------------------------------------------
// Squarefree decomposition over Q (Yun), via monic rational polynomials.

using PolyQ = std::vector<mpq_class>;

void trimq(PolyQ& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

PolyQ monicq(PolyQ f) {
    if (f.empty()) return f;
    mpq_class l = f.back();
    for (auto& c : f) c /= l;
    return f;
}

void divremq(const PolyQ& a, const PolyQ& b, PolyQ& q, PolyQ& r) {
    r = a;
    q.clear();
    if (a.size() < b.size()) return;
    q.assign(a.size() - b.size() + 1, mpq_class(0));
    for (size_t i = q.size(); i-- > 0;) {
        mpq_class c = r[i + b.size() - 1] / b.back();
        q[i] = c;
        if (c == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] -= c * b[j];
    }
    trimq(q);
    trimq(r);
}

PolyQ gcdq(PolyQ a, PolyQ b) {
    while (!b.empty()) {
        PolyQ q, r;
        divremq(a, b, q, r);
        a = std::move(b);
        b = monicq(std::move(r));
    }
    return monicq(a);
}

PolyQ quoq(const PolyQ& a, const PolyQ& b) {
    PolyQ q, r;
    divremq(a, b, q, r);
    return q;
}

PolyQ derivq(const PolyQ& f) {
    PolyQ d;
    for (size_t i = 1; i < f.size(); ++i) d.push_back(f[i] * static_cast<long>(i));
    trimq(d);
    return d;
}

PolyQ subq(const PolyQ& a, const PolyQ& b) {
    PolyQ c(std::max(a.size(), b.size()), mpq_class(0));
    for (size_t i = 0; i < a.size(); ++i) c[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) c[i] -= b[i];
    trimq(c);
    return c;
}

IntPoly primitive_from_q(const PolyQ& f) {
    mpz_class l = 1;
    for (const auto& c : f) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    IntPoly r(f.size());
    for (size_t i = 0; i < f.size(); ++i) r[i] = Int(mpz_class(f[i].get_num() * (l / f[i].get_den())));
    Int c = poly_content(r);
    if (r.back().sign() < 0) c = -c;
    for (auto& x : r) x = divexact(x, c);
    return r;
}

std::vector<std::pair<IntPoly, unsigned>> squarefree_decomposition(const IntPoly& f) {
    PolyQ fq(f.size());
    for (size_t i = 0; i < f.size(); ++i) fq[i] = mpq_class(f[i].to_mpz());
    fq = monicq(fq);
    std::vector<std::pair<IntPoly, unsigned>> out;
    if (fq.size() <= 1) return out;
    PolyQ d = derivq(fq);
    PolyQ a = gcdq(fq, d);
    PolyQ b = quoq(fq, a);
    PolyQ c = quoq(d, a);
    PolyQ dd = subq(c, derivq(b));
    unsigned i = 1;
    while (b.size() > 1) {
        PolyQ ai = gcdq(b, dd);
        PolyQ bn = quoq(b, ai);
        PolyQ cn = quoq(dd, ai);
        dd = subq(cn, derivq(bn));
        if (ai.size() > 1) out.emplace_back(primitive_from_q(ai), i);
        b = std::move(bn);
        ++i;
    }
    return out;
}

// Strips every integer root of a monic polynomial (with multiplicity) and
// returns the cofactor. Candidates are the roots modulo a large prime, which
// cover all integers below a root bound; larger bounds skip the shortcut.
IntPoly strip_integer_roots(IntPoly f, std::vector<std::pair<Int, unsigned>>& roots) {
    while (f.size() > 1 && f[0].is_zero()) {
        f.erase(f.begin());
        if (roots.empty() || !roots.back().first.is_zero())
            roots.emplace_back(Int(0), 0);
        roots.back().second++;
    }
    if (f.size() <= 1) return f;
    // Fujiwara bound: every root has |r| <= 2 max_k |a_{n-k}/a_n|^{1/k}.
    const size_t n = f.size() - 1;
    double lb = -INFINITY;
    for (size_t k = 1; k <= n; ++k) {
        const Int& c = f[n - k];
        if (c.is_zero()) continue;
        double v = static_cast<double>(c.bit_length()) / static_cast<double>(k);
        lb = std::max(lb, v);
    }
    const uint64_t p = 2147483647;  // 2^31 - 1
    if (lb + 1 > 29) return f;
    Fp F{p};
    PolyP fp = F.monic(F.from_int(f));
    PolyP h = F.powmod(PolyP{0, 1}, mpz_class(static_cast<unsigned long>(p)), fp);
    PolyP lin = F.gcd(fp, F.sub(h, PolyP{0, 1}));
    std::vector<PolyP> facs;
    if (lin.size() > 1) {
        std::mt19937_64 rng(0x1234);
        F.split(lin, 1, rng, facs);
    }
    std::vector<Int> cands;
    for (const auto& g : facs) {
        uint64_t r = (p - g[0]) % p;
        int64_t sr = r > p / 2 ? static_cast<int64_t>(r) - static_cast<int64_t>(p) : static_cast<int64_t>(r);
        cands.emplace_back(static_cast<long>(sr));
    }
    std::sort(cands.begin(), cands.end(), [](const Int& a, const Int& b) { return a > b; });
    for (const auto& r : cands) {
        unsigned mult = 0;
        IntPoly q;
        while (poly_divexact(f, IntPoly{-r, Int(1)}, q)) {
            f = q;
            ++mult;
        }
        if (mult) roots.emplace_back(r, mult);
    }
    return f;
}

bool factor_less(const PolyFactor& a, const PolyFactor& b) {
    if (a.poly.size() != b.poly.size()) return a.poly.size() < b.poly.size();
    for (size_t i = a.poly.size(); i-- > 0;) {
        int c = Int::cmp(a.poly[i], b.poly[i]);
        if (c) return c < 0;
    }
    return a.multiplicity < b.multiplicity;
}

}  // namespace

std::vector<std::pair<Int, unsigned>> integer_roots(const IntPoly& f0) {
    auto fac = factor_polynomial(f0);
    std::vector<std::pair<Int, unsigned>> roots;
    for (const auto& pf : fac.factors)
        if (pf.poly.size() == 2 && pf.poly[1].is_one()) roots.emplace_back(-pf.poly[0], pf.multiplicity);
    std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    return roots;
}

PolyFactorization factor_polynomial(const IntPoly& f0) {
    PolyFactorization out;
    IntPoly f = poly_normalize(f0);
    if (f.empty()) {
        out.unit = 0;
        return out;
    }
    Int c = poly_content(f);
    if (f.back().sign() < 0) c = -c;
    out.unit = c;
    for (auto& x : f) x = divexact(x, c);
    if (f.size() == 1) return out;

    // Make monic: g(x) = lc^(n-1) f(x / lc); factors map back by primitive
    // part of h(lc x).
    const Int lc = f.back();
    const size_t n = f.size() - 1;
    IntPoly g = f;
    if (!lc.is_one()) {
        for (size_t i = 0; i <= n; ++i) g[i] = f[i] * pow(lc, static_cast<unsigned>(n - i)) ;
        for (auto& x : g) x = divexact(x, lc);
    }
    auto unmonic = [&](IntPoly h) {
        if (lc.is_one()) return h;
        for (size_t i = 0; i < h.size(); ++i) h[i] *= pow(lc, static_cast<unsigned>(i));
        Int cc = poly_content(h);
        for (auto& x : h) x = divexact(x, cc);
        return h;
    };

    std::vector<std::pair<Int, unsigned>> roots;
    IntPoly rest = strip_integer_roots(g, roots);
    for (const auto& [r, m] : roots) out.factors.push_back({unmonic(IntPoly{-r, Int(1)}), m});
    if (rest.size() > 1) {
        Zassenhaus z;
        for (const auto& [part, mult] : squarefree_decomposition(rest)) {
            for (const auto& irr : z.run(part)) out.factors.push_back({unmonic(irr), mult});
        }
        out.complete = z.complete;
    }
    // Merge equal factors (can arise from the monic transform) and sort.
    std::sort(out.factors.begin(), out.factors.end(), factor_less);
    std::vector<PolyFactor> merged;
    for (auto& pf : out.factors) {
        if (!merged.empty() && merged.back().poly == pf.poly)
            merged.back().multiplicity += pf.multiplicity;
        else
            merged.push_back(std::move(pf));
    }
    out.factors = std::move(merged);
    return out;
}

}  // namespace tilecoh
