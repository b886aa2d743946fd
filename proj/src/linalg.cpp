#include "tilecoh/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "tilecoh/errors.hpp"
#include "tilecoh/modular.hpp"
#include "tilecoh/parallel.hpp"

namespace tilecoh {

namespace {

double log2_abs(const Int& x) {
    if (x.is_zero()) return -INFINITY;
    if (x.is_small()) return std::log2(std::fabs(static_cast<double>(x.small())));
    mpz_class z = x.to_mpz();
    long e = 0;
    double m = mpz_get_d_2exp(&e, z.get_mpz_t());
    return std::log2(std::fabs(m)) + static_cast<double>(e);
}

double log2_add(double a, double b) {
    if (a == -INFINITY) return b;
    if (b == -INFINITY) return a;
    double hi = std::max(a, b), lo = std::min(a, b);
    return hi + std::log2(1.0 + std::exp2(lo - hi));
}

// Upper bound on log2 of every coefficient of the characteristic polynomial:
// each is a sum of principal minors, and Hadamard bounds a principal minor by
// the product of the full row norms.
double charpoly_log2_bound(const IntMatrix& a) {
    const size_t n = a.rows();
    std::vector<double> lognorm(n, -INFINITY);
    for (size_t i = 0; i < n; ++i) {
        double s = -INFINITY;
        for (size_t j = 0; j < n; ++j) s = log2_add(s, 2 * log2_abs(a(i, j)));
        lognorm[i] = s == -INFINITY ? -INFINITY : s / 2;
    }
    // e[k] = log2 of the k-th elementary symmetric function of the norms.
    std::vector<double> e(n + 1, -INFINITY);
    e[0] = 0;
    for (size_t i = 0; i < n; ++i) {
        if (lognorm[i] == -INFINITY) continue;
        for (size_t k = i + 1; k >= 1; --k) e[k] = log2_add(e[k], e[k - 1] + lognorm[i]);
    }
    double best = 0;
    for (double v : e) best = std::max(best, v);
    return best;
}

}  // namespace

std::vector<Int> characteristic_polynomial(const IntMatrix& a) {
    if (!a.square()) throw DimensionMismatch("characteristic_polynomial needs a square matrix");
    const size_t n = a.rows();
    if (n == 0) return {Int(1)};
    // Need modulus > 2 * bound, with a safety margin for the floating estimate.
    const double bits_needed = charpoly_log2_bound(a) + 4;
    double bits = 0;
    size_t count = 0;
    while (bits < bits_needed) {
        ++count;
        bits += std::log2(static_cast<double>(modular::primes(count).back()));
    }
    const auto& ps = modular::primes(count);
    std::vector<std::vector<uint64_t>> residues(count);
    parallel_for(count, [&](size_t i) { residues[i] = modular::charpoly(modular::reduce(a, ps[i])); });
    modular::CrtVector crt(n + 1);
    for (size_t i = 0; i < count; ++i) crt.add(residues[i], ps[i]);
    std::vector<Int> c(n + 1);
    for (size_t i = 0; i <= n; ++i) c[i] = crt.symmetric(i);
    return c;
}

std::vector<IntVector> rational_kernel(const IntMatrix& a) {
    const size_t n = a.cols();
    if (n == 0) return {};
    if (a.rows() == 0) {
        std::vector<IntVector> basis;
        for (size_t j = 0; j < n; ++j) {
            IntVector v(n);
            v[j] = 1;
            basis.push_back(v);
        }
        return basis;
    }
    std::vector<size_t> best_pivots;
    bool have = false;
    std::vector<size_t> free_cols;
    std::unique_ptr<modular::CrtVector> crt;
    constexpr size_t kMaxPrimes = 4000;
    for (size_t idx = 0; idx < kMaxPrimes; ++idx) {
        uint64_t p = modular::primes(idx + 1)[idx];
        modular::ModMatrix m = modular::reduce(a, p);
        auto piv = modular::rref(m);
        bool better = !have || piv.size() > best_pivots.size() ||
                      (piv.size() == best_pivots.size() && piv < best_pivots);
        if (!better && piv != best_pivots) continue;
        if (better) {
            have = true;
            best_pivots = piv;
            free_cols.clear();
            size_t q = 0;
            for (size_t j = 0; j < n; ++j) {
                if (q < piv.size() && piv[q] == j)
                    ++q;
                else
                    free_cols.push_back(j);
            }
            crt = std::make_unique<modular::CrtVector>(free_cols.size() * n);
        }
        if (free_cols.empty()) return {};
        std::vector<uint64_t> res(free_cols.size() * n, 0);
        for (size_t k = 0; k < free_cols.size(); ++k) {
            uint64_t* v = res.data() + k * n;
            v[free_cols[k]] = 1;
            for (size_t r = 0; r < best_pivots.size(); ++r) {
                uint64_t x = static_cast<uint64_t>(m(r, free_cols[k]));
                v[best_pivots[r]] = x ? p - x : 0;
            }
        }
        crt->add(res, p);
        // Try to lift; an exact check certifies the result.
        std::vector<IntVector> basis;
        bool ok = true;
        for (size_t k = 0; k < free_cols.size() && ok; ++k) {
            std::vector<mpz_class> num(n), den(n);
            mpz_class l = 1;
            for (size_t j = 0; j < n && ok; ++j) {
                if (!modular::rational_reconstruct(crt->raw(k * n + j), crt->modulus(), num[j], den[j])) {
                    ok = false;
                    break;
                }
                mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), den[j].get_mpz_t());
            }
            if (!ok) break;
            IntVector v(n);
            for (size_t j = 0; j < n; ++j) v[j] = Int(mpz_class(num[j] * (l / den[j])));
            if (!is_zero(a * v)) {
                ok = false;
                break;
            }
            basis.push_back(make_primitive(std::move(v)));
        }
        if (ok) return basis;
    }
    throw std::runtime_error("rational_kernel: multimodular lifting did not converge");
}

size_t rank(const IntMatrix& a) { return a.cols() - rational_kernel(a).size(); }

std::vector<IntVector> rational_eigenspace(const IntMatrix& a, const Int& eigenvalue) {
    if (!a.square()) throw DimensionMismatch("rational_eigenspace needs a square matrix");
    IntMatrix s = a;
    for (size_t i = 0; i < a.rows(); ++i) s(i, i) -= eigenvalue;
    return rational_kernel(s);
}

IntVector perron_frobenius_vector(const IntMatrix& a, const Int& pf_eigenvalue, bool allow_zero_entries) {
    auto basis = rational_eigenspace(a, pf_eigenvalue);
    if (basis.size() != 1)
        throw NotPrimitiveSpectrum("eigenvalue " + pf_eigenvalue.to_string() + " has geometric multiplicity " +
                                   std::to_string(basis.size()));
    IntVector v = basis[0];
    bool neg = std::any_of(v.begin(), v.end(), [](const Int& x) { return x.sign() < 0; });
    if (neg)
        for (auto& x : v) x = -x;
    for (const auto& x : v) {
        if (x.sign() < 0 || (!allow_zero_entries && x.is_zero()))
            throw NotPrimitiveSpectrum("eigenvector for " + pf_eigenvalue.to_string() + " is not positive");
    }
    return v;
}

std::optional<std::vector<mpq_class>> solve_rational(const IntMatrix& a, const IntVector& b) {
    IntMatrix aug(a.rows(), a.cols() + 1);
    for (size_t i = 0; i < a.rows(); ++i) {
        for (size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    const size_t last = a.cols();
    for (const auto& v : rational_kernel(aug)) {
        if (v[last].is_zero()) continue;
        std::vector<mpq_class> x(a.cols());
        mpz_class d = v[last].to_mpz();
        for (size_t j = 0; j < a.cols(); ++j) {
            x[j] = mpq_class(-v[j].to_mpz(), d);
            x[j].canonicalize();
        }
        return x;
    }
    return std::nullopt;
}

}  // namespace tilecoh
