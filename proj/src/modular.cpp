#include "tilecoh/modular.hpp"

#include <mutex>
#include <stdexcept>

#include "tilecoh/kernels.hpp"

namespace tilecoh::modular {

namespace {

bool is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace

const std::vector<uint64_t>& primes(size_t count) {
    static std::mutex mu;
    static std::vector<uint64_t> cache;
    std::lock_guard<std::mutex> lock(mu);
    uint64_t next = cache.empty() ? (uint64_t(1) << 26) - 1 : cache.back() - 1;
    while (cache.size() < count) {
        if (is_prime(next)) cache.push_back(next);
        --next;
    }
    return cache;
}

uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t p) { return static_cast<uint64_t>((unsigned __int128)a * b % p); }

uint64_t pow_mod(uint64_t a, uint64_t e, uint64_t p) {
    uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mul_mod(r, a, p);
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    return r;
}

uint64_t inv_mod(uint64_t a, uint64_t p) {
    int64_t t = 0, nt = 1;
    int64_t r = static_cast<int64_t>(p), nr = static_cast<int64_t>(a % p);
    while (nr) {
        int64_t q = r / nr;
        int64_t tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (r != 1) throw std::domain_error("inv_mod: not invertible");
    if (t < 0) t += static_cast<int64_t>(p);
    return static_cast<uint64_t>(t);
}

ModMatrix reduce(const IntMatrix& m, uint64_t p) {
    ModMatrix r(m.rows(), m.cols(), p);
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) {
            const Int& x = m(i, j);
            if (!x.is_zero()) r(i, j) = static_cast<double>(x.mod_u64(p));
        }
    return r;
}

std::vector<size_t> rref(ModMatrix& m) {
    const double p = static_cast<double>(m.p);
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c = 0; c < m.cols && r < m.rows; ++c) {
        size_t piv = r;
        while (piv < m.rows && m(piv, c) == 0.0) ++piv;
        if (piv == m.rows) continue;
        if (piv != r)
            for (size_t j = 0; j < m.cols; ++j) std::swap(m(piv, j), m(r, j));
        double inv = static_cast<double>(inv_mod(static_cast<uint64_t>(m(r, c)), m.p));
        kernels::scale_mod(m.row(r) + c, inv, p, m.cols - c);
        for (size_t i = 0; i < m.rows; ++i) {
            if (i == r || m(i, c) == 0.0) continue;
            double f = p - m(i, c);
            kernels::axpy_mod(m.row(i) + c, m.row(r) + c, f, p, m.cols - c);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::vector<uint64_t> charpoly(ModMatrix m) {
    const size_t n = m.rows;
    const uint64_t P = m.p;
    const double p = static_cast<double>(P);
    // Similarity reduction to upper Hessenberg form.
    std::vector<double> u(n);
    for (size_t j = 0; j + 2 < n; ++j) {
        size_t piv = j + 1;
        while (piv < n && m(piv, j) == 0.0) ++piv;
        if (piv == n) continue;
        if (piv != j + 1) {
            for (size_t c = 0; c < n; ++c) std::swap(m(piv, c), m(j + 1, c));
            for (size_t r = 0; r < n; ++r) std::swap(m(r, piv), m(r, j + 1));
        }
        const uint64_t inv = inv_mod(static_cast<uint64_t>(m(j + 1, j)), P);
        bool any = false;
        for (size_t k = j + 2; k < n; ++k) {
            u[k] = static_cast<double>(mul_mod(static_cast<uint64_t>(m(k, j)), inv, P));
            if (u[k] != 0.0) {
                any = true;
                // row_k -= u_k * row_{j+1}
                kernels::axpy_mod(m.row(k), m.row(j + 1), p - u[k], p, n);
            }
        }
        if (!any) continue;
        // col_{j+1} += sum_k u_k * col_k
        for (size_t r = 0; r < n; ++r) {
            double s = kernels::dot_mod(u.data() + j + 2, m.row(r) + j + 2, p, n - j - 2);
            double v = m(r, j + 1) + s;
            m(r, j + 1) = v >= p ? v - p : v;
        }
    }
    // Characteristic polynomial of the Hessenberg matrix by the standard recurrence.
    std::vector<std::vector<uint64_t>> polys(n + 1);
    polys[0] = {1};
    for (size_t k = 0; k < n; ++k) {
        std::vector<uint64_t> next(k + 2, 0);
        const uint64_t hkk = static_cast<uint64_t>(m(k, k));
        for (size_t i = 0; i <= k; ++i) {
            next[i + 1] = (next[i + 1] + polys[k][i]) % P;
            next[i] = (next[i] + mul_mod(P - hkk, polys[k][i], P)) % P;
        }
        uint64_t prod = 1;
        for (size_t i = k; i-- > 0;) {
            prod = mul_mod(prod, static_cast<uint64_t>(m(i + 1, i)), P);
            if (prod == 0) break;
            const uint64_t coef = mul_mod(prod, static_cast<uint64_t>(m(i, k)), P);
            if (coef == 0) continue;
            for (size_t t = 0; t < polys[i].size(); ++t)
                next[t] = (next[t] + P - mul_mod(coef, polys[i][t], P)) % P;
        }
        polys[k + 1] = std::move(next);
    }
    return polys[n];
}

void CrtVector::add(const std::vector<uint64_t>& residues, uint64_t p) {
    if (residues.size() != x_.size()) throw std::invalid_argument("CrtVector size");
    const uint64_t mmod = mpz_fdiv_ui(modulus_.get_mpz_t(), p);
    const uint64_t minv = inv_mod(mmod, p);
    mpz_class t;
    for (size_t i = 0; i < x_.size(); ++i) {
        uint64_t xr = mpz_fdiv_ui(x_[i].get_mpz_t(), p);
        uint64_t diff = (residues[i] % p + p - xr) % p;
        uint64_t k = mul_mod(diff, minv, p);
        if (k) {
            t = modulus_;
            t *= static_cast<unsigned long>(k);
            x_[i] += t;
        }
    }
    modulus_ *= static_cast<unsigned long>(p);
}

Int CrtVector::symmetric(size_t i) const {
    mpz_class half = modulus_ / 2;
    if (x_[i] > half) return Int(mpz_class(x_[i] - modulus_));
    return Int(x_[i]);
}

bool rational_reconstruct(const mpz_class& a, const mpz_class& m, mpz_class& num, mpz_class& den) {
    mpz_class bound;
    mpz_class half = m / 2;
    mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
    mpz_class r0 = m, r1 = a % m;
    if (r1 < 0) r1 += m;
    mpz_class t0 = 0, t1 = 1, q, tmp;
    while (r1 > bound) {
        q = r0 / r1;
        tmp = r0 - q * r1;
        r0 = r1;
        r1 = tmp;
        tmp = t0 - q * t1;
        t0 = t1;
        t1 = tmp;
    }
    if (abs(t1) > bound || t1 == 0) return false;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), t1.get_mpz_t());
    if (g != 1) return false;
    if (t1 < 0) {
        t1 = -t1;
        r1 = -r1;
    }
    num = r1;
    den = t1;
    return true;
}

}  // namespace tilecoh::modular
