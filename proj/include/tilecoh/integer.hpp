#pragma once

#include <cstdint>
#include <functional>
#include <gmpxx.h>
#include <memory>
#include <ostream>
#include <string>

namespace tilecoh {

// Exact integer with an int64 fast path. Values that leave the int64 range
// are promoted to GMP and demoted again as soon as they fit.
class Int {
public:
    Int() = default;
    Int(int v) : s_(v) {}
    Int(long v) : s_(v) {}
    Int(long long v) : s_(static_cast<int64_t>(v)) {}
    Int(unsigned v) : s_(v) {}
    Int(unsigned long v) { assign_u64(v); }
    Int(unsigned long long v) { assign_u64(v); }
    explicit Int(const mpz_class& z) { assign_mpz(z); }
    explicit Int(const std::string& text);

    Int(const Int& o) : s_(o.s_), b_(o.b_ ? std::make_unique<mpz_class>(*o.b_) : nullptr) {}
    Int(Int&&) noexcept = default;
    Int& operator=(const Int& o) {
        if (this != &o) {
            s_ = o.s_;
            b_ = o.b_ ? std::make_unique<mpz_class>(*o.b_) : nullptr;
        }
        return *this;
    }
    Int& operator=(Int&&) noexcept = default;

    bool is_small() const { return !b_; }
    int64_t small() const { return s_; }
    mpz_class to_mpz() const { return b_ ? *b_ : mpz_class(static_cast<long>(s_)); }
    bool fits_int64() const { return !b_; }
    int64_t to_int64() const;
    double to_double() const { return b_ ? b_->get_d() : static_cast<double>(s_); }
    std::string to_string() const { return b_ ? b_->get_str() : std::to_string(s_); }
    // Number of bits of |x|.
    size_t bit_length() const;

    int sign() const {
        if (b_) return sgn(*b_);
        return (s_ > 0) - (s_ < 0);
    }
    bool is_zero() const { return !b_ && s_ == 0; }
    bool is_one() const { return !b_ && s_ == 1; }
    bool is_unit() const { return !b_ && (s_ == 1 || s_ == -1); }

    // Residue in [0, p) for 0 < p < 2^63.
    uint64_t mod_u64(uint64_t p) const;

    Int operator-() const;
    Int& operator+=(const Int& o);
    Int& operator-=(const Int& o);
    Int& operator*=(const Int& o);

    friend Int operator+(Int a, const Int& b) { a += b; return a; }
    friend Int operator-(Int a, const Int& b) { a -= b; return a; }
    friend Int operator*(const Int& a, const Int& b);

    friend bool operator==(const Int& a, const Int& b) { return cmp(a, b) == 0; }
    friend bool operator!=(const Int& a, const Int& b) { return cmp(a, b) != 0; }
    friend bool operator<(const Int& a, const Int& b) { return cmp(a, b) < 0; }
    friend bool operator<=(const Int& a, const Int& b) { return cmp(a, b) <= 0; }
    friend bool operator>(const Int& a, const Int& b) { return cmp(a, b) > 0; }
    friend bool operator>=(const Int& a, const Int& b) { return cmp(a, b) >= 0; }
    static int cmp(const Int& a, const Int& b);
    static int cmp_abs(const Int& a, const Int& b);

    size_t hash() const;

private:
    void assign_u64(uint64_t v);
    void assign_mpz(const mpz_class& z);
    void assign_mpz(mpz_class&& z);

    int64_t s_ = 0;
    std::unique_ptr<mpz_class> b_;

    friend Int abs(const Int& a);
    friend Int gcd(const Int& a, const Int& b);
    friend Int divexact(const Int& a, const Int& b);
    friend Int fdiv_q(const Int& a, const Int& b);
    friend Int fdiv_r(const Int& a, const Int& b);
    friend Int tdiv_q(const Int& a, const Int& b);
    friend Int tdiv_r(const Int& a, const Int& b);
    friend void addmul(Int& acc, const Int& a, const Int& b);
    friend void submul(Int& acc, const Int& a, const Int& b);
    friend struct IntAccess;
};

Int abs(const Int& a);
// Non-negative gcd; gcd(0,0) = 0.
Int gcd(const Int& a, const Int& b);
Int lcm(const Int& a, const Int& b);
// Exact quotient; behavior undefined if b does not divide a.
Int divexact(const Int& a, const Int& b);
// Floor division and the matching remainder (sign of divisor).
Int fdiv_q(const Int& a, const Int& b);
Int fdiv_r(const Int& a, const Int& b);
// Truncating division and remainder.
Int tdiv_q(const Int& a, const Int& b);
Int tdiv_r(const Int& a, const Int& b);
bool divides(const Int& d, const Int& a);
// acc += a*b and acc -= a*b.
void addmul(Int& acc, const Int& a, const Int& b);
void submul(Int& acc, const Int& a, const Int& b);
Int pow(const Int& base, unsigned e);
// Extended gcd: g = s*a + t*b with g = gcd(a,b) >= 0.
void xgcd(const Int& a, const Int& b, Int& g, Int& s, Int& t);

std::ostream& operator<<(std::ostream& os, const Int& x);

namespace detail {
void add_slow(Int& acc, const Int& o, bool negate);
Int mul_slow(const Int& a, const Int& b);
void addmul_slow(Int& acc, const Int& a, const Int& b, bool negate);
}  // namespace detail

inline Int& Int::operator+=(const Int& o) {
    int64_t r;
    if (!b_ && !o.b_ && !__builtin_add_overflow(s_, o.s_, &r)) {
        s_ = r;
        return *this;
    }
    detail::add_slow(*this, o, false);
    return *this;
}

inline Int& Int::operator-=(const Int& o) {
    int64_t r;
    if (!b_ && !o.b_ && !__builtin_sub_overflow(s_, o.s_, &r)) {
        s_ = r;
        return *this;
    }
    detail::add_slow(*this, o, true);
    return *this;
}

inline Int operator*(const Int& a, const Int& b) {
    int64_t r;
    if (!a.b_ && !b.b_ && !__builtin_mul_overflow(a.s_, b.s_, &r)) return Int(static_cast<long>(r));
    return detail::mul_slow(a, b);
}

inline Int& Int::operator*=(const Int& o) {
    int64_t r;
    if (!b_ && !o.b_ && !__builtin_mul_overflow(s_, o.s_, &r)) {
        s_ = r;
        return *this;
    }
    *this = detail::mul_slow(*this, o);
    return *this;
}

inline void addmul(Int& acc, const Int& a, const Int& b) {
    int64_t p, r;
    if (!acc.b_ && !a.b_ && !b.b_ && !__builtin_mul_overflow(a.s_, b.s_, &p) &&
        !__builtin_add_overflow(acc.s_, p, &r)) {
        acc.s_ = r;
        return;
    }
    detail::addmul_slow(acc, a, b, false);
}

inline void submul(Int& acc, const Int& a, const Int& b) {
    int64_t p, r;
    if (!acc.b_ && !a.b_ && !b.b_ && !__builtin_mul_overflow(a.s_, b.s_, &p) &&
        !__builtin_sub_overflow(acc.s_, p, &r)) {
        acc.s_ = r;
        return;
    }
    detail::addmul_slow(acc, a, b, true);
}

inline int Int::cmp(const Int& a, const Int& b) {
    if (!a.b_ && !b.b_) return (a.s_ > b.s_) - (a.s_ < b.s_);
    return ::cmp(a.to_mpz(), b.to_mpz());
}

struct IntHash {
    size_t operator()(const Int& x) const { return x.hash(); }
};

}  // namespace tilecoh
