#include "tilecoh/integer.hpp"

#include <stdexcept>

namespace tilecoh {

struct IntAccess {
    static void set(Int& x, mpz_class&& z) { x.assign_mpz(std::move(z)); }
};

namespace {
const mpz_class kMin64 = mpz_class("-9223372036854775808");
const mpz_class kMax64 = mpz_class("9223372036854775807");
}  // namespace

Int::Int(const std::string& text) {
    mpz_class z;
    if (z.set_str(text, 10) != 0) throw std::invalid_argument("not an integer: " + text);
    assign_mpz(std::move(z));
}

void Int::assign_u64(uint64_t v) {
    if (v <= static_cast<uint64_t>(INT64_MAX)) {
        s_ = static_cast<int64_t>(v);
        b_.reset();
    } else {
        mpz_class z;
        mpz_import(z.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
        assign_mpz(std::move(z));
    }
}

void Int::assign_mpz(const mpz_class& z) { assign_mpz(mpz_class(z)); }

void Int::assign_mpz(mpz_class&& z) {
    if (z >= kMin64 && z <= kMax64) {
        s_ = z.get_si();
        b_.reset();
    } else {
        s_ = 0;
        if (b_)
            *b_ = std::move(z);
        else
            b_ = std::make_unique<mpz_class>(std::move(z));
    }
}

int64_t Int::to_int64() const {
    if (b_) throw std::overflow_error("integer does not fit in 64 bits");
    return s_;
}

size_t Int::bit_length() const {
    if (b_) return mpz_sizeinbase(b_->get_mpz_t(), 2);
    if (s_ == 0) return 0;
    uint64_t u = s_ < 0 ? static_cast<uint64_t>(-(s_ + 1)) + 1 : static_cast<uint64_t>(s_);
    return 64 - static_cast<size_t>(__builtin_clzll(u));
}

uint64_t Int::mod_u64(uint64_t p) const {
    if (!b_) {
        int64_t r = s_ % static_cast<int64_t>(p);
        return static_cast<uint64_t>(r < 0 ? r + static_cast<int64_t>(p) : r);
    }
    return mpz_fdiv_ui(b_->get_mpz_t(), p);
}

Int Int::operator-() const {
    if (!b_ && s_ != INT64_MIN) return Int(static_cast<long>(-s_));
    Int r;
    r.assign_mpz(mpz_class(-to_mpz()));
    return r;
}

int Int::cmp_abs(const Int& a, const Int& b) { mpz_class x = a.to_mpz(), y = b.to_mpz();
    return mpz_cmpabs(x.get_mpz_t(), y.get_mpz_t()); }

size_t Int::hash() const {
    if (!b_) return std::hash<int64_t>()(s_);
    return std::hash<std::string>()(b_->get_str(16));
}

namespace detail {

void add_slow(Int& acc, const Int& o, bool negate) {
    mpz_class r = negate ? mpz_class(acc.to_mpz() - o.to_mpz()) : mpz_class(acc.to_mpz() + o.to_mpz());
    IntAccess::set(acc, std::move(r));
}

Int mul_slow(const Int& a, const Int& b) {
    Int r;
    IntAccess::set(r, mpz_class(a.to_mpz() * b.to_mpz()));
    return r;
}

void addmul_slow(Int& acc, const Int& a, const Int& b, bool negate) {
    mpz_class r = acc.to_mpz();
    if (negate)
        mpz_submul(r.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
    else
        mpz_addmul(r.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
    IntAccess::set(acc, std::move(r));
}

}  // namespace detail

Int abs(const Int& a) { return a.sign() < 0 ? -a : a; }

Int gcd(const Int& a, const Int& b) {
    if (a.is_small() && b.is_small() && a.small() != INT64_MIN && b.small() != INT64_MIN) {
        int64_t x = a.small() < 0 ? -a.small() : a.small();
        int64_t y = b.small() < 0 ? -b.small() : b.small();
        while (y) {
            int64_t t = x % y;
            x = y;
            y = t;
        }
        return Int(static_cast<long>(x));
    }
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
    return Int(g);
}

Int lcm(const Int& a, const Int& b) {
    if (a.is_zero() || b.is_zero()) return Int(0);
    return abs(divexact(a, gcd(a, b)) * b);
}

Int divexact(const Int& a, const Int& b) {
    if (b.is_zero()) throw std::domain_error("division by zero");
    if (a.is_small() && b.is_small() && !(a.small() == INT64_MIN && b.small() == -1))
        return Int(static_cast<long>(a.small() / b.small()));
    mpz_class q;
    mpz_divexact(q.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
    return Int(q);
}

Int fdiv_q(const Int& a, const Int& b) {
    if (b.is_zero()) throw std::domain_error("division by zero");
    if (a.is_small() && b.is_small() && !(a.small() == INT64_MIN && b.small() == -1)) {
        int64_t q = a.small() / b.small(), r = a.small() % b.small();
        if (r != 0 && ((r < 0) != (b.small() < 0))) --q;
        return Int(static_cast<long>(q));
    }
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
    return Int(q);
}

Int fdiv_r(const Int& a, const Int& b) {
    if (b.is_zero()) throw std::domain_error("division by zero");
    if (a.is_small() && b.is_small() && !(a.small() == INT64_MIN && b.small() == -1)) {
        int64_t r = a.small() % b.small();
        if (r != 0 && ((r < 0) != (b.small() < 0))) r += b.small();
        return Int(static_cast<long>(r));
    }
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
    return Int(r);
}

Int tdiv_q(const Int& a, const Int& b) {
    if (b.is_zero()) throw std::domain_error("division by zero");
    if (a.is_small() && b.is_small() && !(a.small() == INT64_MIN && b.small() == -1))
        return Int(static_cast<long>(a.small() / b.small()));
    mpz_class q;
    mpz_tdiv_q(q.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
    return Int(q);
}

Int tdiv_r(const Int& a, const Int& b) {
    if (b.is_zero()) throw std::domain_error("division by zero");
    if (a.is_small() && b.is_small() && !(a.small() == INT64_MIN && b.small() == -1))
        return Int(static_cast<long>(a.small() % b.small()));
    mpz_class r;
    mpz_tdiv_r(r.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
    return Int(r);
}

bool divides(const Int& d, const Int& a) {
    if (d.is_zero()) return a.is_zero();
    return tdiv_r(a, d).is_zero();
}

Int pow(const Int& base, unsigned e) {
    Int r(1), b(base);
    while (e) {
        if (e & 1u) r *= b;
        e >>= 1u;
        if (e) b *= b;
    }
    return r;
}

void xgcd(const Int& a, const Int& b, Int& g, Int& s, Int& t) {
    mpz_class G, S, T;
    mpz_gcdext(G.get_mpz_t(), S.get_mpz_t(), T.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
    g = Int(G);
    s = Int(S);
    t = Int(T);
}

std::ostream& operator<<(std::ostream& os, const Int& x) { return os << x.to_string(); }

}  // namespace tilecoh
