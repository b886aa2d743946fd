#include <random>

#include "doctest.h"
#include "test_support.hpp"
#include "tilecoh/errors.hpp"
#include "tilecoh/kernels.hpp"
#include "tilecoh/linalg.hpp"
#include "tilecoh/modular.hpp"
#include "tilecoh/poly.hpp"
#include "tilecoh/snf.hpp"

using namespace tilecoh;
using testsupport::poly_from_roots;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, size_t r, size_t c, int lo, int hi) {
    std::uniform_int_distribution<int> dist(lo, hi);
    IntMatrix m(r, c);
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < c; ++j) m(i, j) = dist(rng);
    return m;
}

// Product of random elementary operations: unimodular by construction.
IntMatrix random_unimodular(std::mt19937_64& rng, size_t n) {
    IntMatrix u = IntMatrix::identity(n);
    std::uniform_int_distribution<size_t> idx(0, n - 1);
    std::uniform_int_distribution<int> k(-2, 2);
    for (int step = 0; step < 3 * static_cast<int>(n); ++step) {
        size_t i = idx(rng), j = idx(rng);
        if (i != j) u.add_row_multiple(i, j, Int(k(rng)));
    }
    return u;
}

IntMatrix inverse_unimodular(const IntMatrix& u) {
    SnfOptions o;
    o.want_u = true;
    o.want_v = true;
    auto s = smith_normal_form(u, o);
    // U u V = I  =>  u^{-1} = V U.
    return s.V * s.U;
}

void check_snf(const IntMatrix& a) {
    SnfOptions o;
    o.want_u_inv = true;
    o.want_v_inv = true;
    auto s = smith_normal_form(a, o);
    REQUIRE(s.U * a * s.V == s.D);
    REQUIRE(s.U * s.U_inv == IntMatrix::identity(a.rows()));
    REQUIRE(s.V * s.V_inv == IntMatrix::identity(a.cols()));
    for (size_t i = 0; i < s.D.rows(); ++i)
        for (size_t j = 0; j < s.D.cols(); ++j)
            if (i != j || i >= s.rank) REQUIRE(s.D(i, j).is_zero());
    for (size_t i = 0; i < s.rank; ++i) {
        REQUIRE(s.D(i, i).sign() > 0);
        if (i + 1 < s.rank) REQUIRE(divides(s.D(i, i), s.D(i + 1, i + 1)));
    }
}

}  // namespace

TEST_CASE("Int promotes to GMP on overflow and demotes again") {
    Int a = INT64_MAX;
    Int b = a + Int(1);
    CHECK_FALSE(b.is_small());
    CHECK(b.to_string() == "9223372036854775808");
    Int c = b - Int(1);
    CHECK(c.is_small());
    CHECK(c == a);
    Int p = Int(INT64_MAX) * Int(INT64_MAX);
    CHECK(p.to_string() == "85070591730234615847396907784232501249");
    CHECK(divexact(p, a) == a);
    Int m = INT64_MIN;
    CHECK((-m).to_string() == "9223372036854775808");
    CHECK(tdiv_q(m, Int(-1)).to_string() == "9223372036854775808");
    CHECK(gcd(Int(12), Int(-18)) == Int(6));
    CHECK(fdiv_r(Int(-7), Int(3)) == Int(2));
    CHECK(tdiv_r(Int(-7), Int(3)) == Int(-1));
    Int acc = INT64_MAX;
    addmul(acc, Int(2), Int(3));
    CHECK(acc.to_string() == "9223372036854775813");
    submul(acc, Int(2), Int(3));
    CHECK(acc.is_small());
    CHECK(Int(std::string("-123456789012345678901234567890")).to_string() == "-123456789012345678901234567890");
    Int g, s, t;
    xgcd(Int(240), Int(46), g, s, t);
    CHECK(g == Int(2));
    CHECK(s * Int(240) + t * Int(46) == g);
}

TEST_CASE("matrix CSV and JSON round-trip bit-exactly") {
    IntMatrix m{{1, -2, 3}, {0, 5, -6}};
    m(1, 1) = Int(std::string("123456789012345678901234567890"));
    CHECK(matrix_from_csv(to_csv(m)) == m);
    CHECK(matrix_from_json_text(to_json_text(m)) == m);
    CHECK(matrix_from_json_text("[[1, 2],\n [3, 4]]") == IntMatrix{{1, 2}, {3, 4}});
    CHECK_THROWS(matrix_from_csv("1,2\n3\n"));
    IntMatrix empty(0, 0);
    CHECK(matrix_from_json_text(to_json_text(empty)) == empty);
}

TEST_CASE("sparse and dense products agree") {
    std::mt19937_64 rng(7);
    IntMatrix a = random_matrix(rng, 5, 7, -2, 2), b = random_matrix(rng, 7, 4, -2, 2);
    auto sa = SparseMatrix::from_dense(a), sb = SparseMatrix::from_dense(b);
    CHECK((sa * sb).to_dense() == a * b);
    CHECK(sa.transpose().to_dense() == a.transpose());
    IntVector x{1, 2, 3, 4, 5, 6, 7};
    CHECK(sa.apply(x) == a * x);
    CHECK((sa - sa).is_zero());
}

TEST_CASE("SIMD kernels match the scalar reference") {
    std::mt19937_64 rng(11);
    for (uint64_t p : std::vector<uint64_t>{3, 65521, modular::primes(1)[0]}) {
        std::uniform_int_distribution<uint64_t> d(0, p - 1);
        for (size_t n : {0u, 1u, 3u, 4u, 7u, 64u, 1001u}) {
            std::vector<double> x(n), y(n);
            for (auto& v : x) v = static_cast<double>(d(rng));
            for (auto& v : y) v = static_cast<double>(d(rng));
            double a = static_cast<double>(d(rng));
            auto y1 = y, y2 = y;
            kernels::scalar::axpy_mod(y1.data(), x.data(), a, static_cast<double>(p), n);
            kernels::avx2::axpy_mod(y2.data(), x.data(), a, static_cast<double>(p), n);
            CHECK(y1 == y2);
            for (size_t i = 0; i < n; ++i) {
                uint64_t want = (static_cast<uint64_t>(y[i]) +
                                 modular::mul_mod(static_cast<uint64_t>(a), static_cast<uint64_t>(x[i]), p)) % p;
                REQUIRE(static_cast<uint64_t>(y1[i]) == want);
            }
            y1 = y;
            y2 = y;
            kernels::scalar::scale_mod(y1.data(), a, static_cast<double>(p), n);
            kernels::avx2::scale_mod(y2.data(), a, static_cast<double>(p), n);
            CHECK(y1 == y2);
            double s1 = kernels::scalar::dot_mod(x.data(), y.data(), static_cast<double>(p), n);
            double s2 = kernels::avx2::dot_mod(x.data(), y.data(), static_cast<double>(p), n);
            CHECK(s1 == s2);
        }
    }
}

TEST_CASE("characteristic polynomial is identical under either kernel path") {
    IntMatrix a = testsupport::reference_matrix("ex1_product_top");
    auto saved = kernels::active_isa();
    kernels::set_isa(kernels::Isa::Scalar);
    auto c1 = characteristic_polynomial(a);
    kernels::set_isa(kernels::Isa::Avx2);
    auto c2 = characteristic_polynomial(a);
    kernels::set_isa(saved);
    CHECK(c1 == c2);
}

TEST_CASE("smith_normal_form examples") {
    auto s = smith_normal_form(IntMatrix{{2, 4}, {6, 8}});
    CHECK(s.invariant_factors() == std::vector<Int>{2, 4});
    check_snf(IntMatrix{{2, 4}, {6, 8}});
    auto id = smith_normal_form(IntMatrix::identity(4));
    CHECK(id.D == IntMatrix::identity(4));
    auto z = smith_normal_form(IntMatrix(3, 2));
    CHECK(z.rank == 0);
    CHECK(z.D.is_zero());
    check_snf(IntMatrix(3, 2));
    check_snf(IntMatrix(0, 3));
}

TEST_CASE("smith_normal_form invariants on sampled 3x3 matrices") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 400; ++trial) check_snf(random_matrix(rng, 3, 3, -3, 3));
    for (int trial = 0; trial < 60; ++trial) check_snf(random_matrix(rng, 4 + trial % 3, 6 - trial % 4, -5, 5));
    // Deterministic output for fixed input.
    IntMatrix a = random_matrix(rng, 5, 5, -4, 4);
    auto s1 = smith_normal_form(a), s2 = smith_normal_form(a);
    CHECK(s1.U == s2.U);
    CHECK(s1.V == s2.V);
}

TEST_CASE("integer_kernel examples and saturation") {
    auto k = integer_kernel(IntMatrix{{1, 1}});
    REQUIRE(k.size() == 1);
    CHECK(make_primitive(k[0]) == IntVector{1, -1});
    CHECK(integer_kernel(IntMatrix{{2, 1}, {1, 1}}).empty());
    auto k2 = integer_kernel(IntMatrix{{2, -2}});
    REQUIRE(k2.size() == 1);
    CHECK(make_primitive(k2[0]) == IntVector{1, 1});

    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        IntMatrix a = random_matrix(rng, 3, 6, -3, 3);
        auto basis = integer_kernel(a);
        CHECK(basis.size() == 6 - rank(a));
        for (const auto& v : basis) CHECK(is_zero(a * v));
        if (basis.empty()) continue;
        auto s = smith_normal_form(column_matrix(basis, 6));
        for (const auto& d : s.invariant_factors()) CHECK(d.is_one());
    }
    // The multimodular path for larger inputs gives a saturated basis too.
    IntMatrix big = random_matrix(rng, 70, 80, -2, 2);
    for (size_t j = 0; j < 80; ++j) big(5, j) = big(3, j) * Int(2);
    auto kb = integer_kernel(big);
    CHECK(kb.size() == 80 - rank(big));
    for (const auto& v : kb) CHECK(is_zero(big * v));
    auto sb = smith_normal_form(column_matrix(kb, 80), SnfOptions{false, false, false, false});
    for (const auto& d : sb.invariant_factors()) CHECK(d.is_one());
}

TEST_CASE("solve_linear_integer") {
    auto x = solve_linear_integer(IntMatrix{{2}}, IntVector{4});
    REQUIRE(x);
    CHECK(*x == IntVector{2});
    CHECK_FALSE(solve_linear_integer(IntMatrix{{2}}, IntVector{3}));
    IntMatrix a{{1, 1}, {1, 1}};
    auto y = solve_linear_integer(a, IntVector{2, 2});
    REQUIRE(y);
    CHECK(a * *y == IntVector{2, 2});
    CHECK_FALSE(solve_linear_integer(a, IntVector{2, 3}));
}

TEST_CASE("characteristic_polynomial examples") {
    CHECK(characteristic_polynomial(IntMatrix{{4, 1}, {1, 4}}) == IntPoly{15, -8, 1});
    CHECK(characteristic_polynomial(IntMatrix{{80, 1}, {81, 0}}) == IntPoly{-81, -80, 1});
    CHECK(characteristic_polynomial(IntMatrix::identity(5)) == poly_from_roots({{1, 5}}));
    CHECK(characteristic_polynomial(IntMatrix(0, 0)) == IntPoly{1});
}

TEST_CASE("characteristic_polynomial is invariant under unimodular conjugation") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        size_t n = 2 + trial % 6;
        IntMatrix a = random_matrix(rng, n, n, -4, 4);
        IntMatrix p = random_unimodular(rng, n);
        IntMatrix conj = p * a * inverse_unimodular(p);
        CHECK(characteristic_polynomial(conj) == characteristic_polynomial(a));
    }
}

TEST_CASE("reference matrices: frozen characteristic polynomials") {
    using testsupport::reference_matrix;
    auto expect = [](const char* name, std::vector<std::pair<long, unsigned>> roots) {
        CAPTURE(name);
        CHECK(characteristic_polynomial(reference_matrix(name)) == poly_from_roots(roots));
    };
    expect("ex1_product_top", {{0, 30}, {25, 1}, {15, 1}, {5, 1}, {3, 1}, {-3, 1}, {-5, 1}});
    expect("ex2_product_top", {{0, 10}, {16, 1}, {8, 1}, {4, 2}, {2, 2}});
    expect("ex3_top", {{0, 16}, {25, 1}, {15, 1}, {1, 1}, {-2, 1}, {-3, 1}, {-5, 2}});
    expect("ex4_top", {{0, 14}, {16, 1}, {8, 1}, {4, 2}, {2, 1}, {1, 2}});
    expect("printed_a5_square", {{9, 6}, {3, 10}, {1, 8}});
}

TEST_CASE("rational_eigenspace examples") {
    IntMatrix ex2{{3, 1}, {1, 3}};
    auto e4 = rational_eigenspace(ex2, Int(4));
    REQUIRE(e4.size() == 1);
    CHECK(e4[0] == IntVector{1, 1});
    auto e2 = rational_eigenspace(ex2, Int(2));
    REQUIRE(e2.size() == 1);
    CHECK(e2[0] == IntVector{1, -1});
    CHECK(rational_eigenspace(ex2, Int(7)).empty());
}

TEST_CASE("perron_frobenius_vector examples") {
    auto sum = [](const IntVector& v) {
        Int s = 0;
        for (const auto& x : v) s += x;
        return s;
    };
    IntMatrix a2 = testsupport::reference_matrix("ex2_product_top");
    IntVector v2 = perron_frobenius_vector(a2, Int(16));
    CHECK(a2 * v2 == IntVector(scalar_multiple(column_matrix({v2}, v2.size()), Int(16)).col(0)));
    CHECK(sum(v2) == Int(24));
    IntMatrix a1 = testsupport::reference_matrix("ex1_product_top");
    CHECK(sum(perron_frobenius_vector(a1, Int(25))) == Int(750));
    CHECK(perron_frobenius_vector(IntMatrix{{16}}, Int(16)) == IntVector{1});
    CHECK_THROWS_AS(perron_frobenius_vector(IntMatrix::identity(2), Int(1)), NotPrimitiveSpectrum);
}

TEST_CASE("polynomial factorization") {
    // (t-3)^2 (t+5) (t^2+1) (t^2-2) t^3
    IntPoly f = poly_from_roots({{3, 2}, {-5, 1}, {0, 3}});
    f = poly_mul(f, {1, 0, 1});
    f = poly_mul(f, {-2, 0, 1});
    auto fac = factor_polynomial(f);
    CHECK(fac.complete);
    REQUIRE(fac.factors.size() == 5);
    IntPoly back{Int(1)};
    for (const auto& pf : fac.factors)
        for (unsigned i = 0; i < pf.multiplicity; ++i) back = poly_mul(back, pf.poly);
    CHECK(back == f);
    auto roots = integer_roots(f);
    REQUIRE(roots.size() == 3);
    CHECK(roots[0] == std::make_pair(Int(3), 2u));
    CHECK(roots[1] == std::make_pair(Int(0), 3u));
    CHECK(roots[2] == std::make_pair(Int(-5), 1u));

    // Swinnerton-Dyer style: irreducible but splits into quadratics mod every prime.
    IntPoly sd{1, 0, -10, 0, 1};  // t^4 - 10 t^2 + 1
    auto fsd = factor_polynomial(sd);
    REQUIRE(fsd.factors.size() == 1);
    CHECK(fsd.factors[0].poly == sd);

    // Non-monic with content.
    IntPoly g = poly_mul({-1, 2}, {3, 3});  // 6t^2 + 3t - 3 = 3 (2t - 1)(t + 1)
    auto fg = factor_polynomial(g);
    CHECK(fg.unit == Int(3));
    REQUIRE(fg.factors.size() == 2);
    CHECK(fg.factors[0].poly == IntPoly{1, 1});
    CHECK(fg.factors[1].poly == IntPoly{-1, 2});

    // Product of two quadratics with no rational roots.
    IntPoly h = poly_mul({3, 1, 1}, {5, -1, 1});
    auto fh = factor_polynomial(h);
    REQUIRE(fh.factors.size() == 2);
    CHECK(poly_to_string(IntPoly{-81, -80, 1}) == "t^2 - 80*t - 81");
}
