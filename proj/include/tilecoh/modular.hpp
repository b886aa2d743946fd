#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "tilecoh/matrix.hpp"

// Linear algebra over Z/p for word-size primes p < 2^26, plus the Chinese
// remainder and rational reconstruction helpers used to lift results to Z or Q.
namespace tilecoh::modular {

// The first `count` primes below 2^26 in decreasing order (deterministic).
const std::vector<uint64_t>& primes(size_t count);

uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t p);
uint64_t pow_mod(uint64_t a, uint64_t e, uint64_t p);
uint64_t inv_mod(uint64_t a, uint64_t p);

// Dense row-major matrix of residues stored as doubles (for the SIMD kernels).
struct ModMatrix {
    size_t rows = 0, cols = 0;
    uint64_t p = 0;
    std::vector<double> a;

    ModMatrix() = default;
    ModMatrix(size_t r, size_t c, uint64_t prime) : rows(r), cols(c), p(prime), a(r * c, 0.0) {}
    double& operator()(size_t i, size_t j) { return a[i * cols + j]; }
    double operator()(size_t i, size_t j) const { return a[i * cols + j]; }
    double* row(size_t i) { return a.data() + i * cols; }
    const double* row(size_t i) const { return a.data() + i * cols; }
};

ModMatrix reduce(const IntMatrix& m, uint64_t p);

// In-place reduced row echelon form; returns pivot columns in order.
std::vector<size_t> rref(ModMatrix& m);

// Characteristic polynomial det(tI - A) mod p, coefficients low to high.
std::vector<uint64_t> charpoly(ModMatrix m);

// Incremental CRT accumulator over a vector of unknown integers.
class CrtVector {
public:
    explicit CrtVector(size_t n) : x_(n), modulus_(1) {}
    void add(const std::vector<uint64_t>& residues, uint64_t p);
    const mpz_class& modulus() const { return modulus_; }
    size_t size() const { return x_.size(); }
    // Residue in [0, M).
    const mpz_class& raw(size_t i) const { return x_[i]; }
    // Symmetric residue in (-M/2, M/2].
    Int symmetric(size_t i) const;

private:
    std::vector<mpz_class> x_;
    mpz_class modulus_;
};

// Finds n/d with |n|, d <= sqrt(M/2) and n = a d mod M; false if none.
bool rational_reconstruct(const mpz_class& a, const mpz_class& m, mpz_class& num, mpz_class& den);

}  // namespace tilecoh::modular
