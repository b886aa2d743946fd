#pragma once

#include <cstddef>
#include <string>

// Data-parallel inner loops of the modular linear algebra. Residues are held
// in doubles with 0 <= x < p and p < 2^26, so products are exact in a double
// mantissa. Every kernel has a scalar reference version and an AVX2+FMA
// version; the dispatcher picks one at runtime.
namespace tilecoh::kernels {

constexpr double kMaxModulus = 67108864.0;  // 2^26

enum class Isa { Scalar, Avx2 };

// Currently selected implementation. Defaults to the best supported ISA
// unless the environment variable TILECOH_FORCE_SCALAR is set.
Isa active_isa();
// Override the selection (tests use this to compare the two paths).
// Requesting Avx2 on a CPU without it falls back to Scalar.
void set_isa(Isa isa);
bool avx2_supported();
std::string isa_name(Isa isa);

// y[i] = (y[i] + a * x[i]) mod p
void axpy_mod(double* y, const double* x, double a, double p, size_t n);
// y[i] = (a * y[i]) mod p
void scale_mod(double* y, double a, double p, size_t n);
// sum_i x[i] * y[i] mod p
double dot_mod(const double* x, const double* y, double p, size_t n);

namespace scalar {
void axpy_mod(double* y, const double* x, double a, double p, size_t n);
void scale_mod(double* y, double a, double p, size_t n);
double dot_mod(const double* x, const double* y, double p, size_t n);
}  // namespace scalar

namespace avx2 {
void axpy_mod(double* y, const double* x, double a, double p, size_t n);
void scale_mod(double* y, double a, double p, size_t n);
double dot_mod(const double* x, const double* y, double p, size_t n);
}  // namespace avx2

}  // namespace tilecoh::kernels
