#include "tilecoh/kernels.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define TILECOH_X86 1
#endif

namespace tilecoh::kernels {

namespace {

inline double reduce(double t, double p, double pinv) {
    double q = std::floor(t * pinv);
    double r = t - q * p;
    if (r < 0) r += p;
    if (r >= p) r -= p;
    return r;
}

}  // namespace

namespace scalar {

void axpy_mod(double* y, const double* x, double a, double p, size_t n) {
    const double pinv = 1.0 / p;
    for (size_t i = 0; i < n; ++i) y[i] = reduce(std::fma(a, x[i], y[i]), p, pinv);
}

void scale_mod(double* y, double a, double p, size_t n) {
    const double pinv = 1.0 / p;
    for (size_t i = 0; i < n; ++i) y[i] = reduce(a * y[i], p, pinv);
}

double dot_mod(const double* x, const double* y, double p, size_t n) {
    const double pinv = 1.0 / p;
    double acc = 0;
    for (size_t i = 0; i < n; ++i) acc = reduce(std::fma(x[i], y[i], acc), p, pinv);
    return acc;
}

}  // namespace scalar

#ifdef TILECOH_X86

namespace avx2 {

namespace {

__attribute__((target("avx2,fma"))) inline __m256d reduce4(__m256d t, __m256d p, __m256d pinv) {
    __m256d q = _mm256_floor_pd(_mm256_mul_pd(t, pinv));
    __m256d r = _mm256_fnmadd_pd(q, p, t);
    __m256d zero = _mm256_setzero_pd();
    r = _mm256_add_pd(r, _mm256_and_pd(_mm256_cmp_pd(r, zero, _CMP_LT_OQ), p));
    r = _mm256_sub_pd(r, _mm256_and_pd(_mm256_cmp_pd(r, p, _CMP_GE_OQ), p));
    return r;
}

}  // namespace

__attribute__((target("avx2,fma"))) void axpy_mod(double* y, const double* x, double a, double p, size_t n) {
    const __m256d vp = _mm256_set1_pd(p), vpinv = _mm256_set1_pd(1.0 / p), va = _mm256_set1_pd(a);
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d t = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
        _mm256_storeu_pd(y + i, reduce4(t, vp, vpinv));
    }
    if (i < n) scalar::axpy_mod(y + i, x + i, a, p, n - i);
}

__attribute__((target("avx2,fma"))) void scale_mod(double* y, double a, double p, size_t n) {
    const __m256d vp = _mm256_set1_pd(p), vpinv = _mm256_set1_pd(1.0 / p), va = _mm256_set1_pd(a);
    size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(y + i, reduce4(_mm256_mul_pd(va, _mm256_loadu_pd(y + i)), vp, vpinv));
    if (i < n) scalar::scale_mod(y + i, a, p, n - i);
}

__attribute__((target("avx2,fma"))) double dot_mod(const double* x, const double* y, double p, size_t n) {
    const __m256d vp = _mm256_set1_pd(p), vpinv = _mm256_set1_pd(1.0 / p);
    __m256d acc = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = reduce4(_mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc), vp, vpinv);
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double tail = scalar::dot_mod(x + i, y + i, p, n - i);
    const double pinv = 1.0 / p;
    double s = reduce(lanes[0] + lanes[1], p, pinv);
    s = reduce(s + lanes[2], p, pinv);
    s = reduce(s + lanes[3], p, pinv);
    return reduce(s + tail, p, pinv);
}

}  // namespace avx2

bool avx2_supported() {
    static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    return ok;
}

#else

namespace avx2 {
void axpy_mod(double* y, const double* x, double a, double p, size_t n) { scalar::axpy_mod(y, x, a, p, n); }
void scale_mod(double* y, double a, double p, size_t n) { scalar::scale_mod(y, a, p, n); }
double dot_mod(const double* x, const double* y, double p, size_t n) { return scalar::dot_mod(x, y, p, n); }
}  // namespace avx2

bool avx2_supported() { return false; }

#endif

namespace {

Isa initial_isa() {
    if (std::getenv("TILECOH_FORCE_SCALAR")) return Isa::Scalar;
    return avx2_supported() ? Isa::Avx2 : Isa::Scalar;
}

std::atomic<Isa>& isa_slot() {
    static std::atomic<Isa> slot{initial_isa()};
    return slot;
}

}  // namespace

Isa active_isa() { return isa_slot().load(std::memory_order_relaxed); }

void set_isa(Isa isa) {
    if (isa == Isa::Avx2 && !avx2_supported()) isa = Isa::Scalar;
    isa_slot().store(isa, std::memory_order_relaxed);
}

std::string isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

void axpy_mod(double* y, const double* x, double a, double p, size_t n) {
    if (active_isa() == Isa::Avx2)
        avx2::axpy_mod(y, x, a, p, n);
    else
        scalar::axpy_mod(y, x, a, p, n);
}

void scale_mod(double* y, double a, double p, size_t n) {
    if (active_isa() == Isa::Avx2)
        avx2::scale_mod(y, a, p, n);
    else
        scalar::scale_mod(y, a, p, n);
}

double dot_mod(const double* x, const double* y, double p, size_t n) {
    return active_isa() == Isa::Avx2 ? avx2::dot_mod(x, y, p, n) : scalar::dot_mod(x, y, p, n);
}

}  // namespace tilecoh::kernels
