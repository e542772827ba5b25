#pragma once

#include <cstddef>

// Arithmetic kernels for the CRF inner loops (log-space recursions, score
// accumulation, optimizer vector ops). Every kernel has a scalar reference
// implementation; on x86-64 an AVX2+FMA variant is selected at runtime when
// the CPU supports it. The dispatched entry points at namespace scope are
// what the rest of the code calls.
//
// Log-space conventions: -inf is a legal input meaning "impossible"; kernels
// must not turn it into NaN. max_add breaks ties toward the lowest index,
// and the SIMD variant must agree with the scalar one bit-for-bit on the
// index (the Viterbi tie rule depends on it).

namespace kiri::kernels {

struct MaxIndex {
  double value;
  std::size_t index;
};

double logsumexp(const double* x, std::size_t n);
// log(sum_i exp(a[i] + b[i]))
double logsumexp_add(const double* a, const double* b, std::size_t n);
// max and lowest argmax of a[i] + b[i]
MaxIndex max_add(const double* a, const double* b, std::size_t n);
// dst[i] = exp(a[i] + b[i] + shift)
void exp_add_shift(double* dst, const double* a, const double* b, double shift,
                   std::size_t n);
// y[i] += a * x[i]
void axpy(double* y, double a, const double* x, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
void scale(double* x, double a, std::size_t n);
double l1_norm(const double* x, std::size_t n);
double sq_norm(const double* x, std::size_t n);

enum class Isa { Scalar, Avx2 };

// The ISA picked at first use: AVX2 when the CPU has AVX2+FMA, else scalar.
// KIRI_SIMD=scalar|avx2 in the environment overrides the automatic choice.
Isa active_isa();
bool avx2_available();
// Test hook; throws UsageError if the requested ISA is not available.
void force_isa(Isa isa);

namespace scalar {
double logsumexp(const double* x, std::size_t n);
double logsumexp_add(const double* a, const double* b, std::size_t n);
MaxIndex max_add(const double* a, const double* b, std::size_t n);
void exp_add_shift(double* dst, const double* a, const double* b, double shift,
                   std::size_t n);
void axpy(double* y, double a, const double* x, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
void scale(double* x, double a, std::size_t n);
double l1_norm(const double* x, std::size_t n);
double sq_norm(const double* x, std::size_t n);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define KIRI_HAVE_AVX2_KERNELS 1
namespace avx2 {
double logsumexp(const double* x, std::size_t n);
double logsumexp_add(const double* a, const double* b, std::size_t n);
MaxIndex max_add(const double* a, const double* b, std::size_t n);
void exp_add_shift(double* dst, const double* a, const double* b, double shift,
                   std::size_t n);
void axpy(double* y, double a, const double* x, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
void scale(double* x, double a, std::size_t n);
double l1_norm(const double* x, std::size_t n);
double sq_norm(const double* x, std::size_t n);
}  // namespace avx2
#endif

}  // namespace kiri::kernels
