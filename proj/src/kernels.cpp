#include "kiri/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>

#include "kiri/errors.hpp"

namespace kiri::kernels {

namespace scalar {

double logsumexp(const double* x, std::size_t n) {
  double m = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, x[i]);
  if (!(m > -std::numeric_limits<double>::infinity())) return m;
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::exp(x[i] - m);
  return m + std::log(s);
}

double logsumexp_add(const double* a, const double* b, std::size_t n) {
  double m = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, a[i] + b[i]);
  if (!(m > -std::numeric_limits<double>::infinity())) return m;
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::exp(a[i] + b[i] - m);
  return m + std::log(s);
}

MaxIndex max_add(const double* a, const double* b, std::size_t n) {
  MaxIndex best{-std::numeric_limits<double>::infinity(), 0};
  for (std::size_t i = 0; i < n; ++i) {
    const double v = a[i] + b[i];
    if (v > best.value) {
      best.value = v;
      best.index = i;
    }
  }
  return best;
}

void exp_add_shift(double* dst, const double* a, const double* b, double shift,
                   std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = std::exp(a[i] + b[i] + shift);
}

void axpy(double* y, double a, const double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

void scale(double* x, double a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

double l1_norm(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::fabs(x[i]);
  return s;
}

double sq_norm(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * x[i];
  return s;
}

}  // namespace scalar

namespace {

struct Ops {
  double (*logsumexp)(const double*, std::size_t);
  double (*logsumexp_add)(const double*, const double*, std::size_t);
  MaxIndex (*max_add)(const double*, const double*, std::size_t);
  void (*exp_add_shift)(double*, const double*, const double*, double,
                        std::size_t);
  void (*axpy)(double*, double, const double*, std::size_t);
  double (*dot)(const double*, const double*, std::size_t);
  void (*scale)(double*, double, std::size_t);
  double (*l1_norm)(const double*, std::size_t);
  double (*sq_norm)(const double*, std::size_t);
  Isa isa;
};

constexpr Ops scalar_ops() {
  return Ops{scalar::logsumexp, scalar::logsumexp_add, scalar::max_add,
             scalar::exp_add_shift, scalar::axpy, scalar::dot, scalar::scale,
             scalar::l1_norm, scalar::sq_norm, Isa::Scalar};
}

#if KIRI_HAVE_AVX2_KERNELS
constexpr Ops avx2_ops() {
  return Ops{avx2::logsumexp, avx2::logsumexp_add, avx2::max_add,
             avx2::exp_add_shift, avx2::axpy, avx2::dot, avx2::scale,
             avx2::l1_norm, avx2::sq_norm, Isa::Avx2};
}
#endif

Ops pick_ops() {
  const char* env = std::getenv("KIRI_SIMD");
  if (env != nullptr) {
    if (std::strcmp(env, "scalar") == 0) return scalar_ops();
#if KIRI_HAVE_AVX2_KERNELS
    if (std::strcmp(env, "avx2") == 0) {
      if (!avx2_available())
        throw UsageError("KIRI_SIMD=avx2 but this CPU lacks AVX2/FMA");
      return avx2_ops();
    }
#endif
    if (std::strcmp(env, "auto") != 0)
      throw UsageError(std::string("unknown KIRI_SIMD value: ") + env);
  }
#if KIRI_HAVE_AVX2_KERNELS
  if (avx2_available()) return avx2_ops();
#endif
  return scalar_ops();
}

Ops g_ops = pick_ops();

}  // namespace

bool avx2_available() {
#if KIRI_HAVE_AVX2_KERNELS
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa active_isa() { return g_ops.isa; }

void force_isa(Isa isa) {
  if (isa == Isa::Scalar) {
    g_ops = scalar_ops();
    return;
  }
#if KIRI_HAVE_AVX2_KERNELS
  if (avx2_available()) {
    g_ops = avx2_ops();
    return;
  }
#endif
  throw UsageError("AVX2 kernels unavailable on this CPU");
}

double logsumexp(const double* x, std::size_t n) { return g_ops.logsumexp(x, n); }

double logsumexp_add(const double* a, const double* b, std::size_t n) {
  return g_ops.logsumexp_add(a, b, n);
}

MaxIndex max_add(const double* a, const double* b, std::size_t n) {
  return g_ops.max_add(a, b, n);
}

void exp_add_shift(double* dst, const double* a, const double* b, double shift,
                   std::size_t n) {
  g_ops.exp_add_shift(dst, a, b, shift, n);
}

void axpy(double* y, double a, const double* x, std::size_t n) {
  g_ops.axpy(y, a, x, n);
}

double dot(const double* a, const double* b, std::size_t n) {
  return g_ops.dot(a, b, n);
}

void scale(double* x, double a, std::size_t n) { g_ops.scale(x, a, n); }

double l1_norm(const double* x, std::size_t n) { return g_ops.l1_norm(x, n); }

double sq_norm(const double* x, std::size_t n) { return g_ops.sq_norm(x, n); }

}  // namespace kiri::kernels
