#include "epfamily/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>

namespace epfamily::kernels {

namespace detail {

void exp_v_scalar(const double* x, double* y, std::size_t n) noexcept {
  for (std::size_t i = 0; i < n; ++i) y[i] = std::exp(x[i]);
}

void expm1_v_scalar(const double* x, double* y, std::size_t n) noexcept {
  for (std::size_t i = 0; i < n; ++i) y[i] = std::expm1(x[i]);
}

void log_v_scalar(const double* x, double* y, std::size_t n) noexcept {
  for (std::size_t i = 0; i < n; ++i) y[i] = std::log(x[i]);
}

} // namespace detail

namespace {

Backend resolve_backend() noexcept {
  const char* env = std::getenv("EPFAMILY_SIMD");
  bool want_scalar = env && std::strcmp(env, "scalar") == 0;
  bool want_avx2 = env && std::strcmp(env, "avx2") == 0;
  if (want_scalar) return Backend::scalar;
#if EPFAMILY_BUILD_AVX2
  bool cpu_ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  if (cpu_ok && (want_avx2 || env == nullptr || std::strcmp(env, "auto") == 0))
    return Backend::avx2;
#else
  (void)want_avx2;
#endif
  return Backend::scalar;
}

} // namespace

Backend active_backend() noexcept {
  static const Backend b = resolve_backend();
  return b;
}

const char* backend_name() noexcept {
  return active_backend() == Backend::avx2 ? "avx2" : "scalar";
}

void exp_v(const double* x, double* y, std::size_t n) noexcept {
#if EPFAMILY_BUILD_AVX2
  if (active_backend() == Backend::avx2) {
    detail::exp_v_avx2(x, y, n);
    return;
  }
#endif
  detail::exp_v_scalar(x, y, n);
}

void expm1_v(const double* x, double* y, std::size_t n) noexcept {
#if EPFAMILY_BUILD_AVX2
  if (active_backend() == Backend::avx2) {
    detail::expm1_v_avx2(x, y, n);
    return;
  }
#endif
  detail::expm1_v_scalar(x, y, n);
}

void log_v(const double* x, double* y, std::size_t n) noexcept {
#if EPFAMILY_BUILD_AVX2
  if (active_backend() == Backend::avx2) {
    detail::log_v_avx2(x, y, n);
    return;
  }
#endif
  detail::log_v_scalar(x, y, n);
}

} // namespace epfamily::kernels
