#pragma once

#include <cstddef>

namespace epfamily::kernels {

/// Vectorized elementwise transcendentals used by the batch likelihood paths.
///
/// Every function has a scalar reference implementation and, on x86-64 CPUs
/// with AVX2+FMA, a vectorized variant. The active backend is resolved once,
/// at first use: the environment variable EPFAMILY_SIMD ("scalar", "avx2",
/// "auto"; default auto) overrides the CPU probe. Requesting "avx2" on a CPU
/// without it falls back to scalar.
///
/// The variants are equivalence-tested against each other and against libm;
/// agreement is within a few ulp, not bitwise.

enum class Backend { scalar, avx2 };

/// Backend selected for this process.
Backend active_backend() noexcept;

/// Human-readable name of the active backend ("scalar" or "avx2").
const char* backend_name() noexcept;

/// y[i] = exp(x[i])
void exp_v(const double* x, double* y, std::size_t n) noexcept;

/// y[i] = expm1(x[i])
void expm1_v(const double* x, double* y, std::size_t n) noexcept;

/// y[i] = log(x[i]); x[i] must be > 0
void log_v(const double* x, double* y, std::size_t n) noexcept;

namespace detail {
void exp_v_scalar(const double* x, double* y, std::size_t n) noexcept;
void expm1_v_scalar(const double* x, double* y, std::size_t n) noexcept;
void log_v_scalar(const double* x, double* y, std::size_t n) noexcept;
#if EPFAMILY_BUILD_AVX2
void exp_v_avx2(const double* x, double* y, std::size_t n) noexcept;
void expm1_v_avx2(const double* x, double* y, std::size_t n) noexcept;
void log_v_avx2(const double* x, double* y, std::size_t n) noexcept;
#endif
} // namespace detail

} // namespace epfamily::kernels
