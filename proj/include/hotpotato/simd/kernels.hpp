#pragma once

// Vector kernels behind the dense linear algebra. Every kernel has a scalar
// reference implementation; vectorized variants are picked once at runtime
// from what the CPU reports. Set HOTPOTATO_SIMD=scalar|avx2|neon to force a
// backend (unsupported requests fall back to scalar).

#include <cstddef>
#include <span>
#include <string_view>

namespace hotpotato::simd {

enum class Backend { scalar, avx2, neon };

struct KernelTable {
  Backend backend;
  /// sum_i x[i] * y[i]
  double (*dot)(const double* x, const double* y, std::size_t n);
  /// y[i] += alpha * x[i]
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  /// y[i] *= alpha
  void (*scale)(double alpha, double* y, std::size_t n);
};

std::string_view backend_name(Backend backend);

/// True when the running CPU can execute the backend's kernels.
bool backend_supported(Backend backend);

/// Kernel table for a specific backend. Throws std::invalid_argument if the
/// backend is not supported on this machine.
const KernelTable& kernels_for(Backend backend);

/// Table selected at first use; stable for the lifetime of the process.
const KernelTable& active_kernels();

inline double dot(std::span<const double> x, std::span<const double> y) {
  return active_kernels().dot(x.data(), y.data(), x.size());
}

inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  active_kernels().axpy(alpha, x.data(), y.data(), x.size());
}

inline void scale(double alpha, std::span<double> y) {
  active_kernels().scale(alpha, y.data(), y.size());
}

namespace detail {
// Backend entry points; defined in per-ISA translation units.
double dot_scalar(const double* x, const double* y, std::size_t n);
void axpy_scalar(double alpha, const double* x, double* y, std::size_t n);
void scale_scalar(double alpha, double* y, std::size_t n);

#if defined(__x86_64__) || defined(_M_X64)
double dot_avx2(const double* x, const double* y, std::size_t n);
void axpy_avx2(double alpha, const double* x, double* y, std::size_t n);
void scale_avx2(double alpha, double* y, std::size_t n);
#endif

#if defined(__aarch64__)
double dot_neon(const double* x, const double* y, std::size_t n);
void axpy_neon(double alpha, const double* x, double* y, std::size_t n);
void scale_neon(double alpha, double* y, std::size_t n);
#endif
}  // namespace detail

}  // namespace hotpotato::simd
