#include "hotpotato/simd/kernels.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace hotpotato::simd {

namespace {

const KernelTable kScalar{Backend::scalar, detail::dot_scalar, detail::axpy_scalar,
                          detail::scale_scalar};

#if defined(__x86_64__) || defined(_M_X64)
const KernelTable kAvx2{Backend::avx2, detail::dot_avx2, detail::axpy_avx2, detail::scale_avx2};
#endif

#if defined(__aarch64__)
const KernelTable kNeon{Backend::neon, detail::dot_neon, detail::axpy_neon, detail::scale_neon};
#endif

const KernelTable& select_kernels() {
  const char* forced = std::getenv("HOTPOTATO_SIMD");
  if (forced != nullptr) {
    const std::string name(forced);
    for (Backend b : {Backend::scalar, Backend::avx2, Backend::neon}) {
      if (name == backend_name(b) && backend_supported(b)) return kernels_for(b);
    }
    return kScalar;
  }
  if (backend_supported(Backend::avx2)) return kernels_for(Backend::avx2);
  if (backend_supported(Backend::neon)) return kernels_for(Backend::neon);
  return kScalar;
}

}  // namespace

std::string_view backend_name(Backend backend) {
  switch (backend) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
    case Backend::neon: return "neon";
  }
  return "unknown";
}

bool backend_supported(Backend backend) {
  switch (backend) {
    case Backend::scalar: return true;
    case Backend::avx2:
#if (defined(__x86_64__) || defined(_M_X64)) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Backend::neon:
#if defined(__aarch64__)
      return true;  // mandatory on AArch64
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& kernels_for(Backend backend) {
  if (!backend_supported(backend)) {
    throw std::invalid_argument("SIMD backend not supported on this CPU: " +
                                std::string(backend_name(backend)));
  }
  switch (backend) {
#if defined(__x86_64__) || defined(_M_X64)
    case Backend::avx2: return kAvx2;
#endif
#if defined(__aarch64__)
    case Backend::neon: return kNeon;
#endif
    default: return kScalar;
  }
}

const KernelTable& active_kernels() {
  static const KernelTable& table = select_kernels();
  return table;
}

}  // namespace hotpotato::simd
