#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "hotpotato/simd/kernels.hpp"

using namespace hotpotato::simd;

namespace {

std::vector<Backend> supported() {
  std::vector<Backend> out;
  for (Backend b : {Backend::scalar, Backend::avx2, Backend::neon})
    if (backend_supported(b)) out.push_back(b);
  return out;
}

std::vector<double> random_vector(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<double> x(n);
  for (double& e : x) e = d(rng);
  return x;
}

}  // namespace

TEST(Simd, ScalarAlwaysAvailable) {
  EXPECT_TRUE(backend_supported(Backend::scalar));
  EXPECT_EQ(kernels_for(Backend::scalar).backend, Backend::scalar);
  EXPECT_TRUE(backend_supported(active_kernels().backend));
}

TEST(Simd, UnsupportedBackendThrows) {
  for (Backend b : {Backend::avx2, Backend::neon})
    if (!backend_supported(b)) EXPECT_THROW(kernels_for(b), std::invalid_argument);
}

TEST(Simd, BackendsMatchScalarReference) {
  const auto& ref = kernels_for(Backend::scalar);
  std::mt19937_64 rng(7);
  for (Backend b : supported()) {
    const auto& k = kernels_for(b);
    SCOPED_TRACE(std::string(backend_name(b)));
    // Cover every tail length around the vector widths.
    for (std::size_t n = 0; n < 70; ++n) {
      const auto x = random_vector(n, rng);
      const auto y = random_vector(n, rng);
      double mag = 0.0;
      for (std::size_t i = 0; i < n; ++i) mag += std::abs(x[i] * y[i]);
      EXPECT_NEAR(k.dot(x.data(), y.data(), n), ref.dot(x.data(), y.data(), n), 4e-16 * (mag + 1.0));

      auto y1 = y, y2 = y;
      k.axpy(0.37, x.data(), y1.data(), n);
      ref.axpy(0.37, x.data(), y2.data(), n);
      for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(y1[i], y2[i], 1e-15);

      k.scale(-1.25, y1.data(), n);
      ref.scale(-1.25, y2.data(), n);
      for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(y1[i], y2[i], 1e-15);
    }
  }
}

TEST(Simd, LargeDotAgainstLongDouble) {
  std::mt19937_64 rng(11);
  const std::size_t n = 100003;
  const auto x = random_vector(n, rng);
  const auto y = random_vector(n, rng);
  long double exact = 0.0L;
  for (std::size_t i = 0; i < n; ++i) exact += static_cast<long double>(x[i]) * y[i];
  for (Backend b : supported())
    EXPECT_NEAR(kernels_for(b).dot(x.data(), y.data(), n), static_cast<double>(exact), 1e-10);
}

TEST(Simd, SpanWrappers) {
  std::vector<double> x{1, 2, 3}, y{4, 5, 6};
  EXPECT_DOUBLE_EQ(dot(x, y), 32.0);
  axpy(2.0, x, y);
  EXPECT_EQ(y, (std::vector<double>{6, 9, 12}));
  scale(0.5, y);
  EXPECT_EQ(y, (std::vector<double>{3, 4.5, 6}));
}
