#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "bicolor/kernels/kernels.hpp"

namespace k = bicolor::kernels;

namespace {

std::vector<double> random_vector(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

struct RandomCsr {
  std::size_t rows = 0;
  std::vector<std::size_t> row_ptr{0};
  std::vector<std::int32_t> cols;
  std::vector<double> values;

  k::CsrView view() const { return {rows, row_ptr, cols, values}; }
};

RandomCsr random_csr(std::size_t n, std::mt19937_64& rng) {
  RandomCsr m;
  m.rows = n;
  std::uniform_int_distribution<int> len(0, 11);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (std::size_t r = 0; r < n; ++r) {
    const int count = len(rng);
    std::vector<std::int32_t> c;
    for (int t = 0; t < count; ++t) c.push_back(static_cast<std::int32_t>(rng() % n));
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    for (auto col : c) {
      m.cols.push_back(col);
      m.values.push_back(u(rng));
    }
    m.row_ptr.push_back(m.cols.size());
  }
  return m;
}

}  // namespace

TEST(Kernels, ScalarMatchesNaiveLoops) {
  std::mt19937_64 rng(7);
  for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 16u, 33u, 1000u}) {
    const auto x = random_vector(n, rng), y = random_vector(n, rng);
    long double ref = 0;
    for (std::size_t i = 0; i < n; ++i) ref += static_cast<long double>(x[i]) * y[i];
    EXPECT_NEAR(k::scalar::dot(x, y), static_cast<double>(ref), 1e-12);

    auto z = y;
    k::scalar::axpy(0.5, x, z);
    for (std::size_t i = 0; i < n; ++i) EXPECT_DOUBLE_EQ(z[i], y[i] + 0.5 * x[i]);
  }
}

TEST(Kernels, CsrScalarMatchesDenseProduct) {
  std::mt19937_64 rng(11);
  const auto m = random_csr(257, rng);
  const auto x = random_vector(257, rng);
  std::vector<double> y(257);
  k::scalar::csr_matvec_rows(m.view(), x, y, 0, m.rows);
  for (std::size_t r = 0; r < m.rows; ++r) {
    long double ref = 0;
    for (std::size_t t = m.row_ptr[r]; t < m.row_ptr[r + 1]; ++t) ref += m.values[t] * x[m.cols[t]];
    EXPECT_NEAR(y[r], static_cast<double>(ref), 1e-12);
  }
}

#if defined(BICOLOR_HAVE_AVX2)
TEST(Kernels, Avx2MatchesScalar) {
  if (!k::avx2_available()) GTEST_SKIP() << "CPU lacks AVX2";
  std::mt19937_64 rng(13);
  for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 8u, 15u, 64u, 1001u}) {
    const auto x = random_vector(n, rng), y = random_vector(n, rng);
    EXPECT_NEAR(k::avx2::dot(x, y), k::scalar::dot(x, y), 1e-12) << n;

    auto a = y, b = y;
    k::avx2::axpy(-1.25, x, a);
    k::scalar::axpy(-1.25, x, b);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(a[i], b[i], 1e-15);

    a = x;
    b = x;
    k::avx2::scale(3.5, a);
    k::scalar::scale(3.5, b);
    EXPECT_EQ(a, b);
  }
  for (std::size_t n : {1u, 9u, 300u, 4099u}) {
    const auto m = random_csr(n, rng);
    const auto x = random_vector(n, rng);
    std::vector<double> ya(n), ys(n);
    k::avx2::csr_matvec_rows(m.view(), x, ya, 0, n);
    k::scalar::csr_matvec_rows(m.view(), x, ys, 0, n);
    for (std::size_t r = 0; r < n; ++r) EXPECT_NEAR(ya[r], ys[r], 1e-12);
  }
}

TEST(Kernels, DispatchCanBeForced) {
  k::set_isa(k::Isa::scalar);
  EXPECT_EQ(k::active_isa(), k::Isa::scalar);
  k::set_isa(k::Isa::avx2);
  EXPECT_EQ(k::active_isa(), k::avx2_available() ? k::Isa::avx2 : k::Isa::scalar);
}
#endif

TEST(Kernels, DispatchedMatvecAgreesAcrossIsas) {
  std::mt19937_64 rng(17);
  const auto m = random_csr(5000, rng);
  const auto x = random_vector(5000, rng);
  std::vector<double> y1(5000), y2(5000);
  k::set_isa(k::Isa::scalar);
  k::csr_matvec(m.view(), x, y1);
  k::set_isa(k::Isa::avx2);
  k::csr_matvec(m.view(), x, y2);
  for (std::size_t r = 0; r < y1.size(); ++r) EXPECT_NEAR(y1[r], y2[r], 1e-12);
  EXPECT_NEAR(k::norm2(x), std::sqrt(k::scalar::dot(x, x)), 1e-12);
}
