#include <gtest/gtest.h>

#include <bit>
#include <cstdint>
#include <vector>

#include "lipfree/kernels.hpp"
#include "lipfree/random_instance.hpp"

namespace lipfree::kernels {
namespace {

using Vec = std::vector<double>;

Vec random_vec(Rng& rng, std::size_t n, double lo, double hi) {
  Vec v(n);
  for (double& x : v) x = rng.uniform(lo, hi);
  return v;
}

bool bit_equal(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::bit_cast<std::uint64_t>(a[i]) != std::bit_cast<std::uint64_t>(b[i])) return false;
  }
  return true;
}

bool bit_equal(double a, double b) {
  return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

class KernelEquivalence : public ::testing::Test {
 protected:
  void SetUp() override {
    simd_ = avx2_table();
    if (simd_ == nullptr) GTEST_SKIP() << "no AVX2 on this machine";
  }
  const KernelTable& ref_ = scalar_table();
  const KernelTable* simd_ = nullptr;
};

TEST_F(KernelEquivalence, SubScaled) {
  Rng rng(1);
  for (std::size_t n = 0; n < 40; ++n) {
    const Vec x = random_vec(rng, n, -3, 3);
    Vec y1 = random_vec(rng, n, -3, 3);
    Vec y2 = y1;
    const double a = rng.uniform(-2, 2);
    ref_.sub_scaled(y1.data(), x.data(), a, n);
    simd_->sub_scaled(y2.data(), x.data(), a, n);
    EXPECT_TRUE(bit_equal(y1, y2)) << "n=" << n;
  }
}

TEST_F(KernelEquivalence, Divide) {
  Rng rng(2);
  for (std::size_t n = 0; n < 40; ++n) {
    Vec y1 = random_vec(rng, n, -3, 3);
    Vec y2 = y1;
    const double a = rng.uniform(0.1, 3);
    ref_.divide(y1.data(), a, n);
    simd_->divide(y2.data(), a, n);
    EXPECT_TRUE(bit_equal(y1, y2)) << "n=" << n;
  }
}

TEST_F(KernelEquivalence, MaxSlope) {
  Rng rng(3);
  for (std::size_t n = 0; n < 40; ++n) {
    const Vec f = random_vec(rng, n, -1, 1);
    const Vec d = random_vec(rng, n, 0.01, 1);
    const double fi = rng.uniform(-1, 1);
    EXPECT_TRUE(bit_equal(ref_.max_slope(fi, f.data(), d.data(), n),
                          simd_->max_slope(fi, f.data(), d.data(), n)))
        << "n=" << n;
  }
}

TEST_F(KernelEquivalence, MaskedMin) {
  Rng rng(4);
  for (std::size_t n = 0; n < 40; ++n) {
    const Vec row = random_vec(rng, n, 0, 1);
    for (double density : {0.0, 0.2, 1.0}) {
      std::vector<unsigned char> mask(n);
      for (auto& m : mask) m = rng.bernoulli(density) ? 1 : 0;
      const double a = ref_.masked_min(row.data(), mask.data(), n);
      const double b = simd_->masked_min(row.data(), mask.data(), n);
      EXPECT_TRUE(bit_equal(a, b)) << "n=" << n;
    }
  }
}

TEST_F(KernelEquivalence, RampWeight) {
  Rng rng(5);
  for (std::size_t n = 0; n < 40; ++n) {
    const double theta = rng.uniform(0.05, 1.5);
    Vec d = random_vec(rng, n, 0, 1.2);
    if (n > 2) {
      d[0] = theta;
      d[1] = theta / 2;
      d[2] = 0.0;
    }
    Vec o1(n), o2(n);
    ref_.ramp_weight(o1.data(), d.data(), theta, n);
    simd_->ramp_weight(o2.data(), d.data(), theta, n);
    EXPECT_TRUE(bit_equal(o1, o2)) << "n=" << n;
  }
}

TEST(Kernels, ScalarReferenceValues) {
  const KernelTable& k = scalar_table();
  const Vec d = {0.0, 0.15, 0.225, 0.3, 0.6};
  Vec w(d.size());
  k.ramp_weight(w.data(), d.data(), 0.3, d.size());
  EXPECT_EQ(w, (Vec{1.0, 1.0, 0.5, 0.0, 0.0}));

  const Vec row = {0.4, 0.2, 0.9};
  const std::vector<unsigned char> none = {0, 0, 0};
  const std::vector<unsigned char> some = {1, 0, 1};
  EXPECT_EQ(k.masked_min(row.data(), none.data(), 3), std::numeric_limits<double>::infinity());
  EXPECT_EQ(k.masked_min(row.data(), some.data(), 3), 0.4);

  const Vec f = {0.5, -0.5};
  const Vec dist = {0.5, 0.25};
  EXPECT_EQ(k.max_slope(0.0, f.data(), dist.data(), 2), 2.0);
}

TEST(Kernels, SelectionAndParsing) {
  Isa isa;
  EXPECT_TRUE(parse_isa("scalar", isa));
  EXPECT_EQ(isa, Isa::kScalar);
  EXPECT_TRUE(parse_isa("avx2", isa));
  EXPECT_FALSE(parse_isa("neon9", isa));
  const Isa before = active().isa;
  ASSERT_TRUE(select(Isa::kScalar));
  EXPECT_EQ(active().isa, Isa::kScalar);
  EXPECT_EQ(select(Isa::kAvx2), avx2_table() != nullptr);
  select(before);
}

}  // namespace
}  // namespace lipfree::kernels
