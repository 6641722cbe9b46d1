#include <gtest/gtest.h>

#include <bit>
#include <cstring>
#include <random>

#include "vcsample/harness.hpp"
#include "vcsample/range_space.hpp"
#include "vcsample/simd/kernels.hpp"

using namespace vcsample;
using namespace vcsample::simd;

namespace {

constexpr MarginRule kRules[] = {MarginRule::net,           MarginRule::approx,         MarginRule::sensitive,
                                 MarginRule::relative,      MarginRule::relative_heavy, MarginRule::relative_light,
                                 MarginRule::relative_sensitive};

bool same_bits(double a, double b) { return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b); }

#define REQUIRE_AVX2()                                                   \
  if (!isa_supported(Isa::avx2)) GTEST_SKIP() << "AVX2 not available"

struct Counts {
  std::vector<std::int32_t> ground, sample;
};

// Counts drawn near the decision boundaries, with many exact repeats so the
// first-index tie rule is exercised.
Counts random_counts(std::size_t len, std::int32_t n, std::int32_t m, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int32_t> rc(0, n), pick(0, 9);
  Counts c;
  for (std::size_t i = 0; i < len; ++i) {
    const std::int32_t r = pick(rng) < 3 ? n / 10 : rc(rng);
    const double expected = static_cast<double>(r) / n * m;
    std::normal_distribution<double> noise(expected, 1.0 + 0.5 * std::sqrt(expected));
    const auto s = static_cast<std::int32_t>(std::clamp(std::lround(noise(rng)), 0L, static_cast<long>(m)));
    c.ground.push_back(r);
    c.sample.push_back(pick(rng) < 2 && i > 0 ? c.sample[i - 1] : s);
    if (pick(rng) == 0 && i > 0) c.ground[i] = c.ground[i - 1];
  }
  return c;
}

}  // namespace

TEST(Kernels, ScalarMinMarginMatchesElementwise) {
  std::mt19937_64 rng(1);
  ScopedIsa isa(Isa::scalar);
  for (MarginRule rule : kRules) {
    const auto c = random_counts(333, 500, 120, rng);
    const auto params = make_margin_params(rule, 0.3, 0.05, 500, 120);
    const ArgMin got = min_margin(params, c.ground, c.sample);
    ArgMin want;
    for (std::size_t i = 0; i < c.ground.size(); ++i) {
      const double v = margin(params, c.ground[i], c.sample[i]);
      if (v < want.value) want = {v, i};
    }
    EXPECT_TRUE(same_bits(got.value, want.value));
    EXPECT_EQ(got.index, want.index);
  }
}

TEST(Kernels, MinMarginScalarAvx2Identical) {
  REQUIRE_AVX2();
  std::mt19937_64 rng(2);
  for (MarginRule rule : kRules)
    for (std::size_t len : {0, 1, 3, 4, 5, 7, 8, 9, 31, 64, 1001}) {
      for (double eps : {0.05, 0.3, 0.9})
        for (double p : {0.01, 0.05, 0.3}) {
          const auto c = random_counts(len, 997, 211, rng);
          const auto params = make_margin_params(rule, eps, p, 997, 211);
          ArgMin a, b;
          {
            ScopedIsa isa(Isa::scalar);
            a = min_margin(params, c.ground, c.sample);
          }
          {
            ScopedIsa isa(Isa::avx2);
            b = min_margin(params, c.ground, c.sample);
          }
          ASSERT_TRUE(same_bits(a.value, b.value)) << static_cast<int>(rule) << " len " << len;
          ASSERT_EQ(a.index, b.index) << static_cast<int>(rule) << " len " << len;
        }
    }
}

TEST(Kernels, SpanCountsScalarAvx2Identical) {
  REQUIRE_AVX2();
  std::mt19937_64 rng(3);
  std::vector<std::int32_t> prefix{0};
  for (int i = 0; i < 300; ++i) prefix.push_back(prefix.back() + static_cast<std::int32_t>(rng() % 4));
  for (std::size_t len : {0, 1, 7, 8, 9, 100}) {
    std::vector<std::int32_t> begin(len), end(len), a(len), b(len);
    for (std::size_t i = 0; i < len; ++i) {
      begin[i] = static_cast<std::int32_t>(rng() % 300);
      end[i] = begin[i] + static_cast<std::int32_t>(rng() % (301 - begin[i]));
    }
    {
      ScopedIsa isa(Isa::scalar);
      span_counts(prefix, begin, end, a);
    }
    {
      ScopedIsa isa(Isa::avx2);
      span_counts(prefix, begin, end, b);
    }
    EXPECT_EQ(a, b);
    for (std::size_t i = 0; i < len; ++i) EXPECT_EQ(a[i], prefix[end[i]] - prefix[begin[i]]);
  }
}

TEST(Kernels, WeightedPopcountScalarAvx2Identical) {
  REQUIRE_AVX2();
  std::mt19937_64 rng(4);
  for (std::size_t words : {1, 3, 4, 5, 8}) {
    const std::size_t masks_n = 37, planes_n = 5;
    std::vector<std::uint64_t> masks(masks_n * words), planes(planes_n * words);
    for (auto& w : masks) w = rng();
    for (auto& w : planes) w = rng() & rng();
    std::vector<std::int32_t> a(masks_n), b(masks_n);
    {
      ScopedIsa isa(Isa::scalar);
      weighted_popcount(masks, words, planes, planes_n, a);
    }
    {
      ScopedIsa isa(Isa::avx2);
      weighted_popcount(masks, words, planes, planes_n, b);
    }
    EXPECT_EQ(a, b);
    for (std::size_t k = 0; k < masks_n; ++k) {
      std::int32_t want = 0;
      for (std::size_t pl = 0; pl < planes_n; ++pl)
        for (std::size_t w = 0; w < words; ++w)
          want += (1 << pl) * std::popcount(masks[k * words + w] & planes[pl * words + w]);
      EXPECT_EQ(a[k], want);
    }
  }
}

TEST(Kernels, GeometricMasksScalarAvx2Identical) {
  REQUIRE_AVX2();
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::size_t n : {1, 3, 4, 63, 64, 65, 130}) {
    std::vector<double> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
      xs[i] = u(rng);
      ys[i] = i % 5 == 0 ? xs[i] : u(rng);  // exact boundary hits
    }
    const std::size_t words = (n + 63) / 64;
    for (int t = 0; t < 20; ++t) {
      const Halfplane h{u(rng) - 0.5, u(rng) - 0.5, u(rng) - 0.5};
      const Halfplane diag{1.0, -1.0, 0.0};
      const Disk d{u(rng), u(rng), u(rng)};
      for (const Halfplane& hp : {h, diag}) {
        std::vector<std::uint64_t> a(words, ~0ull), b(words, ~0ull);
        {
          ScopedIsa isa(Isa::scalar);
          halfplane_mask(hp, xs, ys, a);
        }
        {
          ScopedIsa isa(Isa::avx2);
          halfplane_mask(hp, xs, ys, b);
        }
        ASSERT_EQ(a, b);
        for (std::size_t i = 0; i < n; ++i)
          ASSERT_EQ((a[i / 64] >> (i % 64)) & 1u, hp.a * xs[i] + hp.b * ys[i] <= hp.c ? 1u : 0u);
      }
      std::vector<std::uint64_t> a(words, ~0ull), b(words, ~0ull);
      {
        ScopedIsa isa(Isa::scalar);
        disk_mask(d, xs, ys, a);
      }
      {
        ScopedIsa isa(Isa::avx2);
        disk_mask(d, xs, ys, b);
      }
      ASSERT_EQ(a, b);
    }
  }
}

TEST(Kernels, EnumerationIdenticalAcrossIsas) {
  REQUIRE_AVX2();
  for (RangeKind kind : {RangeKind::intervals, RangeKind::halfplanes, RangeKind::rectangles, RangeKind::disks}) {
    const GroundSet g = generate_points(Generator::clustered, 40, RangeFamily(kind).point_dimension(), 9);
    const Sample s = draw_sample(g, 77, 3);
    std::vector<InducedRange> a, b;
    std::vector<std::int32_t> ca, cb;
    {
      ScopedIsa isa(Isa::scalar);
      const RangeSet r = enumerate_induced_ranges(RangeFamily(kind), g);
      a = r.materialize();
      ca = r.sample_counts(s.multiplicities());
    }
    {
      ScopedIsa isa(Isa::avx2);
      const RangeSet r = enumerate_induced_ranges(RangeFamily(kind), g);
      b = r.materialize();
      cb = r.sample_counts(s.multiplicities());
    }
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
      ASSERT_EQ(a[k].members, b[k].members);
      ASSERT_TRUE(a[k].witness == b[k].witness);
    }
    EXPECT_EQ(ca, cb);
  }
}

TEST(Kernels, IsaSelection) {
  EXPECT_TRUE(isa_supported(Isa::scalar));
  const Isa before = active_isa();
  {
    ScopedIsa isa(Isa::scalar);
    EXPECT_EQ(active_isa(), Isa::scalar);
  }
  EXPECT_EQ(active_isa(), before);
  EXPECT_EQ(to_string(Isa::avx2), "avx2");
}
