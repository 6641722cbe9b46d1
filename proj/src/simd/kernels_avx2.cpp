// AVX2 variants. This translation unit is compiled with -mavx2 -mpopcnt and
// must only be entered after a runtime CPU check.

#include <immintrin.h>

#include <algorithm>
#include <bit>
#include <cmath>

#include "kernels_impl.hpp"

namespace vcsample::simd::avx2 {

namespace {

struct Consts {
  __m256d inf = _mm256_set1_pd(std::numeric_limits<double>::infinity());
  __m256d one = _mm256_set1_pd(1.0);
  __m256d tol = _mm256_set1_pd(kRelativeSlack);
  __m256d up = _mm256_set1_pd(1.0 + kRelativeSlack);
  __m256d down = _mm256_set1_pd(1.0 - kRelativeSlack);
  __m256d sign = _mm256_set1_pd(-0.0);
};

inline __m256d vabs(const Consts& k, __m256d v) { return _mm256_andnot_pd(k.sign, v); }

inline __m256d slack(const Consts& k, __m256d lhs, __m256d rhs) {
  const __m256d widest = _mm256_max_pd(vabs(k, lhs), vabs(k, rhs));
  return _mm256_add_pd(_mm256_sub_pd(rhs, lhs), _mm256_mul_pd(k.tol, widest));
}

inline __m256d two_sided(const Consts& k, __m256d lower, __m256d value, __m256d upper) {
  return _mm256_min_pd(slack(k, lower, value), slack(k, value, upper));
}

inline __m256d only_if(const Consts& k, __m256d mask, __m256d v) {
  return _mm256_blendv_pd(k.inf, v, mask);
}

__m256d margin4(const MarginParams& prm, const Consts& k, __m256d rc, __m256d sc) {
  const __m256d n = _mm256_set1_pd(prm.n);
  const __m256d m = _mm256_set1_pd(prm.m);
  const __m256d r = _mm256_div_pd(rc, n);
  const __m256d s = _mm256_div_pd(sc, m);
  const __m256d eps = _mm256_set1_pd(prm.eps);
  switch (prm.rule) {
    case MarginRule::net: {
      const __m256d heavy = _mm256_cmp_pd(rc, _mm256_set1_pd(prm.heavy_count_min), _CMP_GE_OQ);
      return only_if(k, heavy, _mm256_div_pd(_mm256_sub_pd(sc, k.one), m));
    }
    case MarginRule::approx:
      return slack(k, vabs(k, _mm256_sub_pd(r, s)), eps);
    case MarginRule::sensitive: {
      const __m256d rhs =
          _mm256_mul_pd(_mm256_set1_pd(prm.half_eps), _mm256_add_pd(_mm256_sqrt_pd(r), eps));
      return slack(k, vabs(k, _mm256_sub_pd(r, s)), rhs);
    }
    case MarginRule::relative:
    case MarginRule::relative_heavy:
    case MarginRule::relative_light: {
      __m256d out = k.inf;
      if (prm.rule != MarginRule::relative_light) {
        const __m256d heavy =
            _mm256_cmp_pd(rc, _mm256_set1_pd(prm.heavy_count_min), _CMP_GE_OQ);
        const __m256d lower = _mm256_mul_pd(_mm256_set1_pd(prm.one_minus_eps), r);
        const __m256d upper = _mm256_mul_pd(_mm256_set1_pd(prm.one_plus_eps), r);
        out = only_if(k, heavy, two_sided(k, lower, s, upper));
      }
      if (prm.rule != MarginRule::relative_heavy) {
        const __m256d light =
            _mm256_cmp_pd(rc, _mm256_set1_pd(prm.light_count_max), _CMP_LE_OQ);
        out = _mm256_min_pd(out,
                            only_if(k, light, slack(k, s, _mm256_set1_pd(prm.light_cap))));
      }
      return out;
    }
    case MarginRule::relative_sensitive: {
      const __m256d x = _mm256_div_pd(rc, _mm256_set1_pd(prm.np));
      const __m256d lower_level = _mm256_floor_pd(_mm256_mul_pd(x, k.up));
      const __m256d has_lower = _mm256_cmp_pd(lower_level, k.one, _CMP_GE_OQ);
      const __m256d e1 = _mm256_div_pd(eps, _mm256_sqrt_pd(lower_level));
      const __m256d band = two_sided(k, _mm256_mul_pd(_mm256_sub_pd(k.one, e1), r), s,
                                     _mm256_mul_pd(_mm256_add_pd(k.one, e1), r));
      __m256d out = only_if(k, has_lower, band);

      const __m256d upper_level = _mm256_max_pd(k.one, _mm256_ceil_pd(_mm256_mul_pd(x, k.down)));
      const __m256d has_upper =
          _mm256_cmp_pd(upper_level, _mm256_set1_pd(prm.level_max), _CMP_LE_OQ);
      const __m256d e2 = _mm256_div_pd(eps, _mm256_sqrt_pd(upper_level));
      const __m256d cap = _mm256_mul_pd(_mm256_add_pd(k.one, e2),
                                        _mm256_mul_pd(upper_level, _mm256_set1_pd(prm.p)));
      out = _mm256_min_pd(out, only_if(k, has_upper, slack(k, s, cap)));
      return out;
    }
  }
  return k.inf;
}

inline __m256d load_counts(const std::int32_t* p) {
  return _mm256_cvtepi32_pd(_mm_loadu_si128(reinterpret_cast<const __m128i*>(p)));
}

// Per-64-bit-lane popcount (nibble lookup, then byte sums).
inline __m256i popcount_epi64(__m256i v) {
  const __m256i lookup =
      _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4, 0, 1, 1, 2, 1, 2, 2, 3, 1,
                       2, 2, 3, 2, 3, 3, 4);
  const __m256i low_mask = _mm256_set1_epi8(0x0f);
  const __m256i lo = _mm256_and_si256(v, low_mask);
  const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
  const __m256i bytes =
      _mm256_add_epi8(_mm256_shuffle_epi8(lookup, lo), _mm256_shuffle_epi8(lookup, hi));
  return _mm256_sad_epu8(bytes, _mm256_setzero_si256());
}

inline std::int64_t hsum_epi64(__m256i v) {
  alignas(32) std::int64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), v);
  return lanes[0] + lanes[1] + lanes[2] + lanes[3];
}

}  // namespace

ArgMin min_margin(const MarginParams& params, std::span<const std::int32_t> ground_counts,
                  std::span<const std::int32_t> sample_counts) {
  const std::size_t len = std::min(ground_counts.size(), sample_counts.size());
  ArgMin best;
  if (len == 0) return best;
  const Consts k;
  std::size_t i = 0;
  if (len >= 4) {
    __m256d best_v = k.inf;
    __m256d best_i = _mm256_setr_pd(0.0, 1.0, 2.0, 3.0);
    __m256d idx = best_i;
    const __m256d step = _mm256_set1_pd(4.0);
    for (; i + 4 <= len; i += 4) {
      const __m256d v = margin4(params, k, load_counts(ground_counts.data() + i),
                                load_counts(sample_counts.data() + i));
      const __m256d better = _mm256_cmp_pd(v, best_v, _CMP_LT_OQ);
      best_v = _mm256_blendv_pd(best_v, v, better);
      best_i = _mm256_blendv_pd(best_i, idx, better);
      idx = _mm256_add_pd(idx, step);
    }
    alignas(32) double vals[4];
    alignas(32) double idxs[4];
    _mm256_store_pd(vals, best_v);
    _mm256_store_pd(idxs, best_i);
    best.value = vals[0];
    best.index = static_cast<std::size_t>(idxs[0]);
    for (int lane = 1; lane < 4; ++lane) {
      const auto li = static_cast<std::size_t>(idxs[lane]);
      if (vals[lane] < best.value || (vals[lane] == best.value && li < best.index)) {
        best.value = vals[lane];
        best.index = li;
      }
    }
  }
  for (; i < len; ++i) {
    const double v = margin(params, ground_counts[i], sample_counts[i]);
    if (i == 0 || v < best.value) {
      best.value = v;
      best.index = i;
    }
  }
  return best;
}

void span_counts(std::span<const std::int32_t> prefix, std::span<const std::int32_t> begin,
                 std::span<const std::int32_t> end, std::span<std::int32_t> out) {
  const std::size_t len = out.size();
  std::size_t i = 0;
  for (; i + 8 <= len; i += 8) {
    const __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(begin.data() + i));
    const __m256i e = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(end.data() + i));
    const __m256i pb = _mm256_i32gather_epi32(prefix.data(), b, 4);
    const __m256i pe = _mm256_i32gather_epi32(prefix.data(), e, 4);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out.data() + i), _mm256_sub_epi32(pe, pb));
  }
  for (; i < len; ++i) out[i] = prefix[end[i]] - prefix[begin[i]];
}

void weighted_popcount(std::span<const std::uint64_t> masks, std::size_t words_per_mask,
                       std::span<const std::uint64_t> planes, std::size_t plane_count,
                       std::span<std::int32_t> out) {
  const std::size_t vec_words = words_per_mask & ~std::size_t{3};
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::uint64_t* mask = masks.data() + i * words_per_mask;
    std::int32_t total = 0;
    for (std::size_t b = 0; b < plane_count; ++b) {
      const std::uint64_t* plane = planes.data() + b * words_per_mask;
      __m256i acc = _mm256_setzero_si256();
      std::size_t w = 0;
      for (; w < vec_words; w += 4) {
        const __m256i mv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(mask + w));
        const __m256i pv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(plane + w));
        acc = _mm256_add_epi64(acc, popcount_epi64(_mm256_and_si256(mv, pv)));
      }
      auto count = static_cast<std::int32_t>(hsum_epi64(acc));
      for (; w < words_per_mask; ++w) count += std::popcount(mask[w] & plane[w]);
      total += count << b;
    }
    out[i] = total;
  }
}

void halfplane_mask(const Halfplane& h, std::span<const double> xs, std::span<const double> ys,
                    std::span<std::uint64_t> out) {
  std::fill(out.begin(), out.end(), 0);
  const std::size_t n = xs.size();
  const __m256d a = _mm256_set1_pd(h.a);
  const __m256d b = _mm256_set1_pd(h.b);
  const __m256d c = _mm256_set1_pd(h.c);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d v = _mm256_add_pd(_mm256_mul_pd(a, _mm256_loadu_pd(xs.data() + k)),
                                    _mm256_mul_pd(b, _mm256_loadu_pd(ys.data() + k)));
    const auto bits = static_cast<std::uint64_t>(_mm256_movemask_pd(_mm256_cmp_pd(v, c, _CMP_LE_OQ)));
    out[k >> 6] |= bits << (k & 63);
  }
  for (; k < n; ++k) {
    if (h.a * xs[k] + h.b * ys[k] <= h.c) out[k >> 6] |= std::uint64_t{1} << (k & 63);
  }
}

void disk_mask(const Disk& d, std::span<const double> xs, std::span<const double> ys,
               std::span<std::uint64_t> out) {
  std::fill(out.begin(), out.end(), 0);
  const std::size_t n = xs.size();
  const double r2 = d.r * d.r;
  const __m256d cx = _mm256_set1_pd(d.cx);
  const __m256d cy = _mm256_set1_pd(d.cy);
  const __m256d rr = _mm256_set1_pd(r2);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xs.data() + k), cx);
    const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(ys.data() + k), cy);
    const __m256d dist = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
    const auto bits = static_cast<std::uint64_t>(_mm256_movemask_pd(_mm256_cmp_pd(dist, rr, _CMP_LE_OQ)));
    out[k >> 6] |= bits << (k & 63);
  }
  for (; k < n; ++k) {
    const double dx = xs[k] - d.cx;
    const double dy = ys[k] - d.cy;
    if (dx * dx + dy * dy <= r2) out[k >> 6] |= std::uint64_t{1} << (k & 63);
  }
}

}  // namespace vcsample::simd::avx2
