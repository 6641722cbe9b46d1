#include <algorithm>
#include <bit>
#include <cmath>

#include "kernels_impl.hpp"

namespace vcsample::simd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// rhs - lhs, widened by the relative slack.
inline double slack(double lhs, double rhs) {
  return (rhs - lhs) + kRelativeSlack * std::max(std::fabs(lhs), std::fabs(rhs));
}

inline double two_sided(double lower, double value, double upper) {
  return std::min(slack(lower, value), slack(value, upper));
}

}  // namespace

MarginParams make_margin_params(MarginRule rule, double eps, double p, std::size_t n,
                                std::size_t m) {
  MarginParams out;
  out.rule = rule;
  out.eps = eps;
  out.p = p;
  out.n = static_cast<double>(n);
  out.m = static_cast<double>(m);
  const double threshold = rule == MarginRule::net ? eps : p;
  out.heavy_count_min = threshold * out.n * (1.0 - kRelativeSlack);
  out.light_count_max = p * out.n * (1.0 + kRelativeSlack);
  out.half_eps = 0.5 * eps;
  out.one_minus_eps = 1.0 - eps;
  out.one_plus_eps = 1.0 + eps;
  out.light_cap = (1.0 + eps) * p;
  out.np = out.n * p;
  out.level_max = p > 0.0 ? std::floor((1.0 / p) * (1.0 + kRelativeSlack)) : 0.0;
  return out;
}

double margin(const MarginParams& prm, std::int32_t ground_count, std::int32_t sample_count) {
  const double rc = static_cast<double>(ground_count);
  const double sc = static_cast<double>(sample_count);
  const double r = rc / prm.n;
  const double s = sc / prm.m;
  switch (prm.rule) {
    case MarginRule::net:
      return rc >= prm.heavy_count_min ? (sc - 1.0) / prm.m : kInf;
    case MarginRule::approx:
      return slack(std::fabs(r - s), prm.eps);
    case MarginRule::sensitive:
      return slack(std::fabs(r - s), prm.half_eps * (std::sqrt(r) + prm.eps));
    case MarginRule::relative:
    case MarginRule::relative_heavy:
    case MarginRule::relative_light: {
      double out = kInf;
      if (prm.rule != MarginRule::relative_light && rc >= prm.heavy_count_min) {
        out = two_sided(prm.one_minus_eps * r, s, prm.one_plus_eps * r);
      }
      if (prm.rule != MarginRule::relative_heavy && rc <= prm.light_count_max) {
        out = std::min(out, slack(s, prm.light_cap));
      }
      return out;
    }
    case MarginRule::relative_sensitive: {
      double out = kInf;
      const double x = rc / prm.np;
      const double lower_level = std::floor(x * (1.0 + kRelativeSlack));
      if (lower_level >= 1.0) {
        const double e = prm.eps / std::sqrt(lower_level);
        out = two_sided((1.0 - e) * r, s, (1.0 + e) * r);
      }
      const double upper_level = std::max(1.0, std::ceil(x * (1.0 - kRelativeSlack)));
      if (upper_level <= prm.level_max) {
        const double e = prm.eps / std::sqrt(upper_level);
        out = std::min(out, slack(s, (1.0 + e) * (upper_level * prm.p)));
      }
      return out;
    }
  }
  return kInf;
}

namespace scalar {

ArgMin min_margin(const MarginParams& params, std::span<const std::int32_t> ground_counts,
                  std::span<const std::int32_t> sample_counts) {
  ArgMin best;
  const std::size_t len = std::min(ground_counts.size(), sample_counts.size());
  for (std::size_t i = 0; i < len; ++i) {
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
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = prefix[end[i]] - prefix[begin[i]];
}

void weighted_popcount(std::span<const std::uint64_t> masks, std::size_t words_per_mask,
                       std::span<const std::uint64_t> planes, std::size_t plane_count,
                       std::span<std::int32_t> out) {
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::uint64_t* mask = masks.data() + i * words_per_mask;
    std::int32_t total = 0;
    for (std::size_t b = 0; b < plane_count; ++b) {
      const std::uint64_t* plane = planes.data() + b * words_per_mask;
      std::int32_t count = 0;
      for (std::size_t w = 0; w < words_per_mask; ++w) count += std::popcount(mask[w] & plane[w]);
      total += count << b;
    }
    out[i] = total;
  }
}

void halfplane_mask(const Halfplane& h, std::span<const double> xs, std::span<const double> ys,
                    std::span<std::uint64_t> out) {
  std::fill(out.begin(), out.end(), 0);
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (h.a * xs[k] + h.b * ys[k] <= h.c) out[k >> 6] |= std::uint64_t{1} << (k & 63);
  }
}

void disk_mask(const Disk& d, std::span<const double> xs, std::span<const double> ys,
               std::span<std::uint64_t> out) {
  std::fill(out.begin(), out.end(), 0);
  const double r2 = d.r * d.r;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const double dx = xs[k] - d.cx;
    const double dy = ys[k] - d.cy;
    if (dx * dx + dy * dy <= r2) out[k >> 6] |= std::uint64_t{1} << (k & 63);
  }
}

}  // namespace scalar
}  // namespace vcsample::simd
