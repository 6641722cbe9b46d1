#pragma once

// Data-parallel inner loops of enumeration and verification.
//
// Every kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant selected at runtime. The variants are required to produce
// bit-identical results: the project is built with -ffp-contract=off and the
// vector code evaluates the same expressions in the same order.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string_view>

#include "vcsample/geometry.hpp"

namespace vcsample::simd {

enum class Isa { scalar, avx2 };

std::string_view to_string(Isa isa);
bool isa_supported(Isa isa);

// Best supported ISA, unless overridden with VCSAMPLE_SIMD=scalar|avx2 or
// set_active_isa().
Isa active_isa();
void set_active_isa(Isa isa);

// RAII override used by equivalence tests.
class ScopedIsa {
 public:
  explicit ScopedIsa(Isa isa) : previous_(active_isa()) { set_active_isa(isa); }
  ~ScopedIsa() { set_active_isa(previous_); }
  ScopedIsa(const ScopedIsa&) = delete;
  ScopedIsa& operator=(const ScopedIsa&) = delete;

 private:
  Isa previous_;
};

// Relative slack applied to every inequality, in favour of passing.
inline constexpr double kRelativeSlack = 1e-9;

enum class MarginRule {
  net,                 // r >= eps  =>  s > 0
  approx,              // |r - s| <= eps
  sensitive,           // |r - s| <= (eps/2)(sqrt(r) + eps)
  relative,            // heavy and light clauses together
  relative_heavy,      // r >= p  =>  (1-eps) r <= s <= (1+eps) r
  relative_light,      // r <= p  =>  s <= (1+eps) p
  relative_sensitive,  // every level i: relative (i p, eps / sqrt(i))
};

// Per-call constants. Build with make_margin_params so both kernel variants
// see the same precomputed doubles.
struct MarginParams {
  MarginRule rule = MarginRule::approx;
  double eps = 0.0;
  double p = 0.0;
  double n = 1.0;  // ground set size
  double m = 1.0;  // sample size
  double heavy_count_min = 0.0;
  double light_count_max = 0.0;
  double half_eps = 0.0;
  double one_minus_eps = 0.0;
  double one_plus_eps = 0.0;
  double light_cap = 0.0;
  double np = 0.0;
  double level_max = 0.0;
};

MarginParams make_margin_params(MarginRule rule, double eps, double p, std::size_t n,
                                std::size_t m);

// Signed slack of one range; >= 0 means the range satisfies the rule.
// +inf when the rule places no constraint on the range.
double margin(const MarginParams& params, std::int32_t ground_count, std::int32_t sample_count);

struct ArgMin {
  double value = std::numeric_limits<double>::infinity();
  std::size_t index = static_cast<std::size_t>(-1);
};

// Minimum margin and the first index attaining it.
ArgMin min_margin(const MarginParams& params, std::span<const std::int32_t> ground_counts,
                  std::span<const std::int32_t> sample_counts);

// out[i] = prefix[end[i]] - prefix[begin[i]]
void span_counts(std::span<const std::int32_t> prefix, std::span<const std::int32_t> begin,
                 std::span<const std::int32_t> end, std::span<std::int32_t> out);

// out[i] = sum_b 2^b * popcount(mask_i & plane_b), i.e. the multiplicity-weighted
// size of mask_i when the multiplicities are given as bit planes.
void weighted_popcount(std::span<const std::uint64_t> masks, std::size_t words_per_mask,
                       std::span<const std::uint64_t> planes, std::size_t plane_count,
                       std::span<std::int32_t> out);

// Bit k of out is set iff point k lies in the closed range. `out` must hold
// ceil(n/64) words; it is overwritten.
void halfplane_mask(const Halfplane& h, std::span<const double> xs, std::span<const double> ys,
                    std::span<std::uint64_t> out);
void disk_mask(const Disk& d, std::span<const double> xs, std::span<const double> ys,
               std::span<std::uint64_t> out);

}  // namespace vcsample::simd
