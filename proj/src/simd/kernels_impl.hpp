#pragma once

#include "vcsample/simd/kernels.hpp"

namespace vcsample::simd {

#define VCSAMPLE_KERNEL_DECLS                                                                   \
  ArgMin min_margin(const MarginParams& params, std::span<const std::int32_t> ground_counts,  \
                    std::span<const std::int32_t> sample_counts);                              \
  void span_counts(std::span<const std::int32_t> prefix, std::span<const std::int32_t> begin, \
                   std::span<const std::int32_t> end, std::span<std::int32_t> out);            \
  void weighted_popcount(std::span<const std::uint64_t> masks, std::size_t words_per_mask,    \
                         std::span<const std::uint64_t> planes, std::size_t plane_count,      \
                         std::span<std::int32_t> out);                                         \
  void halfplane_mask(const Halfplane& h, std::span<const double> xs,                         \
                      std::span<const double> ys, std::span<std::uint64_t> out);               \
  void disk_mask(const Disk& d, std::span<const double> xs, std::span<const double> ys,       \
                 std::span<std::uint64_t> out);

namespace scalar {
VCSAMPLE_KERNEL_DECLS
}  // namespace scalar

#ifdef VCSAMPLE_HAVE_AVX2
namespace avx2 {
VCSAMPLE_KERNEL_DECLS
}  // namespace avx2
#endif

#undef VCSAMPLE_KERNEL_DECLS

}  // namespace vcsample::simd
