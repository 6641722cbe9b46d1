#include <atomic>
#include <cstdlib>
#include <string>

#include "kernels_impl.hpp"
#include "vcsample/errors.hpp"

namespace vcsample::simd {

namespace {

bool cpu_has_avx2() {
#if defined(VCSAMPLE_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
#else
  return false;
#endif
}

Isa initial_isa() {
  Isa isa = cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
  if (const char* env = std::getenv("VCSAMPLE_SIMD")) {
    const std::string want = env;
    if (want == "scalar") isa = Isa::scalar;
    else if (want == "avx2" && cpu_has_avx2()) isa = Isa::avx2;
  }
  return isa;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

}  // namespace

std::string_view to_string(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

bool isa_supported(Isa isa) { return isa == Isa::scalar || cpu_has_avx2(); }

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (!isa_supported(isa)) {
    throw ParameterError("instruction set not supported on this CPU: " + std::string(to_string(isa)));
  }
  current().store(isa, std::memory_order_relaxed);
}

#ifdef VCSAMPLE_HAVE_AVX2
#define VCSAMPLE_DISPATCH(fn, ...) \
  (active_isa() == Isa::avx2 ? avx2::fn(__VA_ARGS__) : scalar::fn(__VA_ARGS__))
#else
#define VCSAMPLE_DISPATCH(fn, ...) scalar::fn(__VA_ARGS__)
#endif

ArgMin min_margin(const MarginParams& params, std::span<const std::int32_t> ground_counts,
                  std::span<const std::int32_t> sample_counts) {
  return VCSAMPLE_DISPATCH(min_margin, params, ground_counts, sample_counts);
}

void span_counts(std::span<const std::int32_t> prefix, std::span<const std::int32_t> begin,
                 std::span<const std::int32_t> end, std::span<std::int32_t> out) {
  VCSAMPLE_DISPATCH(span_counts, prefix, begin, end, out);
}

void weighted_popcount(std::span<const std::uint64_t> masks, std::size_t words_per_mask,
                       std::span<const std::uint64_t> planes, std::size_t plane_count,
                       std::span<std::int32_t> out) {
  VCSAMPLE_DISPATCH(weighted_popcount, masks, words_per_mask, planes, plane_count, out);
}

void halfplane_mask(const Halfplane& h, std::span<const double> xs, std::span<const double> ys,
                    std::span<std::uint64_t> out) {
  VCSAMPLE_DISPATCH(halfplane_mask, h, xs, ys, out);
}

void disk_mask(const Disk& d, std::span<const double> xs, std::span<const double> ys,
               std::span<std::uint64_t> out) {
  VCSAMPLE_DISPATCH(disk_mask, d, xs, ys, out);
}

#undef VCSAMPLE_DISPATCH

}  // namespace vcsample::simd
