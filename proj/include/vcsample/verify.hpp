#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "vcsample/range_space.hpp"
#include "vcsample/sampling.hpp"

namespace vcsample {

enum class Property { eps_net, eps_approx, sensitive, relative, relative_sensitive };

std::string_view to_string(Property property);
// CLI spelling: net | approx | sensitive | relative | relative-sensitive.
Property parse_property(std::string_view name);
std::string_view cli_name(Property property);

struct PropertySpec {
  Property property = Property::eps_approx;
  double eps = 0.1;
  double p = 0.0;  // relative variants only
};

// Outcome of one exhaustive check. worst_margin is the smallest signed slack
// over all ranges (already widened by the 1e-9 relative tolerance); +inf when
// no range is constrained. For eps-nets the slack of a heavy range is
// (hits - 1) / m, so a missed heavy range has slack -1/m.
struct VerificationReport {
  Property property = Property::eps_approx;
  std::string clause;  // non-empty when only one clause of a definition was checked
  bool passed = true;
  double worst_margin = 0.0;
  std::size_t worst_index = 0;
  std::optional<InducedRange> worst_range;
  std::size_t ranges_checked = 0;
};

// Checks one property against precomputed per-range sample counts.
VerificationReport verify(const RangeSet& ranges, std::span<const std::int32_t> sample_counts,
                          std::size_t m, const PropertySpec& spec);
VerificationReport verify(const RangeSet& ranges, const Sample& sample, const PropertySpec& spec);

VerificationReport verify_eps_net(const RangeSet& ranges, const Sample& sample, double eps);
VerificationReport verify_eps_approx(const RangeSet& ranges, const Sample& sample, double eps);
VerificationReport verify_sensitive(const RangeSet& ranges, const Sample& sample, double eps);
VerificationReport verify_relative(const RangeSet& ranges, const Sample& sample, double p, double eps);
VerificationReport verify_relative_sensitive(const RangeSet& ranges, const Sample& sample, double p,
                                             double eps);

// Same, enumerating the ranges of `family` on `points` first.
VerificationReport verify_eps_net(const GroundSet& points, const Sample& sample, double eps,
                                  const RangeFamily& family);
VerificationReport verify_eps_approx(const GroundSet& points, const Sample& sample, double eps,
                                     const RangeFamily& family);
VerificationReport verify_sensitive(const GroundSet& points, const Sample& sample, double eps,
                                    const RangeFamily& family);
VerificationReport verify_relative(const GroundSet& points, const Sample& sample, double p, double eps,
                                   const RangeFamily& family);
VerificationReport verify_relative_sensitive(const GroundSet& points, const Sample& sample, double p,
                                             double eps, const RangeFamily& family);

// A sensitive eps-approximation is an eps^2-net and an eps(1+eps)/2-approximation.
struct NetApproxImplication {
  bool holds = true;
  VerificationReport sensitive;
  VerificationReport net;     // at eps^2
  VerificationReport approx;  // at eps(1+eps)/2
};
NetApproxImplication check_sensitive_implies_net_approx(const RangeSet& ranges, const Sample& sample,
                                                        double eps);

// A sensitive eps*sqrt(p)-approximation satisfies the heavy clause of a
// relative (p, eps)-approximation. The light clause is reported, not required.
struct RelativeImplication {
  bool holds = true;
  VerificationReport sensitive;  // at eps * sqrt(p)
  VerificationReport heavy;
  VerificationReport light;
};
RelativeImplication check_sensitive_implies_relative(const RangeSet& ranges, const Sample& sample,
                                                     double p, double eps);

}  // namespace vcsample
