#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "vcsample/geometry.hpp"
#include "vcsample/sampling.hpp"

namespace vcsample {

enum class Guarantee { approx, relative, sensitive, none };

std::string_view to_string(Guarantee guarantee);
Guarantee parse_guarantee(std::string_view name);

// The property the sample was sized (or verified) for.
struct GuaranteeSpec {
  Guarantee kind = Guarantee::none;
  double eps = 0.0;
  double p = 0.0;      // relative only
  double delta = 0.0;  // failure probability of the construction
};

// Approximate |Q ∩ X|. For `relative`, the relative bound applies to ranges
// of weight >= p and the additive bound to lighter ones. For `sensitive` the
// bound substitutes the observed weight s for r, using sqrt(r) <= sqrt(s) + eps.
struct CountEstimate {
  double estimate = 0.0;
  double additive_error_bound = 0.0;
  std::optional<double> relative_error_bound;
  Guarantee guarantee = Guarantee::none;
  double confidence = 1.0;
  bool plug_in = false;
};

// `sample_points` are the drawn coordinates, one row per draw.
CountEstimate estimate_count(const RangeFamily& family, const RangeParams& query, const GroundSet& sample_points,
                             std::size_t ground_size, const GuaranteeSpec& guarantee);

CountEstimate estimate_count(const RangeFamily& family, const RangeParams& query, const Sample& sample,
                             const GroundSet& points, const GuaranteeSpec& guarantee);

// Bound attached to a sample weight s, without evaluating a query.
CountEstimate bound_for_weight(double s, std::size_t ground_size, const GuaranteeSpec& guarantee);

}  // namespace vcsample
