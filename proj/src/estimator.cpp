#include "vcsample/estimator.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "vcsample/errors.hpp"

namespace vcsample {

std::string_view to_string(Guarantee guarantee) {
  switch (guarantee) {
    case Guarantee::approx: return "approx";
    case Guarantee::relative: return "relative";
    case Guarantee::sensitive: return "sensitive";
    case Guarantee::none: return "none";
  }
  return "?";
}

Guarantee parse_guarantee(std::string_view name) {
  if (name == "approx") return Guarantee::approx;
  if (name == "relative") return Guarantee::relative;
  if (name == "sensitive") return Guarantee::sensitive;
  if (name == "none") return Guarantee::none;
  throw ParameterError("unknown guarantee '" + std::string(name) + "'");
}

CountEstimate bound_for_weight(double s, std::size_t ground_size, const GuaranteeSpec& g) {
  if (g.kind != Guarantee::none && !(g.eps > 0.0 && g.eps <= 1.0)) throw ParameterError("eps must lie in (0, 1]");
  if (g.kind == Guarantee::relative && !(g.p > 0.0 && g.p < 1.0)) throw ParameterError("p must lie in (0, 1)");
  if (!(g.delta >= 0.0 && g.delta < 1.0)) throw ParameterError("delta must lie in [0, 1)");
  const auto n = static_cast<double>(ground_size);
  CountEstimate out;
  out.estimate = s * n;
  out.guarantee = g.kind;
  out.confidence = 1.0 - g.delta;
  switch (g.kind) {
    case Guarantee::approx:
      out.additive_error_bound = g.eps * n;
      break;
    case Guarantee::relative:
      out.additive_error_bound = (1.0 + g.eps) * g.p * n;
      out.relative_error_bound = g.eps;
      break;
    case Guarantee::sensitive:
      out.additive_error_bound = 0.5 * g.eps * (std::sqrt(s) + 2.0 * g.eps) * n;
      out.relative_error_bound = out.estimate > 0.0 ? out.additive_error_bound / out.estimate
                                                    : std::numeric_limits<double>::infinity();
      out.plug_in = true;
      break;
    case Guarantee::none:
      out.additive_error_bound = n;
      out.confidence = 1.0;
      break;
  }
  return out;
}

CountEstimate estimate_count(const RangeFamily& family, const RangeParams& query, const GroundSet& sample_points,
                             std::size_t ground_size, const GuaranteeSpec& guarantee) {
  if (sample_points.size() == 0) throw ParameterError("sample is empty");
  if (ground_size == 0) throw ParameterError("ground set size must be positive");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < sample_points.size(); ++i) {
    if (contains(family, query, sample_points.point(i))) ++hits;
  }
  const double s = static_cast<double>(hits) / static_cast<double>(sample_points.size());
  return bound_for_weight(s, ground_size, guarantee);
}

CountEstimate estimate_count(const RangeFamily& family, const RangeParams& query, const Sample& sample,
                             const GroundSet& points, const GuaranteeSpec& guarantee) {
  if (sample.m() == 0) throw ParameterError("sample is empty");
  if (sample.ground_size != points.size()) throw ParameterError("sample was drawn from a different ground set");
  return estimate_count(family, query, points.select(sample.indices), points.size(), guarantee);
}

}  // namespace vcsample
