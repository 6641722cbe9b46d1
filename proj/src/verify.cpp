#include "vcsample/verify.hpp"

#include <cmath>
#include <string>

#include "vcsample/errors.hpp"
#include "vcsample/simd/kernels.hpp"

namespace vcsample {

namespace {

void require_eps(double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) throw ParameterError("eps must lie in (0, 1]");
}

void require_p(double p) {
  if (!(p > 0.0 && p < 1.0)) throw ParameterError("p must lie in (0, 1)");
}

simd::MarginRule rule_for(Property property) {
  switch (property) {
    case Property::eps_net: return simd::MarginRule::net;
    case Property::eps_approx: return simd::MarginRule::approx;
    case Property::sensitive: return simd::MarginRule::sensitive;
    case Property::relative: return simd::MarginRule::relative;
    case Property::relative_sensitive: return simd::MarginRule::relative_sensitive;
  }
  return simd::MarginRule::approx;
}

VerificationReport run_rule(const RangeSet& ranges, std::span<const std::int32_t> sample_counts, std::size_t m,
                            Property property, simd::MarginRule rule, double eps, double p) {
  if (m == 0) throw ParameterError("sample is empty");
  if (sample_counts.size() != ranges.size()) throw ParameterError("sample counts do not match the range set");
  const auto params = simd::make_margin_params(rule, eps, p, ranges.ground().size(), m);
  const simd::ArgMin worst = simd::min_margin(params, ranges.ground_counts(), sample_counts);

  VerificationReport report;
  report.property = property;
  report.ranges_checked = ranges.size();
  report.worst_margin = worst.value;
  report.passed = worst.value >= 0.0;
  if (ranges.size() > 0) {
    report.worst_index = worst.index;
    report.worst_range = ranges.at(worst.index);
  }
  return report;
}

template <typename Fn>
VerificationReport with_ranges(const GroundSet& points, const RangeFamily& family, Fn fn) {
  const RangeSet ranges = enumerate_induced_ranges(family, points);
  return fn(ranges);
}

}  // namespace

std::string_view to_string(Property property) {
  switch (property) {
    case Property::eps_net: return "eps_net";
    case Property::eps_approx: return "eps_approx";
    case Property::sensitive: return "sensitive";
    case Property::relative: return "relative";
    case Property::relative_sensitive: return "relative_sensitive";
  }
  return "?";
}

std::string_view cli_name(Property property) {
  switch (property) {
    case Property::eps_net: return "net";
    case Property::eps_approx: return "approx";
    case Property::sensitive: return "sensitive";
    case Property::relative: return "relative";
    case Property::relative_sensitive: return "relative-sensitive";
  }
  return "?";
}

Property parse_property(std::string_view name) {
  if (name == "net" || name == "eps_net") return Property::eps_net;
  if (name == "approx" || name == "eps_approx") return Property::eps_approx;
  if (name == "sensitive") return Property::sensitive;
  if (name == "relative") return Property::relative;
  if (name == "relative-sensitive" || name == "relative_sensitive") return Property::relative_sensitive;
  throw ParameterError("unknown property '" + std::string(name) + "'");
}

VerificationReport verify(const RangeSet& ranges, std::span<const std::int32_t> sample_counts, std::size_t m,
                          const PropertySpec& spec) {
  require_eps(spec.eps);
  const bool relative = spec.property == Property::relative || spec.property == Property::relative_sensitive;
  if (relative) require_p(spec.p);
  return run_rule(ranges, sample_counts, m, spec.property, rule_for(spec.property), spec.eps,
                  relative ? spec.p : 0.0);
}

VerificationReport verify(const RangeSet& ranges, const Sample& sample, const PropertySpec& spec) {
  if (sample.ground_size != ranges.ground().size()) {
    throw ParameterError("sample was drawn from a different ground set");
  }
  const auto counts = ranges.sample_counts(sample.multiplicities());
  return verify(ranges, counts, sample.m(), spec);
}

VerificationReport verify_eps_net(const RangeSet& ranges, const Sample& sample, double eps) {
  return verify(ranges, sample, {Property::eps_net, eps, 0.0});
}
VerificationReport verify_eps_approx(const RangeSet& ranges, const Sample& sample, double eps) {
  return verify(ranges, sample, {Property::eps_approx, eps, 0.0});
}
VerificationReport verify_sensitive(const RangeSet& ranges, const Sample& sample, double eps) {
  return verify(ranges, sample, {Property::sensitive, eps, 0.0});
}
VerificationReport verify_relative(const RangeSet& ranges, const Sample& sample, double p, double eps) {
  return verify(ranges, sample, {Property::relative, eps, p});
}
VerificationReport verify_relative_sensitive(const RangeSet& ranges, const Sample& sample, double p,
                                             double eps) {
  return verify(ranges, sample, {Property::relative_sensitive, eps, p});
}

VerificationReport verify_eps_net(const GroundSet& points, const Sample& sample, double eps,
                                  const RangeFamily& family) {
  return with_ranges(points, family, [&](const RangeSet& r) { return verify_eps_net(r, sample, eps); });
}
VerificationReport verify_eps_approx(const GroundSet& points, const Sample& sample, double eps,
                                     const RangeFamily& family) {
  return with_ranges(points, family, [&](const RangeSet& r) { return verify_eps_approx(r, sample, eps); });
}
VerificationReport verify_sensitive(const GroundSet& points, const Sample& sample, double eps,
                                    const RangeFamily& family) {
  return with_ranges(points, family, [&](const RangeSet& r) { return verify_sensitive(r, sample, eps); });
}
VerificationReport verify_relative(const GroundSet& points, const Sample& sample, double p, double eps,
                                   const RangeFamily& family) {
  return with_ranges(points, family, [&](const RangeSet& r) { return verify_relative(r, sample, p, eps); });
}
VerificationReport verify_relative_sensitive(const GroundSet& points, const Sample& sample, double p,
                                             double eps, const RangeFamily& family) {
  return with_ranges(points, family,
                     [&](const RangeSet& r) { return verify_relative_sensitive(r, sample, p, eps); });
}

NetApproxImplication check_sensitive_implies_net_approx(const RangeSet& ranges, const Sample& sample,
                                                        double eps) {
  require_eps(eps);
  const auto counts = ranges.sample_counts(sample.multiplicities());
  NetApproxImplication out;
  out.sensitive = verify(ranges, counts, sample.m(), {Property::sensitive, eps, 0.0});
  out.net = verify(ranges, counts, sample.m(), {Property::eps_net, eps * eps, 0.0});
  out.approx = verify(ranges, counts, sample.m(), {Property::eps_approx, eps * (1.0 + eps) / 2.0, 0.0});
  out.holds = !out.sensitive.passed || (out.net.passed && out.approx.passed);
  return out;
}

RelativeImplication check_sensitive_implies_relative(const RangeSet& ranges, const Sample& sample, double p,
                                                     double eps) {
  require_eps(eps);
  require_p(p);
  const auto counts = ranges.sample_counts(sample.multiplicities());
  RelativeImplication out;
  out.sensitive = verify(ranges, counts, sample.m(), {Property::sensitive, eps * std::sqrt(p), 0.0});
  out.heavy = run_rule(ranges, counts, sample.m(), Property::relative, simd::MarginRule::relative_heavy, eps, p);
  out.heavy.clause = "heavy";
  out.light = run_rule(ranges, counts, sample.m(), Property::relative, simd::MarginRule::relative_light, eps, p);
  out.light.clause = "light";
  out.holds = !out.sensitive.passed || out.heavy.passed;
  return out;
}

}  // namespace vcsample
