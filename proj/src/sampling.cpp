#include "vcsample/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "vcsample/errors.hpp"

namespace vcsample {

namespace {

constexpr double kMaxSize = 9007199254740992.0;  // 2^53

std::size_t round_up(double raw) {
  if (!std::isfinite(raw) || raw > kMaxSize) throw ParameterError("sample size overflows");
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(raw)));
}

void require_open_unit(double v, const char* name) {
  if (!(v > 0.0 && v < 1.0)) throw ParameterError(std::string(name) + " must lie in (0, 1)");
}

void require_common(int d, double delta, double C) {
  if (d < 1) throw ParameterError("d must be a positive integer");
  require_open_unit(delta, "delta");
  if (!(C > 0.0) || !std::isfinite(C)) throw ParameterError("C must be positive");
}

}  // namespace

void SamplingParams::validate() const {
  require_open_unit(alpha, "alpha");
  if (!(nu > 0.0 && nu <= 1.0)) throw ParameterError("nu must lie in (0, 1]");
  require_common(d, delta, C);
}

double dist_nu(double r, double s, double nu) {
  if (!(nu > 0.0)) throw ParameterError("nu must be positive");
  return std::fabs(r - s) / (r + s + nu);
}

double sample_size_raw(const SamplingParams& params) {
  params.validate();
  const double lead = params.C / (params.alpha * params.alpha * params.nu);
  return lead * (params.d * std::log(1.0 / params.nu) + std::log(1.0 / params.delta));
}

std::size_t sample_size_base(const SamplingParams& params) { return round_up(sample_size_raw(params)); }

SamplingParams eps_net_params(double eps, int d, double delta, double C) {
  require_open_unit(eps, "eps");
  return SamplingParams{0.25, eps, delta, d, C};
}

SamplingParams eps_approx_params(double eps, int d, double delta, double C) {
  require_open_unit(eps, "eps");
  return SamplingParams{eps / 4.0, 0.25, delta, d, C};
}

SamplingParams relative_params(double p, double eps, int d, double delta, double C) {
  require_open_unit(p, "p");
  require_open_unit(eps, "eps");
  return SamplingParams{eps / 9.0, p / 2.0, delta, d, C};
}

std::size_t size_eps_net(double eps, int d, double delta, double C) {
  return sample_size_base(eps_net_params(eps, d, delta, C));
}

std::size_t size_eps_approx(double eps, int d, double delta, double C) {
  return sample_size_base(eps_approx_params(eps, d, delta, C));
}

std::size_t size_relative(double p, double eps, int d, double delta, double C) {
  return sample_size_base(relative_params(p, eps, d, delta, C));
}

std::size_t sensitive_level_count(double eps) {
  require_open_unit(eps, "eps");
  return static_cast<std::size_t>(std::ceil(800.0 / (eps * eps)));
}

double size_sensitive_raw(double eps, int d, double delta, double C) {
  require_common(d, delta, C);
  const auto levels = static_cast<double>(sensitive_level_count(eps));
  return (C / (eps * eps)) * (d * std::log(1.0 / eps) + std::log(levels / delta));
}

std::size_t size_sensitive(double eps, int d, double delta, double C) {
  return round_up(size_sensitive_raw(eps, d, delta, C));
}

std::vector<std::int32_t> Sample::multiplicities() const {
  std::vector<std::int32_t> out(ground_size, 0);
  for (std::size_t i : indices) {
    if (i >= ground_size) throw ParameterError("sample index outside the ground set");
    ++out[i];
  }
  return out;
}

Sample draw_sample(const GroundSet& points, std::size_t m, std::uint64_t seed) {
  if (m < 1) throw ParameterError("sample size must be at least 1");
  if (m > static_cast<std::size_t>(std::numeric_limits<std::int32_t>::max())) {
    throw ParameterError("sample size exceeds 2^31 - 1");
  }
  Sample out;
  out.ground_size = points.size();
  out.seed = seed;
  out.indices.resize(m);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, points.size() - 1);
  for (std::size_t& i : out.indices) i = pick(rng);
  return out;
}

Sample take_all(const GroundSet& points) {
  Sample out;
  out.ground_size = points.size();
  out.indices.resize(points.size());
  std::iota(out.indices.begin(), out.indices.end(), 0);
  return out;
}

double sample_weight(const InducedRange& range, const Sample& sample) {
  if (sample.m() == 0) throw ParameterError("sample is empty");
  if (!range.members.empty() && range.members.back() >= sample.ground_size) {
    throw ParameterError("range and sample refer to different ground sets");
  }
  std::size_t hits = 0;
  for (std::size_t i : sample.indices) {
    if (std::binary_search(range.members.begin(), range.members.end(), i)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(sample.m());
}

}  // namespace vcsample
