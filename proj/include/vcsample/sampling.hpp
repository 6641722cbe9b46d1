#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vcsample/geometry.hpp"
#include "vcsample/range_space.hpp"

namespace vcsample {

// Parameters of the base sampling bound; C stands in for the hidden constant.
struct SamplingParams {
  double alpha = 0.25;
  double nu = 0.25;
  double delta = 0.25;
  int d = 1;
  double C = 1.0;

  void validate() const;
};

// |r - s| / (r + s + nu)
double dist_nu(double r, double s, double nu);

// (C / (alpha^2 nu)) (d ln(1/nu) + ln(1/delta)), before rounding up.
double sample_size_raw(const SamplingParams& params);
std::size_t sample_size_base(const SamplingParams& params);

// alpha = 1/4, nu = eps.
SamplingParams eps_net_params(double eps, int d, double delta, double C);
// alpha = eps/4, nu = 1/4.
SamplingParams eps_approx_params(double eps, int d, double delta, double C);
// alpha = eps/9, nu = p/2.
SamplingParams relative_params(double p, double eps, int d, double delta, double C);

std::size_t size_eps_net(double eps, int d, double delta, double C);
std::size_t size_eps_approx(double eps, int d, double delta, double C);
std::size_t size_relative(double p, double eps, int d, double delta, double C);

// Number of levels M = ceil(800 / eps^2) the sensitive bound is union-bounded over.
std::size_t sensitive_level_count(double eps);
double size_sensitive_raw(double eps, int d, double delta, double C);
// ceil((C/eps^2) (d ln(1/eps) + ln(M/delta))).
std::size_t size_sensitive(double eps, int d, double delta, double C);

// What a sample was sized for, carried along for estimate bounds.
struct SizeProvenance {
  std::string property;  // net | approx | sensitive | relative | relative-sensitive | explicit
  double eps = 0.0;
  double p = 0.0;
  double delta = 0.0;
  double C = 0.0;
  int d = 0;
};

// Multiset of ground-set indices drawn with repetition.
struct Sample {
  std::vector<std::size_t> indices;
  std::size_t ground_size = 0;
  std::uint64_t seed = 0;
  std::optional<SizeProvenance> provenance;

  std::size_t m() const { return indices.size(); }
  // Draw count per ground point.
  std::vector<std::int32_t> multiplicities() const;
};

// m independent uniform draws, deterministic given the seed.
Sample draw_sample(const GroundSet& points, std::size_t m, std::uint64_t seed);

// Every point exactly once (N = X).
Sample take_all(const GroundSet& points);

// s(R) = |R ∩ N| / |N|, counting repeated draws.
double sample_weight(const InducedRange& range, const Sample& sample);

}  // namespace vcsample
