#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "vcsample/geometry.hpp"
#include "vcsample/range_space.hpp"
#include "vcsample/verify.hpp"

namespace vcsample {

// Calibration could not meet the target below the ceiling.
class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

enum class Generator { uniform, clustered, grid };

Generator parse_generator(std::string_view name);
std::string_view to_string(Generator generator);

// uniform: [0,1]^dim. clustered: 5 Gaussian clusters (sigma 0.02) with
// centres in [0.1,0.9]^dim. grid: regular lattice with power-of-two spacing,
// so coordinates and collinearity are exact.
GroundSet generate_points(Generator generator, std::size_t n, int dim, std::uint64_t seed);

struct GroundSource {
  std::optional<std::string> file;
  Generator generator = Generator::uniform;
  std::size_t n = 100;
  std::uint64_t seed = 1;
};

struct ExperimentConfig {
  RangeKind family = RangeKind::intervals;
  GroundSource ground;
  Property property = Property::eps_net;
  std::vector<double> eps{0.1};
  std::vector<double> p{};  // relative properties only
  std::vector<double> delta{0.25};
  std::size_t trials = 100;
  double C = 1.0;
  std::uint64_t seed = 1;
  bool take_all = false;  // debug: every trial uses N = X
  std::size_t threads = 0;  // 0: hardware concurrency
};

ExperimentConfig config_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const ExperimentConfig& cfg);

GroundSet load_ground(const ExperimentConfig& cfg);

// Cross-check recorded alongside the main verifier in every trial:
// sensitive  -> the sample is also an eps^2-net and an eps-approximation,
// relative   -> passing relative_sensitive implies passing relative.
struct CompanionCheck {
  std::string name;
  std::size_t antecedent_passes = 0;
  std::size_t violations = 0;
};

struct CellResult {
  double eps = 0.0;
  double p = 0.0;
  double delta = 0.0;
  int d = 0;
  std::size_t sample_size = 0;
  std::size_t trials = 0;
  std::size_t failures = 0;
  double failure_rate = 0.0;
  std::optional<double> mean_worst_margin;  // over trials with a finite margin
  std::optional<double> max_worst_margin;
  double min_worst_margin = 0.0;
  std::optional<CompanionCheck> companion;
  double wall_seconds = 0.0;
  std::optional<std::string> error;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<CellResult> cells;
};

// Seed of trial t in grid cell c.
std::uint64_t trial_seed(std::uint64_t seed, std::size_t cell, std::size_t trial);

// Sample size the calculators prescribe for one grid cell.
std::size_t cell_sample_size(Property property, int d, double eps, double p, double delta, double C);

ExperimentResult run_experiment(const ExperimentConfig& cfg);
// Reuses an enumeration of the configured ground set.
ExperimentResult run_experiment(const ExperimentConfig& cfg, const RangeSet& ranges);

// Wall-clock timings are omitted unless asked for, so reruns are byte-identical.
nlohmann::json to_json(const ExperimentResult& result, bool include_timing = false);

struct CalibrationOptions {
  double resolution = 0.05;
  double ceiling = 64.0;
  std::size_t min_trials = 200;
};

struct CalibrationProbe {
  double C = 0.0;
  double max_failure_rate = 0.0;
  bool passed = false;
};

struct CalibrationResult {
  double C = 0.0;
  std::vector<CalibrationProbe> probes;
};

// Smallest C on the resolution lattice (doubling, then bisection) whose
// failure rate is <= target_delta in every grid cell.
CalibrationResult calibrate_constant(const ExperimentConfig& cfg, double target_delta,
                                     const CalibrationOptions& options = {});
CalibrationResult calibrate_constant(const ExperimentConfig& cfg, const RangeSet& ranges, double target_delta,
                                     const CalibrationOptions& options = {});
nlohmann::json to_json(const CalibrationResult& result);

struct SizeGrid {
  std::vector<Property> properties;
  std::vector<RangeKind> families;
  std::vector<double> eps;
  std::vector<double> p;
  std::vector<double> delta;
  std::vector<double> C;
};

SizeGrid size_grid_from_json(const nlohmann::json& doc);

struct SizeRow {
  Property property = Property::eps_net;
  RangeKind family = RangeKind::intervals;
  int d = 0;
  double eps = 0.0;
  double p = 0.0;
  double delta = 0.0;
  double C = 0.0;
  std::size_t size = 0;
  // Relative rows: the additive approximation needed for the same accuracy at
  // weight p, i.e. size_eps_approx(eps * p).
  std::optional<std::size_t> plain_size;
};

std::vector<SizeRow> size_table(const SizeGrid& grid);
std::string size_table_csv(const std::vector<SizeRow>& rows);

}  // namespace vcsample
