#include "vcsample/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <limits>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "vcsample/errors.hpp"
#include "vcsample/io.hpp"
#include "vcsample/sampling.hpp"

namespace vcsample {

using nlohmann::json;

namespace {

constexpr std::uint64_t kCellStride = 1000000;
constexpr int kClusters = 5;
constexpr double kClusterSigma = 0.02;

bool is_relative(Property property) {
  return property == Property::relative || property == Property::relative_sensitive;
}

std::vector<double> number_list(const json& doc, const char* key) {
  if (!doc.contains(key)) return {};
  const json& v = doc.at(key);
  std::vector<double> out;
  if (v.is_number()) {
    out.push_back(v.get<double>());
  } else if (v.is_array()) {
    for (const json& e : v) {
      if (!e.is_number()) throw ParameterError(std::string("grid.") + key + " must hold numbers");
      out.push_back(e.get<double>());
    }
  } else {
    throw ParameterError(std::string("grid.") + key + " must be a number or an array");
  }
  return out;
}

template <typename T>
T get_or(const json& doc, const char* key, T fallback) {
  if (!doc.contains(key)) return fallback;
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception&) {
    throw ParameterError(std::string("config field '") + key + "' has the wrong type");
  }
}

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

struct Cell {
  double eps;
  double p;
  double delta;
};

std::vector<Cell> grid_cells(const ExperimentConfig& cfg) {
  const std::vector<double> ps = is_relative(cfg.property) ? cfg.p : std::vector<double>{0.0};
  std::vector<Cell> cells;
  for (double eps : cfg.eps)
    for (double p : ps)
      for (double delta : cfg.delta) cells.push_back({eps, p, delta});
  return cells;
}

struct TrialOutcome {
  bool passed = true;
  double worst_margin = 0.0;
  bool antecedent = false;
  bool violation = false;
};

// Fixed-size pool over trial indices; each worker keeps its own count buffers.
template <typename Fn>
void parallel_trials(std::size_t trials, std::size_t threads, Fn fn) {
  std::size_t workers = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, trials);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto body = [&] {
    try {
      std::vector<std::int32_t> counts;
      for (std::size_t t = next++; t < trials; t = next++) fn(t, counts);
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = trials;
    }
  };
  if (workers <= 1) {
    body();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(body);
  }
  if (failure) std::rethrow_exception(failure);
}

TrialOutcome run_trial(const ExperimentConfig& cfg, const RangeSet& ranges, const Cell& cell, std::size_t m,
                       std::uint64_t seed, std::vector<std::int32_t>& counts) {
  const GroundSet& ground = ranges.ground();
  const Sample sample = cfg.take_all ? take_all(ground) : draw_sample(ground, m, seed);
  const auto mult = sample.multiplicities();
  counts.resize(ranges.size());
  ranges.sample_counts(mult, counts);

  const std::size_t size = sample.m();
  const VerificationReport main = verify(ranges, counts, size, {cfg.property, cell.eps, cell.p});
  TrialOutcome out{main.passed, main.worst_margin, false, false};

  if (cfg.property == Property::sensitive) {
    out.antecedent = main.passed;
    if (main.passed) {
      const double e = cell.eps;
      const bool net = verify(ranges, counts, size, {Property::eps_net, e * e, 0.0}).passed;
      const bool approx = verify(ranges, counts, size, {Property::eps_approx, e * (1.0 + e) / 2.0, 0.0}).passed;
      out.violation = !(net && approx);
    }
  } else if (is_relative(cfg.property)) {
    const VerificationReport levels =
        cfg.property == Property::relative_sensitive
            ? main
            : verify(ranges, counts, size, {Property::relative_sensitive, cell.eps, cell.p});
    out.antecedent = levels.passed;
    if (levels.passed) {
      const bool relative = cfg.property == Property::relative
                                ? main.passed
                                : verify(ranges, counts, size, {Property::relative, cell.eps, cell.p}).passed;
      out.violation = !relative;
    }
  }
  return out;
}

}  // namespace

Generator parse_generator(std::string_view name) {
  if (name == "uniform") return Generator::uniform;
  if (name == "clustered") return Generator::clustered;
  if (name == "grid") return Generator::grid;
  throw ParameterError("unknown generator '" + std::string(name) + "' (uniform, clustered, grid)");
}

std::string_view to_string(Generator generator) {
  switch (generator) {
    case Generator::uniform: return "uniform";
    case Generator::clustered: return "clustered";
    case Generator::grid: return "grid";
  }
  return "?";
}

GroundSet generate_points(Generator generator, std::size_t n, int dim, std::uint64_t seed) {
  if (n == 0) throw ParameterError("generator size must be at least 1");
  if (dim != 1 && dim != 2) throw ParameterError("generator dimension must be 1 or 2");
  std::vector<double> xs(n), ys(n, 0.0);
  std::mt19937_64 rng(seed);

  switch (generator) {
    case Generator::uniform: {
      std::uniform_real_distribution<double> u(0.0, 1.0);
      for (std::size_t i = 0; i < n; ++i) {
        xs[i] = u(rng);
        if (dim == 2) ys[i] = u(rng);
      }
      break;
    }
    case Generator::clustered: {
      std::uniform_real_distribution<double> centre(0.1, 0.9);
      std::uniform_int_distribution<int> pick(0, kClusters - 1);
      std::normal_distribution<double> noise(0.0, kClusterSigma);
      double cx[kClusters], cy[kClusters];
      for (int c = 0; c < kClusters; ++c) {
        cx[c] = centre(rng);
        cy[c] = dim == 2 ? centre(rng) : 0.0;
      }
      for (std::size_t i = 0; i < n; ++i) {
        const int c = pick(rng);
        xs[i] = cx[c] + noise(rng);
        if (dim == 2) ys[i] = cy[c] + noise(rng);
      }
      break;
    }
    case Generator::grid: {
      const std::size_t side =
          dim == 1 ? n : static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
      double spacing = 1.0;
      while (spacing * static_cast<double>(side) > 1.0) spacing /= 2.0;
      for (std::size_t i = 0; i < n; ++i) {
        xs[i] = spacing * static_cast<double>(i % side);
        if (dim == 2) ys[i] = spacing * static_cast<double>(i / side);
      }
      break;
    }
  }
  return GroundSet(dim, std::move(xs), std::move(ys));
}

ExperimentConfig config_from_json(const json& doc) {
  if (!doc.is_object()) throw ParameterError("experiment config must be a JSON object");
  ExperimentConfig cfg;
  cfg.family = parse_range_kind(get_or<std::string>(doc, "family", "intervals"));
  cfg.property = parse_property(get_or<std::string>(doc, "property", "net"));

  if (doc.contains("ground_set")) {
    const json& g = doc.at("ground_set");
    if (!g.is_object()) throw ParameterError("ground_set must be an object");
    if (g.contains("file")) {
      cfg.ground.file = get_or<std::string>(g, "file", "");
    } else {
      cfg.ground.generator = parse_generator(get_or<std::string>(g, "generator", "uniform"));
      cfg.ground.n = get_or<std::size_t>(g, "n", cfg.ground.n);
      cfg.ground.seed = get_or<std::uint64_t>(g, "seed", cfg.ground.seed);
    }
  }

  if (doc.contains("grid")) {
    const json& grid = doc.at("grid");
    if (!grid.is_object()) throw ParameterError("grid must be an object");
    if (grid.contains("eps")) cfg.eps = number_list(grid, "eps");
    cfg.p = number_list(grid, "p");
    if (grid.contains("delta")) cfg.delta = number_list(grid, "delta");
  }

  const auto trials = get_or<long long>(doc, "trials", static_cast<long long>(cfg.trials));
  if (trials < 1) throw ParameterError("trials must be at least 1");
  cfg.trials = static_cast<std::size_t>(trials);
  cfg.C = get_or<double>(doc, "C", cfg.C);
  cfg.seed = get_or<std::uint64_t>(doc, "seed", cfg.seed);
  cfg.take_all = get_or<bool>(doc, "take_all", false);
  cfg.threads = get_or<std::size_t>(doc, "threads", 0);

  if (cfg.eps.empty() || cfg.delta.empty()) throw ParameterError("parameter grid must be non-empty");
  if (is_relative(cfg.property) && cfg.p.empty()) throw ParameterError("relative properties need grid.p");
  if (!(cfg.C > 0.0) || !std::isfinite(cfg.C)) throw ParameterError("C must be positive");
  // Surface bad grid values before any trial runs.
  const int d = RangeFamily(cfg.family).vc_dimension();
  for (const Cell& c : grid_cells(cfg)) cell_sample_size(cfg.property, d, c.eps, c.p, c.delta, cfg.C);
  return cfg;
}

json to_json(const ExperimentConfig& cfg) {
  json ground;
  if (cfg.ground.file) {
    ground = {{"file", *cfg.ground.file}};
  } else {
    ground = {{"generator", std::string(to_string(cfg.ground.generator))},
              {"n", cfg.ground.n},
              {"seed", cfg.ground.seed}};
  }
  json grid = {{"eps", cfg.eps}, {"delta", cfg.delta}};
  if (is_relative(cfg.property)) grid["p"] = cfg.p;
  return {{"family", std::string(to_string(cfg.family))},
          {"ground_set", ground},
          {"property", std::string(cli_name(cfg.property))},
          {"grid", grid},
          {"trials", cfg.trials},
          {"C", cfg.C},
          {"seed", cfg.seed},
          {"take_all", cfg.take_all}};
}

GroundSet load_ground(const ExperimentConfig& cfg) {
  const int dim = RangeFamily(cfg.family).point_dimension();
  if (cfg.ground.file) {
    GroundSet g = read_points_csv_file(*cfg.ground.file);
    if (g.dim() != dim) throw ParameterError("ground set dimension does not match the family");
    return g;
  }
  return generate_points(cfg.ground.generator, cfg.ground.n, dim, cfg.ground.seed);
}

std::uint64_t trial_seed(std::uint64_t seed, std::size_t cell, std::size_t trial) {
  return seed + static_cast<std::uint64_t>(cell) * kCellStride + static_cast<std::uint64_t>(trial);
}

std::size_t cell_sample_size(Property property, int d, double eps, double p, double delta, double C) {
  switch (property) {
    case Property::eps_net: return size_eps_net(eps, d, delta, C);
    case Property::eps_approx: return size_eps_approx(eps, d, delta, C);
    case Property::sensitive: return size_sensitive(eps, d, delta, C);
    // One sample of the relative size serves every level i.
    case Property::relative:
    case Property::relative_sensitive: return size_relative(p, eps, d, delta, C);
  }
  return 0;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  const GroundSet ground = load_ground(cfg);
  const RangeFamily family(cfg.family);
  try {
    const RangeSet ranges = enumerate_induced_ranges(family, ground);
    return run_experiment(cfg, ranges);
  } catch (const BudgetExceeded& e) {
    ExperimentResult result{cfg, {}};
    for (const Cell& c : grid_cells(cfg)) {
      CellResult cell;
      cell.eps = c.eps;
      cell.p = c.p;
      cell.delta = c.delta;
      cell.d = family.vc_dimension();
      cell.sample_size = cell_sample_size(cfg.property, cell.d, c.eps, c.p, c.delta, cfg.C);
      cell.error = e.what();
      result.cells.push_back(std::move(cell));
    }
    return result;
  }
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, const RangeSet& ranges) {
  if (ranges.family().kind() != cfg.family) throw ParameterError("range set family does not match the config");
  if (cfg.trials < 1) throw ParameterError("trials must be at least 1");
  const int d = ranges.family().vc_dimension();
  ExperimentResult result{cfg, {}};
  const auto cells = grid_cells(cfg);
  if (cells.empty()) throw ParameterError("parameter grid must be non-empty");

  for (std::size_t ci = 0; ci < cells.size(); ++ci) {
    const Cell& c = cells[ci];
    const auto start = std::chrono::steady_clock::now();
    CellResult cell;
    cell.eps = c.eps;
    cell.p = c.p;
    cell.delta = c.delta;
    cell.d = d;
    cell.sample_size = cfg.take_all ? ranges.ground().size()
                                    : cell_sample_size(cfg.property, d, c.eps, c.p, c.delta, cfg.C);
    cell.trials = cfg.trials;

    std::vector<TrialOutcome> outcomes(cfg.trials);
    parallel_trials(cfg.trials, cfg.threads, [&](std::size_t t, std::vector<std::int32_t>& counts) {
      outcomes[t] = run_trial(cfg, ranges, c, cell.sample_size, trial_seed(cfg.seed, ci, t), counts);
    });

    // Reduce in trial order so the sums do not depend on scheduling.
    double sum = 0.0;
    std::size_t finite = 0;
    double max_margin = -std::numeric_limits<double>::infinity();
    double min_margin = std::numeric_limits<double>::infinity();
    CompanionCheck companion;
    for (const TrialOutcome& o : outcomes) {
      if (!o.passed) ++cell.failures;
      if (std::isfinite(o.worst_margin)) {
        sum += o.worst_margin;
        ++finite;
        max_margin = std::max(max_margin, o.worst_margin);
      }
      min_margin = std::min(min_margin, o.worst_margin);
      companion.antecedent_passes += o.antecedent;
      companion.violations += o.violation;
    }
    cell.failure_rate = static_cast<double>(cell.failures) / static_cast<double>(cfg.trials);
    if (finite) {
      cell.mean_worst_margin = sum / static_cast<double>(finite);
      cell.max_worst_margin = max_margin;
    }
    cell.min_worst_margin = min_margin;
    if (cfg.property == Property::sensitive) {
      companion.name = "sensitive_implies_net_and_approx";
      cell.companion = companion;
    } else if (is_relative(cfg.property)) {
      companion.name = "relative_sensitive_implies_relative";
      cell.companion = companion;
    }
    cell.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    result.cells.push_back(std::move(cell));
  }
  return result;
}

json to_json(const ExperimentResult& result, bool include_timing) {
  json cells = json::array();
  for (const CellResult& c : result.cells) {
    json cell = {{"eps", c.eps},
                 {"delta", c.delta},
                 {"d", c.d},
                 {"sample_size", c.sample_size},
                 {"trials", c.trials},
                 {"failures", c.failures},
                 {"failure_rate", c.failure_rate},
                 {"mean_worst_margin", c.mean_worst_margin ? json(*c.mean_worst_margin) : json(nullptr)},
                 {"max_worst_margin", c.max_worst_margin ? json(*c.max_worst_margin) : json(nullptr)},
                 {"min_worst_margin", number_or_null(c.min_worst_margin)}};
    if (is_relative(result.config.property)) cell["p"] = c.p;
    if (c.companion) {
      cell["companion"] = {{"name", c.companion->name},
                           {"antecedent_passes", c.companion->antecedent_passes},
                           {"violations", c.companion->violations}};
    }
    if (c.error) cell["error"] = *c.error;
    if (include_timing) cell["wall_seconds"] = c.wall_seconds;
    cells.push_back(std::move(cell));
  }
  return {{"schema_version", kSchemaVersion}, {"config", to_json(result.config)}, {"cells", cells}};
}

CalibrationResult calibrate_constant(const ExperimentConfig& cfg, double target_delta,
                                     const CalibrationOptions& options) {
  const GroundSet ground = load_ground(cfg);
  const RangeSet ranges = enumerate_induced_ranges(RangeFamily(cfg.family), ground);
  return calibrate_constant(cfg, ranges, target_delta, options);
}

CalibrationResult calibrate_constant(const ExperimentConfig& cfg, const RangeSet& ranges, double target_delta,
                                     const CalibrationOptions& options) {
  if (!(target_delta > 0.0 && target_delta < 1.0)) throw ParameterError("target delta must lie in (0, 1)");
  if (!(options.resolution > 0.0) || !(options.ceiling >= options.resolution))
    throw ParameterError("calibration needs 0 < resolution <= ceiling");

  ExperimentConfig probe_cfg = cfg;
  probe_cfg.trials = std::max(cfg.trials, options.min_trials);
  CalibrationResult result;

  // C = k * resolution for integer k, so probes never drift off the lattice.
  // With resolution 1/q, k/q is the correctly rounded lattice value.
  const double q = std::round(1.0 / options.resolution);
  const bool reciprocal = std::abs(q * options.resolution - 1.0) < 1e-12;
  auto lattice = [&](long long k) {
    return reciprocal ? static_cast<double>(k) / q : static_cast<double>(k) * options.resolution;
  };
  auto probe = [&](long long k) {
    probe_cfg.C = lattice(k);
    const ExperimentResult run = run_experiment(probe_cfg, ranges);
    double worst = 0.0;
    for (const CellResult& c : run.cells) worst = std::max(worst, c.failure_rate);
    const bool ok = worst <= target_delta;
    result.probes.push_back({probe_cfg.C, worst, ok});
    return ok;
  };

  const auto max_k = static_cast<long long>(std::floor(options.ceiling / options.resolution + 1e-9));
  long long lo = 0;  // largest k known to fail (0: none probed)
  long long hi = 1;
  while (!probe(hi)) {
    lo = hi;
    if (hi >= max_k) {
      std::ostringstream msg;
      msg << "property/grid infeasible at desk scale: failure rate above " << target_delta << " at C = "
          << format_number(lattice(hi));
      throw InfeasibleError(msg.str());
    }
    hi = std::min(hi * 2, max_k);
  }
  while (hi - lo > 1) {
    const long long mid = lo + (hi - lo) / 2;
    if (probe(mid)) hi = mid;
    else lo = mid;
  }
  result.C = lattice(hi);
  return result;
}

json to_json(const CalibrationResult& result) {
  json probes = json::array();
  for (const CalibrationProbe& p : result.probes)
    probes.push_back({{"C", p.C}, {"max_failure_rate", p.max_failure_rate}, {"passed", p.passed}});
  return {{"schema_version", kSchemaVersion}, {"C", result.C}, {"probes", probes}};
}

SizeGrid size_grid_from_json(const json& doc) {
  if (!doc.is_object()) throw ParameterError("size grid must be a JSON object");
  SizeGrid grid;
  auto strings = [&](const char* key) {
    std::vector<std::string> out;
    if (!doc.contains(key)) return out;
    for (const json& e : doc.at(key)) out.push_back(e.get<std::string>());
    return out;
  };
  for (const auto& s : strings("properties")) grid.properties.push_back(parse_property(s));
  for (const auto& s : strings("families")) grid.families.push_back(parse_range_kind(s));
  grid.eps = number_list(doc, "eps");
  grid.p = number_list(doc, "p");
  grid.delta = number_list(doc, "delta");
  grid.C = number_list(doc, "C");
  return grid;
}

std::vector<SizeRow> size_table(const SizeGrid& grid) {
  std::vector<SizeRow> rows;
  for (Property property : grid.properties) {
    const std::vector<double> ps = is_relative(property) ? grid.p : std::vector<double>{0.0};
    for (RangeKind kind : grid.families) {
      const int d = RangeFamily(kind).vc_dimension();
      for (double eps : grid.eps)
        for (double p : ps)
          for (double delta : grid.delta)
            for (double C : grid.C) {
              SizeRow row{property, kind, d, eps, p, delta, C, cell_sample_size(property, d, eps, p, delta, C), {}};
              if (is_relative(property)) row.plain_size = size_eps_approx(eps * p, d, delta, C);
              rows.push_back(row);
            }
    }
  }
  return rows;
}

std::string size_table_csv(const std::vector<SizeRow>& rows) {
  std::ostringstream out;
  out << "schema_version,property,family,d,eps,p,delta,C,size,plain_size\n";
  for (const SizeRow& r : rows) {
    out << kSchemaVersion << ',' << cli_name(r.property) << ',' << to_string(r.family) << ',' << r.d << ','
        << format_number(r.eps) << ',' << (is_relative(r.property) ? format_number(r.p) : "") << ','
        << format_number(r.delta) << ',' << format_number(r.C) << ',' << r.size << ',';
    if (r.plain_size) out << *r.plain_size;
    out << '\n';
  }
  return out.str();
}

}  // namespace vcsample
