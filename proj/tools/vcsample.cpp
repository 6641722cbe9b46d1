// Command-line front end. Exit codes: 0 success, 1 verification failed,
// 2 parameter error, 3 budget exceeded.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "vcsample/errors.hpp"
#include "vcsample/estimator.hpp"
#include "vcsample/harness.hpp"
#include "vcsample/io.hpp"
#include "vcsample/sampling.hpp"
#include "vcsample/verify.hpp"

using namespace vcsample;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kParamError = 2, kBudget = 3 };

const std::vector<std::string> kProperties{"net", "approx", "sensitive", "relative", "relative-sensitive"};
const std::vector<std::string> kFamilies{"intervals", "halfplanes", "rectangles", "disks"};

bool needs_p(Property property) {
  return property == Property::relative || property == Property::relative_sensitive;
}

void emit(const json& doc, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << doc.dump(2) << '\n';
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw ParameterError("cannot write " + out_path);
  out << doc.dump(2) << '\n';
}

struct SizeArgs {
  std::string property;
  double eps = 0.0;
  std::optional<double> p;
  int d = 0;
  double delta = 0.0;
  double C = 0.0;
};

int run_size(const SizeArgs& a) {
  const Property property = parse_property(a.property);
  if (needs_p(property) && !a.p) throw ParameterError("--p is required for " + a.property);
  std::cout << cell_sample_size(property, a.d, a.eps, a.p.value_or(0.0), a.delta, a.C) << '\n';
  return kOk;
}

struct DrawArgs {
  std::string points;
  std::size_t m = 0;
  std::uint64_t seed = 0;
  std::string out;
  std::optional<std::string> property;
  std::optional<double> eps, p, delta, C;
};

int run_draw(const DrawArgs& a) {
  const GroundSet ground = read_points_csv_file(a.points);
  Sample sample = draw_sample(ground, a.m, a.seed);
  if (a.property) {
    const Property property = parse_property(*a.property);
    sample.provenance = SizeProvenance{std::string(cli_name(property)), a.eps.value_or(0.0), a.p.value_or(0.0),
                                       a.delta.value_or(0.0), a.C.value_or(0.0), 0};
  }
  write_sample_file(a.out, sample, ground);
  return kOk;
}

struct VerifyArgs {
  std::string property;
  std::string points;
  std::string sample;
  std::string family;
  std::optional<double> eps, p;
};

int run_verify(const VerifyArgs& a) {
  const Property property = parse_property(a.property);
  const RangeFamily family(parse_range_kind(a.family));
  const GroundSet ground = read_points_csv_file(a.points);
  const SampleFile file = read_sample_file(a.sample);
  const auto& prov = file.sample.provenance;
  if (!a.eps && !prov) throw ParameterError("--eps is required (the sample file records none)");
  if (needs_p(property) && !a.p && !prov) throw ParameterError("--p is required for " + a.property);
  const double eps = a.eps ? *a.eps : prov->eps;
  const double p = a.p ? *a.p : prov ? prov->p : 0.0;
  if (file.sample.ground_size != ground.size()) throw ParameterError("sample was drawn from a different ground set");

  const RangeSet ranges = enumerate_induced_ranges(family, ground);
  const VerificationReport report = verify(ranges, file.sample, {property, eps, p});
  std::cout << to_json(report).dump(2) << '\n';
  return report.passed ? kOk : kVerifyFailed;
}

struct QueryArgs {
  std::size_t points_size = 0;
  std::string sample;
  std::string family;
  std::string range;
  std::string guarantee;
  std::optional<double> eps, p, delta;
};

int run_query(const QueryArgs& a) {
  const RangeKind kind = parse_range_kind(a.family);
  const RangeParams query = parse_range_params(kind, a.range);
  const SampleFile file = read_sample_file(a.sample);
  const auto& prov = file.sample.provenance;
  GuaranteeSpec g;
  g.kind = parse_guarantee(a.guarantee);
  g.eps = a.eps.value_or(prov ? prov->eps : 0.0);
  g.p = a.p.value_or(prov ? prov->p : 0.0);
  g.delta = a.delta.value_or(prov ? prov->delta : 0.0);
  if (g.kind != Guarantee::none && !(g.eps > 0.0)) throw ParameterError("--eps is required for this guarantee");
  const CountEstimate e = estimate_count(RangeFamily(kind), query, file.points, a.points_size, g);
  std::cout << to_json(e).dump(2) << '\n';
  return kOk;
}

struct ExperimentArgs {
  std::string config;
  std::string out;
  bool timing = false;
};

int run_experiment_cmd(const ExperimentArgs& a) {
  const ExperimentConfig cfg = config_from_json(read_json_file(a.config));
  const ExperimentResult result = run_experiment(cfg);
  emit(to_json(result, a.timing), a.out);
  for (const CellResult& c : result.cells)
    if (c.error) return kBudget;
  return kOk;
}

struct CalibrateArgs {
  std::string config;
  double target = 0.0;
  CalibrationOptions options;
  std::string out;
};

int run_calibrate(const CalibrateArgs& a) {
  const ExperimentConfig cfg = config_from_json(read_json_file(a.config));
  emit(to_json(calibrate_constant(cfg, a.target, a.options)), a.out);
  return kOk;
}

int run_table(const std::string& config) {
  std::cout << size_table_csv(size_table(size_grid_from_json(read_json_file(config))));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sample-size calculators, exhaustive verifiers and Monte-Carlo harness for range spaces"};
  app.require_subcommand(1);
  std::function<int()> action;

  SizeArgs size;
  auto* size_cmd = app.add_subcommand("size", "Sample size for a property");
  size_cmd->add_option("--property", size.property)->required()->check(CLI::IsMember(kProperties));
  size_cmd->add_option("--eps", size.eps)->required();
  size_cmd->add_option("--p", size.p);
  size_cmd->add_option("--d", size.d)->required();
  size_cmd->add_option("--delta", size.delta)->required();
  size_cmd->add_option("--C", size.C)->required();
  size_cmd->callback([&] { action = [&] { return run_size(size); }; });

  DrawArgs draw;
  auto* draw_cmd = app.add_subcommand("draw", "Draw m points with repetition");
  draw_cmd->add_option("--points", draw.points)->required();
  draw_cmd->add_option("--m", draw.m)->required();
  draw_cmd->add_option("--seed", draw.seed)->required();
  draw_cmd->add_option("--out", draw.out)->required();
  draw_cmd->add_option("--property", draw.property, "Record what the sample was sized for")
      ->check(CLI::IsMember(kProperties));
  draw_cmd->add_option("--eps", draw.eps);
  draw_cmd->add_option("--p", draw.p);
  draw_cmd->add_option("--delta", draw.delta);
  draw_cmd->add_option("--C", draw.C);
  draw_cmd->callback([&] { action = [&] { return run_draw(draw); }; });

  VerifyArgs ver;
  auto* verify_cmd = app.add_subcommand("verify", "Exhaustively check a sample against every induced range");
  verify_cmd->add_option("--property", ver.property)->required()->check(CLI::IsMember(kProperties));
  verify_cmd->add_option("--points", ver.points)->required();
  verify_cmd->add_option("--sample", ver.sample)->required();
  verify_cmd->add_option("--family", ver.family)->required()->check(CLI::IsMember(kFamilies));
  verify_cmd->add_option("--eps", ver.eps);
  verify_cmd->add_option("--p", ver.p);
  verify_cmd->callback([&] { action = [&] { return run_verify(ver); }; });

  QueryArgs query;
  auto* query_cmd = app.add_subcommand("query", "Estimate |Q ∩ X| from a sample");
  query_cmd->add_option("--points-size", query.points_size)->required();
  query_cmd->add_option("--sample", query.sample)->required();
  query_cmd->add_option("--family", query.family)->required()->check(CLI::IsMember(kFamilies));
  query_cmd->add_option("--range", query.range, "Comma-separated witness parameters")->required();
  query_cmd->add_option("--guarantee", query.guarantee)
      ->required()
      ->check(CLI::IsMember({"approx", "relative", "sensitive", "none"}));
  query_cmd->add_option("--eps", query.eps);
  query_cmd->add_option("--p", query.p);
  query_cmd->add_option("--delta", query.delta);
  query_cmd->callback([&] { action = [&] { return run_query(query); }; });

  ExperimentArgs exp;
  auto* exp_cmd = app.add_subcommand("experiment", "Run seeded Monte-Carlo trials over a parameter grid");
  exp_cmd->add_option("--config", exp.config)->required();
  exp_cmd->add_option("--out", exp.out, "Write JSON here instead of stdout");
  exp_cmd->add_flag("--timing", exp.timing, "Include wall-clock seconds per cell");
  exp_cmd->callback([&] { action = [&] { return run_experiment_cmd(exp); }; });

  CalibrateArgs cal;
  auto* cal_cmd = app.add_subcommand("calibrate", "Smallest constant C meeting a target failure rate");
  cal_cmd->add_option("--config", cal.config)->required();
  cal_cmd->add_option("--target-delta", cal.target)->required();
  cal_cmd->add_option("--resolution", cal.options.resolution)->capture_default_str();
  cal_cmd->add_option("--ceiling", cal.options.ceiling)->capture_default_str();
  cal_cmd->add_option("--min-trials", cal.options.min_trials)->capture_default_str();
  cal_cmd->add_option("--out", cal.out);
  cal_cmd->callback([&] { action = [&] { return run_calibrate(cal); }; });

  std::string table_config;
  auto* table_cmd = app.add_subcommand("table", "CSV of sample sizes over a grid");
  table_cmd->add_option("--config", table_config)->required();
  table_cmd->callback([&] { action = [&] { return run_table(table_config); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParamError;
  }

  try {
    return action();
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBudget;
  } catch (const InfeasibleError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kParamError;
  }
}
