#include "vcsample/io.hpp"

#include <cmath>
#include <fstream>

#include "vcsample/errors.hpp"

namespace vcsample {

using nlohmann::json;

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json to_json(const RangeParams& witness) {
  return std::visit(
      [](const auto& w) -> json {
        using W = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<W, Interval>) {
          return {{"kind", "interval"}, {"lo", w.lo}, {"hi", w.hi}};
        } else if constexpr (std::is_same_v<W, Halfplane>) {
          return {{"kind", "halfplane"}, {"a", w.a}, {"b", w.b}, {"c", w.c}};
        } else if constexpr (std::is_same_v<W, Rectangle>) {
          return {{"kind", "rectangle"}, {"x_lo", w.x_lo}, {"x_hi", w.x_hi}, {"y_lo", w.y_lo}, {"y_hi", w.y_hi}};
        } else {
          return {{"kind", "disk"}, {"cx", w.cx}, {"cy", w.cy}, {"r", w.r}};
        }
      },
      witness);
}

json to_json(const InducedRange& range) {
  return {{"members", range.members}, {"witness_params", to_json(range.witness)}};
}

json to_json(const VerificationReport& report) {
  json out = {{"property", std::string(to_string(report.property))},
              {"passed", report.passed},
              {"worst_margin", number_or_null(report.worst_margin)},
              {"worst_range", report.worst_range ? to_json(*report.worst_range) : json(nullptr)},
              {"ranges_checked", report.ranges_checked}};
  if (!report.clause.empty()) out["clause"] = report.clause;
  return out;
}

json to_json(const CountEstimate& e) {
  return {{"estimate", e.estimate},
          {"additive_error_bound", e.additive_error_bound},
          {"relative_error_bound", e.relative_error_bound ? number_or_null(*e.relative_error_bound) : json(nullptr)},
          {"guarantee", std::string(to_string(e.guarantee))},
          {"confidence", e.confidence},
          {"plug_in", e.plug_in}};
}

json sample_to_json(const Sample& sample, const GroundSet& ground) {
  if (sample.ground_size != ground.size()) throw ParameterError("sample was drawn from a different ground set");
  json points = json::array();
  for (std::size_t i : sample.indices) {
    if (ground.dim() == 1) points.push_back({ground.xs()[i]});
    else points.push_back({ground.xs()[i], ground.ys()[i]});
  }
  json out = {{"schema_version", kSchemaVersion},
              {"seed", sample.seed},
              {"ground_size", sample.ground_size},
              {"m", sample.m()},
              {"dim", ground.dim()},
              {"indices", sample.indices},
              {"points", std::move(points)}};
  if (sample.provenance) {
    const SizeProvenance& p = *sample.provenance;
    out["provenance"] = {{"property", p.property}, {"eps", p.eps}, {"p", p.p},
                         {"delta", p.delta},       {"C", p.C},     {"d", p.d}};
  }
  return out;
}

SampleFile sample_from_json(const json& doc) {
  try {
    if (doc.at("schema_version").get<int>() != kSchemaVersion) throw ParameterError("unsupported sample schema version");
    Sample sample;
    sample.seed = doc.at("seed").get<std::uint64_t>();
    sample.ground_size = doc.at("ground_size").get<std::size_t>();
    sample.indices = doc.at("indices").get<std::vector<std::size_t>>();
    if (sample.indices.empty()) throw ParameterError("sample is empty");
    const int dim = doc.at("dim").get<int>();
    const auto& rows = doc.at("points");
    if (rows.size() != sample.indices.size()) throw ParameterError("sample points and indices differ in length");
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto& row : rows) {
      if (static_cast<int>(row.size()) != dim) throw ParameterError("sample point has wrong dimension");
      xs.push_back(row.at(0).get<double>());
      if (dim == 2) ys.push_back(row.at(1).get<double>());
    }
    for (std::size_t i : sample.indices) {
      if (i >= sample.ground_size) throw ParameterError("sample index outside the ground set");
    }
    if (doc.contains("provenance")) {
      const auto& p = doc["provenance"];
      sample.provenance = SizeProvenance{p.at("property").get<std::string>(), p.at("eps").get<double>(),
                                         p.at("p").get<double>(),            p.at("delta").get<double>(),
                                         p.at("C").get<double>(),            p.at("d").get<int>()};
    }
    return SampleFile{std::move(sample), GroundSet(dim, std::move(xs), std::move(ys))};
  } catch (const json::exception& e) {
    throw ParameterError(std::string("malformed sample file: ") + e.what());
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParameterError("malformed JSON in " + path + ": " + e.what());
  }
}

SampleFile read_sample_file(const std::string& path) { return sample_from_json(read_json_file(path)); }

void write_sample_file(const std::string& path, const Sample& sample, const GroundSet& ground) {
  std::ofstream out(path);
  if (!out) throw ParameterError("cannot write " + path);
  out << sample_to_json(sample, ground).dump() << '\n';
}

}  // namespace vcsample
