#pragma once

#include <string>

#include <json.hpp>

#include "vcsample/estimator.hpp"
#include "vcsample/geometry.hpp"
#include "vcsample/sampling.hpp"
#include "vcsample/verify.hpp"

namespace vcsample {

inline constexpr int kSchemaVersion = 1;

nlohmann::json to_json(const RangeParams& witness);
nlohmann::json to_json(const InducedRange& range);
// Non-finite margins are written as null.
nlohmann::json to_json(const VerificationReport& report);
nlohmann::json to_json(const CountEstimate& estimate);

// Sample files carry the drawn coordinates so that queries need only the
// sample and |X|.
struct SampleFile {
  Sample sample;
  GroundSet points;  // one row per draw
};

nlohmann::json sample_to_json(const Sample& sample, const GroundSet& ground);
SampleFile sample_from_json(const nlohmann::json& doc);
SampleFile read_sample_file(const std::string& path);
void write_sample_file(const std::string& path, const Sample& sample, const GroundSet& ground);

nlohmann::json read_json_file(const std::string& path);

// Finite doubles as numbers, +-inf and NaN as null.
nlohmann::json number_or_null(double v);

}  // namespace vcsample
