#pragma once

#include <nlohmann/json.hpp>

#include "specpower/types.hpp"

namespace specpower {

// Line-delimited record schema. Each line is one self-describing JSON object
// with a "kind" tag ("run", "metrics", "parse_failure").

nlohmann::json to_json(const BenchmarkRun& run);
BenchmarkRun run_from_json(const nlohmann::json& j);

nlohmann::json to_json(const RunMetrics& m);
RunMetrics metrics_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ParseFailure& f);
ParseFailure parse_failure_from_json(const nlohmann::json& j);

}  // namespace specpower
