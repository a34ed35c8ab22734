#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "specpower/types.hpp"

namespace specpower {

enum class FilterStage {
    // consistency stages, in order
    NotAccepted,
    AmbiguousDate,
    ImplausibleDate,
    AmbiguousCpuName,
    MissingNodeCount,
    InconsistentCoreThread,
    ImplausibleCoreThread,
    // comparability stages, in order
    NonIntelAmd,
    NonServerClass,
    MultiNodeOrManySocket,
};

std::string to_string(FilterStage s);

struct ExclusionRecord {
    std::string result_id;
    FilterStage stage;
    std::string detail;  // quotes the offending field value
};

struct FilterReport {
    std::map<FilterStage, int> per_stage_counts;
    int retained_count = 0;
    int input_count = 0;
};

// Thresholds for the stages the source analysis leaves unspecified. Shipped
// in the config file; defaults reproduce the pinned-snapshot stage counts.
struct FilterConfig {
    MonthYear min_plausible_date{2004, 1};
    MonthYear snapshot_date{2024, 6};
    int max_hw_after_test_months = 24;
    std::set<int> allowed_smt{1, 2};
    int max_cores_per_chip = 256;
    int max_nodes = 1;
    int max_sockets = 2;

    static FilterConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

struct FilterOutcome {
    std::vector<BenchmarkRun> retained;
    FilterReport report;
    std::vector<ExclusionRecord> exclusions;
};

// Staged filters; each run is charged to its first failing stage.
FilterOutcome consistency_filter(const std::vector<BenchmarkRun>& runs,
                                 const FilterConfig& config = {});
FilterOutcome comparability_filter(const std::vector<BenchmarkRun>& runs,
                                   const FilterConfig& config = {});

// The hardware availability year, the sole timeline key for trend analysis.
// Requires hw_availability present (guaranteed post consistency filter).
int canonical_year(const BenchmarkRun& run);

}  // namespace specpower
