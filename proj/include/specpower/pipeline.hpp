#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "specpower/document.hpp"
#include "specpower/result_parser.hpp"
#include "specpower/run_filters.hpp"
#include "specpower/trend_analysis.hpp"

namespace specpower {

struct PipelineConfig {
    std::string index_url =
        "https://www.spec.org/power_ssj2008/results/power_ssj2008.html";
    std::filesystem::path cache_dir = "cache";
    std::string cutoff = "2024-06-30";  // YYYY-MM-DD
    std::filesystem::path output_dir = "out";
    std::set<std::string> emit{"table", "records", "svg"};
    int jobs = 1;
    bool offline = false;
    FilterConfig filters;
    ParserOptions parser;

    static PipelineConfig from_file(const std::filesystem::path& path);
    void validate() const;  // throws std::invalid_argument
};

// parse -> consistency filter -> comparability filter -> metrics.
struct PipelineResult {
    std::vector<BenchmarkRun> parsed;
    std::vector<ParseFailure> failures;
    FilterReport consistency_report;
    FilterReport comparability_report;
    std::vector<ExclusionRecord> exclusions;        // both phases, in order
    std::vector<AnalyzedRun> parsed_population;     // consistency-retained, with metrics
    std::vector<AnalyzedRun> filtered_population;   // comparability-retained, with metrics
};

PipelineResult run_pipeline(const std::vector<RawResultDocument>& docs,
                            const FilterConfig& filters = {}, const ParserOptions& parser = {},
                            int jobs = 1);

}  // namespace specpower
