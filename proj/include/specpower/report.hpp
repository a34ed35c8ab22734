#pragma once

#include <map>
#include <string>
#include <vector>

#include "specpower/run_filters.hpp"
#include "specpower/trend_analysis.hpp"

namespace specpower::report {

// Fixed emission formatting: 4 significant digits for ratios, one decimal
// for watts. Reruns on identical inputs are byte-identical.
std::string format_ratio(double v);
std::string format_watts(double v);

// One analysis bundle: file name -> file content. Tables are TSV with a
// leading "# population:" comment and a header row; figure data matches the
// fig1..fig6 naming used throughout the docs.
using Bundle = std::map<std::string, std::string>;

Bundle build_tables(const std::vector<AnalyzedRun>& parsed_population,
                    const std::vector<AnalyzedRun>& filtered_population,
                    const FilterReport& consistency_report,
                    const FilterReport& comparability_report,
                    const std::vector<ExclusionRecord>& exclusions);

Bundle build_svgs(const std::vector<AnalyzedRun>& parsed_population,
                  const std::vector<AnalyzedRun>& filtered_population);

// Human-readable dossier for one run: parsed fields, filter verdict, metrics.
std::string explain_run(const BenchmarkRun& run, const RunMetrics* run_metrics,
                        const std::vector<ExclusionRecord>& exclusions);

}  // namespace specpower::report
