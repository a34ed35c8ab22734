#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "specpower/types.hpp"

namespace specpower {

// A run together with its derived metrics; the unit all aggregations work on.
struct AnalyzedRun {
    BenchmarkRun run;
    RunMetrics metrics;
};

struct DistributionSummary {
    int n = 0;
    double mean = 0.0;
    double std_dev = 0.0;  // population standard deviation
    double min = 0.0;
    double p25 = 0.0;
    double median = 0.0;
    double p75 = 0.0;
    double max = 0.0;
};

DistributionSummary summarize(std::vector<double> values);

// Selectors yield the samples a run contributes to an aggregation. Most
// metrics contribute one sample; pooled selectors (e.g. relative efficiency
// across several load levels) may contribute several.
using SampleSelector = std::function<std::vector<double>(const AnalyzedRun&)>;
using ValueSelector = std::function<double(const AnalyzedRun&)>;

SampleSelector single(ValueSelector f);

struct YearVendorKey {
    int year;
    Vendor vendor;
    auto operator<=>(const YearVendorKey&) const = default;
};

std::map<YearVendorKey, DistributionSummary> bin_by_year_vendor(
    const std::vector<AnalyzedRun>& runs, const SampleSelector& selector);

// Arithmetic mean of a metric over runs whose canonical year satisfies the
// era predicate. Throws std::invalid_argument when the era selects no run.
double era_mean(const std::vector<AnalyzedRun>& runs,
                const std::function<bool(int year)>& era, const ValueSelector& selector);

// Vendor counts among the k runs with the highest metric; ties broken by
// result_id for determinism.
std::map<Vendor, int> top_k_vendor_counts(const std::vector<AnalyzedRun>& runs,
                                          const ValueSelector& selector, int k);

using FeatureSelector = std::function<std::string(const AnalyzedRun&)>;

// Fractions per category, optionally keyed by canonical year. Fractions per
// key sum to 1.
std::map<std::optional<int>, std::map<std::string, double>> feature_share(
    const std::vector<AnalyzedRun>& runs, const FeatureSelector& selector, bool per_year);

// Runs per year over an inclusive year range.
double submission_rate(const std::vector<AnalyzedRun>& runs, int first_year, int last_year);

struct FeatureStats {
    int n = 0;
    double mean = 0.0;
    double std_dev = 0.0;
};

struct CorrelationScan {
    std::vector<std::string> feature_names;
    // Pairwise Pearson coefficients; nullopt marks an undefined coefficient
    // (zero-variance feature).
    std::vector<std::vector<std::optional<double>>> matrix;
    std::map<Vendor, std::vector<FeatureStats>> per_vendor;
};

struct NamedSelector {
    std::string name;
    ValueSelector selector;
};

CorrelationScan correlation_scan(const std::vector<AnalyzedRun>& runs,
                                 const std::vector<NamedSelector>& features);

}  // namespace specpower
