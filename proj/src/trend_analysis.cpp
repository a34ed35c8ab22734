#include "specpower/trend_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "specpower/run_filters.hpp"

namespace specpower {
namespace {

double quantile(const std::vector<double>& sorted, double q) {
    if (sorted.empty()) throw std::invalid_argument("quantile of empty sample");
    if (sorted.size() == 1) return sorted.front();
    double pos = q * static_cast<double>(sorted.size() - 1);
    size_t lo = static_cast<size_t>(std::floor(pos));
    size_t hi = static_cast<size_t>(std::ceil(pos));
    double frac = pos - static_cast<double>(lo);
    return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

double mean_of(const std::vector<double>& values) {
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

double pop_std(const std::vector<double>& values, double mean) {
    double acc = 0.0;
    for (double v : values) acc += (v - mean) * (v - mean);
    return std::sqrt(acc / static_cast<double>(values.size()));
}

}  // namespace

DistributionSummary summarize(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("summarize: empty sample");
    std::sort(values.begin(), values.end());
    DistributionSummary s;
    s.n = static_cast<int>(values.size());
    s.mean = mean_of(values);
    s.std_dev = pop_std(values, s.mean);
    s.min = values.front();
    s.max = values.back();
    s.p25 = quantile(values, 0.25);
    s.median = quantile(values, 0.5);
    s.p75 = quantile(values, 0.75);
    return s;
}

SampleSelector single(ValueSelector f) {
    return [f = std::move(f)](const AnalyzedRun& r) { return std::vector<double>{f(r)}; };
}

std::map<YearVendorKey, DistributionSummary> bin_by_year_vendor(
    const std::vector<AnalyzedRun>& runs, const SampleSelector& selector) {
    std::map<YearVendorKey, std::vector<double>> bins;
    for (const AnalyzedRun& r : runs) {
        YearVendorKey key{canonical_year(r.run), r.run.vendor};
        auto samples = selector(r);
        auto& bin = bins[key];
        bin.insert(bin.end(), samples.begin(), samples.end());
    }
    std::map<YearVendorKey, DistributionSummary> out;
    for (auto& [key, values] : bins) out[key] = summarize(std::move(values));
    return out;
}

double era_mean(const std::vector<AnalyzedRun>& runs,
                const std::function<bool(int year)>& era, const ValueSelector& selector) {
    std::vector<double> values;
    for (const AnalyzedRun& r : runs) {
        if (era(canonical_year(r.run))) values.push_back(selector(r));
    }
    if (values.empty()) throw std::invalid_argument("era_mean: era selects no run");
    return mean_of(values);
}

std::map<Vendor, int> top_k_vendor_counts(const std::vector<AnalyzedRun>& runs,
                                          const ValueSelector& selector, int k) {
    if (k < 0 || k > static_cast<int>(runs.size())) {
        throw std::invalid_argument("top_k_vendor_counts: k out of range");
    }
    std::vector<std::pair<double, const AnalyzedRun*>> ranked;
    ranked.reserve(runs.size());
    for (const AnalyzedRun& r : runs) ranked.emplace_back(selector(r), &r);
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second->run.result_id < b.second->run.result_id;
    });
    std::map<Vendor, int> counts;
    for (int i = 0; i < k; ++i) counts[ranked[static_cast<size_t>(i)].second->run.vendor]++;
    return counts;
}

std::map<std::optional<int>, std::map<std::string, double>> feature_share(
    const std::vector<AnalyzedRun>& runs, const FeatureSelector& selector, bool per_year) {
    std::map<std::optional<int>, std::map<std::string, int>> counts;
    std::map<std::optional<int>, int> totals;
    for (const AnalyzedRun& r : runs) {
        std::optional<int> key =
            per_year ? std::optional<int>(canonical_year(r.run)) : std::nullopt;
        counts[key][selector(r)]++;
        totals[key]++;
    }
    std::map<std::optional<int>, std::map<std::string, double>> out;
    for (const auto& [key, per_category] : counts) {
        for (const auto& [category, n] : per_category) {
            out[key][category] = static_cast<double>(n) / static_cast<double>(totals[key]);
        }
    }
    return out;
}

double submission_rate(const std::vector<AnalyzedRun>& runs, int first_year, int last_year) {
    if (last_year < first_year) throw std::invalid_argument("submission_rate: empty range");
    int count = 0;
    for (const AnalyzedRun& r : runs) {
        int year = canonical_year(r.run);
        if (year >= first_year && year <= last_year) ++count;
    }
    return static_cast<double>(count) / static_cast<double>(last_year - first_year + 1);
}

CorrelationScan correlation_scan(const std::vector<AnalyzedRun>& runs,
                                 const std::vector<NamedSelector>& features) {
    if (runs.size() < 3) throw std::invalid_argument("correlation_scan: need >= 3 runs");
    CorrelationScan scan;
    std::vector<std::vector<double>> columns(features.size());
    for (size_t f = 0; f < features.size(); ++f) {
        scan.feature_names.push_back(features[f].name);
        columns[f].reserve(runs.size());
        for (const AnalyzedRun& r : runs) columns[f].push_back(features[f].selector(r));
    }

    size_t nf = features.size();
    scan.matrix.assign(nf, std::vector<std::optional<double>>(nf));
    std::vector<double> means(nf), stds(nf);
    for (size_t f = 0; f < nf; ++f) {
        means[f] = mean_of(columns[f]);
        stds[f] = pop_std(columns[f], means[f]);
    }
    for (size_t a = 0; a < nf; ++a) {
        for (size_t b = 0; b < nf; ++b) {
            if (a == b) {
                scan.matrix[a][b] = 1.0;
                continue;
            }
            if (stds[a] == 0.0 || stds[b] == 0.0) continue;  // undefined marker
            double cov = 0.0;
            for (size_t i = 0; i < runs.size(); ++i) {
                cov += (columns[a][i] - means[a]) * (columns[b][i] - means[b]);
            }
            cov /= static_cast<double>(runs.size());
            scan.matrix[a][b] = cov / (stds[a] * stds[b]);
        }
    }

    for (Vendor vendor : {Vendor::Intel, Vendor::AMD}) {
        std::vector<FeatureStats> stats(nf);
        for (size_t f = 0; f < nf; ++f) {
            std::vector<double> values;
            for (size_t i = 0; i < runs.size(); ++i) {
                if (runs[i].run.vendor == vendor) values.push_back(columns[f][i]);
            }
            if (values.empty()) continue;
            FeatureStats fs;
            fs.n = static_cast<int>(values.size());
            fs.mean = mean_of(values);
            fs.std_dev = pop_std(values, fs.mean);
            stats[f] = fs;
        }
        scan.per_vendor[vendor] = std::move(stats);
    }
    return scan;
}

}  // namespace specpower
