#include "specpower/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "specpower/metrics.hpp"
#include "specpower/svg_plot.hpp"

namespace specpower::report {
namespace {

std::string population_header(size_t n, const char* which) {
    std::ostringstream out;
    out << "# population: " << n << " runs (" << which << ")\n";
    return out.str();
}

std::vector<double> pooled_relative_efficiency_60_90(const AnalyzedRun& r) {
    // The four levels contribute four separate samples to their bin.
    std::vector<double> samples;
    for (double level : {0.6, 0.7, 0.8, 0.9}) {
        samples.push_back(r.metrics.relative_efficiency.at(level));
    }
    return samples;
}

std::string distribution_table(const std::vector<AnalyzedRun>& runs,
                               const SampleSelector& selector,
                               std::string (*fmt)(double) = format_ratio) {
    std::ostringstream out;
    out << population_header(runs.size(), "filtered");
    out << "year\tvendor\tn\tmean\tstd\tmin\tp25\tmedian\tp75\tmax\n";
    auto bins = bin_by_year_vendor(runs, selector);
    for (const auto& [key, s] : bins) {
        out << key.year << "\t" << to_string(key.vendor) << "\t" << s.n << "\t" << fmt(s.mean)
            << "\t" << fmt(s.std_dev) << "\t" << fmt(s.min) << "\t" << fmt(s.p25) << "\t"
            << fmt(s.median) << "\t" << fmt(s.p75) << "\t" << fmt(s.max) << "\n";
    }
    return out.str();
}

std::string node_category(const AnalyzedRun& r) {
    if (!r.run.nodes) return "unknown";
    return *r.run.nodes == 1 ? "1" : (*r.run.nodes <= 4 ? "2-4" : ">4");
}

PlotSeries vendor_series(const std::vector<AnalyzedRun>& runs, Vendor vendor,
                         const ValueSelector& selector) {
    PlotSeries s;
    s.label = to_string(vendor);
    s.color = vendor == Vendor::Intel ? "#1f77b4" : "#d62728";
    for (const AnalyzedRun& r : runs) {
        if (r.run.vendor != vendor) continue;
        // Spread within the year by month for readability.
        double x = canonical_year(r.run) +
                   (r.run.hw_availability.value->month - 1) / 12.0;
        s.points.emplace_back(x, selector(r));
    }
    std::sort(s.points.begin(), s.points.end());
    return s;
}

std::string scatter_svg(const std::vector<AnalyzedRun>& runs, const std::string& title,
                        const std::string& y_label, const ValueSelector& selector) {
    return render_svg_plot(title, "hardware availability year", y_label,
                           {vendor_series(runs, Vendor::Intel, selector),
                            vendor_series(runs, Vendor::AMD, selector)});
}

}  // namespace

std::string format_ratio(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

std::string format_watts(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f", v);
    return buf;
}

Bundle build_tables(const std::vector<AnalyzedRun>& parsed_population,
                    const std::vector<AnalyzedRun>& filtered_population,
                    const FilterReport& consistency_report,
                    const FilterReport& comparability_report,
                    const std::vector<ExclusionRecord>& exclusions) {
    Bundle bundle;

    {
        std::ostringstream out;
        out << "phase\tstage\tcount\n";
        out << "consistency\tinput\t" << consistency_report.input_count << "\n";
        for (const auto& [stage, count] : consistency_report.per_stage_counts) {
            out << "consistency\t" << to_string(stage) << "\t" << count << "\n";
        }
        out << "consistency\tretained\t" << consistency_report.retained_count << "\n";
        out << "comparability\tinput\t" << comparability_report.input_count << "\n";
        for (const auto& [stage, count] : comparability_report.per_stage_counts) {
            out << "comparability\t" << to_string(stage) << "\t" << count << "\n";
        }
        out << "comparability\tretained\t" << comparability_report.retained_count << "\n";
        bundle["filter_report.tsv"] = out.str();
    }

    {
        std::ostringstream out;
        out << "result_id\tstage\tdetail\n";
        for (const auto& e : exclusions) {
            out << e.result_id << "\t" << to_string(e.stage) << "\t" << e.detail << "\n";
        }
        bundle["exclusions.tsv"] = out.str();
    }

    {
        // Fig. 1 works on the parsed (unfiltered) population.
        std::ostringstream out;
        out << population_header(parsed_population.size(), "parsed");
        out << "year\tfeature\tcategory\tshare\n";
        struct Feature {
            const char* name;
            FeatureSelector selector;
        };
        std::vector<Feature> features = {
            {"os_family", [](const AnalyzedRun& r) { return to_string(r.run.os_family); }},
            {"vendor", [](const AnalyzedRun& r) { return to_string(r.run.vendor); }},
            {"nodes", node_category},
        };
        for (const auto& feature : features) {
            auto shares = feature_share(parsed_population, feature.selector, true);
            for (const auto& [year, per_category] : shares) {
                for (const auto& [category, share] : per_category) {
                    out << *year << "\t" << feature.name << "\t" << category << "\t"
                        << format_ratio(share) << "\n";
                }
            }
        }
        bundle["fig1_feature_share.tsv"] = out.str();
    }

    bundle["fig2_per_socket_power.tsv"] = distribution_table(
        filtered_population,
        single([](const AnalyzedRun& r) { return r.metrics.per_socket_power.at(1.0); }),
        format_watts);
    bundle["fig3_overall_efficiency.tsv"] = distribution_table(
        filtered_population,
        single([](const AnalyzedRun& r) { return r.metrics.overall_efficiency; }));
    bundle["fig4_relative_efficiency.tsv"] =
        distribution_table(filtered_population, pooled_relative_efficiency_60_90);
    bundle["fig5_idle_fraction.tsv"] = distribution_table(
        filtered_population,
        single([](const AnalyzedRun& r) { return r.metrics.idle_fraction; }));
    bundle["fig6_eiq.tsv"] = distribution_table(
        filtered_population, single([](const AnalyzedRun& r) { return r.metrics.eiq; }));

    return bundle;
}

Bundle build_svgs(const std::vector<AnalyzedRun>& parsed_population,
                  const std::vector<AnalyzedRun>& filtered_population) {
    Bundle bundle;

    {
        // Fig. 1: per-year shares of the two features that move most.
        auto linux_share = feature_share(
            parsed_population,
            [](const AnalyzedRun& r) { return to_string(r.run.os_family); }, true);
        auto amd_share = feature_share(
            parsed_population, [](const AnalyzedRun& r) { return to_string(r.run.vendor); },
            true);
        PlotSeries linux_series{"Linux share", "#2ca02c", true, {}};
        PlotSeries amd_series{"AMD share", "#d62728", true, {}};
        for (const auto& [year, per_category] : linux_share) {
            auto it = per_category.find("Linux");
            linux_series.points.emplace_back(*year, it == per_category.end() ? 0.0 : it->second);
        }
        for (const auto& [year, per_category] : amd_share) {
            auto it = per_category.find("AMD");
            amd_series.points.emplace_back(*year, it == per_category.end() ? 0.0 : it->second);
        }
        bundle["fig1_feature_share.svg"] = render_svg_plot(
            "Feature shares per year", "hardware availability year", "share of runs",
            {linux_series, amd_series});
    }

    bundle["fig2_per_socket_power.svg"] =
        scatter_svg(filtered_population, "Per-socket power at full load", "W per socket",
                    [](const AnalyzedRun& r) { return r.metrics.per_socket_power.at(1.0); });
    bundle["fig3_overall_efficiency.svg"] =
        scatter_svg(filtered_population, "Overall efficiency", "ssj_ops per watt",
                    [](const AnalyzedRun& r) { return r.metrics.overall_efficiency; });
    bundle["fig4_relative_efficiency.svg"] = scatter_svg(
        filtered_population, "Mean relative efficiency at 60-90% load", "relative efficiency",
        [](const AnalyzedRun& r) {
            double sum = 0;
            for (double level : {0.6, 0.7, 0.8, 0.9}) {
                sum += r.metrics.relative_efficiency.at(level);
            }
            return sum / 4.0;
        });
    bundle["fig5_idle_fraction.svg"] =
        scatter_svg(filtered_population, "Idle fraction", "idle power / full-load power",
                    [](const AnalyzedRun& r) { return r.metrics.idle_fraction; });
    bundle["fig6_eiq.svg"] =
        scatter_svg(filtered_population, "Extrapolated-idle quotient", "EIQ",
                    [](const AnalyzedRun& r) { return r.metrics.eiq; });
    return bundle;
}

std::string explain_run(const BenchmarkRun& run, const RunMetrics* run_metrics,
                        const std::vector<ExclusionRecord>& exclusions) {
    std::ostringstream out;
    out << "result: " << run.result_id << "\n";
    out << "  accepted: " << (run.accepted ? "yes" : "no") << "\n";
    auto date_line = [&](const char* name, const DateField& d) {
        out << "  " << name << ": ";
        if (d.ok()) out << d.value->to_string();
        else out << "(" << (d.status == DateStatus::Missing ? "missing"
                            : d.status == DateStatus::Ambiguous ? "ambiguous" : "malformed")
                 << (d.raw.empty() ? "" : ": \"" + d.raw + "\"") << ")";
        out << "\n";
    };
    date_line("test date", run.test_date);
    date_line("publication", run.submission_date);
    date_line("hardware availability", run.hw_availability);
    date_line("software availability", run.sw_availability);
    out << "  cpu: " << run.cpu_name << " (" << to_string(run.vendor) << ", "
        << to_string(run.marketing_class) << ", " << format_watts(run.cpu_nominal_mhz)
        << " MHz)\n";
    out << "  topology: ";
    if (run.nodes) out << *run.nodes << " node(s), ";
    else out << "node count unknown, ";
    out << run.sockets << " socket(s), " << run.cores_total << " cores, " << run.threads_total
        << " threads\n";
    out << "  os: " << run.os_name << " (" << to_string(run.os_family) << ")\n";
    out << "  memory: " << format_watts(run.memory_gb) << " GB\n";

    auto excl = std::find_if(exclusions.begin(), exclusions.end(), [&](const ExclusionRecord& e) {
        return e.result_id == run.result_id;
    });
    if (excl != exclusions.end()) {
        out << "  filter verdict: excluded at " << to_string(excl->stage) << " (" << excl->detail
            << ")\n";
    } else {
        out << "  filter verdict: retained\n";
    }

    if (run_metrics) {
        const RunMetrics& m = *run_metrics;
        out << "  overall efficiency: " << format_ratio(m.overall_efficiency)
            << " ssj_ops/W (reported " << format_ratio(run.reported_overall_efficiency) << ")\n";
        out << "  idle fraction: " << format_ratio(m.idle_fraction) << "\n";
        out << "  extrapolated idle: " << format_watts(m.extrapolated_idle_w) << " W"
            << (m.extrapolated_idle_nonpositive ? " (non-positive, flagged)" : "") << "\n";
        out << "  eiq: " << format_ratio(m.eiq) << (m.eiq_pathological ? " (pathological)" : "")
            << "\n";
        out << "  level\tefficiency\trelative\tW/socket\n";
        for (const auto& level : run.levels) {
            out << "  " << static_cast<int>(level.target_load * 100) << "%\t"
                << format_ratio(m.efficiency_per_level.at(level.target_load)) << "\t"
                << format_ratio(m.relative_efficiency.at(level.target_load)) << "\t"
                << format_watts(m.per_socket_power.at(level.target_load)) << "\n";
        }
        out << "  idle\t-\t-\t" << format_watts(m.idle_per_socket_power) << "\n";
    }
    return out.str();
}

}  // namespace specpower::report
