#include "specpower/run_filters.hpp"

#include <optional>
#include <sstream>
#include <stdexcept>

namespace specpower {
namespace {

const std::vector<FilterStage> kConsistencyStages = {
    FilterStage::NotAccepted,           FilterStage::AmbiguousDate,
    FilterStage::ImplausibleDate,       FilterStage::AmbiguousCpuName,
    FilterStage::MissingNodeCount,      FilterStage::InconsistentCoreThread,
    FilterStage::ImplausibleCoreThread,
};

const std::vector<FilterStage> kComparabilityStages = {
    FilterStage::NonIntelAmd,
    FilterStage::NonServerClass,
    FilterStage::MultiNodeOrManySocket,
};

struct DateView {
    const char* name;
    const DateField* field;
};

std::vector<DateView> run_dates(const BenchmarkRun& run) {
    return {{"test_date", &run.test_date},
            {"submission_date", &run.submission_date},
            {"hw_availability", &run.hw_availability},
            {"sw_availability", &run.sw_availability}};
}

std::optional<std::string> check_ambiguous_date(const BenchmarkRun& run, const FilterConfig&) {
    for (const auto& d : run_dates(run)) {
        if (d.field->status == DateStatus::Ambiguous) {
            return std::string(d.name) + " = \"" + d.field->raw + "\"";
        }
    }
    return std::nullopt;
}

std::optional<std::string> check_implausible_date(const BenchmarkRun& run,
                                                  const FilterConfig& cfg) {
    // test date and hardware availability are required downstream; a
    // malformed or missing value there counts as implausible.
    for (const char* required : {"test_date", "hw_availability"}) {
        for (const auto& d : run_dates(run)) {
            if (std::string(d.name) != required) continue;
            if (!d.field->ok()) {
                return std::string(d.name) + " unusable: \"" + d.field->raw + "\"";
            }
        }
    }
    for (const auto& d : run_dates(run)) {
        if (!d.field->ok()) continue;
        if (*d.field->value < cfg.min_plausible_date || cfg.snapshot_date < *d.field->value) {
            return std::string(d.name) + " = \"" + d.field->raw + "\" outside [" +
                   cfg.min_plausible_date.to_string() + ", " + cfg.snapshot_date.to_string() +
                   "]";
        }
    }
    int gap = run.hw_availability.value->absolute_months() -
              run.test_date.value->absolute_months();
    if (gap > cfg.max_hw_after_test_months) {
        return "hw_availability \"" + run.hw_availability.raw + "\" is " +
               std::to_string(gap) + " months after test_date \"" + run.test_date.raw + "\"";
    }
    return std::nullopt;
}

std::optional<std::string> check_ambiguous_cpu(const BenchmarkRun& run, const FilterConfig&) {
    if (run.cpu_names.size() > 1) {
        std::ostringstream detail;
        detail << run.cpu_names.size() << " distinct CPU names: ";
        for (size_t i = 0; i < run.cpu_names.size(); ++i) {
            if (i) detail << " / ";
            detail << "\"" << run.cpu_names[i] << "\"";
        }
        return detail.str();
    }
    if (run.vendor == Vendor::Other) {
        std::string n = run.cpu_name;
        bool intel = n.find("Intel") != std::string::npos || n.find("intel") != std::string::npos;
        bool amd = n.find("AMD") != std::string::npos || n.find("amd") != std::string::npos;
        if (intel && amd) return "CPU name mentions both vendors: \"" + n + "\"";
    }
    return std::nullopt;
}

std::optional<std::string> check_missing_nodes(const BenchmarkRun& run, const FilterConfig&) {
    if (!run.nodes) return std::string("node count absent");
    return std::nullopt;
}

std::optional<std::string> check_inconsistent_cores(const BenchmarkRun& run,
                                                     const FilterConfig&) {
    if (run.cores_total <= 0 || run.threads_total % run.cores_total != 0) {
        return "threads_total " + std::to_string(run.threads_total) +
               " not a multiple of cores_total " + std::to_string(run.cores_total);
    }
    if (run.cores_total != run.sockets * run.cores_per_chip) {
        return "cores_total " + std::to_string(run.cores_total) + " != " +
               std::to_string(run.sockets) + " chips x " +
               std::to_string(run.cores_per_chip) + " cores/chip";
    }
    return std::nullopt;
}

std::optional<std::string> check_implausible_cores(const BenchmarkRun& run,
                                                    const FilterConfig& cfg) {
    int smt = run.threads_total / run.cores_total;
    if (!cfg.allowed_smt.count(smt)) {
        return "threads/cores ratio " + std::to_string(smt) + " outside allowed set";
    }
    if (run.cores_per_chip > cfg.max_cores_per_chip) {
        return "cores_per_chip " + std::to_string(run.cores_per_chip) + " > " +
               std::to_string(cfg.max_cores_per_chip);
    }
    return std::nullopt;
}

std::optional<std::string> check_vendor(const BenchmarkRun& run, const FilterConfig&) {
    if (run.vendor == Vendor::Other) return "CPU vendor Other: \"" + run.cpu_name + "\"";
    return std::nullopt;
}

std::optional<std::string> check_server_class(const BenchmarkRun& run, const FilterConfig&) {
    if (run.marketing_class == MarketingClass::Other) {
        return "not a server/workstation CPU line: \"" + run.cpu_name + "\"";
    }
    return std::nullopt;
}

std::optional<std::string> check_node_socket(const BenchmarkRun& run, const FilterConfig& cfg) {
    if (run.nodes && *run.nodes > cfg.max_nodes) {
        return "nodes = " + std::to_string(*run.nodes);
    }
    if (run.sockets > cfg.max_sockets) {
        return "sockets = " + std::to_string(run.sockets);
    }
    return std::nullopt;
}

using StageCheck = std::optional<std::string> (*)(const BenchmarkRun&, const FilterConfig&);

StageCheck check_for(FilterStage stage) {
    switch (stage) {
        case FilterStage::NotAccepted:
            return [](const BenchmarkRun& r, const FilterConfig&) -> std::optional<std::string> {
                if (!r.accepted) return std::string("marked not accepted");
                return std::nullopt;
            };
        case FilterStage::AmbiguousDate: return check_ambiguous_date;
        case FilterStage::ImplausibleDate: return check_implausible_date;
        case FilterStage::AmbiguousCpuName: return check_ambiguous_cpu;
        case FilterStage::MissingNodeCount: return check_missing_nodes;
        case FilterStage::InconsistentCoreThread: return check_inconsistent_cores;
        case FilterStage::ImplausibleCoreThread: return check_implausible_cores;
        case FilterStage::NonIntelAmd: return check_vendor;
        case FilterStage::NonServerClass: return check_server_class;
        case FilterStage::MultiNodeOrManySocket: return check_node_socket;
    }
    throw std::logic_error("unreachable");
}

FilterOutcome run_stages(const std::vector<BenchmarkRun>& runs,
                         const std::vector<FilterStage>& stages, const FilterConfig& config) {
    FilterOutcome out;
    out.report.input_count = static_cast<int>(runs.size());
    for (FilterStage stage : stages) out.report.per_stage_counts[stage] = 0;
    for (const BenchmarkRun& run : runs) {
        bool excluded = false;
        for (FilterStage stage : stages) {
            if (auto detail = check_for(stage)(run, config)) {
                out.exclusions.push_back({run.result_id, stage, *detail});
                out.report.per_stage_counts[stage]++;
                excluded = true;
                break;
            }
        }
        if (!excluded) out.retained.push_back(run);
    }
    out.report.retained_count = static_cast<int>(out.retained.size());
    return out;
}

}  // namespace

std::string to_string(FilterStage s) {
    switch (s) {
        case FilterStage::NotAccepted: return "NotAccepted";
        case FilterStage::AmbiguousDate: return "AmbiguousDate";
        case FilterStage::ImplausibleDate: return "ImplausibleDate";
        case FilterStage::AmbiguousCpuName: return "AmbiguousCpuName";
        case FilterStage::MissingNodeCount: return "MissingNodeCount";
        case FilterStage::InconsistentCoreThread: return "InconsistentCoreThread";
        case FilterStage::ImplausibleCoreThread: return "ImplausibleCoreThread";
        case FilterStage::NonIntelAmd: return "NonIntelAmd";
        case FilterStage::NonServerClass: return "NonServerClass";
        case FilterStage::MultiNodeOrManySocket: return "MultiNodeOrManySocket";
    }
    throw std::logic_error("unreachable");
}

FilterConfig FilterConfig::from_json(const nlohmann::json& j) {
    FilterConfig c;
    if (j.contains("min_plausible_date")) {
        auto d = MonthYear::from_string(j.at("min_plausible_date").get<std::string>());
        if (!d) throw std::invalid_argument("bad min_plausible_date");
        c.min_plausible_date = *d;
    }
    if (j.contains("snapshot_date")) {
        auto d = MonthYear::from_string(j.at("snapshot_date").get<std::string>());
        if (!d) throw std::invalid_argument("bad snapshot_date");
        c.snapshot_date = *d;
    }
    if (j.contains("max_hw_after_test_months")) {
        c.max_hw_after_test_months = j.at("max_hw_after_test_months").get<int>();
    }
    if (j.contains("allowed_smt")) {
        c.allowed_smt.clear();
        for (int v : j.at("allowed_smt")) c.allowed_smt.insert(v);
    }
    if (j.contains("max_cores_per_chip")) {
        c.max_cores_per_chip = j.at("max_cores_per_chip").get<int>();
    }
    if (j.contains("max_nodes")) c.max_nodes = j.at("max_nodes").get<int>();
    if (j.contains("max_sockets")) c.max_sockets = j.at("max_sockets").get<int>();
    return c;
}

nlohmann::json FilterConfig::to_json() const {
    return {{"min_plausible_date", min_plausible_date.to_string()},
            {"snapshot_date", snapshot_date.to_string()},
            {"max_hw_after_test_months", max_hw_after_test_months},
            {"allowed_smt", std::vector<int>(allowed_smt.begin(), allowed_smt.end())},
            {"max_cores_per_chip", max_cores_per_chip},
            {"max_nodes", max_nodes},
            {"max_sockets", max_sockets}};
}

FilterOutcome consistency_filter(const std::vector<BenchmarkRun>& runs,
                                 const FilterConfig& config) {
    return run_stages(runs, kConsistencyStages, config);
}

FilterOutcome comparability_filter(const std::vector<BenchmarkRun>& runs,
                                   const FilterConfig& config) {
    return run_stages(runs, kComparabilityStages, config);
}

int canonical_year(const BenchmarkRun& run) {
    if (!run.hw_availability.ok()) {
        throw std::invalid_argument("canonical_year: hw_availability absent for " +
                                    run.result_id);
    }
    return run.hw_availability.value->year;
}

}  // namespace specpower
