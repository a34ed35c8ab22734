#include "specpower/serialization.hpp"

#include <stdexcept>

namespace specpower {
namespace {

using nlohmann::json;

const char* date_status_name(DateStatus s) {
    switch (s) {
        case DateStatus::Ok: return "ok";
        case DateStatus::Missing: return "missing";
        case DateStatus::Ambiguous: return "ambiguous";
        default: return "malformed";
    }
}

DateStatus date_status_from(const std::string& s) {
    if (s == "ok") return DateStatus::Ok;
    if (s == "missing") return DateStatus::Missing;
    if (s == "ambiguous") return DateStatus::Ambiguous;
    if (s == "malformed") return DateStatus::Malformed;
    throw std::invalid_argument("unknown date status: " + s);
}

json date_to_json(const DateField& d) {
    json j;
    j["status"] = date_status_name(d.status);
    if (d.value) j["value"] = d.value->to_string();
    if (!d.raw.empty()) j["raw"] = d.raw;
    return j;
}

DateField date_from_json(const json& j) {
    DateField d;
    d.status = date_status_from(j.at("status").get<std::string>());
    if (j.contains("value")) {
        d.value = MonthYear::from_string(j.at("value").get<std::string>());
        if (!d.value) throw std::invalid_argument("bad month-year value");
    }
    if (j.contains("raw")) d.raw = j.at("raw").get<std::string>();
    return d;
}

json levels_to_json(const std::vector<LoadLevelMeasurement>& levels) {
    json arr = json::array();
    for (const auto& l : levels) {
        arr.push_back({{"target_load", l.target_load},
                       {"ssj_ops", l.ssj_ops},
                       {"avg_power_w", l.avg_power_w}});
    }
    return arr;
}

// Target loads are multiples of 0.1; stringify at one decimal so map keys
// round-trip exactly.
std::string load_key(double target_load) {
    char buf[8];
    std::snprintf(buf, sizeof(buf), "%.1f", target_load);
    return buf;
}

json load_map_to_json(const std::map<double, double>& m) {
    json j = json::object();
    for (const auto& [load, value] : m) j[load_key(load)] = value;
    return j;
}

std::map<double, double> load_map_from_json(const json& j) {
    std::map<double, double> m;
    for (auto it = j.begin(); it != j.end(); ++it) {
        m[std::stod(it.key())] = it.value().get<double>();
    }
    return m;
}

}  // namespace

json to_json(const BenchmarkRun& run) {
    json j;
    j["kind"] = "run";
    j["result_id"] = run.result_id;
    j["accepted"] = run.accepted;
    j["test_date"] = date_to_json(run.test_date);
    j["submission_date"] = date_to_json(run.submission_date);
    j["hw_availability"] = date_to_json(run.hw_availability);
    j["sw_availability"] = date_to_json(run.sw_availability);
    j["vendor"] = to_string(run.vendor);
    j["marketing_class"] = to_string(run.marketing_class);
    j["cpu_name"] = run.cpu_name;
    j["cpu_names"] = run.cpu_names;
    j["cpu_nominal_mhz"] = run.cpu_nominal_mhz;
    if (run.nodes) j["nodes"] = *run.nodes;
    j["sockets"] = run.sockets;
    j["cores_total"] = run.cores_total;
    j["threads_total"] = run.threads_total;
    j["cores_per_chip"] = run.cores_per_chip;
    j["os_name"] = run.os_name;
    j["os_family"] = to_string(run.os_family);
    j["jvm_name"] = run.jvm_name;
    j["memory_gb"] = run.memory_gb;
    j["levels"] = levels_to_json(run.levels);
    j["idle_power_w"] = run.idle_power_w;
    j["reported_overall_efficiency"] = run.reported_overall_efficiency;
    return j;
}

BenchmarkRun run_from_json(const json& j) {
    BenchmarkRun run;
    run.result_id = j.at("result_id").get<std::string>();
    run.accepted = j.at("accepted").get<bool>();
    run.test_date = date_from_json(j.at("test_date"));
    run.submission_date = date_from_json(j.at("submission_date"));
    run.hw_availability = date_from_json(j.at("hw_availability"));
    run.sw_availability = date_from_json(j.at("sw_availability"));
    auto vendor = vendor_from_string(j.at("vendor").get<std::string>());
    auto cls = marketing_class_from_string(j.at("marketing_class").get<std::string>());
    auto osf = os_family_from_string(j.at("os_family").get<std::string>());
    if (!vendor || !cls || !osf) throw std::invalid_argument("unknown enum value in record");
    run.vendor = *vendor;
    run.marketing_class = *cls;
    run.os_family = *osf;
    run.cpu_name = j.at("cpu_name").get<std::string>();
    run.cpu_names = j.at("cpu_names").get<std::vector<std::string>>();
    run.cpu_nominal_mhz = j.at("cpu_nominal_mhz").get<double>();
    if (j.contains("nodes")) run.nodes = j.at("nodes").get<int>();
    run.sockets = j.at("sockets").get<int>();
    run.cores_total = j.at("cores_total").get<int>();
    run.threads_total = j.at("threads_total").get<int>();
    run.cores_per_chip = j.at("cores_per_chip").get<int>();
    run.os_name = j.at("os_name").get<std::string>();
    run.jvm_name = j.at("jvm_name").get<std::string>();
    run.memory_gb = j.at("memory_gb").get<double>();
    for (const auto& l : j.at("levels")) {
        run.levels.push_back({l.at("target_load").get<double>(), l.at("ssj_ops").get<double>(),
                              l.at("avg_power_w").get<double>()});
    }
    run.idle_power_w = j.at("idle_power_w").get<double>();
    run.reported_overall_efficiency = j.at("reported_overall_efficiency").get<double>();
    return run;
}

json to_json(const RunMetrics& m) {
    json j;
    j["kind"] = "metrics";
    j["result_id"] = m.result_id;
    j["efficiency_per_level"] = load_map_to_json(m.efficiency_per_level);
    j["overall_efficiency"] = m.overall_efficiency;
    j["relative_efficiency"] = load_map_to_json(m.relative_efficiency);
    j["idle_fraction"] = m.idle_fraction;
    j["per_socket_power"] = load_map_to_json(m.per_socket_power);
    j["idle_per_socket_power"] = m.idle_per_socket_power;
    j["extrapolated_idle_w"] = m.extrapolated_idle_w;
    j["extrapolated_idle_nonpositive"] = m.extrapolated_idle_nonpositive;
    j["eiq"] = m.eiq;
    j["eiq_pathological"] = m.eiq_pathological;
    return j;
}

RunMetrics metrics_from_json(const json& j) {
    RunMetrics m;
    m.result_id = j.at("result_id").get<std::string>();
    m.efficiency_per_level = load_map_from_json(j.at("efficiency_per_level"));
    m.overall_efficiency = j.at("overall_efficiency").get<double>();
    m.relative_efficiency = load_map_from_json(j.at("relative_efficiency"));
    m.idle_fraction = j.at("idle_fraction").get<double>();
    m.per_socket_power = load_map_from_json(j.at("per_socket_power"));
    m.idle_per_socket_power = j.at("idle_per_socket_power").get<double>();
    m.extrapolated_idle_w = j.at("extrapolated_idle_w").get<double>();
    m.extrapolated_idle_nonpositive = j.at("extrapolated_idle_nonpositive").get<bool>();
    m.eiq = j.at("eiq").get<double>();
    m.eiq_pathological = j.at("eiq_pathological").get<bool>();
    return m;
}

json to_json(const ParseFailure& f) {
    return {{"kind", "parse_failure"},
            {"result_id", f.result_id},
            {"field", f.field},
            {"excerpt", f.excerpt},
            {"reason", to_string(f.reason)}};
}

ParseFailure parse_failure_from_json(const json& j) {
    ParseFailure f;
    f.result_id = j.at("result_id").get<std::string>();
    f.field = j.at("field").get<std::string>();
    f.excerpt = j.at("excerpt").get<std::string>();
    std::string reason = j.at("reason").get<std::string>();
    if (reason == "MissingField") f.reason = ParseReason::MissingField;
    else if (reason == "MalformedValue") f.reason = ParseReason::MalformedValue;
    else if (reason == "AmbiguousValue") f.reason = ParseReason::AmbiguousValue;
    else if (reason == "TableShapeError") f.reason = ParseReason::TableShapeError;
    else throw std::invalid_argument("unknown parse reason: " + reason);
    return f;
}

}  // namespace specpower
