#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace specpower {

// Calendar month granularity. All report dates (test date, publication,
// hardware/software availability) are normalized to this.
struct MonthYear {
    int year = 0;
    int month = 0;  // 1..12

    auto operator<=>(const MonthYear&) const = default;

    // Months since year 0, for date arithmetic.
    int absolute_months() const { return year * 12 + (month - 1); }

    std::string to_string() const;  // "YYYY-MM"
    static std::optional<MonthYear> from_string(const std::string& s);
};

enum class DateStatus { Ok, Missing, Ambiguous, Malformed };

// A single date field as parsed from the report: the value when it could be
// normalized, plus how the parse went. Filters charge runs to AmbiguousDate /
// ImplausibleDate based on the status, so malformed dates must survive parsing.
struct DateField {
    std::optional<MonthYear> value;
    DateStatus status = DateStatus::Missing;
    std::string raw;  // verbatim field text, for exclusion ledger details

    bool ok() const { return status == DateStatus::Ok && value.has_value(); }
};

enum class Vendor { Intel, AMD, Other };
enum class MarketingClass { Xeon, Opteron, EPYC, Other };
enum class OsFamily { Windows, Linux, Other };

std::string to_string(Vendor v);
std::string to_string(MarketingClass c);
std::string to_string(OsFamily f);
std::optional<Vendor> vendor_from_string(const std::string& s);
std::optional<MarketingClass> marketing_class_from_string(const std::string& s);
std::optional<OsFamily> os_family_from_string(const std::string& s);

// One row of the Benchmark Results Summary table.
struct LoadLevelMeasurement {
    double target_load = 0.0;  // 1.0, 0.9, ..., 0.1
    double ssj_ops = 0.0;      // transactions over the measurement interval
    double avg_power_w = 0.0;  // average active power

    auto operator<=>(const LoadLevelMeasurement&) const = default;
};

// A fully parsed result file. Fields that feed downstream filters are kept
// even when inconsistent or absent; the parser only fails hard when the
// document itself is unusable (no measurement table, no CPU description).
struct BenchmarkRun {
    std::string result_id;
    bool accepted = true;

    DateField test_date;
    DateField submission_date;  // from the "Publication" field when present
    DateField hw_availability;
    DateField sw_availability;

    Vendor vendor = Vendor::Other;
    MarketingClass marketing_class = MarketingClass::Other;
    std::string cpu_name;
    std::vector<std::string> cpu_names;  // all distinct CPU names seen in the document
    double cpu_nominal_mhz = 0.0;

    std::optional<int> nodes;
    int sockets = 0;        // the "chips" figure
    int cores_total = 0;
    int threads_total = 0;
    int cores_per_chip = 0;

    std::string os_name;
    OsFamily os_family = OsFamily::Other;
    std::string jvm_name;
    double memory_gb = 0.0;

    std::vector<LoadLevelMeasurement> levels;  // descending target load, 10 entries
    double idle_power_w = 0.0;
    double reported_overall_efficiency = 0.0;  // ssj_ops/W as printed in the report

    const LoadLevelMeasurement* level_at(double target_load) const;

    bool operator==(const BenchmarkRun&) const = default;
};

enum class ParseReason { MissingField, MalformedValue, AmbiguousValue, TableShapeError };

std::string to_string(ParseReason r);

struct ParseFailure {
    std::string result_id;
    std::string field;
    std::string excerpt;  // verbatim substring of the source body, <= 120 chars
    ParseReason reason = ParseReason::MissingField;
};

// Per-run derived quantities.
struct RunMetrics {
    std::string result_id;
    std::map<double, double> efficiency_per_level;  // target load -> ssj_ops/W
    double overall_efficiency = 0.0;
    std::map<double, double> relative_efficiency;   // target load -> ratio
    double idle_fraction = 0.0;
    std::map<double, double> per_socket_power;      // target load -> W/socket
    double idle_per_socket_power = 0.0;
    double extrapolated_idle_w = 0.0;
    bool extrapolated_idle_nonpositive = false;
    double eiq = 0.0;
    bool eiq_pathological = false;
};

inline bool operator==(const DateField& a, const DateField& b) {
    return a.value == b.value && a.status == b.status && a.raw == b.raw;
}

}  // namespace specpower
