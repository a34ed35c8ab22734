#include "specpower/result_parser.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <regex>
#include <sstream>

namespace specpower {
namespace {

const std::array<const char*, 12> kMonthNames = {
    "january", "february", "march",     "april",   "may",      "june",
    "july",    "august",   "september", "october", "november", "december"};

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

int month_from_name(const std::string& name) {
    std::string n = lower(name);
    for (size_t i = 0; i < kMonthNames.size(); ++i) {
        std::string full = kMonthNames[i];
        if (n == full || (n.size() == 3 && full.compare(0, 3, n) == 0)) {
            return static_cast<int>(i) + 1;
        }
    }
    return 0;
}

// Thousands separators and stray unit suffixes are stripped before conversion.
std::optional<double> parse_number(const std::string& text) {
    std::string cleaned;
    for (char c : text) {
        if (c == ',') continue;
        cleaned.push_back(c);
    }
    cleaned = trim(cleaned);
    size_t end = 0;
    while (end < cleaned.size() &&
           (std::isdigit(static_cast<unsigned char>(cleaned[end])) || cleaned[end] == '.' ||
            cleaned[end] == '-' || cleaned[end] == '+')) {
        ++end;
    }
    if (end == 0) return std::nullopt;
    try {
        size_t used = 0;
        double v = std::stod(cleaned.substr(0, end), &used);
        if (used == 0) return std::nullopt;
        return v;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

// The report interleaves several "Label: value" pairs per line. A value runs
// from its colon to the next known label on the same line.
const std::array<const char*, 16> kKnownLabels = {
    "Test Sponsor", "Tested By", "Test Location", "Test Date", "Test Method",
    "SPEC License #", "Publication", "Hardware Availability", "Software Availability",
    "CPU Name", "CPU Frequency (MHz)", "CPU(s) Enabled", "Hardware Threads",
    "Memory Amount (GB)", "Operating System (OS)", "JVM Vendor"};

struct LabelHit {
    size_t label_start;
    size_t value_start;
    std::string label;
};

std::vector<LabelHit> find_labels(const std::string& line) {
    std::vector<LabelHit> hits;
    for (const char* label : kKnownLabels) {
        std::string needle = std::string(label) + ":";
        size_t pos = line.find(needle);
        while (pos != std::string::npos) {
            hits.push_back({pos, pos + needle.size(), label});
            pos = line.find(needle, pos + 1);
        }
    }
    std::sort(hits.begin(), hits.end(),
              [](const LabelHit& a, const LabelHit& b) { return a.label_start < b.label_start; });
    return hits;
}

class FieldIndex {
  public:
    explicit FieldIndex(const std::string& body) {
        std::istringstream in(body);
        std::string line;
        while (std::getline(in, line)) {
            lines_.push_back(line);
            auto hits = find_labels(line);
            for (size_t i = 0; i < hits.size(); ++i) {
                size_t value_end =
                    (i + 1 < hits.size()) ? hits[i + 1].label_start : line.size();
                std::string value = trim(line.substr(
                    hits[i].value_start, value_end - hits[i].value_start));
                fields_[hits[i].label].push_back(value);
            }
        }
    }

    std::optional<std::string> first(const std::string& label) const {
        auto it = fields_.find(label);
        if (it == fields_.end() || it->second.empty()) return std::nullopt;
        return it->second.front();
    }

    std::vector<std::string> all(const std::string& label) const {
        auto it = fields_.find(label);
        return it == fields_.end() ? std::vector<std::string>{} : it->second;
    }

    const std::vector<std::string>& lines() const { return lines_; }

  private:
    std::map<std::string, std::vector<std::string>> fields_;
    std::vector<std::string> lines_;
};

std::string excerpt_of(const std::string& text) {
    return text.size() <= 120 ? text : text.substr(0, 120);
}

ParseFailure fail(const std::string& id, const std::string& field, const std::string& excerpt,
                  ParseReason reason) {
    return ParseFailure{id, field, excerpt_of(excerpt), reason};
}

DateField make_date_field(const std::optional<std::string>& raw,
                          const ParserOptions& opts) {
    DateField f;
    if (!raw || trim(*raw).empty()) {
        f.status = DateStatus::Missing;
        return f;
    }
    f.raw = trim(*raw);
    MonthYearParse p = parse_month_year(f.raw, opts.two_digit_century);
    f.value = p.value;
    f.status = p.status;
    return f;
}

}  // namespace

MonthYearParse parse_month_year(const std::string& text, std::optional<int> two_digit_century) {
    std::string s = trim(text);
    if (s.empty()) return {std::nullopt, DateStatus::Missing};

    static const std::regex named_re(
        R"(^([A-Za-z]+)[-\s]+(?:(\d{1,2})\s*,\s*)?'?(\d{2}|\d{4})$)");
    static const std::regex ym_re(R"(^(\d{4})-(\d{1,2})$)");
    static const std::regex my_re(R"(^(\d{1,2})[-/](\d{2}|\d{4})$)");

    std::smatch m;
    if (std::regex_match(s, m, named_re)) {
        int month = month_from_name(m[1].str());
        if (month == 0) return {std::nullopt, DateStatus::Malformed};
        std::string ystr = m[3].str();
        if (ystr.size() == 2) {
            if (!two_digit_century) return {std::nullopt, DateStatus::Ambiguous};
            return {MonthYear{*two_digit_century + std::stoi(ystr), month}, DateStatus::Ok};
        }
        return {MonthYear{std::stoi(ystr), month}, DateStatus::Ok};
    }
    if (std::regex_match(s, m, ym_re)) {
        int month = std::stoi(m[2].str());
        if (month < 1 || month > 12) return {std::nullopt, DateStatus::Malformed};
        return {MonthYear{std::stoi(m[1].str()), month}, DateStatus::Ok};
    }
    if (std::regex_match(s, m, my_re)) {
        int month = std::stoi(m[1].str());
        if (month < 1 || month > 12) return {std::nullopt, DateStatus::Malformed};
        std::string ystr = m[2].str();
        if (ystr.size() == 2) {
            if (!two_digit_century) return {std::nullopt, DateStatus::Ambiguous};
            return {MonthYear{*two_digit_century + std::stoi(ystr), month}, DateStatus::Ok};
        }
        return {MonthYear{std::stoi(ystr), month}, DateStatus::Ok};
    }
    return {std::nullopt, DateStatus::Malformed};
}

std::optional<CpuEnabled> parse_cpu_enabled(const std::string& text) {
    static const std::regex re(
        R"(^\s*(\d+)\s+cores?\s*,\s*(\d+)\s+chips?\s*,\s*(\d+)\s+cores?\s*/\s*chip\s*$)",
        std::regex::icase);
    std::smatch m;
    if (!std::regex_match(text, m, re)) return std::nullopt;
    CpuEnabled c{std::stoi(m[1].str()), std::stoi(m[2].str()), std::stoi(m[3].str())};
    if (c.cores_total <= 0 || c.sockets <= 0 || c.cores_per_chip <= 0) return std::nullopt;
    return c;
}

std::string format_cpu_enabled(const CpuEnabled& c) {
    std::ostringstream out;
    out << c.cores_total << (c.cores_total == 1 ? " core, " : " cores, ") << c.sockets
        << (c.sockets == 1 ? " chip, " : " chips, ") << c.cores_per_chip
        << (c.cores_per_chip == 1 ? " core/chip" : " cores/chip");
    return out.str();
}

std::pair<Vendor, MarketingClass> classify_vendor_and_class(const std::string& cpu_name) {
    std::string n = lower(cpu_name);
    auto has_token = [&](const char* token) {
        std::string t = lower(token);
        size_t pos = n.find(t);
        while (pos != std::string::npos) {
            bool left_ok = pos == 0 || !std::isalnum(static_cast<unsigned char>(n[pos - 1]));
            size_t end = pos + t.size();
            bool right_ok = end >= n.size() || !std::isalnum(static_cast<unsigned char>(n[end]));
            if (left_ok && right_ok) return true;
            pos = n.find(t, pos + 1);
        }
        return false;
    };
    Vendor vendor = Vendor::Other;
    if (has_token("Intel")) vendor = Vendor::Intel;
    else if (has_token("AMD")) vendor = Vendor::AMD;
    MarketingClass cls = MarketingClass::Other;
    if (has_token("Xeon")) cls = MarketingClass::Xeon;
    else if (has_token("Opteron")) cls = MarketingClass::Opteron;
    else if (has_token("EPYC")) cls = MarketingClass::EPYC;
    return {vendor, cls};
}

OsFamily classify_os_family(const std::string& os_name) {
    std::string n = lower(os_name);
    if (n.find("windows") != std::string::npos) return OsFamily::Windows;
    for (const char* token : {"linux", "suse", "red hat", "ubuntu", "centos"}) {
        if (n.find(token) != std::string::npos) return OsFamily::Linux;
    }
    return OsFamily::Other;
}

namespace {

// Measurement table row: "100%  99.8%  3,040,649  244  3,287" plus the
// trailing "Active Idle" row carrying the idle power.
struct TableParse {
    std::vector<LoadLevelMeasurement> levels;
    std::optional<double> idle_power_w;
    std::optional<ParseFailure> failure;
};

TableParse parse_measurement_table(const std::string& result_id,
                                   const std::vector<std::string>& lines) {
    static const std::regex row_re(
        R"(^\s*(\d{1,3})%\s+([\d.]+%?)\s+([\d,]+)\s+([\d,.]+)(\s+[\d,.]+)?\s*$)");
    static const std::regex idle_re(R"(^\s*Active\s+Idle\s+(\S+)\s+([\d,.]+)(\s+[\d,.]+)?\s*$)");

    TableParse out;
    bool in_table = false;
    for (const std::string& line : lines) {
        if (line.find("Benchmark Results Summary") != std::string::npos) {
            in_table = true;
            continue;
        }
        if (!in_table) continue;
        std::smatch m;
        if (std::regex_match(line, m, row_re)) {
            double target = std::stod(m[1].str()) / 100.0;
            auto ops = parse_number(m[3].str());
            auto power = parse_number(m[4].str());
            if (!ops || !power || *power <= 0) {
                out.failure = fail(result_id, "levels", line, ParseReason::MalformedValue);
                return out;
            }
            out.levels.push_back({target, *ops, *power});
        } else if (std::regex_match(line, m, idle_re)) {
            auto power = parse_number(m[2].str());
            if (!power || *power <= 0) {
                out.failure = fail(result_id, "idle_power_w", line, ParseReason::MalformedValue);
                return out;
            }
            out.idle_power_w = *power;
            break;  // idle is the last row
        }
    }
    return out;
}

std::optional<double> parse_overall_score(const std::vector<std::string>& lines) {
    static const std::regex score_re(
        R"(SPECpower_ssj2008\s*=\s*([\d,]+(?:\.\d+)?)\s*overall\s*ssj_ops/watt)");
    for (const std::string& line : lines) {
        std::smatch m;
        if (std::regex_search(line, m, score_re)) return parse_number(m[1].str());
    }
    return std::nullopt;
}

bool body_marks_noncompliance(const std::string& body) {
    std::string b = lower(body);
    return b.find("non-compliant") != std::string::npos ||
           b.find("noncompliant") != std::string::npos ||
           b.find("not been accepted by spec") != std::string::npos;
}

}  // namespace

ParseResult parse_run(const RawResultDocument& doc, const ParserOptions& opts) {
    const std::string& id = doc.reference.result_id;
    if (doc.body.empty()) {
        return fail(id, "body", "", ParseReason::MissingField);
    }

    FieldIndex fields(doc.body);
    BenchmarkRun run;
    run.result_id = id;
    run.accepted =
        doc.reference.publication_marker.empty() && !body_marks_noncompliance(doc.body);

    run.test_date = make_date_field(fields.first("Test Date"), opts);
    run.submission_date = make_date_field(fields.first("Publication"), opts);
    run.hw_availability = make_date_field(fields.first("Hardware Availability"), opts);
    run.sw_availability = make_date_field(fields.first("Software Availability"), opts);

    for (const std::string& name : fields.all("CPU Name")) {
        std::string n = trim(name);
        if (n.empty()) continue;
        if (std::find(run.cpu_names.begin(), run.cpu_names.end(), n) == run.cpu_names.end()) {
            run.cpu_names.push_back(n);
        }
    }
    if (run.cpu_names.empty()) {
        return fail(id, "cpu_name", "", ParseReason::MissingField);
    }
    run.cpu_name = run.cpu_names.front();
    std::tie(run.vendor, run.marketing_class) = classify_vendor_and_class(run.cpu_name);

    auto mhz_text = fields.first("CPU Frequency (MHz)");
    if (!mhz_text) return fail(id, "cpu_nominal_mhz", "", ParseReason::MissingField);
    auto mhz = parse_number(*mhz_text);
    if (!mhz || *mhz <= 0) {
        return fail(id, "cpu_nominal_mhz", *mhz_text, ParseReason::MalformedValue);
    }
    run.cpu_nominal_mhz = *mhz;

    auto enabled_text = fields.first("CPU(s) Enabled");
    if (!enabled_text) return fail(id, "cpu_enabled", "", ParseReason::MissingField);
    auto enabled = parse_cpu_enabled(*enabled_text);
    if (!enabled) return fail(id, "cpu_enabled", *enabled_text, ParseReason::MalformedValue);
    run.cores_total = enabled->cores_total;
    run.sockets = enabled->sockets;
    run.cores_per_chip = enabled->cores_per_chip;

    auto threads_text = fields.first("Hardware Threads");
    if (!threads_text) return fail(id, "threads_total", "", ParseReason::MissingField);
    auto threads = parse_number(*threads_text);
    if (!threads || *threads <= 0 || *threads != std::floor(*threads)) {
        return fail(id, "threads_total", *threads_text, ParseReason::MalformedValue);
    }
    run.threads_total = static_cast<int>(*threads);

    // Node count: explicit "Nodes" label on multi-node reports, otherwise
    // derived from the test method. Reports with neither keep it absent and
    // are charged to the MissingNodeCount filter stage downstream.
    static const std::regex nodes_re(R"(Nodes:\s*(\d+))");
    for (const std::string& line : fields.lines()) {
        std::smatch m;
        if (std::regex_search(line, m, nodes_re)) {
            run.nodes = std::stoi(m[1].str());
            break;
        }
    }
    if (!run.nodes) {
        auto method = fields.first("Test Method");
        if (method && lower(*method).find("single node") != std::string::npos) {
            run.nodes = 1;
        }
    }

    if (auto os = fields.first("Operating System (OS)"); os && !trim(*os).empty()) {
        run.os_name = trim(*os);
    } else {
        return fail(id, "os_name", "", ParseReason::MissingField);
    }
    run.os_family = classify_os_family(run.os_name);
    run.jvm_name = trim(fields.first("JVM Vendor").value_or(""));

    if (auto mem = fields.first("Memory Amount (GB)")) {
        run.memory_gb = parse_number(*mem).value_or(0.0);
    }

    TableParse table = parse_measurement_table(id, fields.lines());
    if (table.failure) return *table.failure;
    // Excerpts must be verbatim substrings of the body.
    const char* table_anchor = "Benchmark Results Summary";
    std::string shape_excerpt =
        doc.body.find(table_anchor) != std::string::npos ? table_anchor : "";
    if (table.levels.size() != 10) {
        return fail(id, "levels", shape_excerpt, ParseReason::TableShapeError);
    }
    for (size_t i = 0; i < table.levels.size(); ++i) {
        double expected = (100.0 - 10.0 * static_cast<double>(i)) / 100.0;
        if (std::abs(table.levels[i].target_load - expected) > 1e-9) {
            return fail(id, "levels", shape_excerpt, ParseReason::TableShapeError);
        }
    }
    if (!table.idle_power_w) {
        return fail(id, "idle_power_w", "", ParseReason::MissingField);
    }
    run.levels = std::move(table.levels);
    run.idle_power_w = *table.idle_power_w;

    auto score = parse_overall_score(fields.lines());
    if (!score) return fail(id, "reported_overall_efficiency", "", ParseReason::MissingField);
    run.reported_overall_efficiency = *score;

    return run;
}

}  // namespace specpower
