#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>

#include "specpower/document.hpp"
#include "specpower/types.hpp"

namespace specpower {

using ParseResult = std::variant<BenchmarkRun, ParseFailure>;

struct ParserOptions {
    // Century prefix for two-digit years ("Feb-23"). Unset means two-digit
    // years are reported as ambiguous.
    std::optional<int> two_digit_century;
};

// Parse one result document. Total: returns a ParseFailure naming the first
// offending field instead of throwing.
ParseResult parse_run(const RawResultDocument& doc, const ParserOptions& opts = {});

struct MonthYearParse {
    std::optional<MonthYear> value;
    DateStatus status = DateStatus::Malformed;
};

// Normalize the corpus's observed date spellings: "Feb-2023", "February 2023",
// "Oct 27, 2010", "2023-02", "02-2023". Two-digit years are ambiguous unless a
// century convention is configured.
MonthYearParse parse_month_year(const std::string& text,
                                std::optional<int> two_digit_century = std::nullopt);

struct CpuEnabled {
    int cores_total = 0;
    int sockets = 0;
    int cores_per_chip = 0;
};

// Parse the "CPU(s) Enabled" field: "<N> cores, <M> chips, <K> cores/chip".
std::optional<CpuEnabled> parse_cpu_enabled(const std::string& text);

std::string format_cpu_enabled(const CpuEnabled& c);

std::pair<Vendor, MarketingClass> classify_vendor_and_class(const std::string& cpu_name);

OsFamily classify_os_family(const std::string& os_name);

}  // namespace specpower
