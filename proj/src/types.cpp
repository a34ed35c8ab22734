#include "specpower/types.hpp"

#include <algorithm>
#include <cstdio>

namespace specpower {

std::string MonthYear::to_string() const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d", year, month);
    return buf;
}

std::optional<MonthYear> MonthYear::from_string(const std::string& s) {
    int y = 0, m = 0;
    if (std::sscanf(s.c_str(), "%d-%d", &y, &m) != 2) return std::nullopt;
    if (m < 1 || m > 12 || y < 0) return std::nullopt;
    return MonthYear{y, m};
}

std::string to_string(Vendor v) {
    switch (v) {
        case Vendor::Intel: return "Intel";
        case Vendor::AMD: return "AMD";
        default: return "Other";
    }
}

std::string to_string(MarketingClass c) {
    switch (c) {
        case MarketingClass::Xeon: return "Xeon";
        case MarketingClass::Opteron: return "Opteron";
        case MarketingClass::EPYC: return "EPYC";
        default: return "Other";
    }
}

std::string to_string(OsFamily f) {
    switch (f) {
        case OsFamily::Windows: return "Windows";
        case OsFamily::Linux: return "Linux";
        default: return "Other";
    }
}

std::optional<Vendor> vendor_from_string(const std::string& s) {
    if (s == "Intel") return Vendor::Intel;
    if (s == "AMD") return Vendor::AMD;
    if (s == "Other") return Vendor::Other;
    return std::nullopt;
}

std::optional<MarketingClass> marketing_class_from_string(const std::string& s) {
    if (s == "Xeon") return MarketingClass::Xeon;
    if (s == "Opteron") return MarketingClass::Opteron;
    if (s == "EPYC") return MarketingClass::EPYC;
    if (s == "Other") return MarketingClass::Other;
    return std::nullopt;
}

std::optional<OsFamily> os_family_from_string(const std::string& s) {
    if (s == "Windows") return OsFamily::Windows;
    if (s == "Linux") return OsFamily::Linux;
    if (s == "Other") return OsFamily::Other;
    return std::nullopt;
}

std::string to_string(ParseReason r) {
    switch (r) {
        case ParseReason::MissingField: return "MissingField";
        case ParseReason::MalformedValue: return "MalformedValue";
        case ParseReason::AmbiguousValue: return "AmbiguousValue";
        default: return "TableShapeError";
    }
}

const LoadLevelMeasurement* BenchmarkRun::level_at(double target_load) const {
    auto it = std::find_if(levels.begin(), levels.end(), [&](const LoadLevelMeasurement& l) {
        return std::abs(l.target_load - target_load) < 1e-9;
    });
    return it == levels.end() ? nullptr : &*it;
}

}  // namespace specpower
