#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "specpower/types.hpp"

namespace specpower {

// Line-delimited JSON record files (one object per line, UTF-8, LF).

void write_runs(const std::filesystem::path& path, const std::vector<BenchmarkRun>& runs);
std::vector<BenchmarkRun> read_runs(const std::filesystem::path& path);

void write_metrics(const std::filesystem::path& path, const std::vector<RunMetrics>& metrics);
std::vector<RunMetrics> read_metrics(const std::filesystem::path& path);

void write_parse_failures(const std::filesystem::path& path,
                          const std::vector<ParseFailure>& failures);
std::vector<ParseFailure> read_parse_failures(const std::filesystem::path& path);

}  // namespace specpower
