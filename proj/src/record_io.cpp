#include "specpower/record_io.hpp"

#include <fstream>
#include <stdexcept>

#include "specpower/serialization.hpp"

namespace specpower {
namespace {

template <typename T, typename ToJson>
void write_jsonl(const std::filesystem::path& path, const std::vector<T>& items, ToJson to) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    for (const T& item : items) out << to(item).dump() << "\n";
}

template <typename T, typename FromJson>
std::vector<T> read_jsonl(const std::filesystem::path& path, FromJson from) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::vector<T> items;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        items.push_back(from(nlohmann::json::parse(line)));
    }
    return items;
}

}  // namespace

void write_runs(const std::filesystem::path& path, const std::vector<BenchmarkRun>& runs) {
    write_jsonl(path, runs, [](const BenchmarkRun& r) { return to_json(r); });
}

std::vector<BenchmarkRun> read_runs(const std::filesystem::path& path) {
    return read_jsonl<BenchmarkRun>(path, run_from_json);
}

void write_metrics(const std::filesystem::path& path, const std::vector<RunMetrics>& metrics) {
    write_jsonl(path, metrics, [](const RunMetrics& m) { return to_json(m); });
}

std::vector<RunMetrics> read_metrics(const std::filesystem::path& path) {
    return read_jsonl<RunMetrics>(path, metrics_from_json);
}

void write_parse_failures(const std::filesystem::path& path,
                          const std::vector<ParseFailure>& failures) {
    write_jsonl(path, failures, [](const ParseFailure& f) { return to_json(f); });
}

std::vector<ParseFailure> read_parse_failures(const std::filesystem::path& path) {
    return read_jsonl<ParseFailure>(path, parse_failure_from_json);
}

}  // namespace specpower
