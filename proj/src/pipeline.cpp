#include "specpower/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "specpower/metrics.hpp"

namespace specpower {

PipelineConfig PipelineConfig::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read config " + path.string());
    nlohmann::json j = nlohmann::json::parse(in);
    PipelineConfig c;
    if (j.contains("index_url")) c.index_url = j.at("index_url").get<std::string>();
    if (j.contains("cache_dir")) c.cache_dir = j.at("cache_dir").get<std::string>();
    if (j.contains("cutoff")) c.cutoff = j.at("cutoff").get<std::string>();
    if (j.contains("output_dir")) c.output_dir = j.at("output_dir").get<std::string>();
    if (j.contains("emit")) {
        c.emit.clear();
        for (const auto& e : j.at("emit")) c.emit.insert(e.get<std::string>());
    }
    if (j.contains("jobs")) c.jobs = j.at("jobs").get<int>();
    if (j.contains("offline")) c.offline = j.at("offline").get<bool>();
    if (j.contains("filters")) c.filters = FilterConfig::from_json(j.at("filters"));
    if (j.contains("parser") && j.at("parser").contains("two_digit_century")) {
        c.parser.two_digit_century = j.at("parser").at("two_digit_century").get<int>();
    }
    return c;
}

void PipelineConfig::validate() const {
    namespace fs = std::filesystem;
    if (fs::weakly_canonical(output_dir) == fs::weakly_canonical(cache_dir)) {
        throw std::invalid_argument("output_dir must be distinct from cache_dir");
    }
    if (jobs < 1) throw std::invalid_argument("jobs must be >= 1");
    for (const auto& e : emit) {
        if (e != "table" && e != "records" && e != "svg") {
            throw std::invalid_argument("unknown emission format: " + e);
        }
    }
}

PipelineResult run_pipeline(const std::vector<RawResultDocument>& docs,
                            const FilterConfig& filters, const ParserOptions& parser,
                            int jobs) {
    PipelineResult result;

    std::vector<ParseResult> parse_results(docs.size());
    jobs = std::max(1, jobs);
    if (jobs == 1) {
        for (size_t i = 0; i < docs.size(); ++i) parse_results[i] = parse_run(docs[i], parser);
    } else {
        std::atomic<size_t> next{0};
        auto worker = [&]() {
            while (true) {
                size_t i = next.fetch_add(1);
                if (i >= docs.size()) return;
                parse_results[i] = parse_run(docs[i], parser);
            }
        };
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    for (auto& pr : parse_results) {
        if (auto* run = std::get_if<BenchmarkRun>(&pr)) result.parsed.push_back(std::move(*run));
        else result.failures.push_back(std::get<ParseFailure>(pr));
    }

    FilterOutcome consistency = consistency_filter(result.parsed, filters);
    FilterOutcome comparability = comparability_filter(consistency.retained, filters);
    result.consistency_report = consistency.report;
    result.comparability_report = comparability.report;
    result.exclusions = consistency.exclusions;
    result.exclusions.insert(result.exclusions.end(), comparability.exclusions.begin(),
                             comparability.exclusions.end());

    auto attach_metrics = [](const std::vector<BenchmarkRun>& runs) {
        std::vector<AnalyzedRun> out;
        out.reserve(runs.size());
        for (const BenchmarkRun& run : runs) out.push_back({run, metrics::compute(run)});
        return out;
    };
    result.parsed_population = attach_metrics(consistency.retained);
    result.filtered_population = attach_metrics(comparability.retained);
    return result;
}

}  // namespace specpower
