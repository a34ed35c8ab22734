// Command-line driver: fetch -> parse -> filter -> analyze, plus per-run
// explanation and analysis summaries.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "specpower/corpus_fetcher.hpp"
#include "specpower/pipeline.hpp"
#include "specpower/record_io.hpp"
#include "specpower/report.hpp"

namespace fs = std::filesystem;
using namespace specpower;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitPipeline = 2;

struct CliOptions {
    std::string config_path;
    std::optional<std::string> cutoff;
    std::optional<std::string> cache_dir;
    std::optional<std::string> out_dir;
    std::optional<std::string> index_url;
    std::optional<int> jobs;
    bool offline = false;
    std::string only;
};

PipelineConfig resolve_config(const CliOptions& cli) {
    PipelineConfig config;
    if (!cli.config_path.empty()) config = PipelineConfig::from_file(cli.config_path);
    if (const char* env = std::getenv("SPECPOWER_CACHE_DIR")) config.cache_dir = env;
    if (cli.cutoff) config.cutoff = *cli.cutoff;
    if (cli.cache_dir) config.cache_dir = *cli.cache_dir;
    if (cli.out_dir) config.output_dir = *cli.out_dir;
    if (cli.index_url) config.index_url = *cli.index_url;
    if (cli.jobs) config.jobs = *cli.jobs;
    if (cli.offline) config.offline = true;
    config.validate();
    return config;
}

void write_text(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

std::vector<RawResultDocument> load_corpus(const PipelineConfig& config) {
    auto docs = load_corpus_dir(config.cache_dir);
    if (docs.empty()) {
        throw std::runtime_error("no .txt result files under " + config.cache_dir.string());
    }
    return docs;
}

int cmd_fetch(const CliOptions& cli) {
    PipelineConfig config = resolve_config(cli);
    SyncOptions options;
    options.workers = config.jobs;
    SyncOutcome outcome = sync_corpus(config.index_url, config.cutoff, config.cache_dir, options);
    write_manifest(config.cache_dir / "manifest.tsv", outcome.manifest);
    std::cout << "fetched " << outcome.manifest.entries.size() << " results into "
              << config.cache_dir.string() << "\n";
    if (!outcome.failures.empty()) {
        std::cerr << outcome.failures.size() << " downloads failed:\n";
        for (const auto& f : outcome.failures) {
            std::cerr << "  " << f.result_id << ": " << f.message << "\n";
        }
        return kExitPipeline;
    }
    return 0;
}

int cmd_parse(const CliOptions& cli) {
    PipelineConfig config = resolve_config(cli);
    auto docs = load_corpus(config);
    PipelineResult result = run_pipeline(docs, config.filters, config.parser, config.jobs);
    fs::create_directories(config.output_dir);
    write_runs(config.output_dir / "runs.jsonl", result.parsed);
    write_parse_failures(config.output_dir / "parse_failures.jsonl", result.failures);
    std::cout << "parsed " << result.parsed.size() << " runs, " << result.failures.size()
              << " failures\n";
    return 0;
}

int cmd_filter(const CliOptions& cli) {
    PipelineConfig config = resolve_config(cli);
    auto runs = read_runs(config.output_dir / "runs.jsonl");
    FilterOutcome consistency = consistency_filter(runs, config.filters);
    FilterOutcome comparability = comparability_filter(consistency.retained, config.filters);
    std::vector<ExclusionRecord> exclusions = consistency.exclusions;
    exclusions.insert(exclusions.end(), comparability.exclusions.begin(),
                      comparability.exclusions.end());
    auto bundle = report::build_tables({}, {}, consistency.report, comparability.report,
                                       exclusions);
    write_text(config.output_dir / "filter_report.tsv", bundle.at("filter_report.tsv"));
    write_text(config.output_dir / "exclusions.tsv", bundle.at("exclusions.tsv"));
    std::cout << "consistency retained " << consistency.report.retained_count << " of "
              << consistency.report.input_count << "; comparability retained "
              << comparability.report.retained_count << "\n";
    return 0;
}

int cmd_analyze(const CliOptions& cli) {
    PipelineConfig config = resolve_config(cli);
    fs::create_directories(config.output_dir);
    {
        std::ofstream probe(config.output_dir / ".write_probe");
        if (!probe) {
            std::cerr << "error: output dir not writable: " << config.output_dir.string()
                      << "\n";
            return kExitPipeline;
        }
    }
    fs::remove(config.output_dir / ".write_probe");

    auto docs = load_corpus(config);
    PipelineResult result = run_pipeline(docs, config.filters, config.parser, config.jobs);

    report::Bundle bundle;
    if (config.emit.count("table")) {
        auto tables = report::build_tables(result.parsed_population, result.filtered_population,
                                           result.consistency_report,
                                           result.comparability_report, result.exclusions);
        bundle.insert(tables.begin(), tables.end());
    }
    if (config.emit.count("svg")) {
        auto svgs = report::build_svgs(result.parsed_population, result.filtered_population);
        bundle.insert(svgs.begin(), svgs.end());
    }

    // Stage into a temp dir so a failed emission leaves no partial bundle.
    fs::path staging = config.output_dir / ".staging";
    fs::remove_all(staging);
    fs::create_directories(staging);
    try {
        for (const auto& [name, content] : bundle) {
            if (!cli.only.empty() && name.rfind(cli.only, 0) != 0 &&
                name.find(cli.only) == std::string::npos) {
                continue;
            }
            write_text(staging / name, content);
        }
        if (config.emit.count("records") && cli.only.empty()) {
            write_runs(staging / "runs.jsonl", result.parsed);
            write_parse_failures(staging / "parse_failures.jsonl", result.failures);
            std::vector<RunMetrics> all_metrics;
            for (const auto& r : result.filtered_population) all_metrics.push_back(r.metrics);
            write_metrics(staging / "metrics.jsonl", all_metrics);
        }
    } catch (...) {
        fs::remove_all(staging);
        throw;
    }
    for (const auto& entry : fs::directory_iterator(staging)) {
        fs::rename(entry.path(), config.output_dir / entry.path().filename());
    }
    fs::remove_all(staging);

    std::cout << "parsed " << result.parsed.size() << " runs; consistency retained "
              << result.consistency_report.retained_count << "; comparability retained "
              << result.comparability_report.retained_count << "\n";
    return 0;
}

int cmd_explain(const CliOptions& cli, const std::string& result_id) {
    PipelineConfig config = resolve_config(cli);
    auto docs = load_corpus(config);
    PipelineResult result = run_pipeline(docs, config.filters, config.parser, config.jobs);

    const BenchmarkRun* run = nullptr;
    for (const auto& r : result.parsed) {
        if (r.result_id == result_id) run = &r;
    }
    if (!run) {
        std::cerr << "error: result \"" << result_id << "\" not found\n";
        return kExitPipeline;
    }
    const RunMetrics* m = nullptr;
    for (const auto& r : result.filtered_population) {
        if (r.run.result_id == result_id) m = &r.metrics;
    }
    if (!m) {
        for (const auto& r : result.parsed_population) {
            if (r.run.result_id == result_id) m = &r.metrics;
        }
    }
    std::cout << report::explain_run(*run, m, result.exclusions);
    return 0;
}

int cmd_report(const CliOptions& cli) {
    PipelineConfig config = resolve_config(cli);
    fs::path report_path = config.output_dir / "filter_report.tsv";
    std::ifstream in(report_path);
    if (!in) {
        std::cerr << "error: no analysis found at " << report_path.string()
                  << " (run analyze first)\n";
        return kExitPipeline;
    }
    std::cout << "analysis summary from " << config.output_dir.string() << "\n\n";
    std::cout << in.rdbuf();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"SPEC Power results corpus analysis"};
    app.require_subcommand(1);
    app.fallthrough();  // accept top-level options (e.g. --config) after the subcommand

    CliOptions cli;
    app.add_option("--config", cli.config_path, "config file (JSON)");
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--cutoff", cli.cutoff, "snapshot cutoff date YYYY-MM-DD");
        sub->add_option("--cache-dir", cli.cache_dir, "corpus cache directory");
        sub->add_option("--out", cli.out_dir, "output directory");
        sub->add_option("--index-url", cli.index_url, "results index URL");
        sub->add_option("--jobs", cli.jobs, "parallel workers");
        sub->add_flag("--offline", cli.offline, "never touch the network");
    };

    auto* fetch = app.add_subcommand("fetch", "download the result corpus");
    auto* parse = app.add_subcommand("parse", "parse cached results into records");
    auto* filter = app.add_subcommand("filter", "apply consistency and comparability filters");
    auto* analyze = app.add_subcommand("analyze", "run the full pipeline and emit all tables");
    analyze->add_option("--only", cli.only, "emit only outputs matching this name (e.g. fig5)");
    auto* explain = app.add_subcommand("explain", "dossier for a single run");
    std::string explain_id;
    explain->add_option("result_id", explain_id, "result id")->required();
    auto* summary = app.add_subcommand("report", "print the summary of an existing analysis");
    for (CLI::App* sub : {fetch, parse, filter, analyze, explain, summary}) add_common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (fetch->parsed()) return cmd_fetch(cli);
        if (parse->parsed()) return cmd_parse(cli);
        if (filter->parsed()) return cmd_filter(cli);
        if (analyze->parsed()) return cmd_analyze(cli);
        if (explain->parsed()) return cmd_explain(cli, explain_id);
        if (summary->parsed()) return cmd_report(cli);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPipeline;
    }
    return kExitUsage;
}
