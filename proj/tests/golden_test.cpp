#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "specpower/corpus_fetcher.hpp"
#include "specpower/pipeline.hpp"
#include "specpower/serialization.hpp"

using namespace specpower;
namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE_MESSAGE(in, "missing " << p.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Expected records frozen from a manually checked parse of the sample files.
// Set GOLDEN_REGEN=1 to rewrite them after a deliberate schema change.
struct GoldenOutput {
    std::string runs;
    std::string failures;
};

GoldenOutput render_current() {
    auto docs = load_corpus_dir(fs::path(TEST_DATA_DIR) / "corpus");
    REQUIRE(docs.size() >= 10);
    PipelineResult result = run_pipeline(docs);
    std::ostringstream runs, failures;
    for (const auto& run : result.parsed) runs << to_json(run).dump() << "\n";
    for (const auto& f : result.failures) failures << to_json(f).dump() << "\n";
    return {runs.str(), failures.str()};
}

}  // namespace

TEST_CASE("sample corpus parses to the frozen golden records byte-for-byte") {
    GoldenOutput current = render_current();
    fs::path golden_dir = fs::path(TEST_DATA_DIR) / "golden";
    fs::path runs_path = golden_dir / "runs.jsonl";
    fs::path failures_path = golden_dir / "parse_failures.jsonl";

    if (std::getenv("GOLDEN_REGEN")) {
        fs::create_directories(golden_dir);
        std::ofstream(runs_path, std::ios::binary) << current.runs;
        std::ofstream(failures_path, std::ios::binary) << current.failures;
        MESSAGE("golden records regenerated");
        return;
    }

    CHECK(current.runs == read_file(runs_path));
    CHECK(current.failures == read_file(failures_path));
}

TEST_CASE("the parser itself drops no run from the sample corpus") {
    auto docs = load_corpus_dir(fs::path(TEST_DATA_DIR) / "corpus");
    PipelineResult result = run_pipeline(docs);
    CHECK(result.parsed.size() == docs.size());
    CHECK(result.failures.empty());
}
