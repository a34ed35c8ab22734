#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "specpower/document.hpp"

namespace specpower {

std::string sha256_hex(const std::string& data);

struct HttpResponse {
    int status = 0;
    std::string body;
};

// Pluggable transport; tests inject a loopback server or a fake.
using HttpGet = std::function<HttpResponse(const std::string& url)>;

HttpGet default_http_client();

struct FetchError : std::runtime_error {
    enum class Kind { Network, Http, IndexFormat, Integrity };
    Kind kind;
    int http_status = 0;
    bool retryable() const { return kind == Kind::Network || kind == Kind::Http; }

    FetchError(Kind k, const std::string& what, int status = 0)
        : std::runtime_error(what), kind(k), http_status(status) {}
};

// Extract result references from the publisher's HTML listing. Every link
// whose slug matches the result-id pattern must come with a .txt variant;
// a listing that breaks that yields an index-format error naming the
// offending construct. Row-level strike-through / "NC" annotations are
// captured as publication markers.
std::vector<ResultReference> parse_index_html(const std::string& html,
                                              const std::string& base_url);

std::vector<ResultReference> fetch_index(const std::string& index_url,
                                         const HttpGet& http = default_http_client());

// Publication date encoded in the result id slug (power_ssj2008-YYYYMMDD-NNNNN).
std::optional<std::string> publication_date_of(const std::string& result_id);

// Cache layout: <dir>/<result_id>.txt plus <dir>/<result_id>.meta.json.
class CorpusCache {
  public:
    explicit CorpusCache(std::filesystem::path dir);

    std::optional<RawResultDocument> lookup(const std::string& result_id) const;
    void store(const RawResultDocument& doc);  // atomic, never rewrites an existing body

    const std::filesystem::path& dir() const { return dir_; }

  private:
    std::filesystem::path dir_;
};

struct CorpusManifest {
    std::string snapshot_date;  // YYYY-MM-DD
    std::string cutoff;         // YYYY-MM-DD
    std::vector<std::pair<std::string, std::string>> entries;  // (result_id, checksum), sorted
};

std::string manifest_to_text(const CorpusManifest& m);
CorpusManifest manifest_from_text(const std::string& text);
void write_manifest(const std::filesystem::path& path, const CorpusManifest& m);
CorpusManifest read_manifest(const std::filesystem::path& path);

// Download one result, serving from cache when present. When a pinned
// checksum is supplied, a mismatching download is an integrity error.
RawResultDocument fetch_result(const ResultReference& ref,
                               const std::filesystem::path& cache_dir,
                               const HttpGet& http = default_http_client(),
                               const std::optional<std::string>& pinned_checksum = std::nullopt);

struct SyncOptions {
    int workers = 1;
    int politeness_delay_ms = 500;
    int retries = 2;
};

struct SyncFailure {
    std::string result_id;
    std::string message;
};

struct SyncOutcome {
    CorpusManifest manifest;
    std::vector<SyncFailure> failures;
};

// Fetch the index, download everything published on or before the cutoff,
// and assemble a manifest. Deterministic over a warm cache.
SyncOutcome sync_corpus(const std::string& index_url, const std::string& cutoff_date,
                        const std::filesystem::path& cache_dir, const SyncOptions& options = {},
                        const HttpGet& http = default_http_client());

// Offline entry point: treat a directory of .txt files as the corpus.
std::vector<RawResultDocument> load_corpus_dir(const std::filesystem::path& dir);

}  // namespace specpower
