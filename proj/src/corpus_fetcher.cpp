#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "specpower/corpus_fetcher.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <fstream>
#include <mutex>
#include <regex>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

namespace specpower {
namespace {

namespace fs = std::filesystem;

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file_atomic(const fs::path& path, const std::string& data) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << data;
    }
    fs::rename(tmp, path);
}

std::string now_utc_iso8601() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct UrlParts {
    std::string scheme_host;  // e.g. "https://www.spec.org"
    std::string path;
};

UrlParts split_url(const std::string& url) {
    static const std::regex re(R"(^(https?://[^/]+)(/.*)?$)");
    std::smatch m;
    if (!std::regex_match(url, m, re)) {
        throw FetchError(FetchError::Kind::Network, "unsupported URL: " + url);
    }
    return {m[1].str(), m[2].matched ? m[2].str() : "/"};
}

std::string resolve_url(const std::string& base_url, const std::string& href) {
    if (href.rfind("http://", 0) == 0 || href.rfind("https://", 0) == 0) return href;
    UrlParts base = split_url(base_url);
    if (!href.empty() && href.front() == '/') return base.scheme_host + href;
    std::string dir = base.path.substr(0, base.path.find_last_of('/') + 1);
    return base.scheme_host + dir + href;
}

}  // namespace

std::string sha256_hex(const std::string& data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("sha256 failure");
    }
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(len * 2);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xf]);
    }
    return out;
}

HttpGet default_http_client() {
    return [](const std::string& url) -> HttpResponse {
        UrlParts parts = split_url(url);
        httplib::Client client(parts.scheme_host);
        client.set_follow_location(true);
        client.set_connection_timeout(30);
        client.set_read_timeout(60);
        auto res = client.Get(parts.path);
        if (!res) {
            throw FetchError(FetchError::Kind::Network,
                             "network failure fetching " + url + ": " +
                                 httplib::to_string(res.error()));
        }
        return {res->status, res->body};
    };
}

std::optional<std::string> publication_date_of(const std::string& result_id) {
    static const std::regex re(R"(-([0-9]{4})([0-9]{2})([0-9]{2})-)");
    std::smatch m;
    if (!std::regex_search(result_id, m, re)) return std::nullopt;
    return m[1].str() + "-" + m[2].str() + "-" + m[3].str();
}

std::vector<ResultReference> parse_index_html(const std::string& html,
                                              const std::string& base_url) {
    static const std::regex href_re(R"(href\s*=\s*["']([^"']+)["'])", std::regex::icase);
    static const std::regex slug_re(R"(([A-Za-z0-9_]+-[0-9]{8}-[0-9]{5})\.([A-Za-z0-9]+)\s*$)");
    static const std::regex marker_re(R"(<(del|s|strike)[\s>]|Non-Compliant|>\s*NC\s*<)",
                                      std::regex::icase);

    std::vector<ResultReference> refs;
    std::vector<std::string> seen_ids;

    // Rows bound marker annotations to the links they decorate.
    size_t pos = 0;
    while (pos < html.size()) {
        size_t row_start = html.find("<tr", pos);
        std::string chunk;
        if (row_start == std::string::npos) {
            if (pos == 0) chunk = html;  // listing without table rows
            pos = html.size();
            if (chunk.empty()) break;
        } else {
            size_t row_end = html.find("</tr>", row_start);
            if (row_end == std::string::npos) row_end = html.size();
            chunk = html.substr(row_start, row_end - row_start);
            pos = row_end + 5;
        }

        bool marked = std::regex_search(chunk, marker_re);
        bool row_has_txt = false;
        std::vector<std::string> row_slugs;
        for (auto it = std::sregex_iterator(chunk.begin(), chunk.end(), href_re);
             it != std::sregex_iterator(); ++it) {
            std::string href = (*it)[1].str();
            std::smatch sm;
            if (!std::regex_search(href, sm, slug_re)) continue;
            std::string slug = sm[1].str();
            std::string ext = sm[2].str();
            row_slugs.push_back(slug);
            if (ext != "txt") continue;
            row_has_txt = true;
            if (std::find(seen_ids.begin(), seen_ids.end(), slug) != seen_ids.end()) continue;
            seen_ids.push_back(slug);
            ResultReference ref;
            ref.result_id = slug;
            ref.url = resolve_url(base_url, href);
            if (marked) ref.publication_marker = "NC";
            refs.push_back(std::move(ref));
        }
        if (!row_slugs.empty() && !row_has_txt) {
            throw FetchError(FetchError::Kind::IndexFormat,
                             "index entry \"" + row_slugs.front() + "\" has no .txt link");
        }
    }
    return refs;
}

std::vector<ResultReference> fetch_index(const std::string& index_url, const HttpGet& http) {
    HttpResponse res = http(index_url);
    if (res.status < 200 || res.status >= 300) {
        throw FetchError(FetchError::Kind::Http,
                         "index fetch returned HTTP " + std::to_string(res.status), res.status);
    }
    return parse_index_html(res.body, index_url);
}

CorpusCache::CorpusCache(fs::path dir) : dir_(std::move(dir)) {
    fs::create_directories(dir_);
}

std::optional<RawResultDocument> CorpusCache::lookup(const std::string& result_id) const {
    fs::path body_path = dir_ / (result_id + ".txt");
    fs::path meta_path = dir_ / (result_id + ".meta.json");
    if (!fs::exists(body_path) || !fs::exists(meta_path)) return std::nullopt;
    RawResultDocument doc;
    doc.body = read_file(body_path);
    auto meta = nlohmann::json::parse(read_file(meta_path));
    doc.reference.result_id = meta.at("result_id").get<std::string>();
    doc.reference.url = meta.at("url").get<std::string>();
    doc.reference.publication_marker = meta.value("publication_marker", "");
    doc.fetched_at = meta.at("fetched_at").get<std::string>();
    doc.checksum = meta.at("checksum").get<std::string>();
    return doc;
}

void CorpusCache::store(const RawResultDocument& doc) {
    fs::path body_path = dir_ / (doc.reference.result_id + ".txt");
    if (!fs::exists(body_path)) {
        write_file_atomic(body_path, doc.body);
    }
    nlohmann::json meta = {{"result_id", doc.reference.result_id},
                           {"url", doc.reference.url},
                           {"fetched_at", doc.fetched_at},
                           {"checksum", doc.checksum}};
    if (!doc.reference.publication_marker.empty()) {
        meta["publication_marker"] = doc.reference.publication_marker;
    }
    fs::path meta_path = dir_ / (doc.reference.result_id + ".meta.json");
    if (!fs::exists(meta_path)) {
        write_file_atomic(meta_path, meta.dump(2) + "\n");
    }
}

std::string manifest_to_text(const CorpusManifest& m) {
    std::ostringstream out;
    out << "# snapshot-date: " << m.snapshot_date << "\n";
    out << "# cutoff: " << m.cutoff << "\n";
    for (const auto& [id, checksum] : m.entries) out << id << "\t" << checksum << "\n";
    return out.str();
}

CorpusManifest manifest_from_text(const std::string& text) {
    CorpusManifest m;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line.rfind("# snapshot-date: ", 0) == 0) {
            m.snapshot_date = line.substr(17);
        } else if (line.rfind("# cutoff: ", 0) == 0) {
            m.cutoff = line.substr(10);
        } else if (line[0] != '#') {
            size_t tab = line.find('\t');
            if (tab == std::string::npos) {
                throw std::runtime_error("malformed manifest line: " + line);
            }
            m.entries.emplace_back(line.substr(0, tab), line.substr(tab + 1));
        }
    }
    return m;
}

void write_manifest(const fs::path& path, const CorpusManifest& m) {
    write_file_atomic(path, manifest_to_text(m));
}

CorpusManifest read_manifest(const fs::path& path) {
    return manifest_from_text(read_file(path));
}

RawResultDocument fetch_result(const ResultReference& ref, const fs::path& cache_dir,
                               const HttpGet& http,
                               const std::optional<std::string>& pinned_checksum) {
    CorpusCache cache(cache_dir);
    if (auto cached = cache.lookup(ref.result_id)) {
        if (pinned_checksum && cached->checksum != *pinned_checksum) {
            throw FetchError(FetchError::Kind::Integrity,
                             ref.result_id + ": cached checksum " + cached->checksum +
                                 " != pinned " + *pinned_checksum);
        }
        return *cached;
    }
    HttpResponse res = http(ref.url);
    if (res.status < 200 || res.status >= 300) {
        throw FetchError(FetchError::Kind::Http,
                         ref.result_id + ": HTTP " + std::to_string(res.status), res.status);
    }
    if (res.body.empty()) {
        throw FetchError(FetchError::Kind::Http, ref.result_id + ": empty body");
    }
    RawResultDocument doc;
    doc.reference = ref;
    doc.body = res.body;
    doc.fetched_at = now_utc_iso8601();
    doc.checksum = sha256_hex(doc.body);
    if (pinned_checksum && doc.checksum != *pinned_checksum) {
        throw FetchError(FetchError::Kind::Integrity,
                         ref.result_id + ": downloaded checksum " + doc.checksum +
                             " != pinned " + *pinned_checksum);
    }
    cache.store(doc);
    return doc;
}

namespace {

// Serializes request starts; one shared limiter implements the per-host
// politeness delay regardless of worker count.
class Politeness {
  public:
    explicit Politeness(int delay_ms) : delay_(delay_ms) {}

    void wait_turn() {
        std::unique_lock lock(mutex_);
        auto now = std::chrono::steady_clock::now();
        if (now < next_) {
            auto at = next_;
            lock.unlock();
            std::this_thread::sleep_until(at);
            lock.lock();
        }
        next_ = std::chrono::steady_clock::now() + delay_;
    }

  private:
    std::mutex mutex_;
    std::chrono::milliseconds delay_;
    std::chrono::steady_clock::time_point next_ = std::chrono::steady_clock::now();
};

}  // namespace

SyncOutcome sync_corpus(const std::string& index_url, const std::string& cutoff_date,
                        const fs::path& cache_dir, const SyncOptions& options,
                        const HttpGet& http) {
    std::vector<ResultReference> refs = fetch_index(index_url, http);

    // Publication date from the id slug; results dated after the cutoff are
    // excluded, undated slugs kept (and flagged downstream by their marker).
    std::vector<ResultReference> selected;
    for (const auto& ref : refs) {
        auto pub = publication_date_of(ref.result_id);
        if (pub && *pub > cutoff_date) continue;
        selected.push_back(ref);
    }

    CorpusCache cache(cache_dir);
    Politeness politeness(options.politeness_delay_ms);
    std::mutex out_mutex;
    SyncOutcome out;
    out.manifest.cutoff = cutoff_date;
    out.manifest.snapshot_date = cutoff_date;

    std::atomic<size_t> next_index{0};
    auto worker = [&]() {
        while (true) {
            size_t i = next_index.fetch_add(1);
            if (i >= selected.size()) return;
            const ResultReference& ref = selected[i];
            try {
                RawResultDocument doc;
                if (auto cached = cache.lookup(ref.result_id)) {
                    doc = *cached;
                } else {
                    int attempts = 0;
                    while (true) {
                        try {
                            politeness.wait_turn();
                            doc = fetch_result(ref, cache_dir, http);
                            break;
                        } catch (const FetchError& e) {
                            if (!e.retryable() || ++attempts > options.retries) throw;
                        }
                    }
                }
                std::lock_guard lock(out_mutex);
                out.manifest.entries.emplace_back(ref.result_id, doc.checksum);
            } catch (const std::exception& e) {
                std::lock_guard lock(out_mutex);
                out.failures.push_back({ref.result_id, e.what()});
            }
        }
    };

    int workers = std::max(1, options.workers);
    std::vector<std::thread> pool;
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    std::sort(out.manifest.entries.begin(), out.manifest.entries.end());
    return out;
}

std::vector<RawResultDocument> load_corpus_dir(const fs::path& dir) {
    std::vector<fs::path> paths;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.path().extension() == ".txt") paths.push_back(entry.path());
    }
    std::sort(paths.begin(), paths.end());

    std::vector<RawResultDocument> docs;
    for (const auto& path : paths) {
        RawResultDocument doc;
        doc.reference.result_id = path.stem().string();
        doc.body = read_file(path);
        doc.checksum = sha256_hex(doc.body);
        fs::path meta_path = path;
        meta_path.replace_extension(".meta.json");
        if (fs::exists(meta_path)) {
            auto meta = nlohmann::json::parse(read_file(meta_path));
            doc.reference.url = meta.value("url", "");
            doc.reference.publication_marker = meta.value("publication_marker", "");
            doc.fetched_at = meta.value("fetched_at", "");
        }
        docs.push_back(std::move(doc));
    }
    return docs;
}

}  // namespace specpower
