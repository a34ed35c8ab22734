#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <random>

#include "specpower/corpus_fetcher.hpp"

using namespace specpower;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& tag) {
    auto dir = fs::temp_directory_path() / ("specpower_test_" + tag + "_" +
                                            std::to_string(std::random_device{}()));
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

// In-memory transport: url -> (status, body). Counts requests per url.
// Thread-safe so it can back parallel sync runs.
struct FakeHttp {
    std::map<std::string, HttpResponse> routes;
    std::map<std::string, int> hits;
    std::mutex mutex;

    HttpGet client() {
        return [this](const std::string& url) {
            std::lock_guard<std::mutex> lock(mutex);
            ++hits[url];
            auto it = routes.find(url);
            if (it == routes.end()) return HttpResponse{404, "not found"};
            return it->second;
        };
    }
};

const std::string kBase = "https://example.test/results/";

std::string index_row(const std::string& id, bool nc = false) {
    std::string cell = "<a href=\"" + id + ".html\">HTML</a> | <a href=\"" + id +
                       ".txt\">Text</a>";
    if (nc) cell = "<del>" + cell + "</del> NC";
    return "<tr><td>Vendor Server</td><td>" + cell + "</td></tr>\n";
}

}  // namespace

TEST_CASE("sha256 of a known vector") {
    CHECK(sha256_hex("abc") ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(sha256_hex("") ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_CASE("publication_date_of reads the slug") {
    CHECK(publication_date_of("power_ssj2008-20230207-00880") == "2023-02-07");
    CHECK_FALSE(publication_date_of("not-a-slug").has_value());
    CHECK_FALSE(publication_date_of("power_ssj2008-2023027-00880").has_value());
}

TEST_CASE("parse_index_html extracts references") {
    std::string html = "<html><table>\n" +
                       index_row("power_ssj2008-20230207-00880") +
                       index_row("power_ssj2008-20081210-00042", /*nc=*/true) +
                       "<tr><td>no links here</td></tr>\n"
                       "</table></html>";
    auto refs = parse_index_html(html, kBase);
    REQUIRE(refs.size() == 2);
    CHECK(refs[0].result_id == "power_ssj2008-20230207-00880");
    CHECK(refs[0].url == kBase + "power_ssj2008-20230207-00880.txt");
    CHECK(refs[0].publication_marker.empty());
    CHECK(refs[1].result_id == "power_ssj2008-20081210-00042");
    CHECK(refs[1].publication_marker == "NC");
}

TEST_CASE("parse_index_html rejects a slug row without a .txt link") {
    std::string html =
        "<table><tr><td><a href=\"power_ssj2008-20230207-00880.html\">HTML</a>"
        "</td></tr></table>";
    CHECK_THROWS_AS(parse_index_html(html, kBase), FetchError);
    try {
        parse_index_html(html, kBase);
    } catch (const FetchError& e) {
        CHECK(e.kind == FetchError::Kind::IndexFormat);
        CHECK(std::string(e.what()).find("power_ssj2008-20230207-00880") !=
              std::string::npos);
    }
}

TEST_CASE("parse_index_html on an empty listing") {
    CHECK(parse_index_html("<html><table></table></html>", kBase).empty());
}

TEST_CASE("manifest round-trips through its text form") {
    CorpusManifest m;
    m.snapshot_date = "2024-06-30";
    m.cutoff = "2024-06-30";
    m.entries = {{"power_ssj2008-20081210-00042", sha256_hex("a")},
                 {"power_ssj2008-20230207-00880", sha256_hex("b")}};
    auto text = manifest_to_text(m);
    CHECK(text.find("# snapshot-date: 2024-06-30") != std::string::npos);
    CHECK(text.find("# cutoff: 2024-06-30") != std::string::npos);
    auto back = manifest_from_text(text);
    CHECK(back.snapshot_date == m.snapshot_date);
    CHECK(back.cutoff == m.cutoff);
    CHECK(back.entries == m.entries);

    auto dir = temp_dir("manifest");
    write_manifest(dir / "MANIFEST.tsv", m);
    CHECK(read_manifest(dir / "MANIFEST.tsv").entries == m.entries);
    fs::remove_all(dir);
}

TEST_CASE("fetch_result hits the network once and then the cache") {
    FakeHttp http;
    ResultReference ref{"power_ssj2008-20230207-00880",
                        kBase + "power_ssj2008-20230207-00880.txt", ""};
    http.routes[ref.url] = {200, "report body\n"};
    auto dir = temp_dir("fetch");

    auto doc = fetch_result(ref, dir, http.client());
    CHECK(doc.body == "report body\n");
    CHECK(doc.checksum == sha256_hex("report body\n"));
    CHECK(http.hits[ref.url] == 1);

    auto again = fetch_result(ref, dir, http.client());
    CHECK(again.body == doc.body);
    CHECK(http.hits[ref.url] == 1);  // served from cache
    fs::remove_all(dir);
}

TEST_CASE("fetch_result reports http failures and integrity mismatches") {
    FakeHttp http;
    ResultReference missing{"power_ssj2008-20230207-00881",
                            kBase + "power_ssj2008-20230207-00881.txt", ""};
    auto dir = temp_dir("fetch_err");
    CHECK_THROWS_AS(fetch_result(missing, dir, http.client()), FetchError);
    try {
        fetch_result(missing, dir, http.client());
    } catch (const FetchError& e) {
        CHECK(e.kind == FetchError::Kind::Http);
        CHECK(e.http_status == 404);
        CHECK(e.retryable());
    }

    ResultReference ref{"power_ssj2008-20230207-00880",
                        kBase + "power_ssj2008-20230207-00880.txt", ""};
    http.routes[ref.url] = {200, "tampered body\n"};
    try {
        fetch_result(ref, dir, http.client(), sha256_hex("expected body\n"));
        FAIL("expected an integrity error");
    } catch (const FetchError& e) {
        CHECK(e.kind == FetchError::Kind::Integrity);
        CHECK_FALSE(e.retryable());
    }
    // the mismatching download must not be cached
    CorpusCache cache(dir);
    CHECK_FALSE(cache.lookup(ref.result_id).has_value());
    fs::remove_all(dir);
}

TEST_CASE("cache never rewrites an existing body") {
    auto dir = temp_dir("cache");
    CorpusCache cache(dir);
    RawResultDocument doc;
    doc.reference = {"power_ssj2008-20230207-00880", kBase + "x.txt", ""};
    doc.body = "first\n";
    doc.checksum = sha256_hex(doc.body);
    doc.fetched_at = "2024-06-01T00:00:00Z";
    cache.store(doc);

    auto altered = doc;
    altered.body = "second\n";
    altered.checksum = sha256_hex(altered.body);
    cache.store(altered);

    auto kept = cache.lookup(doc.reference.result_id);
    REQUIRE(kept.has_value());
    CHECK(kept->body == "first\n");
    fs::remove_all(dir);
}

TEST_CASE("sync_corpus honours the cutoff and writes a sorted manifest") {
    FakeHttp http;
    std::string index_url = kBase + "index.html";
    std::vector<std::string> ids = {
        "power_ssj2008-20230808-00913",  // before cutoff
        "power_ssj2008-20230207-00880",  // before cutoff
        "power_ssj2008-20250101-01000",  // after cutoff
    };
    std::string html = "<table>";
    for (const auto& id : ids) html += index_row(id);
    html += "</table>";
    http.routes[index_url] = {200, html};
    for (const auto& id : ids) {
        http.routes[kBase + id + ".txt"] = {200, "body of " + id + "\n"};
    }

    auto dir = temp_dir("sync");
    SyncOptions opts;
    opts.politeness_delay_ms = 0;
    auto outcome = sync_corpus(index_url, "2024-06-30", dir, opts, http.client());
    CHECK(outcome.failures.empty());
    REQUIRE(outcome.manifest.entries.size() == 2);
    CHECK(outcome.manifest.entries[0].first == "power_ssj2008-20230207-00880");
    CHECK(outcome.manifest.entries[1].first == "power_ssj2008-20230808-00913");
    CHECK(outcome.manifest.cutoff == "2024-06-30");
    CHECK(http.hits[kBase + "power_ssj2008-20250101-01000.txt"] == 0);

    // a second sync over the warm cache downloads nothing and agrees exactly
    auto again = sync_corpus(index_url, "2024-06-30", dir, opts, http.client());
    CHECK(again.manifest.entries == outcome.manifest.entries);
    CHECK(http.hits[kBase + "power_ssj2008-20230207-00880.txt"] == 1);
    fs::remove_all(dir);
}

TEST_CASE("sync_corpus records per-result failures without aborting") {
    FakeHttp http;
    std::string index_url = kBase + "index.html";
    std::string html = "<table>" + index_row("power_ssj2008-20230207-00880") +
                       index_row("power_ssj2008-20230808-00913") + "</table>";
    http.routes[index_url] = {200, html};
    http.routes[kBase + "power_ssj2008-20230207-00880.txt"] = {200, "ok\n"};
    // 00913 has no route, so every attempt 404s

    auto dir = temp_dir("sync_fail");
    SyncOptions opts;
    opts.politeness_delay_ms = 0;
    opts.retries = 1;
    auto outcome = sync_corpus(index_url, "2024-06-30", dir, opts, http.client());
    REQUIRE(outcome.failures.size() == 1);
    CHECK(outcome.failures[0].result_id == "power_ssj2008-20230808-00913");
    REQUIRE(outcome.manifest.entries.size() == 1);
    CHECK(outcome.manifest.entries[0].first == "power_ssj2008-20230207-00880");
    fs::remove_all(dir);
}

TEST_CASE("sync_corpus with parallel workers matches the serial manifest") {
    FakeHttp http;
    std::string index_url = kBase + "index.html";
    std::string html = "<table>";
    std::vector<std::string> ids;
    for (int i = 0; i < 12; ++i) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "power_ssj2008-2015%02d10-%05d", (i % 12) + 1,
                      100 + i);
        ids.emplace_back(buf);
        html += index_row(ids.back());
    }
    html += "</table>";
    http.routes[index_url] = {200, html};
    for (const auto& id : ids) http.routes[kBase + id + ".txt"] = {200, id + "\n"};

    SyncOptions serial_opts;
    serial_opts.politeness_delay_ms = 0;
    auto serial_dir = temp_dir("sync_serial");
    auto serial = sync_corpus(index_url, "2024-06-30", serial_dir, serial_opts,
                              http.client());

    SyncOptions parallel_opts = serial_opts;
    parallel_opts.workers = 4;
    auto parallel_dir = temp_dir("sync_parallel");
    auto parallel = sync_corpus(index_url, "2024-06-30", parallel_dir, parallel_opts,
                                http.client());

    CHECK(serial.manifest.entries == parallel.manifest.entries);
    CHECK(manifest_to_text(serial.manifest) == manifest_to_text(parallel.manifest));
    fs::remove_all(serial_dir);
    fs::remove_all(parallel_dir);
}

TEST_CASE("load_corpus_dir returns documents sorted by result id") {
    auto dir = temp_dir("load");
    std::ofstream(dir / "power_ssj2008-20230808-00913.txt") << "b\n";
    std::ofstream(dir / "power_ssj2008-20230207-00880.txt") << "a\n";
    std::ofstream(dir / "notes.md") << "ignored\n";
    auto docs = load_corpus_dir(dir);
    REQUIRE(docs.size() == 2);
    CHECK(docs[0].reference.result_id == "power_ssj2008-20230207-00880");
    CHECK(docs[1].reference.result_id == "power_ssj2008-20230808-00913");
    CHECK(docs[0].body == "a\n");
    CHECK(docs[0].checksum == sha256_hex("a\n"));
    fs::remove_all(dir);
}
