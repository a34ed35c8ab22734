#pragma once

#include <cstdint>
#include <string>

namespace specpower {

// One entry of the publisher's results index.
struct ResultReference {
    std::string result_id;           // derived from the result URL slug
    std::string url;                 // absolute, ends in ".txt"
    std::string publication_marker;  // index annotation (e.g. "NC"), empty when none

    bool operator==(const ResultReference&) const = default;
};

// One fetched .txt report plus provenance.
struct RawResultDocument {
    ResultReference reference;
    std::string body;
    std::string fetched_at;  // ISO 8601 UTC
    std::string checksum;    // hex SHA-256 of the body bytes
};

}  // namespace specpower
