#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "stburst/geometry.hpp"

namespace stburst::corpus {

struct StreamMeta {
    std::string stream_id;
    GeoPoint location;
};

struct Document {
    std::string doc_id;
    std::string stream_id;
    int timestamp = 0; // 1-based
    std::map<std::string, std::uint32_t> term_counts;
};

/// Per-(stream, term) frequency measurements, one value per timestamp.
struct FrequencySeries {
    std::string term;
    std::string stream_id;
    std::vector<std::uint32_t> values;
};

struct TokenizerConfig {
    std::unordered_set<std::string> stopwords;
    std::size_t min_token_length = 2;
};

/// Lowercase, split on non-alphanumeric, drop short tokens and stopwords.
std::map<std::string, std::uint32_t> tokenize(std::string_view text, const TokenizerConfig& config);

/// Small built-in English function-word list; callers may replace it.
const std::unordered_set<std::string>& default_stopwords();

/// Immutable term-frequency store over geostamped streams. Streams are kept
/// sorted by id, so stream indices follow lexicographic id order. After
/// construction the corpus never changes and is safe for concurrent reads.
class Corpus {
public:
    struct FrequencyRecord {
        std::string stream_id;
        int timestamp = 0;
        std::string term;
        std::uint32_t count = 0;
    };

    /// timeline_override = 0 means "use the maximum observed timestamp".
    static Corpus build(std::vector<StreamMeta> streams, std::vector<Document> documents,
                        int timeline_override = 0);

    /// Build from bare frequency cells; each (stream, timestamp) cell becomes
    /// one synthetic document so the search pipeline can run over it.
    static Corpus from_frequencies(std::vector<StreamMeta> streams,
                                   const std::vector<FrequencyRecord>& records,
                                   int timeline_override = 0,
                                   bool synthesize_documents = true);

    int stream_count() const { return static_cast<int>(streams_.size()); }
    int timeline_length() const { return timeline_length_; }
    const std::vector<StreamMeta>& streams() const { return streams_; }
    const std::vector<Document>& documents() const { return documents_; }
    const std::vector<std::string>& terms() const { return terms_; }

    int stream_index(std::string_view stream_id) const; // throws on unknown id
    bool has_stream(std::string_view stream_id) const;

    FrequencySeries frequency_series(std::string_view stream_id, std::string_view term) const;

    /// Zero-copy access; absent (stream, term) pairs map to an all-zero series.
    std::span<const std::uint32_t> series_values(int stream_index, std::string_view term) const;

private:
    Corpus() = default;
    void finalize(int timeline_override);

    std::vector<StreamMeta> streams_; // sorted by stream_id
    std::unordered_map<std::string, int> stream_lookup_;
    std::vector<Document> documents_;
    std::vector<std::string> terms_;
    int timeline_length_ = 0;
    std::vector<std::unordered_map<std::string, std::vector<std::uint32_t>>> series_; // per stream
    std::vector<std::uint32_t> zero_series_;
};

} // namespace stburst::corpus
