#include "stburst/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace stburst::corpus {

std::map<std::string, std::uint32_t> tokenize(std::string_view text, const TokenizerConfig& config) {
    std::map<std::string, std::uint32_t> counts;
    std::string token;
    auto flush = [&] {
        if (token.size() >= config.min_token_length && !config.stopwords.contains(token)) {
            ++counts[token];
        }
        token.clear();
    };
    for (char c : text) {
        if (std::isalnum(static_cast<unsigned char>(c))) {
            token.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        } else {
            flush();
        }
    }
    flush();
    return counts;
}

const std::unordered_set<std::string>& default_stopwords() {
    static const std::unordered_set<std::string> words = {
        "the", "and", "for", "are", "was", "were", "with", "that", "this", "from",
        "has", "have", "had", "not", "but", "his", "her", "its", "they", "them",
        "you", "who", "which", "will", "would", "been", "said", "also", "into",
    };
    return words;
}

Corpus Corpus::build(std::vector<StreamMeta> streams, std::vector<Document> documents,
                     int timeline_override) {
    if (streams.empty()) {
        throw std::invalid_argument("corpus: stream set is empty");
    }
    Corpus c;
    c.streams_ = std::move(streams);
    std::sort(c.streams_.begin(), c.streams_.end(),
              [](const StreamMeta& a, const StreamMeta& b) { return a.stream_id < b.stream_id; });
    for (size_t i = 0; i < c.streams_.size(); ++i) {
        auto [it, inserted] = c.stream_lookup_.emplace(c.streams_[i].stream_id, static_cast<int>(i));
        if (!inserted) {
            throw std::invalid_argument("corpus: duplicate stream_id '" + c.streams_[i].stream_id + "'");
        }
    }

    for (const Document& doc : documents) {
        if (!c.stream_lookup_.contains(doc.stream_id)) {
            throw std::invalid_argument("corpus: document '" + doc.doc_id +
                                        "' references unknown stream '" + doc.stream_id + "'");
        }
        if (doc.timestamp < 1) {
            throw std::invalid_argument("corpus: document '" + doc.doc_id +
                                        "' has non-positive timestamp");
        }
        for (const auto& [term, count] : doc.term_counts) {
            if (count == 0) {
                throw std::invalid_argument("corpus: document '" + doc.doc_id +
                                            "' has zero count for term '" + term + "'");
            }
        }
    }
    c.documents_ = std::move(documents);
    c.finalize(timeline_override);
    return c;
}

Corpus Corpus::from_frequencies(std::vector<StreamMeta> streams,
                                const std::vector<FrequencyRecord>& records,
                                int timeline_override, bool synthesize_documents) {
    // One synthetic document per (stream, timestamp) cell keeps the search
    // pipeline applicable to frequency-only corpora.
    std::map<std::pair<std::string, int>, std::map<std::string, std::uint32_t>> cells;
    for (const FrequencyRecord& r : records) {
        if (r.count == 0) continue;
        cells[{r.stream_id, r.timestamp}][r.term] += r.count;
    }
    std::vector<Document> docs;
    if (synthesize_documents) {
        docs.reserve(cells.size());
        for (auto& [key, counts] : cells) {
            Document d;
            d.doc_id = key.first + "@" + std::to_string(key.second);
            d.stream_id = key.first;
            d.timestamp = key.second;
            d.term_counts = std::move(counts);
            docs.push_back(std::move(d));
        }
    } else {
        for (auto& [key, counts] : cells) {
            Document d;
            d.stream_id = key.first;
            d.timestamp = key.second;
            d.term_counts = std::move(counts);
            docs.push_back(std::move(d));
        }
    }
    Corpus c = build(std::move(streams), std::move(docs), timeline_override);
    if (!synthesize_documents) {
        c.documents_.clear();
    }
    return c;
}

void Corpus::finalize(int timeline_override) {
    int max_ts = 0;
    for (const Document& doc : documents_) {
        max_ts = std::max(max_ts, doc.timestamp);
    }
    timeline_length_ = timeline_override > 0 ? timeline_override : std::max(max_ts, 1);
    if (max_ts > timeline_length_) {
        throw std::invalid_argument("corpus: document timestamp " + std::to_string(max_ts) +
                                    " exceeds timeline length " + std::to_string(timeline_length_));
    }

    zero_series_.assign(static_cast<size_t>(timeline_length_), 0);
    series_.resize(streams_.size());

    std::unordered_set<std::string> term_set;
    for (const Document& doc : documents_) {
        const int s = stream_lookup_.at(doc.stream_id);
        for (const auto& [term, count] : doc.term_counts) {
            auto& series = series_[static_cast<size_t>(s)][term];
            if (series.empty()) {
                series.assign(static_cast<size_t>(timeline_length_), 0);
            }
            series[static_cast<size_t>(doc.timestamp) - 1] += count;
            term_set.insert(term);
        }
    }
    terms_.assign(term_set.begin(), term_set.end());
    std::sort(terms_.begin(), terms_.end());
}

int Corpus::stream_index(std::string_view stream_id) const {
    auto it = stream_lookup_.find(std::string(stream_id));
    if (it == stream_lookup_.end()) {
        throw std::out_of_range("corpus: unknown stream '" + std::string(stream_id) + "'");
    }
    return it->second;
}

bool Corpus::has_stream(std::string_view stream_id) const {
    return stream_lookup_.contains(std::string(stream_id));
}

FrequencySeries Corpus::frequency_series(std::string_view stream_id, std::string_view term) const {
    const int s = stream_index(stream_id);
    auto values = series_values(s, term);
    FrequencySeries out;
    out.term = std::string(term);
    out.stream_id = std::string(stream_id);
    out.values.assign(values.begin(), values.end());
    return out;
}

std::span<const std::uint32_t> Corpus::series_values(int stream_index, std::string_view term) const {
    const auto& per_stream = series_.at(static_cast<size_t>(stream_index));
    auto it = per_stream.find(std::string(term));
    if (it == per_stream.end()) {
        return zero_series_;
    }
    return it->second;
}

} // namespace stburst::corpus
