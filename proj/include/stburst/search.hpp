#pragma once

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "stburst/corpus.hpp"

namespace stburst::search {

/// A mined pattern reduced to what retrieval needs: member streams, a
/// timeframe, and a score. Combinatorial patterns and regional windows both
/// reduce to this; an index instance handles one kind at a time.
struct Pattern {
    std::vector<std::string> streams; // sorted
    int start = 0;
    int end = 0;
    double score = 0.0;
};

/// Per-term pattern sets.
class PatternIndex {
public:
    void add(const std::string& term, Pattern pattern);
    const std::vector<Pattern>* find(const std::string& term) const;
    const std::map<std::string, std::vector<Pattern>>& by_term() const { return by_term_; }
    bool empty() const { return by_term_.empty(); }

private:
    std::map<std::string, std::vector<Pattern>> by_term_;
};

/// How overlapping pattern scores collapse into one burstiness value.
enum class Aggregate { max, min, median, average };
Aggregate aggregate_from_string(const std::string& name);
std::string aggregate_name(Aggregate a);

/// True iff the document's stream and timestamp both fall inside the pattern.
bool overlaps(const corpus::Document& doc, const Pattern& pattern);

/// log(freq + 1); zero when the term is absent.
double relevance(const corpus::Document& doc, const std::string& term);

/// Aggregated score of the patterns overlapping the document, or -infinity
/// when none overlap.
double doc_burstiness(const corpus::Document& doc, const std::string& term,
                      const PatternIndex& patterns, Aggregate aggregate = Aggregate::max);

/// Eq-style document score: sum over query terms of relevance * burstiness.
/// Terms absent from the document contribute nothing; a term present without
/// any overlapping pattern sinks the whole score to -infinity.
double score_document(const std::vector<std::string>& query, const corpus::Document& doc,
                      const PatternIndex& patterns, Aggregate aggregate = Aggregate::max);

struct Posting {
    std::string doc_id;
    double score = 0.0;
};

struct QueryResult {
    std::string doc_id;
    double score = 0.0;
    std::map<std::string, double> contributions;
};

struct QueryStats {
    std::size_t docs_scored = 0;
    std::size_t sorted_accesses = 0;
};

/// Score-sorted postings per term plus the bookkeeping needed for exact
/// Threshold Algorithm evaluation (random access and the present-without-
/// overlap exclusion sets). Immutable once built; queries are thread-safe.
class InvertedIndex {
public:
    static InvertedIndex build(const corpus::Corpus& corpus, const PatternIndex& patterns,
                               Aggregate aggregate = Aggregate::max);

    /// Exact top-k by total score (score desc, doc_id asc). Only documents
    /// with a positive finite score are candidates.
    std::vector<QueryResult> top_k(const std::vector<std::string>& query, int k,
                                   QueryStats* stats = nullptr) const;

    const std::vector<Posting>& postings(const std::string& term) const;
    Aggregate aggregate() const { return aggregate_; }

    std::string to_json() const;
    static InvertedIndex from_json(const std::string& text);

private:
    struct TermEntry {
        std::vector<Posting> postings;                       // finite scores, descending
        std::unordered_map<std::string, double> by_doc;      // random access
        std::unordered_set<std::string> excluded;            // present, no overlap
    };

    std::map<std::string, TermEntry> terms_;
    Aggregate aggregate_ = Aggregate::max;
    static const std::vector<Posting> empty_postings_;
};

} // namespace stburst::search
