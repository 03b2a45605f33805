#include "stburst/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace stburst::search {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

const std::vector<Posting> InvertedIndex::empty_postings_{};

void PatternIndex::add(const std::string& term, Pattern pattern) {
    std::sort(pattern.streams.begin(), pattern.streams.end());
    by_term_[term].push_back(std::move(pattern));
}

const std::vector<Pattern>* PatternIndex::find(const std::string& term) const {
    auto it = by_term_.find(term);
    return it == by_term_.end() ? nullptr : &it->second;
}

Aggregate aggregate_from_string(const std::string& name) {
    if (name == "max") return Aggregate::max;
    if (name == "min") return Aggregate::min;
    if (name == "median") return Aggregate::median;
    if (name == "average") return Aggregate::average;
    throw std::invalid_argument("unknown aggregate '" + name + "'");
}

std::string aggregate_name(Aggregate a) {
    switch (a) {
    case Aggregate::max: return "max";
    case Aggregate::min: return "min";
    case Aggregate::median: return "median";
    case Aggregate::average: return "average";
    }
    return "max";
}

bool overlaps(const corpus::Document& doc, const Pattern& pattern) {
    if (doc.timestamp < pattern.start || doc.timestamp > pattern.end) return false;
    return std::binary_search(pattern.streams.begin(), pattern.streams.end(), doc.stream_id);
}

double relevance(const corpus::Document& doc, const std::string& term) {
    auto it = doc.term_counts.find(term);
    if (it == doc.term_counts.end()) return 0.0;
    return std::log(static_cast<double>(it->second) + 1.0);
}

double doc_burstiness(const corpus::Document& doc, const std::string& term,
                      const PatternIndex& patterns, Aggregate aggregate) {
    const std::vector<Pattern>* candidates = patterns.find(term);
    if (candidates == nullptr) return kNegInf;

    std::vector<double> scores;
    for (const Pattern& p : *candidates) {
        if (overlaps(doc, p)) scores.push_back(p.score);
    }
    if (scores.empty()) return kNegInf;

    switch (aggregate) {
    case Aggregate::max: return *std::max_element(scores.begin(), scores.end());
    case Aggregate::min: return *std::min_element(scores.begin(), scores.end());
    case Aggregate::median: {
        std::sort(scores.begin(), scores.end());
        const size_t n = scores.size();
        if (n % 2 == 1) return scores[n / 2];
        return 0.5 * (scores[n / 2 - 1] + scores[n / 2]);
    }
    case Aggregate::average: {
        double sum = 0.0;
        for (double s : scores) sum += s;
        return sum / static_cast<double>(scores.size());
    }
    }
    return kNegInf;
}

double score_document(const std::vector<std::string>& query, const corpus::Document& doc,
                      const PatternIndex& patterns, Aggregate aggregate) {
    if (query.empty()) {
        throw std::invalid_argument("score_document: empty query");
    }
    std::vector<std::string> terms = query;
    std::sort(terms.begin(), terms.end());
    terms.erase(std::unique(terms.begin(), terms.end()), terms.end());

    double total = 0.0;
    for (const std::string& term : terms) {
        const double rel = relevance(doc, term);
        if (rel == 0.0) continue; // absent terms contribute nothing: 0 * (-inf) := 0
        const double burst = doc_burstiness(doc, term, patterns, aggregate);
        if (burst == kNegInf) return kNegInf;
        total += rel * burst;
    }
    return total;
}

InvertedIndex InvertedIndex::build(const corpus::Corpus& corpus, const PatternIndex& patterns,
                                   Aggregate aggregate) {
    InvertedIndex index;
    index.aggregate_ = aggregate;
    for (const corpus::Document& doc : corpus.documents()) {
        for (const auto& [term, count] : doc.term_counts) {
            TermEntry& entry = index.terms_[term];
            const double burst = doc_burstiness(doc, term, patterns, aggregate);
            if (burst == kNegInf) {
                entry.excluded.insert(doc.doc_id);
                continue;
            }
            const double score = std::log(static_cast<double>(count) + 1.0) * burst;
            entry.postings.push_back({doc.doc_id, score});
            entry.by_doc.emplace(doc.doc_id, score);
        }
    }
    for (auto& [term, entry] : index.terms_) {
        std::sort(entry.postings.begin(), entry.postings.end(),
                  [](const Posting& a, const Posting& b) {
                      if (a.score != b.score) return a.score > b.score;
                      return a.doc_id < b.doc_id;
                  });
    }
    return index;
}

const std::vector<Posting>& InvertedIndex::postings(const std::string& term) const {
    auto it = terms_.find(term);
    return it == terms_.end() ? empty_postings_ : it->second.postings;
}

std::vector<QueryResult> InvertedIndex::top_k(const std::vector<std::string>& query, int k,
                                              QueryStats* stats) const {
    if (k < 1) {
        throw std::invalid_argument("top_k: k must be >= 1");
    }
    std::vector<std::string> terms = query;
    std::sort(terms.begin(), terms.end());
    terms.erase(std::unique(terms.begin(), terms.end()), terms.end());

    struct ListState {
        const TermEntry* entry = nullptr; // null for terms unknown to the index
        size_t pos = 0;
        double frontier = std::numeric_limits<double>::infinity();
    };
    std::vector<ListState> lists(terms.size());
    for (size_t t = 0; t < terms.size(); ++t) {
        auto it = terms_.find(terms[t]);
        if (it != terms_.end()) lists[t].entry = &it->second;
        if (lists[t].entry == nullptr || lists[t].entry->postings.empty()) {
            lists[t].frontier = 0.0;
        }
    }

    // Random access over all query terms; -inf marks a discarded document.
    std::unordered_map<std::string, double> evaluated;
    auto evaluate = [&](const std::string& doc_id) {
        auto cached = evaluated.find(doc_id);
        if (cached != evaluated.end()) return cached->second;
        double total = 0.0;
        for (const ListState& list : lists) {
            if (list.entry == nullptr) continue;
            auto hit = list.entry->by_doc.find(doc_id);
            if (hit != list.entry->by_doc.end()) {
                total += hit->second;
            } else if (list.entry->excluded.contains(doc_id)) {
                total = kNegInf;
                break;
            }
        }
        evaluated.emplace(doc_id, total);
        return total;
    };

    struct Ranked {
        double score;
        std::string doc_id;
        bool operator<(const Ranked& other) const {
            if (score != other.score) return score > other.score; // best first
            return doc_id < other.doc_id;
        }
    };
    std::set<Ranked> best;

    QueryStats local_stats;
    bool progressed = true;
    while (progressed) {
        progressed = false;
        for (ListState& list : lists) {
            if (list.entry == nullptr || list.pos >= list.entry->postings.size()) continue;
            const Posting& posting = list.entry->postings[list.pos];
            ++list.pos;
            ++local_stats.sorted_accesses;
            list.frontier =
                list.pos >= list.entry->postings.size() ? 0.0 : posting.score;
            progressed = true;

            const double total = evaluate(posting.doc_id);
            if (total > 0.0 && std::isfinite(total)) {
                best.insert({total, posting.doc_id});
                if (best.size() > static_cast<size_t>(k)) {
                    best.erase(std::prev(best.end()));
                }
            }
        }
        if (best.size() == static_cast<size_t>(k)) {
            double threshold = 0.0;
            for (const ListState& list : lists) threshold += list.frontier;
            // Strict comparison: an unseen document can reach the threshold
            // exactly and would then win score ties on doc_id.
            if (std::prev(best.end())->score > threshold) break;
        }
    }

    local_stats.docs_scored = evaluated.size();
    if (stats != nullptr) *stats = local_stats;

    std::vector<QueryResult> results;
    for (const Ranked& r : best) {
        QueryResult qr;
        qr.doc_id = r.doc_id;
        qr.score = r.score;
        for (size_t t = 0; t < terms.size(); ++t) {
            if (lists[t].entry == nullptr) continue;
            auto hit = lists[t].entry->by_doc.find(r.doc_id);
            if (hit != lists[t].entry->by_doc.end() && hit->second != 0.0) {
                qr.contributions.emplace(terms[t], hit->second);
            }
        }
        results.push_back(std::move(qr));
    }
    return results;
}

std::string InvertedIndex::to_json() const {
    nlohmann::json root;
    root["aggregate"] = aggregate_name(aggregate_);
    nlohmann::json terms = nlohmann::json::object();
    for (const auto& [term, entry] : terms_) {
        nlohmann::json postings = nlohmann::json::array();
        for (const Posting& p : entry.postings) {
            postings.push_back({p.doc_id, p.score});
        }
        std::vector<std::string> excluded(entry.excluded.begin(), entry.excluded.end());
        std::sort(excluded.begin(), excluded.end());
        terms[term] = {{"postings", std::move(postings)}, {"excluded", std::move(excluded)}};
    }
    root["terms"] = std::move(terms);
    return root.dump();
}

InvertedIndex InvertedIndex::from_json(const std::string& text) {
    nlohmann::json root = nlohmann::json::parse(text);
    InvertedIndex index;
    index.aggregate_ = aggregate_from_string(root.at("aggregate").get<std::string>());
    for (const auto& [term, value] : root.at("terms").items()) {
        TermEntry entry;
        for (const auto& p : value.at("postings")) {
            Posting posting{p.at(0).get<std::string>(), p.at(1).get<double>()};
            entry.by_doc.emplace(posting.doc_id, posting.score);
            entry.postings.push_back(std::move(posting));
        }
        for (const auto& doc : value.at("excluded")) {
            entry.excluded.insert(doc.get<std::string>());
        }
        index.terms_.emplace(term, std::move(entry));
    }
    return index;
}

} // namespace stburst::search
