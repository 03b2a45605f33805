#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "stburst/corpus.hpp"
#include "stburst/search.hpp"

using namespace stburst::search;
using stburst::corpus::Corpus;
using stburst::corpus::Document;
using stburst::corpus::StreamMeta;

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

Document doc(std::string id, std::string stream, int ts,
             std::map<std::string, std::uint32_t> counts) {
    return {std::move(id), std::move(stream), ts, std::move(counts)};
}

Pattern pattern(std::vector<std::string> streams, int start, int end, double score) {
    return {std::move(streams), start, end, score};
}

// Full-scan reference ranking: score every document, keep positive finite
// scores, order by score desc then doc_id.
std::vector<std::pair<std::string, double>> full_scan(const Corpus& corpus,
                                                      const std::vector<std::string>& query,
                                                      const PatternIndex& patterns, int k) {
    std::vector<std::pair<std::string, double>> scored;
    for (const auto& d : corpus.documents()) {
        const double s = score_document(query, d, patterns);
        if (std::isfinite(s) && s > 0.0) scored.emplace_back(d.doc_id, s);
    }
    std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (static_cast<int>(scored.size()) > k) scored.resize(static_cast<size_t>(k));
    return scored;
}

} // namespace

TEST_CASE("overlap needs both the stream and the timestamp") {
    Pattern p = pattern({"A", "B"}, 3, 7, 1.0);
    CHECK(overlaps(doc("d", "A", 5, {}), p));
    CHECK_FALSE(overlaps(doc("d", "C", 5, {}), p));
    CHECK_FALSE(overlaps(doc("d", "A", 8, {}), p));
    CHECK(overlaps(doc("d", "B", 3, {}), p));
    CHECK(overlaps(doc("d", "B", 7, {}), p));
}

TEST_CASE("relevance is add-one log frequency") {
    CHECK(relevance(doc("d", "A", 1, {}), "t") == doctest::Approx(0.0));
    CHECK(relevance(doc("d", "A", 1, {{"t", 3}}), "t") == doctest::Approx(1.3863).epsilon(1e-4));
    CHECK(relevance(doc("d", "A", 1, {{"t", 1}}), "t") == doctest::Approx(0.6931).epsilon(1e-4));
}

TEST_CASE("document burstiness aggregates overlapping pattern scores") {
    PatternIndex patterns;
    patterns.add("t", pattern({"A"}, 1, 10, 2.1));
    patterns.add("t", pattern({"A"}, 4, 6, 0.5));
    patterns.add("t", pattern({"B"}, 1, 10, 9.9)); // never overlaps stream A

    const Document d = doc("d", "A", 5, {{"t", 1}});
    CHECK(doc_burstiness(d, "t", patterns) == doctest::Approx(2.1));
    CHECK(doc_burstiness(d, "t", patterns, Aggregate::min) == doctest::Approx(0.5));
    CHECK(doc_burstiness(d, "t", patterns, Aggregate::average) == doctest::Approx(1.3));
    CHECK(doc_burstiness(d, "t", patterns, Aggregate::median) == doctest::Approx(1.3));

    CHECK(doc_burstiness(doc("d", "A", 20, {}), "t", patterns) == kNegInf);
    CHECK(doc_burstiness(d, "unseen", patterns) == kNegInf);

    PatternIndex single;
    single.add("t", pattern({"A"}, 1, 10, 0.7));
    CHECK(doc_burstiness(d, "t", single) == doctest::Approx(0.7));
}

TEST_CASE("score_document worked examples") {
    PatternIndex patterns;
    patterns.add("t", pattern({"A"}, 1, 10, 2.1));
    CHECK(score_document({"t"}, doc("d", "A", 5, {{"t", 3}}), patterns) ==
          doctest::Approx(std::log(4.0) * 2.1).epsilon(1e-3));

    // present term without an overlapping pattern sinks the document
    CHECK(score_document({"t"}, doc("d", "A", 20, {{"t", 3}}), patterns) == kNegInf);

    // absent terms contribute nothing
    PatternIndex two;
    two.add("t1", pattern({"A"}, 1, 10, 1.0 / std::log(2.0)));
    const double s = score_document({"t1", "t2"}, doc("d", "A", 5, {{"t1", 1}}), two);
    CHECK(s == doctest::Approx(1.0).epsilon(1e-9));

    CHECK_THROWS_AS(score_document({}, doc("d", "A", 1, {}), patterns), std::invalid_argument);
}

TEST_CASE("build_index: postings sorted, -inf documents excluded") {
    std::vector<StreamMeta> streams{{"A", {0, 0}}, {"B", {1, 1}}};
    auto corpus = Corpus::build(
        streams, {doc("d1", "A", 2, {{"t", 3}}), doc("d2", "A", 3, {{"t", 1}}),
                  doc("d3", "B", 2, {{"t", 5}}), doc("d4", "A", 9, {{"t", 2}})},
        10);

    PatternIndex none;
    auto empty_index = InvertedIndex::build(corpus, none);
    CHECK(empty_index.postings("t").empty());

    PatternIndex patterns;
    patterns.add("t", pattern({"A"}, 1, 5, 2.0));
    auto index = InvertedIndex::build(corpus, patterns);
    const auto& postings = index.postings("t");
    REQUIRE(postings.size() == 2); // d3 (stream B) and d4 (timestamp 9) excluded
    CHECK(postings[0].doc_id == "d1");
    CHECK(postings[0].score == doctest::Approx(std::log(4.0) * 2.0));
    CHECK(postings[1].doc_id == "d2");
    CHECK(index.postings("other").empty());
}

TEST_CASE("top_k worked examples") {
    std::vector<StreamMeta> streams{{"A", {0, 0}}, {"B", {1, 1}}};
    auto corpus = Corpus::build(
        streams, {doc("d1", "A", 1, {{"x", 3}, {"y", 1}}), doc("d2", "A", 2, {{"x", 1}}),
                  doc("d3", "B", 1, {{"y", 4}})},
        5);
    PatternIndex patterns;
    patterns.add("x", pattern({"A"}, 1, 5, 2.0));
    patterns.add("y", pattern({"A", "B"}, 1, 5, 1.5));
    auto index = InvertedIndex::build(corpus, patterns);

    auto top1 = index.top_k({"x"}, 1);
    REQUIRE(top1.size() == 1);
    CHECK(top1[0].doc_id == "d1");
    CHECK(top1[0].score == doctest::Approx(std::log(4.0) * 2.0));

    auto top2 = index.top_k({"x", "y"}, 2);
    REQUIRE(top2.size() == 2);
    CHECK(top2[0].doc_id == "d1"); // leads x, plus y contribution
    CHECK(top2[1].doc_id == "d3"); // leads y
    CHECK(top2[0].score > top2[1].score);
    CHECK(top2[0].contributions.size() == 2);

    QueryStats stats;
    index.top_k({"x", "y"}, 2, &stats);
    CHECK(stats.docs_scored <= corpus.documents().size());

    CHECK(index.top_k({"unknown"}, 3).empty());
    CHECK_THROWS_AS(index.top_k({"x"}, 0), std::invalid_argument);
}

TEST_CASE("threshold algorithm equals full scan on random instances") {
    std::mt19937_64 rng(20240811);
    std::uniform_int_distribution<int> doc_count(1, 60);
    std::uniform_int_distribution<int> ts(1, 12);
    std::uniform_int_distribution<int> freq(1, 5);
    std::uniform_int_distribution<int> k_dist(1, 8);
    std::uniform_int_distribution<int> pat_count(0, 6);
    std::uniform_real_distribution<double> score(0.1, 3.0);
    const std::vector<std::string> vocabulary{"a", "b", "c", "d", "e"};
    const std::vector<std::string> stream_ids{"s1", "s2", "s3"};

    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<StreamMeta> streams;
        for (const auto& id : stream_ids) {
            streams.push_back({id, {0, 0}});
        }
        std::vector<Document> docs;
        const int nd = doc_count(rng);
        for (int d = 0; d < nd; ++d) {
            std::map<std::string, std::uint32_t> counts;
            const int nt = 1 + static_cast<int>(rng() % 3);
            for (int t = 0; t < nt; ++t) {
                counts[vocabulary[rng() % vocabulary.size()]] =
                    static_cast<std::uint32_t>(freq(rng));
            }
            docs.push_back(doc("d" + std::to_string(d), stream_ids[rng() % stream_ids.size()],
                               ts(rng), counts));
        }
        auto corpus = Corpus::build(streams, docs, 12);

        PatternIndex patterns;
        const int np = pat_count(rng);
        for (int p = 0; p < np; ++p) {
            std::vector<std::string> members;
            for (const auto& id : stream_ids) {
                if (rng() % 2 == 0) members.push_back(id);
            }
            if (members.empty()) members.push_back(stream_ids[rng() % stream_ids.size()]);
            int a = ts(rng), b = ts(rng);
            patterns.add(vocabulary[rng() % vocabulary.size()],
                         pattern(members, std::min(a, b), std::max(a, b), score(rng)));
        }

        auto index = InvertedIndex::build(corpus, patterns);
        std::vector<std::string> query;
        const int nq = 1 + static_cast<int>(rng() % 3);
        for (int q = 0; q < nq; ++q) query.push_back(vocabulary[rng() % vocabulary.size()]);
        const int k = k_dist(rng);

        QueryStats stats;
        auto got = index.top_k(query, k, &stats);
        auto expected = full_scan(corpus, query, patterns, k);

        REQUIRE(got.size() == expected.size());
        for (size_t i = 0; i < got.size(); ++i) {
            CHECK(got[i].doc_id == expected[i].first);
            CHECK(got[i].score == doctest::Approx(expected[i].second).epsilon(1e-9));
            // returned scores match a from-scratch evaluation
            const Document* d = nullptr;
            for (const auto& cand : corpus.documents()) {
                if (cand.doc_id == got[i].doc_id) d = &cand;
            }
            REQUIRE(d != nullptr);
            CHECK(std::fabs(score_document(query, *d, patterns) - got[i].score) < 1e-9);
        }
        CHECK(stats.docs_scored <= corpus.documents().size());
    }
}

TEST_CASE("adding a pattern never lowers a document score") {
    std::mt19937_64 rng(55);
    std::uniform_int_distribution<int> ts(1, 10);
    std::uniform_real_distribution<double> score(0.1, 3.0);

    std::vector<StreamMeta> streams{{"A", {0, 0}}, {"B", {1, 0}}};
    std::vector<Document> docs;
    for (int d = 0; d < 30; ++d) {
        docs.push_back(doc("d" + std::to_string(d), d % 2 == 0 ? "A" : "B", ts(rng),
                           {{"t", static_cast<std::uint32_t>(1 + d % 4)}}));
    }
    auto corpus = Corpus::build(streams, docs, 10);

    PatternIndex patterns;
    patterns.add("t", pattern({"A"}, 2, 6, 1.0));
    for (int round = 0; round < 20; ++round) {
        std::vector<double> before;
        for (const auto& d : corpus.documents()) {
            before.push_back(score_document({"t"}, d, patterns));
        }
        int a = ts(rng), b = ts(rng);
        patterns.add("t", pattern({rng() % 2 == 0 ? "A" : "B"}, std::min(a, b), std::max(a, b),
                                  score(rng)));
        for (size_t i = 0; i < corpus.documents().size(); ++i) {
            const double after = score_document({"t"}, corpus.documents()[i], patterns);
            CHECK(after >= before[i]);
        }
    }
}

TEST_CASE("index JSON round-trip preserves query results") {
    std::vector<StreamMeta> streams{{"A", {0, 0}}, {"B", {1, 1}}};
    auto corpus = Corpus::build(
        streams, {doc("d1", "A", 1, {{"x", 3}}), doc("d2", "B", 2, {{"x", 2}, {"y", 1}}),
                  doc("d3", "A", 3, {{"y", 2}})},
        5);
    PatternIndex patterns;
    patterns.add("x", pattern({"A", "B"}, 1, 2, 1.25));
    patterns.add("y", pattern({"A"}, 3, 4, 0.75));
    auto index = InvertedIndex::build(corpus, patterns);

    auto restored = InvertedIndex::from_json(index.to_json());
    auto a = index.top_k({"x", "y"}, 3);
    auto b = restored.top_k({"x", "y"}, 3);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].doc_id == b[i].doc_id);
        CHECK(a[i].score == b[i].score);
    }
    CHECK(index.to_json() == restored.to_json());
}
