#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "stburst/corpus.hpp"
#include "stburst/mds.hpp"

using namespace stburst::corpus;

namespace {

std::vector<StreamMeta> three_streams() {
    return {{"A", {0, 0}}, {"B", {1, 0}}, {"C", {0, 1}}};
}

Document doc(std::string id, std::string stream, int ts,
             std::map<std::string, std::uint32_t> counts) {
    return {std::move(id), std::move(stream), ts, std::move(counts)};
}

double dist(const stburst::GeoPoint& a, const stburst::GeoPoint& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

} // namespace

TEST_CASE("empty corpus with timeline override") {
    auto c = Corpus::build(three_streams(), {}, 10);
    CHECK(c.stream_count() == 3);
    CHECK(c.timeline_length() == 10);
    auto series = c.frequency_series("A", "gaza");
    CHECK(series.values == std::vector<std::uint32_t>(10, 0));
}

TEST_CASE("single document sets the timeline and the series") {
    auto c = Corpus::build(three_streams(), {doc("d1", "A", 2, {{"gaza", 3}})});
    CHECK(c.timeline_length() == 2);
    CHECK(c.frequency_series("A", "gaza").values == std::vector<std::uint32_t>{0, 3});
    CHECK(c.terms() == std::vector<std::string>{"gaza"});
}

TEST_CASE("frequencies of co-timestamped documents add up") {
    auto c = Corpus::build(three_streams(), {doc("d1", "A", 1, {{"gaza", 1}}),
                                             doc("d2", "A", 1, {{"gaza", 2}})});
    CHECK(c.frequency_series("A", "gaza").values == std::vector<std::uint32_t>{3});
}

TEST_CASE("frequency series worked examples") {
    auto c = Corpus::build(three_streams(), {doc("d1", "B", 3, {{"quake", 4}})}, 4);
    CHECK(c.frequency_series("B", "quake").values == std::vector<std::uint32_t>{0, 0, 4, 0});
    CHECK(c.frequency_series("B", "absent").values == std::vector<std::uint32_t>(4, 0));

    auto c2 = Corpus::build(three_streams(), {doc("d1", "A", 1, {{"t", 2}}),
                                              doc("d2", "A", 1, {{"t", 6}}),
                                              doc("d3", "A", 2, {{"t", 3}})});
    CHECK(c2.frequency_series("A", "t").values == std::vector<std::uint32_t>{8, 3});
}

TEST_CASE("ingest rejections") {
    CHECK_THROWS_AS(Corpus::build({}, {}), std::invalid_argument);
    CHECK_THROWS_WITH_AS(Corpus::build(three_streams(), {doc("d9", "Z", 1, {{"t", 1}})}),
                         doctest::Contains("d9"), std::invalid_argument);
    CHECK_THROWS_AS(Corpus::build(three_streams(), {doc("d1", "A", 0, {{"t", 1}})}),
                    std::invalid_argument);
    CHECK_THROWS_AS(Corpus::build({{"A", {0, 0}}, {"A", {1, 1}}}, {}), std::invalid_argument);
    // timeline override smaller than an observed timestamp
    CHECK_THROWS_AS(Corpus::build(three_streams(), {doc("d1", "A", 5, {{"t", 1}})}, 3),
                    std::invalid_argument);
    CHECK_THROWS_AS(Corpus::build(three_streams(), {}).stream_index("nope"), std::out_of_range);
}

TEST_CASE("series values match a naive re-scan of the documents") {
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<int> ts(1, 8);
    std::uniform_int_distribution<int> count(1, 5);
    const std::vector<std::string> vocabulary{"alpha", "beta", "gamma"};

    std::vector<Document> docs;
    for (int d = 0; d < 60; ++d) {
        std::map<std::string, std::uint32_t> counts;
        counts[vocabulary[rng() % 3]] = static_cast<std::uint32_t>(count(rng));
        const std::string stream = std::string(1, static_cast<char>('A' + rng() % 3));
        docs.push_back(doc("d" + std::to_string(d), stream, ts(rng), counts));
    }
    auto c = Corpus::build(three_streams(), docs);

    for (const auto& meta : c.streams()) {
        for (const auto& term : vocabulary) {
            auto series = c.frequency_series(meta.stream_id, term);
            for (int i = 1; i <= c.timeline_length(); ++i) {
                std::uint32_t expected = 0;
                for (const auto& d : docs) {
                    if (d.stream_id == meta.stream_id && d.timestamp == i) {
                        auto it = d.term_counts.find(term);
                        if (it != d.term_counts.end()) expected += it->second;
                    }
                }
                CHECK(series.values[static_cast<size_t>(i) - 1] == expected);
            }
            // repeated reads are identical
            CHECK(c.frequency_series(meta.stream_id, term).values == series.values);
        }
    }
}

TEST_CASE("tokenizer lowercases, splits, and filters") {
    TokenizerConfig config;
    config.stopwords = {"the"};
    auto counts = tokenize("The quake-hit city; THE city mourns. A x", config);
    CHECK(counts.at("quake") == 1);
    CHECK(counts.at("city") == 2);
    CHECK(counts.at("mourns") == 1);
    CHECK_FALSE(counts.contains("the"));
    CHECK_FALSE(counts.contains("a")); // below minimum length
    CHECK_FALSE(counts.contains("x"));
}

TEST_CASE("mds: two points embed exactly") {
    std::vector<std::vector<double>> d{{0, 7.5}, {7.5, 0}};
    auto pts = classical_mds(d);
    CHECK(dist(pts[0], pts[1]) == doctest::Approx(7.5).epsilon(1e-6));
}

TEST_CASE("mds: equilateral triangle embeds exactly") {
    std::vector<std::vector<double>> d{{0, 1, 1}, {1, 0, 1}, {1, 1, 0}};
    auto pts = classical_mds(d);
    CHECK(dist(pts[0], pts[1]) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(dist(pts[0], pts[2]) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(dist(pts[1], pts[2]) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("mds: all-zero distances collapse to a point") {
    std::vector<std::vector<double>> d{{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
    auto pts = classical_mds(d);
    for (const auto& p : pts) {
        CHECK(std::fabs(p.x) < 1e-9);
        CHECK(std::fabs(p.y) < 1e-9);
    }
}

TEST_CASE("mds: planar point sets reproduce all pairwise distances") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> coord(-10.0, 10.0);
    for (int trial = 0; trial < 20; ++trial) {
        const size_t n = 3 + trial % 6;
        std::vector<stburst::GeoPoint> original(n);
        for (auto& p : original) p = {coord(rng), coord(rng)};
        std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
        for (size_t i = 0; i < n; ++i) {
            for (size_t j = 0; j < n; ++j) d[i][j] = dist(original[i], original[j]);
        }
        auto pts = classical_mds(d);
        for (size_t i = 0; i < n; ++i) {
            for (size_t j = i + 1; j < n; ++j) {
                CHECK(dist(pts[i], pts[j]) ==
                      doctest::Approx(d[i][j]).epsilon(1e-6).scale(std::max(1.0, d[i][j])));
            }
        }
    }
}

TEST_CASE("mds input validation") {
    CHECK_THROWS_AS(classical_mds({{0, 1}, {2, 0}}), std::invalid_argument);   // asymmetric
    CHECK_THROWS_AS(classical_mds({{0, -1}, {-1, 0}}), std::invalid_argument); // negative
    CHECK_THROWS_AS(classical_mds({{1, 1}, {1, 0}}), std::invalid_argument);   // diagonal
    CHECK_THROWS_AS(classical_mds({{0, 1}}), std::invalid_argument);           // not square
}

TEST_CASE("haversine sanity") {
    CHECK(haversine_km(0, 0, 0, 0) == doctest::Approx(0.0));
    // one degree of longitude at the equator
    CHECK(haversine_km(0, 0, 0, 1) == doctest::Approx(111.19).epsilon(0.01));
    // symmetric
    CHECK(haversine_km(37.77, -122.42, 40.71, -74.01) ==
          doctest::Approx(haversine_km(40.71, -74.01, 37.77, -122.42)));
}
