#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "stburst/geometry.hpp"

namespace stburst::spatial {

/// Expected-frequency baseline for one (stream, term) cell at a timestamp.
/// running-mean averages everything before i, window-mean the last w values,
/// external-table looks up a caller-supplied seasonal table. At i = 1 the
/// historical kinds return the observation itself, forcing burstiness 0.
class BaselineModel {
public:
    enum class Kind { running_mean, window_mean, external_table };
    using Table = std::map<std::tuple<std::string, std::string, int>, double>;

    static BaselineModel running_mean() { return BaselineModel(Kind::running_mean, 0, {}); }
    static BaselineModel window_mean(int w);
    static BaselineModel external_table(Table table) {
        return BaselineModel(Kind::external_table, 0, std::move(table));
    }

    Kind kind() const { return kind_; }
    int window() const { return window_; }

    double expected(const std::string& stream_id, const std::string& term,
                    std::span<const std::uint32_t> series, int timestamp) const;

    /// observed - expected for every timestamp of the series, in O(|series|).
    std::vector<double> burstiness_series(const std::string& stream_id, const std::string& term,
                                          std::span<const std::uint32_t> series) const;

private:
    BaselineModel(Kind kind, int window, Table table)
        : kind_(kind), window_(window), table_(std::move(table)) {}

    Kind kind_;
    int window_;
    Table table_;
};

inline double stream_burstiness(double observed, double expected) { return observed - expected; }

/// One stream's burstiness at a fixed (term, timestamp). `stream` indexes the
/// caller's id-sorted stream universe.
struct StreamScore {
    std::size_t stream = 0;
    GeoPoint location;
    double value = 0.0;
};

double r_score(std::span<const StreamScore> members);

struct RScoredRectangle {
    Bounds bounds;
    std::vector<std::size_t> members;           // stream indices, ascending
    std::vector<std::size_t> flagged_nonbursty; // members with value <= 0
    double score = 0.0;
};

/// Exact maximum-weight axis-oriented rectangle over the given points. Bounds
/// snap to member coordinates; a stream exactly on an edge is inside. Ties
/// break toward fewest members, then smallest area, then lexicographic member
/// order. With positive_only, returns nullopt when the maximum is <= 0.
std::optional<RScoredRectangle> max_rectangle(std::span<const StreamScore> points,
                                              bool positive_only = true);

/// All non-overlapping positive rectangles of one snapshot: repeatedly take
/// the maximum rectangle and mask its member streams. Member sets of the
/// reported rectangles are pairwise disjoint; at most one per stream.
std::vector<RScoredRectangle> r_bursty(std::span<const StreamScore> scores);

} // namespace stburst::spatial
