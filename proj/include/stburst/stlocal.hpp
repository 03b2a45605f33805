#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "stburst/geometry.hpp"
#include "stburst/maxseg.hpp"
#include "stburst/spatial.hpp"

namespace stburst::stlocal {

/// Identity of a tracked region across timestamps: the sorted member stream
/// set of the rectangle that spawned it. Bounds jitter as weights move; the
/// covered streams are the stable object.
using RegionKey = std::vector<std::size_t>;

struct SpatiotemporalWindow {
    RegionKey region;
    Bounds bounds; // bounds of the spawning rectangle, kept for reporting
    int start = 0; // timestamps, inclusive
    int end = 0;
    double score = 0.0;
};

/// Sum of a region's recorded r-scores over [a:b] (1-based inclusive).
double w_score(std::span<const double> history, int a, int b);

/// Streaming maximal-window tracker for a single term. Snapshots must arrive
/// in strictly increasing timestamp order; each one spawns sequences for
/// newly reported bursty rectangles, appends the current r-score to every
/// tracked sequence, and prunes sequences whose running total drops below
/// zero, retiring their finalized maximal windows.
class StLocalState {
public:
    /// `scores` carries one entry per stream of the universe.
    void process_snapshot(int timestamp, std::span<const spatial::StreamScore> scores);

    /// Retired windows plus the live maximal segments of active sequences.
    std::vector<SpatiotemporalWindow> maximal_windows() const;

    int last_timestamp() const { return timestamps_.empty() ? 0 : timestamps_.back(); }
    std::size_t live_sequence_count() const { return live_.size(); }
    std::size_t open_candidate_count() const;
    std::size_t rectangles_last_snapshot() const { return last_rect_count_; }

private:
    struct Sequence {
        Bounds bounds;
        std::size_t birth_pos = 0; // index into timestamps_ of the first value
        std::vector<double> scores;
        double total = 0.0;
        maxseg::MaxSegState segments;
    };

    void retire(const RegionKey& key, const Sequence& seq);

    std::vector<int> timestamps_;
    std::map<RegionKey, Sequence> live_;
    std::vector<SpatiotemporalWindow> retired_;
    std::size_t last_rect_count_ = 0;
};

} // namespace stburst::stlocal
