#pragma once

#include <span>
#include <vector>

namespace stburst::maxseg {

/// A contiguous run of scores with positive total. Indices are 1-based and
/// inclusive on both ends.
struct ScoredSegment {
    int start = 0;
    int end = 0;
    double score = 0.0;

    bool operator==(const ScoredSegment& other) const {
        return start == other.start && end == other.end && score == other.score;
    }
};

/// Incremental all-maximal-scoring-subsequences engine (Ruzzo–Tompa).
///
/// Scores are consumed one at a time; after any number of appends the
/// candidate list holds exactly the maximal segments of the prefix consumed
/// so far, so the streaming and batch forms agree by construction.
class MaxSegState {
public:
    void append(double score);

    /// Maximal segments of everything consumed so far, in positional order.
    std::vector<ScoredSegment> maximal_segments() const;

    int size() const { return count_; }
    int candidate_count() const { return static_cast<int>(candidates_.size()); }
    double total() const { return cumulative_; }

private:
    struct Candidate {
        int start;        // 1-based position of the leftmost score
        int end;          // 1-based position of the rightmost score
        double lower;     // cumulative sum just before `start`
        double upper;     // cumulative sum through `end`
        int prev_smaller; // rightmost earlier candidate with smaller `lower`, or -1
    };

    std::vector<Candidate> candidates_;
    double cumulative_ = 0.0;
    int count_ = 0;
};

/// Batch form: all maximal scoring subsequences of `scores`.
std::vector<ScoredSegment> get_max_all(std::span<const double> scores);

} // namespace stburst::maxseg
