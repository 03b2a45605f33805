#include "stburst/maxseg.hpp"

namespace stburst::maxseg {

void MaxSegState::append(double score) {
    ++count_;
    const double before = cumulative_;
    cumulative_ += score;
    if (score <= 0.0) {
        return; // non-positive scores never open a candidate
    }

    Candidate current{count_, count_, before, cumulative_, -1};
    // Rightmost candidate whose lower bound is strictly below ours, found by
    // chasing the left-smaller chain so the search is amortized constant.
    int j = static_cast<int>(candidates_.size()) - 1;
    while (true) {
        while (j >= 0 && candidates_[static_cast<size_t>(j)].lower >= current.lower) {
            j = candidates_[static_cast<size_t>(j)].prev_smaller;
        }
        if (j < 0 || candidates_[static_cast<size_t>(j)].upper >= current.upper) {
            current.prev_smaller = j;
            candidates_.push_back(current);
            return;
        }
        // Merge: extend left to the found candidate's start, drop it and every
        // candidate after it, then reconsider the merged candidate.
        const Candidate& absorbed = candidates_[static_cast<size_t>(j)];
        current.start = absorbed.start;
        current.lower = absorbed.lower;
        const int resume = absorbed.prev_smaller;
        candidates_.resize(static_cast<size_t>(j));
        j = resume;
    }
}

std::vector<ScoredSegment> MaxSegState::maximal_segments() const {
    std::vector<ScoredSegment> out;
    out.reserve(candidates_.size());
    for (const Candidate& c : candidates_) {
        out.push_back({c.start, c.end, c.upper - c.lower});
    }
    return out;
}

std::vector<ScoredSegment> get_max_all(std::span<const double> scores) {
    MaxSegState state;
    for (double s : scores) {
        state.append(s);
    }
    return state.maximal_segments();
}

} // namespace stburst::maxseg
