#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace stburst::stcomb {

/// A bursty temporal interval acting as a weighted vertex of the implicit
/// interval graph; the graph itself is never materialized.
struct WeightedInterval {
    std::string stream_id;
    int left = 0;
    int right = 0;
    double weight = 0.0;
};

/// True iff all intervals share at least one common point (max of lefts is at
/// most min of rights). Throws on an empty set.
bool is_eligible(std::span<const WeightedInterval> intervals);

struct CliqueResult {
    std::vector<std::size_t> members; // indices into the input, ascending
    double score = 0.0;
    int point = 0; // earliest sweep point achieving the maximum
};

/// Highest-scoring eligible subset by endpoint sweep: sort the 2m endpoints,
/// keep a running weight of active intervals, and take the point of maximum
/// total weight. Interval starts are processed before ends at the same
/// coordinate, so closed intervals that merely touch count as intersecting.
CliqueResult max_clique(std::span<const WeightedInterval> intervals);

struct CombinatorialPattern {
    std::string term;
    std::vector<std::string> streams; // sorted ids, one interval per stream
    int start = 0;                    // common segment of the member intervals
    int end = 0;
    double score = 0.0;
    std::vector<WeightedInterval> members;
};

/// Iteratively apply max_clique, removing the winning intervals each round.
/// Patterns come out in non-increasing score order with pairwise-disjoint
/// member sets.
std::vector<CombinatorialPattern> extract_patterns(const std::string& term,
                                                   std::vector<WeightedInterval> pool,
                                                   std::size_t max_patterns = static_cast<std::size_t>(-1));

/// Alternative mode: enumerate all (possibly overlapping) maximal cliques with
/// score at or above `min_score`. Naive enumeration, intended for small inputs.
std::vector<CombinatorialPattern> enumerate_overlapping(const std::string& term,
                                                        std::span<const WeightedInterval> intervals,
                                                        double min_score);

} // namespace stburst::stcomb
