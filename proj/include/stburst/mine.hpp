#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stburst/corpus.hpp"
#include "stburst/spatial.hpp"
#include "stburst/stcomb.hpp"
#include "stburst/stlocal.hpp"
#include "stburst/temporal.hpp"

namespace stburst::mine {

/// Per-term frequency matrix, [stream index][timestamp - 1].
using TermMatrix = std::vector<std::vector<std::uint32_t>>;

TermMatrix term_matrix(const corpus::Corpus& corpus, const std::string& term);

/// Bursty temporal intervals of every stream for one term.
std::vector<temporal::TemporalInterval> temporal_intervals(
    const std::vector<corpus::StreamMeta>& streams, const TermMatrix& matrix);

/// Combinatorial patterns: per-stream intervals feed the iterative
/// maximum-clique extraction.
std::vector<stcomb::CombinatorialPattern> comb_patterns(
    const std::string& term, const std::vector<corpus::StreamMeta>& streams,
    const TermMatrix& matrix, std::size_t max_patterns = static_cast<std::size_t>(-1));

struct LocalResult {
    std::vector<stlocal::SpatiotemporalWindow> windows;
    std::vector<std::size_t> rectangles_per_timestamp;
    std::vector<std::size_t> live_sequences_per_timestamp;
    std::vector<std::size_t> open_candidates_per_timestamp;
};

/// Full streaming pass of STLocal over one term's matrix.
LocalResult local_windows(const std::string& term, const std::vector<corpus::StreamMeta>& streams,
                          const TermMatrix& matrix, const spatial::BaselineModel& baseline);

} // namespace stburst::mine
