#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "stburst/corpus.hpp"

namespace stburst::temporal {

/// A bursty timeframe of one stream's frequency series. `left`/`right` are
/// 1-based inclusive timestamps.
struct TemporalInterval {
    std::string stream_id;
    int left = 0;
    int right = 0;
    double burstiness = 0.0;
};

/// Discrepancy of the interval's share of total mass against its share of the
/// timeline. Zero when the series carries no mass at all.
double temporal_burstiness(std::span<const std::uint32_t> values, int left, int right);

inline double temporal_burstiness(const corpus::FrequencySeries& series, int left, int right) {
    return temporal_burstiness(std::span<const std::uint32_t>(series.values), left, right);
}

/// Non-overlapping bursty intervals of one series, each with positive
/// burstiness. Per-index deviations make interval burstiness additive, so the
/// maximal-scoring-subsequence engine extracts them exactly in linear time.
std::vector<TemporalInterval> extract_bursty_intervals(std::string stream_id,
                                                       std::span<const std::uint32_t> values);

inline std::vector<TemporalInterval> extract_bursty_intervals(const corpus::FrequencySeries& series) {
    return extract_bursty_intervals(series.stream_id, std::span<const std::uint32_t>(series.values));
}

} // namespace stburst::temporal
