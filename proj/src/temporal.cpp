#include "stburst/temporal.hpp"

#include <stdexcept>

#include "stburst/maxseg.hpp"

namespace stburst::temporal {

double temporal_burstiness(std::span<const std::uint32_t> values, int left, int right) {
    const int n = static_cast<int>(values.size());
    if (left < 1 || right > n || left > right) {
        throw std::out_of_range("temporal_burstiness: interval [" + std::to_string(left) + ":" +
                                std::to_string(right) + "] outside series of length " +
                                std::to_string(n));
    }
    double total = 0.0;
    for (std::uint32_t v : values) total += v;
    if (total == 0.0) {
        return 0.0; // no mass, no burst
    }
    double inside = 0.0;
    for (int i = left; i <= right; ++i) inside += values[static_cast<size_t>(i) - 1];
    return inside / total - static_cast<double>(right - left + 1) / static_cast<double>(n);
}

std::vector<TemporalInterval> extract_bursty_intervals(std::string stream_id,
                                                       std::span<const std::uint32_t> values) {
    const size_t n = values.size();
    double total = 0.0;
    for (std::uint32_t v : values) total += v;
    if (total == 0.0 || n == 0) {
        return {};
    }

    // Interval burstiness is additive in the per-index deviations
    // z_i = Y_i / sum(Y) - 1/|Y|. Segment structure is invariant under
    // positive scaling, so the extraction runs on w_i = Y_i * |Y| - sum(Y):
    // exact integers in double arithmetic for any realistic input, which
    // keeps equal-score candidates exactly equal.
    const double scale = total * static_cast<double>(n);
    std::vector<double> w(n);
    for (size_t i = 0; i < n; ++i) {
        w[i] = static_cast<double>(values[i]) * static_cast<double>(n) - total;
    }

    std::vector<TemporalInterval> out;
    for (const auto& seg : maxseg::get_max_all(w)) {
        out.push_back({stream_id, seg.start, seg.end, seg.score / scale});
    }
    return out;
}

} // namespace stburst::temporal
