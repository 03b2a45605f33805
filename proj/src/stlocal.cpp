#include "stburst/stlocal.hpp"

#include <algorithm>
#include <stdexcept>

namespace stburst::stlocal {

double w_score(std::span<const double> history, int a, int b) {
    if (a < 1 || b > static_cast<int>(history.size()) || a > b) {
        throw std::out_of_range("w_score: range [" + std::to_string(a) + ":" + std::to_string(b) +
                                "] outside history of length " + std::to_string(history.size()));
    }
    double total = 0.0;
    for (int i = a; i <= b; ++i) total += history[static_cast<size_t>(i) - 1];
    return total;
}

void StLocalState::process_snapshot(int timestamp, std::span<const spatial::StreamScore> scores) {
    if (!timestamps_.empty() && timestamp <= timestamps_.back()) {
        throw std::invalid_argument("StLocalState: timestamp " + std::to_string(timestamp) +
                                    " not after " + std::to_string(timestamps_.back()));
    }
    timestamps_.push_back(timestamp);

    const auto rects = spatial::r_bursty(scores);
    last_rect_count_ = rects.size();
    for (const auto& rect : rects) {
        if (!live_.contains(rect.members)) { // re-reported keys spawn nothing
            Sequence seq;
            seq.bounds = rect.bounds;
            seq.birth_pos = timestamps_.size() - 1;
            live_.emplace(rect.members, std::move(seq));
        }
    }

    std::size_t max_stream = 0;
    for (const auto& s : scores) max_stream = std::max(max_stream, s.stream);
    std::vector<double> value(max_stream + 1, 0.0);
    for (const auto& s : scores) value[s.stream] = s.value;

    std::vector<RegionKey> pruned;
    for (auto& [key, seq] : live_) {
        double r = 0.0;
        for (std::size_t member : key) {
            if (member < value.size()) r += value[member];
        }
        seq.scores.push_back(r);
        seq.total += r;
        seq.segments.append(r);
        if (seq.total < 0.0) {
            pruned.push_back(key);
        }
    }
    for (const RegionKey& key : pruned) {
        auto it = live_.find(key);
        retire(it->first, it->second);
        live_.erase(it);
    }
}

void StLocalState::retire(const RegionKey& key, const Sequence& seq) {
    for (const auto& seg : seq.segments.maximal_segments()) {
        SpatiotemporalWindow w;
        w.region = key;
        w.bounds = seq.bounds;
        w.start = timestamps_[seq.birth_pos + static_cast<size_t>(seg.start) - 1];
        w.end = timestamps_[seq.birth_pos + static_cast<size_t>(seg.end) - 1];
        w.score = seg.score;
        retired_.push_back(std::move(w));
    }
}

std::vector<SpatiotemporalWindow> StLocalState::maximal_windows() const {
    std::vector<SpatiotemporalWindow> out = retired_;
    for (const auto& [key, seq] : live_) {
        for (const auto& seg : seq.segments.maximal_segments()) {
            SpatiotemporalWindow w;
            w.region = key;
            w.bounds = seq.bounds;
            w.start = timestamps_[seq.birth_pos + static_cast<size_t>(seg.start) - 1];
            w.end = timestamps_[seq.birth_pos + static_cast<size_t>(seg.end) - 1];
            w.score = seg.score;
            out.push_back(std::move(w));
        }
    }
    std::sort(out.begin(), out.end(), [](const SpatiotemporalWindow& a, const SpatiotemporalWindow& b) {
        if (a.start != b.start) return a.start < b.start;
        if (a.end != b.end) return a.end < b.end;
        return a.region < b.region;
    });
    return out;
}

std::size_t StLocalState::open_candidate_count() const {
    std::size_t count = 0;
    for (const auto& [key, seq] : live_) {
        count += static_cast<std::size_t>(seq.segments.candidate_count());
    }
    return count;
}

} // namespace stburst::stlocal
