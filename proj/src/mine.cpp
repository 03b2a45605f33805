#include "stburst/mine.hpp"

#include <stdexcept>

namespace stburst::mine {

TermMatrix term_matrix(const corpus::Corpus& corpus, const std::string& term) {
    TermMatrix matrix(static_cast<size_t>(corpus.stream_count()));
    for (int s = 0; s < corpus.stream_count(); ++s) {
        auto values = corpus.series_values(s, term);
        matrix[static_cast<size_t>(s)].assign(values.begin(), values.end());
    }
    return matrix;
}

std::vector<temporal::TemporalInterval> temporal_intervals(
    const std::vector<corpus::StreamMeta>& streams, const TermMatrix& matrix) {
    std::vector<temporal::TemporalInterval> out;
    for (size_t s = 0; s < streams.size(); ++s) {
        auto intervals = temporal::extract_bursty_intervals(streams[s].stream_id, matrix[s]);
        out.insert(out.end(), intervals.begin(), intervals.end());
    }
    return out;
}

std::vector<stcomb::CombinatorialPattern> comb_patterns(
    const std::string& term, const std::vector<corpus::StreamMeta>& streams,
    const TermMatrix& matrix, std::size_t max_patterns) {
    std::vector<stcomb::WeightedInterval> pool;
    for (const auto& interval : temporal_intervals(streams, matrix)) {
        pool.push_back({interval.stream_id, interval.left, interval.right, interval.burstiness});
    }
    return stcomb::extract_patterns(term, std::move(pool), max_patterns);
}

LocalResult local_windows(const std::string& term, const std::vector<corpus::StreamMeta>& streams,
                          const TermMatrix& matrix, const spatial::BaselineModel& baseline) {
    const size_t n = streams.size();
    if (matrix.size() != n) {
        throw std::invalid_argument("local_windows: matrix row count differs from stream count");
    }
    const size_t timeline = n == 0 ? 0 : matrix[0].size();

    std::vector<std::vector<double>> burst(n);
    for (size_t s = 0; s < n; ++s) {
        burst[s] = baseline.burstiness_series(streams[s].stream_id, term, matrix[s]);
    }

    LocalResult result;
    stlocal::StLocalState state;
    std::vector<spatial::StreamScore> scores(n);
    for (size_t i = 0; i < timeline; ++i) {
        for (size_t s = 0; s < n; ++s) {
            scores[s] = {s, streams[s].location, burst[s][i]};
        }
        state.process_snapshot(static_cast<int>(i) + 1, scores);
        result.rectangles_per_timestamp.push_back(state.rectangles_last_snapshot());
        result.live_sequences_per_timestamp.push_back(state.live_sequence_count());
        result.open_candidates_per_timestamp.push_back(state.open_candidate_count());
        if (state.live_sequence_count() > n * (i + 1)) {
            throw std::logic_error("local_windows: live sequences exceed n*i bound");
        }
    }
    result.windows = state.maximal_windows();
    return result;
}

} // namespace stburst::mine
