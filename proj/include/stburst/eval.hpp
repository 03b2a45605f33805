#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "stburst/corpus.hpp"
#include "stburst/mine.hpp"
#include "stburst/spatial.hpp"
#include "stburst/synth.hpp"

namespace stburst::eval {

/// Set Jaccard over stream ids; two empty sets count as identical.
double jaccard_sim(const std::vector<std::string>& a, const std::vector<std::string>& b);

/// (|start - start'|, |end - end'|).
std::pair<int, int> timeframe_errors(int truth_start, int truth_end, int retrieved_start,
                                     int retrieved_end);

/// A retrieved pattern reduced to the fields the metrics need.
struct PatternCandidate {
    std::vector<std::string> streams; // sorted
    int start = 0;
    int end = 0;
};

/// Binarize-and-merge baseline: per stream, positive burstiness scores become
/// ones, interior zero-runs shorter than `gap_fill` are filled, and runs of
/// ones become intervals. Intervals are then merged across streams in a
/// seeded random order whenever interval Jaccard reaches `merge_threshold`;
/// a merge intersects the timeframes and accumulates the member streams.
std::vector<PatternCandidate> base_baseline(const std::vector<corpus::StreamMeta>& streams,
                                            const mine::TermMatrix& matrix,
                                            const spatial::BaselineModel& baseline,
                                            const std::string& term, int gap_fill,
                                            double merge_threshold, std::uint64_t seed);

/// Gap-fill step of the baseline: interior zero-runs shorter than `gap_fill`
/// become ones, then runs of ones turn into 1-based closed intervals.
std::vector<std::pair<int, int>> binary_intervals(const std::vector<char>& ones, int gap_fill);

/// Streams (members or not) falling inside the closed bounding rectangle of
/// the member locations.
int mbr_stream_count(const std::vector<std::string>& members,
                     const std::vector<corpus::StreamMeta>& all_streams);

struct MatchOutcome {
    double jaccard = 0.0;
    int start_error = 0;
    int end_error = 0;
};

/// Match one injected pattern against same-term retrievals: maximal timeframe
/// overlap wins, ties by stream Jaccard. With no overlapping candidate the
/// Jaccard is 0 and errors measure against the nearest retrieval, or the
/// pattern's own length when nothing was retrieved.
MatchOutcome match_pattern(const synth::InjectedPattern& gt,
                           const std::vector<PatternCandidate>& candidates);

struct MetricCell {
    double jaccard = 0.0;
    double start_error = 0.0;
    double end_error = 0.0;
};

struct ExperimentOptions {
    synth::GeneratorConfig config;
    std::vector<std::string> methods = {"stlocal", "stcomb", "base"};
    std::vector<synth::Mode> modes = {synth::Mode::distgen, synth::Mode::randgen};
    std::vector<int> base_gap_grid = {1, 2, 3};
    std::vector<double> base_delta_grid = {0.3, 0.5, 0.7};
    int threads = 1;
};

struct ExperimentReport {
    // (method, mode) -> per-pattern averages
    std::map<std::pair<std::string, std::string>, MetricCell> cells;
    std::map<std::string, std::pair<int, double>> tuned_base; // mode -> (gap, delta)
    std::string to_csv() const;
};

/// Generate a corpus per mode, mine with each method, match every injected
/// pattern to its best-overlapping retrieval, and average the metrics.
/// Deterministic under a fixed seed.
ExperimentReport run_experiment(const ExperimentOptions& options);

struct TimingRow {
    std::string method;
    int streams = 0;
    double ms_per_term = 0.0;
    double ms_per_snapshot = 0.0;
};

/// Scaling harness: regenerate the dataset at each stream count (map area
/// grows with the stream count so density stays constant) and time mining on
/// a fixed sample of terms.
std::vector<TimingRow> run_scaling(const synth::GeneratorConfig& base_config, synth::Mode mode,
                                   const std::vector<int>& sizes, int sampled_terms);

std::string timing_to_csv(const std::vector<TimingRow>& rows);

struct StatsOptions {
    int max_terms = 0; // 0 = all
    std::string baseline_kind = "running-mean";
    int window = 7;
    int threads = 1;
};

struct StatsReport {
    std::vector<std::pair<std::string, int>> rectangle_histogram; // bucket -> terms
    std::vector<double> avg_live_sequences;                       // per timestamp
    std::vector<double> avg_open_candidates;                      // per timestamp
    std::vector<double> worst_case_sequences;                     // n * i
    std::vector<double> stlocal_ms_per_timestamp;                 // avg per term
    double stcomb_ms_per_term = 0.0;
    int terms_processed = 0;

    std::string histogram_csv() const;
    std::string windows_csv() const;
    std::string timing_csv() const;
};

/// STLocal bookkeeping statistics over a corpus (Fig. 5/6/7 style data).
StatsReport collect_stats(const corpus::Corpus& corpus, const StatsOptions& options);

spatial::BaselineModel baseline_from_options(const std::string& kind, int window);

} // namespace stburst::eval
