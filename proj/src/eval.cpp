#include "stburst/eval.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace stburst::eval {

namespace {

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < count;) {
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(threads), count);
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

double elapsed_ms(std::chrono::steady_clock::time_point from) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - from)
        .count();
}

std::string format_double(double v) {
    std::ostringstream out;
    out.precision(6);
    out << v;
    return out.str();
}

} // namespace

double jaccard_sim(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    if (a.empty() && b.empty()) return 1.0;
    std::vector<std::string> sa = a, sb = b;
    std::sort(sa.begin(), sa.end());
    sa.erase(std::unique(sa.begin(), sa.end()), sa.end());
    std::sort(sb.begin(), sb.end());
    sb.erase(std::unique(sb.begin(), sb.end()), sb.end());
    std::vector<std::string> inter;
    std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(inter));
    const std::size_t uni = sa.size() + sb.size() - inter.size();
    return static_cast<double>(inter.size()) / static_cast<double>(uni);
}

std::pair<int, int> timeframe_errors(int truth_start, int truth_end, int retrieved_start,
                                     int retrieved_end) {
    return {std::abs(truth_start - retrieved_start), std::abs(truth_end - retrieved_end)};
}

std::vector<std::pair<int, int>> binary_intervals(const std::vector<char>& ones, int gap_fill) {
    std::vector<char> filled = ones;
    std::size_t i = 0;
    while (i < filled.size()) {
        if (filled[i] != 0) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < filled.size() && filled[j] == 0) ++j;
        const bool interior = i > 0 && j < filled.size();
        if (interior && static_cast<int>(j - i) < gap_fill) {
            std::fill(filled.begin() + static_cast<std::ptrdiff_t>(i),
                      filled.begin() + static_cast<std::ptrdiff_t>(j), 1);
        }
        i = j;
    }

    std::vector<std::pair<int, int>> intervals;
    for (std::size_t k = 0; k < filled.size();) {
        if (filled[k] == 0) {
            ++k;
            continue;
        }
        std::size_t e = k;
        while (e < filled.size() && filled[e] == 1) ++e;
        intervals.emplace_back(static_cast<int>(k) + 1, static_cast<int>(e));
        k = e;
    }
    return intervals;
}

std::vector<PatternCandidate> base_baseline(const std::vector<corpus::StreamMeta>& streams,
                                            const mine::TermMatrix& matrix,
                                            const spatial::BaselineModel& baseline,
                                            const std::string& term, int gap_fill,
                                            double merge_threshold, std::uint64_t seed) {
    if (gap_fill < 1) {
        throw std::invalid_argument("base_baseline: gap_fill must be >= 1");
    }
    if (merge_threshold <= 0.0 || merge_threshold > 1.0) {
        throw std::invalid_argument("base_baseline: merge threshold must be in (0, 1]");
    }

    std::vector<std::vector<std::pair<int, int>>> per_stream(streams.size());
    for (std::size_t s = 0; s < streams.size(); ++s) {
        const auto burst = baseline.burstiness_series(streams[s].stream_id, term, matrix[s]);
        std::vector<char> ones(burst.size());
        for (std::size_t i = 0; i < burst.size(); ++i) ones[i] = burst[i] > 0.0 ? 1 : 0;
        per_stream[s] = binary_intervals(ones, gap_fill);
    }

    // merge across streams in a seeded random order
    std::vector<std::size_t> order(streams.size());
    for (std::size_t s = 0; s < order.size(); ++s) order[s] = s;
    synth::Rng rng(synth::mix_seed(seed, 0xba5e, 3));
    for (std::size_t s = order.size(); s > 1; --s) {
        const std::size_t j = static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(s) - 1));
        std::swap(order[s - 1], order[j]);
    }

    struct Working {
        std::vector<std::string> streams;
        int start, end;
    };
    std::vector<Working> working;
    auto interval_jaccard = [](int a1, int b1, int a2, int b2) {
        const int inter = std::min(b1, b2) - std::max(a1, a2) + 1;
        if (inter <= 0) return 0.0;
        const int uni = (b1 - a1 + 1) + (b2 - a2 + 1) - inter;
        return static_cast<double>(inter) / static_cast<double>(uni);
    };

    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        const std::size_t s = order[pos];
        for (const auto& [iv_start, iv_end] : per_stream[s]) {
            int best = -1;
            double best_j = 0.0;
            for (std::size_t w = 0; w < working.size(); ++w) {
                const double j = interval_jaccard(working[w].start, working[w].end, iv_start, iv_end);
                if (j >= merge_threshold && j > best_j) {
                    best = static_cast<int>(w);
                    best_j = j;
                }
            }
            if (best >= 0) {
                Working& w = working[static_cast<std::size_t>(best)];
                w.start = std::max(w.start, iv_start); // intersection replaces the timeframe
                w.end = std::min(w.end, iv_end);
                w.streams.push_back(streams[s].stream_id);
            } else {
                working.push_back({{streams[s].stream_id}, iv_start, iv_end});
            }
        }
    }

    std::vector<PatternCandidate> out;
    out.reserve(working.size());
    for (Working& w : working) {
        std::sort(w.streams.begin(), w.streams.end());
        w.streams.erase(std::unique(w.streams.begin(), w.streams.end()), w.streams.end());
        out.push_back({std::move(w.streams), w.start, w.end});
    }
    return out;
}

int mbr_stream_count(const std::vector<std::string>& members,
                     const std::vector<corpus::StreamMeta>& all_streams) {
    if (members.empty()) {
        throw std::invalid_argument("mbr_stream_count: empty pattern");
    }
    Bounds mbr;
    bool first = true;
    for (const auto& meta : all_streams) {
        if (!std::binary_search(members.begin(), members.end(), meta.stream_id)) continue;
        if (first) {
            mbr = {meta.location.x, meta.location.x, meta.location.y, meta.location.y};
            first = false;
        } else {
            mbr.x_min = std::min(mbr.x_min, meta.location.x);
            mbr.x_max = std::max(mbr.x_max, meta.location.x);
            mbr.y_min = std::min(mbr.y_min, meta.location.y);
            mbr.y_max = std::max(mbr.y_max, meta.location.y);
        }
    }
    if (first) {
        throw std::invalid_argument("mbr_stream_count: no member matches a known stream");
    }
    int count = 0;
    for (const auto& meta : all_streams) {
        if (mbr.contains(meta.location)) ++count;
    }
    return count;
}

MatchOutcome match_pattern(const synth::InjectedPattern& gt,
                           const std::vector<PatternCandidate>& candidates) {
    MatchOutcome outcome;
    if (candidates.empty()) {
        const int len = gt.end - gt.start + 1;
        outcome.start_error = len;
        outcome.end_error = len;
        return outcome;
    }

    int best = -1;
    int best_overlap = 0;
    double best_stream_j = -1.0;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        const int overlap =
            std::min(gt.end, candidates[c].end) - std::max(gt.start, candidates[c].start) + 1;
        if (overlap <= 0) continue;
        const double sj = jaccard_sim(gt.streams, candidates[c].streams);
        if (overlap > best_overlap || (overlap == best_overlap && sj > best_stream_j)) {
            best = static_cast<int>(c);
            best_overlap = overlap;
            best_stream_j = sj;
        }
    }

    if (best < 0) {
        // nothing overlaps: JaccardSim 0, errors to the nearest retrieved
        int nearest = 0;
        int nearest_gap = 0;
        for (std::size_t c = 0; c < candidates.size(); ++c) {
            const int gap = std::max(candidates[c].start - gt.end, gt.start - candidates[c].end);
            if (c == 0 || gap < nearest_gap) {
                nearest = static_cast<int>(c);
                nearest_gap = gap;
            }
        }
        auto [se, ee] = timeframe_errors(gt.start, gt.end, candidates[static_cast<std::size_t>(nearest)].start,
                                         candidates[static_cast<std::size_t>(nearest)].end);
        return {0.0, se, ee};
    }

    const PatternCandidate& matched = candidates[static_cast<std::size_t>(best)];
    auto [se, ee] = timeframe_errors(gt.start, gt.end, matched.start, matched.end);
    return {best_stream_j, se, ee};
}

namespace {

MetricCell average_metrics(const std::vector<synth::InjectedPattern>& gts,
                           const std::map<int, std::vector<PatternCandidate>>& by_term) {
    MetricCell cell;
    if (gts.empty()) return cell;
    for (const auto& gt : gts) {
        static const std::vector<PatternCandidate> none;
        auto it = by_term.find(gt.term_index);
        const auto outcome = match_pattern(gt, it == by_term.end() ? none : it->second);
        cell.jaccard += outcome.jaccard;
        cell.start_error += outcome.start_error;
        cell.end_error += outcome.end_error;
    }
    const double n = static_cast<double>(gts.size());
    cell.jaccard /= n;
    cell.start_error /= n;
    cell.end_error /= n;
    return cell;
}

} // namespace

spatial::BaselineModel baseline_from_options(const std::string& kind, int window) {
    if (kind == "running-mean") return spatial::BaselineModel::running_mean();
    if (kind == "window-mean") return spatial::BaselineModel::window_mean(window);
    throw std::invalid_argument("unknown baseline kind '" + kind + "'");
}

ExperimentReport run_experiment(const ExperimentOptions& options) {
    ExperimentReport report;
    const auto baseline = spatial::BaselineModel::running_mean();

    for (synth::Mode mode : options.modes) {
        synth::SyntheticDataset dataset(options.config, mode);
        const auto& gts = dataset.ground_truth();
        const auto& streams = dataset.streams();

        std::vector<int> terms;
        for (const auto& gt : gts) terms.push_back(gt.term_index);
        std::sort(terms.begin(), terms.end());
        terms.erase(std::unique(terms.begin(), terms.end()), terms.end());

        // Only terms carrying injected patterns enter the metrics; terms are
        // mined independently, so skipping the rest changes nothing.
        std::vector<mine::TermMatrix> matrices(terms.size());
        parallel_for(terms.size(), options.threads, [&](std::size_t i) {
            matrices[i] = dataset.term_matrix(terms[static_cast<std::size_t>(i)]);
        });

        for (const std::string& method : options.methods) {
            std::map<int, std::vector<PatternCandidate>> by_term;
            if (method == "stlocal") {
                std::vector<std::vector<PatternCandidate>> results(terms.size());
                parallel_for(terms.size(), options.threads, [&](std::size_t i) {
                    const auto local = mine::local_windows(
                        dataset.term_names()[static_cast<std::size_t>(terms[i])], streams,
                        matrices[i], baseline);
                    for (const auto& w : local.windows) {
                        PatternCandidate c;
                        for (std::size_t idx : w.region) c.streams.push_back(streams[idx].stream_id);
                        std::sort(c.streams.begin(), c.streams.end());
                        c.start = w.start;
                        c.end = w.end;
                        results[i].push_back(std::move(c));
                    }
                });
                for (std::size_t i = 0; i < terms.size(); ++i) by_term[terms[i]] = std::move(results[i]);
                report.cells[{method, synth::mode_name(mode)}] = average_metrics(gts, by_term);
            } else if (method == "stcomb") {
                std::vector<std::vector<PatternCandidate>> results(terms.size());
                parallel_for(terms.size(), options.threads, [&](std::size_t i) {
                    const auto patterns = mine::comb_patterns(
                        dataset.term_names()[static_cast<std::size_t>(terms[i])], streams,
                        matrices[i]);
                    for (const auto& p : patterns) {
                        results[i].push_back({p.streams, p.start, p.end});
                    }
                });
                for (std::size_t i = 0; i < terms.size(); ++i) by_term[terms[i]] = std::move(results[i]);
                report.cells[{method, synth::mode_name(mode)}] = average_metrics(gts, by_term);
            } else if (method == "base") {
                // grid-tuned: best average JaccardSim wins
                MetricCell best_cell;
                int best_gap = options.base_gap_grid.front();
                double best_delta = options.base_delta_grid.front();
                bool first = true;
                for (int gap : options.base_gap_grid) {
                    for (double delta : options.base_delta_grid) {
                        std::vector<std::vector<PatternCandidate>> results(terms.size());
                        parallel_for(terms.size(), options.threads, [&](std::size_t i) {
                            results[i] = base_baseline(
                                streams, matrices[i], baseline,
                                dataset.term_names()[static_cast<std::size_t>(terms[i])], gap,
                                delta, options.config.seed);
                        });
                        std::map<int, std::vector<PatternCandidate>> grid_by_term;
                        for (std::size_t i = 0; i < terms.size(); ++i) {
                            grid_by_term[terms[i]] = std::move(results[i]);
                        }
                        const MetricCell cell = average_metrics(gts, grid_by_term);
                        if (first || cell.jaccard > best_cell.jaccard) {
                            best_cell = cell;
                            best_gap = gap;
                            best_delta = delta;
                            first = false;
                        }
                    }
                }
                report.cells[{method, synth::mode_name(mode)}] = best_cell;
                report.tuned_base[synth::mode_name(mode)] = {best_gap, best_delta};
            } else {
                throw std::invalid_argument("run_experiment: unknown method '" + method + "'");
            }
        }
    }
    return report;
}

std::string ExperimentReport::to_csv() const {
    std::ostringstream out;
    out << "method,generator,jaccard_sim,start_error,end_error\n";
    for (const auto& [key, cell] : cells) {
        out << key.first << ',' << key.second << ',' << format_double(cell.jaccard) << ','
            << format_double(cell.start_error) << ',' << format_double(cell.end_error) << '\n';
    }
    return out.str();
}

std::vector<TimingRow> run_scaling(const synth::GeneratorConfig& base_config, synth::Mode mode,
                                   const std::vector<int>& sizes, int sampled_terms) {
    if (sampled_terms < 1 || sampled_terms > base_config.terms) {
        throw std::invalid_argument("run_scaling: sampled_terms out of range");
    }
    synth::Rng rng(synth::mix_seed(base_config.seed, 0x7131, 99));
    std::vector<int> sample;
    std::vector<int> all(static_cast<std::size_t>(base_config.terms));
    for (int t = 0; t < base_config.terms; ++t) all[static_cast<std::size_t>(t)] = t;
    for (int i = 0; i < sampled_terms; ++i) {
        const int j = rng.uniform_int(i, base_config.terms - 1);
        std::swap(all[static_cast<std::size_t>(i)], all[static_cast<std::size_t>(j)]);
        sample.push_back(all[static_cast<std::size_t>(i)]);
    }

    std::vector<TimingRow> rows;
    for (int size : sizes) {
        synth::GeneratorConfig cfg = base_config;
        cfg.streams = size;
        const double factor = std::sqrt(static_cast<double>(size) /
                                        static_cast<double>(base_config.streams));
        cfg.map_width *= factor; // constant stream density across sizes
        cfg.map_height *= factor;

        synth::SyntheticDataset dataset(cfg, mode);
        const auto baseline = spatial::BaselineModel::running_mean();
        double local_ms = 0.0;
        double comb_ms = 0.0;
        for (int t : sample) {
            const auto matrix = dataset.term_matrix(t);
            const std::string& name = dataset.term_names()[static_cast<std::size_t>(t)];

            auto t0 = std::chrono::steady_clock::now();
            mine::local_windows(name, dataset.streams(), matrix, baseline);
            local_ms += elapsed_ms(t0);

            t0 = std::chrono::steady_clock::now();
            mine::comb_patterns(name, dataset.streams(), matrix);
            comb_ms += elapsed_ms(t0);
        }
        const double per_term_local = local_ms / sampled_terms;
        const double per_term_comb = comb_ms / sampled_terms;
        rows.push_back({"stlocal", size, per_term_local, per_term_local / cfg.timeline});
        rows.push_back({"stcomb", size, per_term_comb, per_term_comb / cfg.timeline});
    }
    return rows;
}

std::string timing_to_csv(const std::vector<TimingRow>& rows) {
    std::ostringstream out;
    out << "method,streams,ms_per_term,ms_per_snapshot\n";
    for (const auto& row : rows) {
        out << row.method << ',' << row.streams << ',' << format_double(row.ms_per_term) << ','
            << format_double(row.ms_per_snapshot) << '\n';
    }
    return out.str();
}

StatsReport collect_stats(const corpus::Corpus& corpus, const StatsOptions& options) {
    const auto baseline = baseline_from_options(options.baseline_kind, options.window);
    std::vector<std::string> terms = corpus.terms();
    if (options.max_terms > 0 && static_cast<int>(terms.size()) > options.max_terms) {
        terms.resize(static_cast<std::size_t>(options.max_terms));
    }
    const std::size_t timeline = static_cast<std::size_t>(corpus.timeline_length());
    const std::size_t n = static_cast<std::size_t>(corpus.stream_count());

    StatsReport report;
    report.terms_processed = static_cast<int>(terms.size());
    report.avg_live_sequences.assign(timeline, 0.0);
    report.avg_open_candidates.assign(timeline, 0.0);
    report.worst_case_sequences.assign(timeline, 0.0);
    report.stlocal_ms_per_timestamp.assign(timeline, 0.0);
    for (std::size_t i = 0; i < timeline; ++i) {
        report.worst_case_sequences[i] = static_cast<double>(n * (i + 1));
    }

    std::map<int, int> histogram;
    std::mutex merge_mutex;
    double comb_ms_total = 0.0;

    parallel_for(terms.size(), options.threads, [&](std::size_t idx) {
        const std::string& term = terms[idx];
        const auto matrix = mine::term_matrix(corpus, term);

        std::vector<std::vector<double>> burst(n);
        for (std::size_t s = 0; s < n; ++s) {
            burst[s] = baseline.burstiness_series(corpus.streams()[s].stream_id, term, matrix[s]);
        }

        stlocal::StLocalState state;
        std::vector<spatial::StreamScore> scores(n);
        std::vector<double> ms(timeline);
        std::vector<std::size_t> live(timeline), cand(timeline);
        std::size_t rect_total = 0;
        for (std::size_t i = 0; i < timeline; ++i) {
            for (std::size_t s = 0; s < n; ++s) {
                scores[s] = {s, corpus.streams()[s].location, burst[s][i]};
            }
            const auto t0 = std::chrono::steady_clock::now();
            state.process_snapshot(static_cast<int>(i) + 1, scores);
            ms[i] = elapsed_ms(t0);
            live[i] = state.live_sequence_count();
            cand[i] = state.open_candidate_count();
            rect_total += state.rectangles_last_snapshot();
            if (live[i] > n * (i + 1)) {
                throw std::logic_error("collect_stats: live sequences exceed n*i bound");
            }
        }

        const auto t0 = std::chrono::steady_clock::now();
        mine::comb_patterns(term, corpus.streams(), matrix);
        const double comb_ms = elapsed_ms(t0);

        const double avg_rects = timeline == 0 ? 0.0
                                               : static_cast<double>(rect_total) /
                                                     static_cast<double>(timeline);
        std::lock_guard<std::mutex> lock(merge_mutex);
        ++histogram[static_cast<int>(avg_rects)];
        comb_ms_total += comb_ms;
        for (std::size_t i = 0; i < timeline; ++i) {
            report.avg_live_sequences[i] += static_cast<double>(live[i]);
            report.avg_open_candidates[i] += static_cast<double>(cand[i]);
            report.stlocal_ms_per_timestamp[i] += ms[i];
        }
    });

    const double term_count = std::max<std::size_t>(terms.size(), 1);
    for (std::size_t i = 0; i < timeline; ++i) {
        report.avg_live_sequences[i] /= term_count;
        report.avg_open_candidates[i] /= term_count;
        report.stlocal_ms_per_timestamp[i] /= term_count;
    }
    report.stcomb_ms_per_term = comb_ms_total / term_count;
    for (const auto& [bucket, count] : histogram) {
        report.rectangle_histogram.emplace_back(
            std::to_string(bucket) + "-" + std::to_string(bucket + 1), count);
    }
    return report;
}

std::string StatsReport::histogram_csv() const {
    std::ostringstream out;
    out << "avg_rectangles_per_timestamp,terms\n";
    for (const auto& [bucket, count] : rectangle_histogram) {
        out << bucket << ',' << count << '\n';
    }
    return out.str();
}

std::string StatsReport::windows_csv() const {
    std::ostringstream out;
    out << "timestamp,avg_live_sequences,avg_open_candidates,worst_case\n";
    for (std::size_t i = 0; i < avg_live_sequences.size(); ++i) {
        out << (i + 1) << ',' << format_double(avg_live_sequences[i]) << ','
            << format_double(avg_open_candidates[i]) << ','
            << format_double(worst_case_sequences[i]) << '\n';
    }
    return out.str();
}

std::string StatsReport::timing_csv() const {
    std::ostringstream out;
    out << "timestamp,stlocal_ms_per_term,stcomb_whole_stream_ms_per_term\n";
    for (std::size_t i = 0; i < stlocal_ms_per_timestamp.size(); ++i) {
        out << (i + 1) << ',' << format_double(stlocal_ms_per_timestamp[i]) << ','
            << format_double(stcomb_ms_per_term) << '\n';
    }
    return out.str();
}

} // namespace stburst::eval
