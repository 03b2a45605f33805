#include "stburst/synth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stburst::synth {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::string zero_padded(const std::string& prefix, int value, int width) {
    std::string digits = std::to_string(value);
    if (static_cast<int>(digits.size()) < width) {
        digits.insert(0, static_cast<size_t>(width) - digits.size(), '0');
    }
    return prefix + digits;
}

double distance(const GeoPoint& a, const GeoPoint& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

} // namespace

std::uint64_t Rng::next_u64() {
    state_ = splitmix64(state_ ^ 0xD1B54A32D192ED03ULL);
    return splitmix64(state_);
}

double Rng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

int Rng::uniform_int(int lo, int hi) {
    const double u = uniform();
    const int span = hi - lo + 1;
    int v = lo + static_cast<int>(u * span);
    return std::min(v, hi);
}

double Rng::exponential(double rate) {
    if (rate <= 0.0) {
        throw std::invalid_argument("Rng::exponential: rate must be positive");
    }
    return -std::log1p(-uniform()) / rate;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    return splitmix64(splitmix64(splitmix64(seed) ^ a) ^ splitmix64(b));
}

Mode mode_from_string(const std::string& name) {
    if (name == "distgen") return Mode::distgen;
    if (name == "randgen") return Mode::randgen;
    throw std::invalid_argument("unknown generator mode '" + name + "'");
}

std::string mode_name(Mode mode) { return mode == Mode::distgen ? "distgen" : "randgen"; }

double weibull_pdf(double x, double c, double k) {
    if (c <= 0.0 || k <= 0.0) {
        throw std::invalid_argument("weibull_pdf: c and k must be positive");
    }
    if (x < 0.0) return 0.0;
    const double ratio = x / c;
    return (k / c) * std::pow(ratio, k - 1.0) * std::exp(-std::pow(ratio, k));
}

std::vector<double> burst_curve(int length, double c, double k, double peak) {
    if (length < 1) {
        throw std::invalid_argument("burst_curve: length must be >= 1");
    }
    if (peak < 0.0) {
        throw std::invalid_argument("burst_curve: peak must be nonnegative");
    }
    std::vector<double> values(static_cast<size_t>(length));
    double max_value = 0.0;
    size_t arg_max = 0;
    for (int x = 1; x <= length; ++x) {
        const double v = weibull_pdf(static_cast<double>(x), c, k);
        values[static_cast<size_t>(x) - 1] = v;
        if (v > max_value) {
            max_value = v;
            arg_max = static_cast<size_t>(x) - 1;
        }
    }
    if (max_value == 0.0) {
        throw std::runtime_error("burst_curve: degenerate parameters, curve underflows to zero");
    }
    const double scale = peak / max_value;
    for (double& v : values) v *= scale;
    values[arg_max] = peak; // exact at the mode
    return values;
}

std::vector<std::size_t> select_streams(Mode mode, std::span<const GeoPoint> locations,
                                        double tau, bool proportional, Rng& rng) {
    const std::size_t n = locations.size();
    if (n == 0) {
        throw std::invalid_argument("select_streams: empty stream set");
    }
    std::vector<std::size_t> chosen;
    if (mode == Mode::randgen) {
        const int count = rng.uniform_int(1, static_cast<int>(n));
        std::vector<std::size_t> indices(n);
        for (std::size_t i = 0; i < n; ++i) indices[i] = i;
        for (int i = 0; i < count; ++i) {
            const int j = rng.uniform_int(i, static_cast<int>(n) - 1);
            std::swap(indices[static_cast<size_t>(i)], indices[static_cast<size_t>(j)]);
            chosen.push_back(indices[static_cast<size_t>(i)]);
        }
    } else {
        const std::size_t seed_stream = static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(n) - 1));
        double max_dist = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            max_dist = std::max(max_dist, distance(locations[seed_stream], locations[i]));
        }
        chosen.push_back(seed_stream);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == seed_stream) continue;
            const double d = distance(locations[seed_stream], locations[i]);
            double p;
            if (proportional) {
                p = max_dist > 0.0 ? d / max_dist : 0.0;
            } else {
                p = tau > 0.0 ? std::exp(-d / tau) : 0.0;
            }
            if (rng.uniform() < p) chosen.push_back(i);
        }
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

SyntheticDataset::SyntheticDataset(GeneratorConfig config, Mode mode)
    : config_(config), mode_(mode) {
    if (config_.streams < 1 || config_.terms < 1 || config_.timeline < 1) {
        throw std::invalid_argument("SyntheticDataset: streams, terms, timeline must be >= 1");
    }
    if (config_.patterns < 0) {
        throw std::invalid_argument("SyntheticDataset: pattern count must be >= 0");
    }

    const int id_width = static_cast<int>(std::to_string(std::max(config_.streams, config_.terms)).size());
    Rng layout_rng(mix_seed(config_.seed, 0x10c4110, 0));
    streams_.reserve(static_cast<size_t>(config_.streams));
    for (int s = 0; s < config_.streams; ++s) {
        GeoPoint p{layout_rng.uniform(0.0, config_.map_width),
                   layout_rng.uniform(0.0, config_.map_height)};
        streams_.push_back({zero_padded("s", s, id_width), p});
    }
    term_names_.reserve(static_cast<size_t>(config_.terms));
    for (int t = 0; t < config_.terms; ++t) {
        term_names_.push_back(zero_padded("t", t, id_width));
    }

    tau_ = config_.distgen_tau;
    if (tau_ <= 0.0 && mode_ == Mode::distgen && config_.streams > 1) {
        // default: median pairwise distance of the layout
        std::vector<double> dists;
        dists.reserve(static_cast<size_t>(config_.streams) * (config_.streams - 1) / 2);
        for (int i = 0; i < config_.streams; ++i) {
            for (int j = i + 1; j < config_.streams; ++j) {
                dists.push_back(distance(streams_[static_cast<size_t>(i)].location,
                                         streams_[static_cast<size_t>(j)].location));
            }
        }
        auto mid = dists.begin() + static_cast<std::ptrdiff_t>(dists.size() / 2);
        std::nth_element(dists.begin(), mid, dists.end());
        tau_ = *mid;
    }

    std::vector<GeoPoint> locations;
    locations.reserve(streams_.size());
    for (const auto& s : streams_) locations.push_back(s.location);

    Rng pattern_rng(mix_seed(config_.seed, 0x9a77e24, 1));
    for (int p = 0; p < config_.patterns; ++p) {
        InjectedPattern gt;
        gt.term_index = pattern_rng.uniform_int(0, config_.terms - 1);
        gt.term = term_names_[static_cast<size_t>(gt.term_index)];
        int a = pattern_rng.uniform_int(1, config_.timeline);
        int b = pattern_rng.uniform_int(1, config_.timeline);
        gt.start = std::min(a, b);
        gt.end = std::max(a, b);

        auto members = select_streams(mode_, locations, tau_, config_.distgen_proportional,
                                      pattern_rng);
        const int length = gt.end - gt.start + 1;
        for (std::size_t idx : members) {
            InjectedPattern::MemberParams mp;
            mp.stream_id = streams_[idx].stream_id;
            mp.scale = std::max(1.0, pattern_rng.uniform(config_.scale_min_frac, config_.scale_max_frac) * length);
            mp.shape = pattern_rng.uniform(config_.shape_min, config_.shape_max);
            mp.peak = pattern_rng.uniform(config_.peak_min, config_.peak_max);
            gt.params.push_back(std::move(mp));
            gt.streams.push_back(streams_[idx].stream_id);
        }
        std::sort(gt.streams.begin(), gt.streams.end());
        member_indices_.push_back(std::move(members));
        ground_truth_.push_back(std::move(gt));
    }
}

mine::TermMatrix SyntheticDataset::term_matrix(int term_index) const {
    if (term_index < 0 || term_index >= config_.terms) {
        throw std::out_of_range("term_matrix: term index out of range");
    }
    const size_t n = streams_.size();
    const size_t timeline = static_cast<size_t>(config_.timeline);
    mine::TermMatrix matrix(n, std::vector<std::uint32_t>(timeline, 0));

    for (size_t s = 0; s < n; ++s) {
        Rng cell_rng(mix_seed(config_.seed, static_cast<std::uint64_t>(s) + 2,
                              static_cast<std::uint64_t>(term_index) + 2));
        for (size_t i = 0; i < timeline; ++i) {
            matrix[s][i] = static_cast<std::uint32_t>(
                std::llround(cell_rng.exponential(config_.background_rate)));
        }
    }

    for (size_t p = 0; p < ground_truth_.size(); ++p) {
        const InjectedPattern& gt = ground_truth_[p];
        if (gt.term_index != term_index) continue;
        const int length = gt.end - gt.start + 1;
        for (size_t m = 0; m < member_indices_[p].size(); ++m) {
            const std::size_t stream = member_indices_[p][m];
            const auto& mp = gt.params[m];
            const auto curve = burst_curve(length, mp.scale, mp.shape, mp.peak);
            for (int x = 0; x < length; ++x) {
                matrix[stream][static_cast<size_t>(gt.start - 1 + x)] +=
                    static_cast<std::uint32_t>(std::llround(curve[static_cast<size_t>(x)]));
            }
        }
    }
    return matrix;
}

corpus::Corpus SyntheticDataset::materialize_corpus() const {
    std::vector<corpus::Corpus::FrequencyRecord> records;
    for (int t = 0; t < config_.terms; ++t) {
        const auto matrix = term_matrix(t);
        for (size_t s = 0; s < matrix.size(); ++s) {
            for (size_t i = 0; i < matrix[s].size(); ++i) {
                if (matrix[s][i] > 0) {
                    records.push_back({streams_[s].stream_id, static_cast<int>(i) + 1,
                                       term_names_[static_cast<size_t>(t)], matrix[s][i]});
                }
            }
        }
    }
    return corpus::Corpus::from_frequencies(streams_, records, config_.timeline);
}

} // namespace stburst::synth
