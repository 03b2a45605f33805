#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "stburst/corpus.hpp"
#include "stburst/geometry.hpp"
#include "stburst/mine.hpp"

namespace stburst::synth {

/// Deterministic RNG helper: identical streams for identical seeds on any
/// platform (bit mapping is done by hand rather than through distribution
/// objects, whose output is implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64();
    double uniform();                              // [0, 1)
    double uniform(double lo, double hi);          // [lo, hi)
    int uniform_int(int lo, int hi);               // [lo, hi] inclusive
    double exponential(double rate);               // mean 1/rate

private:
    std::uint64_t state_;
};

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b);

enum class Mode { distgen, randgen };
Mode mode_from_string(const std::string& name);
std::string mode_name(Mode mode);

struct GeneratorConfig {
    int timeline = 365;
    int streams = 100;
    int terms = 1000;
    int patterns = 10;
    double background_rate = 2.5;  // exponential rate; mean frequency 1/rate
    double shape_min = 1.5;        // Weibull k
    double shape_max = 4.0;
    double scale_min_frac = 0.25;  // Weibull c, as a fraction of pattern length
    double scale_max_frac = 0.6;
    double peak_min = 15.0;        // peak frequency v
    double peak_max = 40.0;
    double map_width = 100.0;
    double map_height = 100.0;
    double distgen_tau = 0.0;      // 0 = median pairwise distance
    bool distgen_proportional = false; // literal distance-proportional inclusion
    std::uint64_t seed = 1;
};

/// Ground truth for one injected pattern.
struct InjectedPattern {
    std::string term;
    int term_index = 0;
    int start = 0;
    int end = 0;
    std::vector<std::string> streams; // sorted member ids
    struct MemberParams {
        std::string stream_id;
        double scale = 0.0; // c
        double shape = 0.0; // k
        double peak = 0.0;  // v
    };
    std::vector<MemberParams> params;
};

/// Weibull density; zero for negative x. Throws on non-positive c or k.
double weibull_pdf(double x, double c, double k);

/// Density sampled at x = 1..length, rescaled so the maximum equals `peak`
/// exactly. Throws when every sampled value underflows to zero.
std::vector<double> burst_curve(int length, double c, double k, double peak);

/// DISTGEN picks a seed stream and keeps each other stream with probability
/// decaying in its distance from the seed (or proportional to it, when the
/// literal rule is requested); RANDGEN draws a uniform count and samples that
/// many streams uniformly. Returns sorted stream indices.
std::vector<std::size_t> select_streams(Mode mode, std::span<const GeoPoint> locations,
                                        double tau, bool proportional, Rng& rng);

/// A generated corpus: stream layout, injected ground truth, and per-term
/// frequency matrices materialized on demand (each cell's randomness is
/// seeded independently, so any access order yields identical data).
class SyntheticDataset {
public:
    SyntheticDataset(GeneratorConfig config, Mode mode);

    const GeneratorConfig& config() const { return config_; }
    Mode mode() const { return mode_; }
    const std::vector<corpus::StreamMeta>& streams() const { return streams_; }
    const std::vector<std::string>& term_names() const { return term_names_; }
    const std::vector<InjectedPattern>& ground_truth() const { return ground_truth_; }
    double tau() const { return tau_; }

    mine::TermMatrix term_matrix(int term_index) const;

    /// Full corpus with one synthetic document per (stream, timestamp) cell;
    /// intended for modest configurations.
    corpus::Corpus materialize_corpus() const;

private:
    GeneratorConfig config_;
    Mode mode_;
    double tau_ = 0.0;
    std::vector<corpus::StreamMeta> streams_;
    std::vector<std::string> term_names_;
    std::vector<InjectedPattern> ground_truth_;
    std::vector<std::vector<std::size_t>> member_indices_; // per pattern, sorted
};

} // namespace stburst::synth
