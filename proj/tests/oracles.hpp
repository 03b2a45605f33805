// Brute-force reference implementations used only by tests. Each oracle is
// written against the problem statement, independent of the library's
// algorithmic path, so agreement is meaningful.
#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <vector>

#include "stburst/maxseg.hpp"
#include "stburst/spatial.hpp"

namespace oracles {

// Best axis-aligned rectangle score over nonempty member sets, by exhaustive
// enumeration of coordinate-pair bounds (the O(n^4) scheme: every pair of x
// coordinates crossed with every pair of y coordinates).
inline double max_rectangle_bruteforce(std::span<const stburst::spatial::StreamScore> points) {
    std::vector<double> xs, ys;
    for (const auto& p : points) {
        xs.push_back(p.location.x);
        ys.push_back(p.location.y);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());

    bool any = false;
    double best = 0.0;
    for (size_t xa = 0; xa < xs.size(); ++xa) {
        for (size_t xb = xa; xb < xs.size(); ++xb) {
            for (size_t ya = 0; ya < ys.size(); ++ya) {
                for (size_t yb = ya; yb < ys.size(); ++yb) {
                    double sum = 0.0;
                    bool member = false;
                    for (const auto& p : points) {
                        if (p.location.x >= xs[xa] && p.location.x <= xs[xb] &&
                            p.location.y >= ys[ya] && p.location.y <= ys[yb]) {
                            sum += p.value;
                            member = true;
                        }
                    }
                    if (member && (!any || sum > best)) {
                        best = sum;
                        any = true;
                    }
                }
            }
        }
    }
    return any ? best : -std::numeric_limits<double>::infinity();
}

// All maximal scoring subsequences, by exhaustive O(n^2) enumeration.
//
// With cumulative sums c_0..c_n, a segment [i..j] qualifies when c_{i-1} is a
// strict minimum over c_{i..j} (every prefix positive) and c_j is a strict
// maximum over c_{i-1..j-1} (every suffix positive). The maximal segments are
// the qualifying segments not contained in a larger qualifying segment.
inline std::vector<stburst::maxseg::ScoredSegment>
maximal_segments_bruteforce(std::span<const double> scores) {
    const int n = static_cast<int>(scores.size());
    std::vector<double> cum(static_cast<size_t>(n) + 1, 0.0);
    for (int k = 1; k <= n; ++k) {
        cum[static_cast<size_t>(k)] = cum[static_cast<size_t>(k) - 1] + scores[static_cast<size_t>(k) - 1];
    }

    struct Seg {
        int i, j;
    };
    std::vector<Seg> qualifying;
    for (int i = 1; i <= n; ++i) {
        for (int j = i; j <= n; ++j) {
            bool ok = true;
            for (int k = i; k <= j && ok; ++k) {
                if (cum[static_cast<size_t>(i) - 1] >= cum[static_cast<size_t>(k)]) ok = false;
            }
            for (int k = i - 1; k < j && ok; ++k) {
                if (cum[static_cast<size_t>(j)] <= cum[static_cast<size_t>(k)]) ok = false;
            }
            if (ok) qualifying.push_back({i, j});
        }
    }

    std::vector<stburst::maxseg::ScoredSegment> out;
    for (const Seg& s : qualifying) {
        bool contained = false;
        for (const Seg& t : qualifying) {
            if ((t.i < s.i || t.j > s.j) && t.i <= s.i && t.j >= s.j) {
                contained = true;
                break;
            }
        }
        if (!contained) {
            out.push_back({s.i, s.j,
                           cum[static_cast<size_t>(s.j)] - cum[static_cast<size_t>(s.i) - 1]});
        }
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.start < b.start; });
    return out;
}

} // namespace oracles
