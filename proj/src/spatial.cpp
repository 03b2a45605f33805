#include "stburst/spatial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace stburst::spatial {

BaselineModel BaselineModel::window_mean(int w) {
    if (w < 1) {
        throw std::invalid_argument("BaselineModel: window must be >= 1");
    }
    return BaselineModel(Kind::window_mean, w, {});
}

double BaselineModel::expected(const std::string& stream_id, const std::string& term,
                               std::span<const std::uint32_t> series, int timestamp) const {
    const int n = static_cast<int>(series.size());
    if (timestamp < 1 || timestamp > n) {
        throw std::out_of_range("BaselineModel: timestamp " + std::to_string(timestamp) +
                                " outside series of length " + std::to_string(n));
    }
    switch (kind_) {
    case Kind::running_mean: {
        if (timestamp == 1) return series[0]; // cold start: burstiness 0
        double sum = 0.0;
        for (int i = 1; i < timestamp; ++i) sum += series[static_cast<size_t>(i) - 1];
        return sum / static_cast<double>(timestamp - 1);
    }
    case Kind::window_mean: {
        if (timestamp == 1) return series[0];
        const int span = std::min(window_, timestamp - 1);
        double sum = 0.0;
        for (int i = timestamp - span; i < timestamp; ++i) sum += series[static_cast<size_t>(i) - 1];
        return sum / static_cast<double>(span);
    }
    case Kind::external_table: {
        auto it = table_.find({stream_id, term, timestamp});
        if (it == table_.end()) {
            throw std::out_of_range("BaselineModel: no external baseline for (" + stream_id +
                                    ", " + term + ", " + std::to_string(timestamp) + ")");
        }
        return it->second;
    }
    }
    return 0.0;
}

std::vector<double> BaselineModel::burstiness_series(const std::string& stream_id,
                                                     const std::string& term,
                                                     std::span<const std::uint32_t> series) const {
    const size_t n = series.size();
    std::vector<double> out(n, 0.0);
    if (n == 0) return out;

    switch (kind_) {
    case Kind::running_mean: {
        double prefix = 0.0;
        out[0] = 0.0;
        for (size_t i = 1; i < n; ++i) {
            prefix += series[i - 1];
            out[i] = static_cast<double>(series[i]) - prefix / static_cast<double>(i);
        }
        break;
    }
    case Kind::window_mean: {
        double window_sum = 0.0;
        out[0] = 0.0;
        for (size_t i = 1; i < n; ++i) {
            window_sum += series[i - 1];
            if (static_cast<int>(i) > window_) {
                window_sum -= series[i - 1 - static_cast<size_t>(window_)];
            }
            const int span = std::min(window_, static_cast<int>(i));
            out[i] = static_cast<double>(series[i]) - window_sum / static_cast<double>(span);
        }
        break;
    }
    case Kind::external_table: {
        for (size_t i = 0; i < n; ++i) {
            out[i] = static_cast<double>(series[i]) -
                     expected(stream_id, term, series, static_cast<int>(i) + 1);
        }
        break;
    }
    }
    return out;
}

double r_score(std::span<const StreamScore> members) {
    double total = 0.0;
    for (const StreamScore& m : members) total += m.value;
    return total;
}

namespace {

struct Candidate {
    Bounds bounds;
    std::vector<std::size_t> members; // stream indices, ascending
    double score = 0.0;
};

// score desc, then fewest members, smallest area, lexicographic member order.
bool better(const Candidate& a, const Candidate& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.members.size() != b.members.size()) return a.members.size() < b.members.size();
    const double area_a = a.bounds.area();
    const double area_b = b.bounds.area();
    if (area_a != area_b) return area_a < area_b;
    return a.members < b.members;
}

Candidate materialize(std::span<const StreamScore> points, const Bounds& raw) {
    // Tighten to the extremes of the nonzero points inside, then collect every
    // point (any weight) within the tightened bounds.
    Bounds tight;
    bool first = true;
    for (const StreamScore& p : points) {
        if (p.value == 0.0 || !raw.contains(p.location)) continue;
        if (first) {
            tight = {p.location.x, p.location.x, p.location.y, p.location.y};
            first = false;
        } else {
            tight.x_min = std::min(tight.x_min, p.location.x);
            tight.x_max = std::max(tight.x_max, p.location.x);
            tight.y_min = std::min(tight.y_min, p.location.y);
            tight.y_max = std::max(tight.y_max, p.location.y);
        }
    }
    Candidate c;
    c.bounds = first ? raw : tight;
    std::vector<std::pair<std::size_t, double>> inside;
    for (const StreamScore& p : points) {
        if (c.bounds.contains(p.location)) {
            inside.emplace_back(p.stream, p.value);
        }
    }
    std::sort(inside.begin(), inside.end());
    for (const auto& [stream, value] : inside) {
        c.members.push_back(stream);
        c.score += value;
    }
    return c;
}

// All weights <= 0: the best nonempty rectangle degenerates to a single
// coordinate (adding points can only lower the score).
std::optional<Candidate> best_degenerate(std::span<const StreamScore> points) {
    std::optional<Candidate> best;
    for (const StreamScore& p : points) {
        Bounds b{p.location.x, p.location.x, p.location.y, p.location.y};
        Candidate c = materialize(points, b);
        if (!best || better(c, *best)) best = std::move(c);
    }
    return best;
}

} // namespace

std::optional<RScoredRectangle> max_rectangle(std::span<const StreamScore> points,
                                              bool positive_only) {
    for (const StreamScore& p : points) {
        if (!std::isfinite(p.value)) {
            throw std::invalid_argument("max_rectangle: non-finite weight");
        }
    }

    std::vector<const StreamScore*> nonzero;
    bool any_positive = false;
    for (const StreamScore& p : points) {
        if (p.value != 0.0) nonzero.push_back(&p);
        if (p.value > 0.0) any_positive = true;
    }

    std::optional<Candidate> best;
    if (!any_positive) {
        if (positive_only) return std::nullopt;
        best = best_degenerate(points);
    } else {
        // Candidate bounds snap to coordinates of positive points: every edge
        // of an optimal rectangle carries a positive member, otherwise the
        // edge row or column could be shed without lowering the score.
        std::vector<double> pos_y;
        for (const StreamScore* p : nonzero) {
            if (p->value > 0.0) pos_y.push_back(p->location.y);
        }
        std::sort(pos_y.begin(), pos_y.end());
        pos_y.erase(std::unique(pos_y.begin(), pos_y.end()), pos_y.end());

        std::vector<double> xs;
        for (const StreamScore* p : nonzero) xs.push_back(p->location.x);
        std::sort(xs.begin(), xs.end());
        xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
        const int cells = static_cast<int>(xs.size());

        std::vector<const StreamScore*> by_y = nonzero;
        std::sort(by_y.begin(), by_y.end(), [](const StreamScore* a, const StreamScore* b) {
            return a->location.y < b->location.y;
        });

        std::vector<double> cell_weight(static_cast<size_t>(cells));
        std::vector<int> cell_anchors(static_cast<size_t>(cells));
        std::vector<double> prefix(static_cast<size_t>(cells) + 1);

        for (double y_lo : pos_y) {
            std::fill(cell_weight.begin(), cell_weight.end(), 0.0);
            std::fill(cell_anchors.begin(), cell_anchors.end(), 0);
            size_t next = static_cast<size_t>(
                std::lower_bound(by_y.begin(), by_y.end(), y_lo,
                                 [](const StreamScore* p, double y) { return p->location.y < y; }) -
                by_y.begin());

            for (double y_hi : pos_y) {
                if (y_hi < y_lo) continue;
                while (next < by_y.size() && by_y[next]->location.y <= y_hi) {
                    const StreamScore* p = by_y[next];
                    const int cell = static_cast<int>(
                        std::lower_bound(xs.begin(), xs.end(), p->location.x) - xs.begin());
                    cell_weight[static_cast<size_t>(cell)] += p->value;
                    if (p->value > 0.0) ++cell_anchors[static_cast<size_t>(cell)];
                    ++next;
                }

                // 1D maximum-sum range whose ends are anchor cells (cells
                // holding a positive point inside the slab).
                prefix[0] = 0.0;
                for (int c = 0; c < cells; ++c) {
                    prefix[static_cast<size_t>(c) + 1] =
                        prefix[static_cast<size_t>(c)] + cell_weight[static_cast<size_t>(c)];
                }
                double min_pref = std::numeric_limits<double>::infinity();
                int min_pref_cell = -1;
                double best_sum = -std::numeric_limits<double>::infinity();
                int best_lo = -1, best_hi = -1;
                for (int c = 0; c < cells; ++c) {
                    if (cell_anchors[static_cast<size_t>(c)] == 0) continue;
                    if (prefix[static_cast<size_t>(c)] <= min_pref) {
                        min_pref = prefix[static_cast<size_t>(c)];
                        min_pref_cell = c;
                    }
                    const double sum = prefix[static_cast<size_t>(c) + 1] - min_pref;
                    if (sum > best_sum) {
                        best_sum = sum;
                        best_lo = min_pref_cell;
                        best_hi = c;
                    }
                }
                if (best_lo < 0) continue;
                if (best && best_sum < best->score - 1e-12) continue;

                Bounds raw{xs[static_cast<size_t>(best_lo)], xs[static_cast<size_t>(best_hi)],
                           y_lo, y_hi};
                Candidate c = materialize(points, raw);
                if (!best || better(c, *best)) best = std::move(c);
            }
        }
    }

    if (!best) return std::nullopt;
    if (positive_only && best->score <= 0.0) return std::nullopt;

    RScoredRectangle rect;
    rect.bounds = best->bounds;
    rect.members = std::move(best->members);
    rect.score = best->score;
    for (const StreamScore& p : points) {
        if (p.value <= 0.0 && rect.bounds.contains(p.location)) {
            rect.flagged_nonbursty.push_back(p.stream);
        }
    }
    std::sort(rect.flagged_nonbursty.begin(), rect.flagged_nonbursty.end());
    return rect;
}

std::vector<RScoredRectangle> r_bursty(std::span<const StreamScore> scores) {
    std::vector<RScoredRectangle> out;
    std::vector<StreamScore> active(scores.begin(), scores.end());
    while (!active.empty()) {
        auto rect = max_rectangle(active, /*positive_only=*/true);
        if (!rect) break;
        // Mask every member, bursty or not, to keep reported member sets
        // disjoint (Algorithm 1's -inf assignment).
        std::vector<StreamScore> remaining;
        remaining.reserve(active.size());
        for (const StreamScore& p : active) {
            if (!std::binary_search(rect->members.begin(), rect->members.end(), p.stream)) {
                remaining.push_back(p);
            }
        }
        active = std::move(remaining);
        out.push_back(std::move(*rect));
    }
    return out;
}

} // namespace stburst::spatial
