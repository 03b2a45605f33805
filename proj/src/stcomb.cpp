#include "stburst/stcomb.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace stburst::stcomb {

namespace {

CombinatorialPattern assemble(const std::string& term, std::vector<WeightedInterval> members) {
    CombinatorialPattern p;
    p.term = term;
    p.start = members.front().left;
    p.end = members.front().right;
    double score = 0.0;
    for (const WeightedInterval& m : members) {
        p.start = std::max(p.start, m.left);
        p.end = std::min(p.end, m.right);
        score += m.weight;
        p.streams.push_back(m.stream_id);
    }
    std::sort(p.streams.begin(), p.streams.end());
    for (size_t i = 1; i < p.streams.size(); ++i) {
        if (p.streams[i] == p.streams[i - 1]) {
            throw std::logic_error("stcomb: clique holds two intervals of stream '" +
                                   p.streams[i] + "'; per-stream intervals must be disjoint");
        }
    }
    p.score = score;
    p.members = std::move(members);
    return p;
}

} // namespace

bool is_eligible(std::span<const WeightedInterval> intervals) {
    if (intervals.empty()) {
        throw std::invalid_argument("is_eligible: empty interval set");
    }
    int max_left = intervals.front().left;
    int min_right = intervals.front().right;
    for (const WeightedInterval& iv : intervals) {
        max_left = std::max(max_left, iv.left);
        min_right = std::min(min_right, iv.right);
    }
    return max_left <= min_right;
}

CliqueResult max_clique(std::span<const WeightedInterval> intervals) {
    CliqueResult result;
    if (intervals.empty()) {
        return result;
    }
    for (const WeightedInterval& iv : intervals) {
        if (iv.weight <= 0.0) {
            throw std::invalid_argument("max_clique: interval weights must be positive");
        }
        if (iv.left > iv.right) {
            throw std::invalid_argument("max_clique: interval left exceeds right");
        }
    }

    // Event type 0 = start, 1 = end; starts first at equal coordinates.
    struct Event {
        int coord;
        int type;
        std::size_t index;
    };
    std::vector<Event> events;
    events.reserve(intervals.size() * 2);
    for (std::size_t i = 0; i < intervals.size(); ++i) {
        events.push_back({intervals[i].left, 0, i});
        events.push_back({intervals[i].right, 1, i});
    }
    std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
        if (a.coord != b.coord) return a.coord < b.coord;
        return a.type < b.type;
    });

    double running = 0.0;
    double best = 0.0;
    int best_point = 0;
    bool have_best = false;
    size_t e = 0;
    while (e < events.size()) {
        const int coord = events[e].coord;
        while (e < events.size() && events[e].coord == coord && events[e].type == 0) {
            running += intervals[events[e].index].weight;
            ++e;
        }
        // All intervals covering `coord` are now active.
        if (!have_best || running > best) {
            best = running;
            best_point = coord;
            have_best = true;
        }
        while (e < events.size() && events[e].coord == coord) {
            running -= intervals[events[e].index].weight;
            ++e;
        }
    }

    result.point = best_point;
    for (std::size_t i = 0; i < intervals.size(); ++i) {
        if (intervals[i].left <= best_point && best_point <= intervals[i].right) {
            result.members.push_back(i);
            result.score += intervals[i].weight;
        }
    }
    return result;
}

std::vector<CombinatorialPattern> extract_patterns(const std::string& term,
                                                   std::vector<WeightedInterval> pool,
                                                   std::size_t max_patterns) {
    std::vector<CombinatorialPattern> patterns;
    while (!pool.empty() && patterns.size() < max_patterns) {
        CliqueResult clique = max_clique(pool);
        if (clique.members.empty() || clique.score <= 0.0) {
            break;
        }
        std::vector<WeightedInterval> members;
        members.reserve(clique.members.size());
        for (std::size_t idx : clique.members) {
            members.push_back(pool[idx]);
        }
        patterns.push_back(assemble(term, std::move(members)));

        std::vector<WeightedInterval> remaining;
        remaining.reserve(pool.size() - clique.members.size());
        std::size_t next_removed = 0;
        for (std::size_t i = 0; i < pool.size(); ++i) {
            if (next_removed < clique.members.size() && clique.members[next_removed] == i) {
                ++next_removed;
            } else {
                remaining.push_back(std::move(pool[i]));
            }
        }
        pool = std::move(remaining);
    }
    return patterns;
}

std::vector<CombinatorialPattern> enumerate_overlapping(const std::string& term,
                                                        std::span<const WeightedInterval> intervals,
                                                        double min_score) {
    // Maximal cliques of an interval graph are the active sets at interval
    // start points; keep the containment-maximal distinct ones.
    std::set<std::vector<std::size_t>> active_sets;
    for (const WeightedInterval& iv : intervals) {
        std::vector<std::size_t> active;
        for (std::size_t i = 0; i < intervals.size(); ++i) {
            if (intervals[i].left <= iv.left && iv.left <= intervals[i].right) {
                active.push_back(i);
            }
        }
        if (!active.empty()) {
            active_sets.insert(std::move(active));
        }
    }

    std::vector<CombinatorialPattern> patterns;
    for (const auto& candidate : active_sets) {
        bool contained = false;
        for (const auto& other : active_sets) {
            if (other.size() > candidate.size() &&
                std::includes(other.begin(), other.end(), candidate.begin(), candidate.end())) {
                contained = true;
                break;
            }
        }
        if (contained) continue;

        std::vector<WeightedInterval> members;
        for (std::size_t idx : candidate) {
            members.push_back(intervals[idx]);
        }
        CombinatorialPattern p = assemble(term, std::move(members));
        if (p.score >= min_score) {
            patterns.push_back(std::move(p));
        }
    }
    std::sort(patterns.begin(), patterns.end(),
              [](const CombinatorialPattern& a, const CombinatorialPattern& b) {
                  if (a.score != b.score) return a.score > b.score;
                  if (a.start != b.start) return a.start < b.start;
                  return a.streams < b.streams;
              });
    return patterns;
}

} // namespace stburst::stcomb
