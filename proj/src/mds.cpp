#include "stburst/mds.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace stburst::corpus {

namespace {

// Dominant eigenpair of symmetric matrix B restricted to the complement of
// `found` eigenvectors, by deflated power iteration. Returns eigenvalue 0 and
// a zero vector when no positive direction remains.
std::pair<double, std::vector<double>> dominant_eigenpair(
    const std::vector<std::vector<double>>& B,
    const std::vector<std::pair<double, std::vector<double>>>& found) {
    const size_t n = B.size();
    std::vector<double> v(n);
    for (size_t i = 0; i < n; ++i) {
        v[i] = 1.0 + static_cast<double>(i % 7) * 0.1; // deterministic start
    }

    auto deflate = [&](std::vector<double>& x) {
        for (const auto& [lambda, u] : found) {
            double dot = 0.0;
            for (size_t i = 0; i < n; ++i) dot += x[i] * u[i];
            for (size_t i = 0; i < n; ++i) x[i] -= dot * u[i];
        }
    };
    auto normalize = [&](std::vector<double>& x) {
        double norm = 0.0;
        for (double xi : x) norm += xi * xi;
        norm = std::sqrt(norm);
        if (norm > 0.0) {
            for (double& xi : x) xi /= norm;
        }
        return norm;
    };

    deflate(v);
    if (normalize(v) == 0.0) {
        return {0.0, std::vector<double>(n, 0.0)};
    }

    double lambda = 0.0;
    std::vector<double> next(n);
    for (int iter = 0; iter < 2000; ++iter) {
        for (size_t i = 0; i < n; ++i) {
            double acc = 0.0;
            for (size_t j = 0; j < n; ++j) acc += B[i][j] * v[j];
            next[i] = acc;
        }
        deflate(next);
        lambda = 0.0;
        for (size_t i = 0; i < n; ++i) lambda += next[i] * v[i];
        if (normalize(next) == 0.0) {
            return {0.0, std::vector<double>(n, 0.0)};
        }
        double diff = 0.0;
        for (size_t i = 0; i < n; ++i) diff += (next[i] - v[i]) * (next[i] - v[i]);
        v.swap(next);
        if (diff < 1e-24) break;
    }
    return {lambda, v};
}

} // namespace

std::vector<GeoPoint> classical_mds(const std::vector<std::vector<double>>& distances, int dims) {
    const size_t n = distances.size();
    if (n == 0) return {};
    if (dims < 1 || dims > 2) {
        throw std::invalid_argument("classical_mds: dims must be 1 or 2");
    }
    for (size_t i = 0; i < n; ++i) {
        if (distances[i].size() != n) {
            throw std::invalid_argument("classical_mds: matrix is not square");
        }
        for (size_t j = 0; j < n; ++j) {
            const double d = distances[i][j];
            if (!std::isfinite(d)) throw std::invalid_argument("classical_mds: non-finite entry");
            if (d < 0.0) throw std::invalid_argument("classical_mds: negative distance");
            if (std::fabs(d - distances[j][i]) > 1e-9 * std::max(1.0, std::fabs(d))) {
                throw std::invalid_argument("classical_mds: matrix is not symmetric");
            }
        }
        if (distances[i][i] != 0.0) {
            throw std::invalid_argument("classical_mds: diagonal must be zero");
        }
    }

    // Double centering: B = -1/2 * J D^2 J.
    std::vector<std::vector<double>> sq(n, std::vector<double>(n));
    std::vector<double> row_mean(n, 0.0);
    double grand = 0.0;
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) {
            sq[i][j] = distances[i][j] * distances[i][j];
            row_mean[i] += sq[i][j];
        }
        row_mean[i] /= static_cast<double>(n);
        grand += row_mean[i];
    }
    grand /= static_cast<double>(n);
    std::vector<std::vector<double>> B(n, std::vector<double>(n));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) {
            B[i][j] = -0.5 * (sq[i][j] - row_mean[i] - row_mean[j] + grand);
        }
    }

    std::vector<std::pair<double, std::vector<double>>> pairs;
    for (int k = 0; k < dims; ++k) {
        pairs.push_back(dominant_eigenpair(B, pairs));
    }

    std::vector<GeoPoint> out(n);
    for (size_t i = 0; i < n; ++i) {
        const double l0 = std::max(pairs[0].first, 0.0);
        out[i].x = std::sqrt(l0) * pairs[0].second[i];
        if (dims > 1) {
            const double l1 = std::max(pairs[1].first, 0.0);
            out[i].y = std::sqrt(l1) * pairs[1].second[i];
        }
    }
    return out;
}

double haversine_km(double lat1_deg, double lon1_deg, double lat2_deg, double lon2_deg) {
    constexpr double radius_km = 6371.0;
    const double to_rad = std::numbers::pi / 180.0;
    const double lat1 = lat1_deg * to_rad;
    const double lat2 = lat2_deg * to_rad;
    const double dlat = (lat2_deg - lat1_deg) * to_rad;
    const double dlon = (lon2_deg - lon1_deg) * to_rad;
    const double a = std::sin(dlat / 2) * std::sin(dlat / 2) +
                     std::cos(lat1) * std::cos(lat2) * std::sin(dlon / 2) * std::sin(dlon / 2);
    return 2.0 * radius_km * std::asin(std::min(1.0, std::sqrt(a)));
}

} // namespace stburst::corpus
