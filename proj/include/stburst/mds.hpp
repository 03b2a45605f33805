#pragma once

#include <vector>

#include "stburst/geometry.hpp"

namespace stburst::corpus {

/// Classical multidimensional scaling: embed n points in `dims` dimensions so
/// pairwise Euclidean distances approximate the input matrix. The matrix must
/// be square and symmetric with a zero diagonal and nonnegative finite
/// entries. Uses double centering plus power iteration with deflation.
std::vector<GeoPoint> classical_mds(const std::vector<std::vector<double>>& distances,
                                    int dims = 2);

/// Great-circle distance in kilometres.
double haversine_km(double lat1_deg, double lon1_deg, double lat2_deg, double lon2_deg);

} // namespace stburst::corpus
