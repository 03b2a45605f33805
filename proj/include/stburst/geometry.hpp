#pragma once

namespace stburst {

/// A location on the analysis plane.
struct GeoPoint {
    double x = 0.0;
    double y = 0.0;
};

/// Closed axis-oriented rectangle.
struct Bounds {
    double x_min = 0.0;
    double x_max = 0.0;
    double y_min = 0.0;
    double y_max = 0.0;

    bool contains(const GeoPoint& p) const {
        return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
    }
    double area() const { return (x_max - x_min) * (y_max - y_min); }
};

} // namespace stburst
