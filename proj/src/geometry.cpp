#include "searoute/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace searoute {

double distance(Point a, Point b) { return std::hypot(b.x - a.x, b.y - a.y); }

double bearing(Point a, Point b) { return std::atan2(b.y - a.y, b.x - a.x); }

std::optional<double> vertex_angle(Point prev, Point vertex, Point next) {
    const Point u = prev - vertex;
    const Point v = next - vertex;
    if ((u.x == 0.0 && u.y == 0.0) || (v.x == 0.0 && v.y == 0.0)) return std::nullopt;
    // atan2 of |cross| and dot stays accurate near 0 and 180 degrees.
    const double angle = std::atan2(std::abs(cross(u, v)), dot(u, v));
    return std::clamp(to_degrees(angle), 0.0, 180.0);
}

std::array<Point, 4> rect_corners(const OrientedRect& r) {
    const double c = std::cos(r.heading);
    const double s = std::sin(r.heading);
    const double hl = r.length / 2.0;
    const double hw = r.width / 2.0;
    const Point along{c * hl, s * hl};
    const Point across{-s * hw, c * hw};
    return {r.center + along + across, r.center + along - across,
            r.center - along - across, r.center - along + across};
}

Point sample_in_annular_sector(Point center, double r_min, double r_max,
                               double angle_lo, double angle_hi, RandomStream& rng) {
    if (!(r_min >= 0.0) || !(r_max > r_min) || !(angle_hi > angle_lo)) {
        throw std::invalid_argument("sample_in_annular_sector: invalid bounds");
    }
    const double r = std::sqrt(rng.uniform(r_min * r_min, r_max * r_max));
    const double a = rng.uniform(angle_lo, angle_hi);
    return {center.x + r * std::cos(a), center.y + r * std::sin(a)};
}

}  // namespace searoute
