#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <optional>

#include "searoute/random.hpp"

namespace searoute {

/// Planar position in meters.
struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(Point a, double s) { return {a.x * s, a.y * s}; }

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }

double distance(Point a, Point b);

/// Bearing of b as seen from a, radians counterclockwise from +x.
double bearing(Point a, Point b);

/// Interior angle at `vertex` between segments (prev, vertex) and
/// (vertex, next), in degrees. 180 means straight continuation, 0 means an
/// exact reversal. Empty when either neighbour coincides with the vertex.
std::optional<double> vertex_angle(Point prev, Point vertex, Point next);

/// Ship-footprint rectangle. `heading` is the direction of the length axis.
struct OrientedRect {
    Point center;
    double length = 1.0;
    double width = 1.0;
    double heading = 0.0;
};

/// Corners in clockwise order: front-left, front-right, back-right,
/// back-left (front = +length axis, left = +width axis).
std::array<Point, 4> rect_corners(const OrientedRect& r);

/// Point drawn uniformly by area from the annular sector
/// {r_min <= |p - center| <= r_max, angle_lo <= bearing <= angle_hi}.
/// Throws std::invalid_argument on inverted or negative bounds.
Point sample_in_annular_sector(Point center, double r_min, double r_max,
                               double angle_lo, double angle_hi, RandomStream& rng);

inline constexpr double kPi = std::numbers::pi;

inline double to_degrees(double rad) { return rad * 180.0 / kPi; }

}  // namespace searoute
