#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "searoute/depth_grid.hpp"
#include "searoute/geometry.hpp"

namespace searoute {

struct ShipSpec {
    double length = 30.0;
    double beam = 6.0;
    double draught = 4.0;
    double service_speed = 5.0;  // m/s
    double footprint_factor = 1.25;
    std::optional<double> depth_clearance;  // unset: max(0.5 m, 0.1 * draught)
    double domain_radius_factor = 5.0;

    double clearance() const;
    /// Water must be strictly deeper than this everywhere under the footprint.
    double required_depth() const { return draught + clearance(); }
    double footprint_length() const { return length * footprint_factor; }
    double footprint_width() const { return beam * footprint_factor; }

    /// Throws std::invalid_argument when a field is out of range.
    void validate() const;
};

struct Waypoint {
    Point position;
    double arrival_time = 0.0;
    double departure_time = 0.0;
    double speed = 0.0;  // outgoing edge; 0 means "use the ship's service speed"
    double turn_radius = 0.0;  // informational only
};

class RouteError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Waypoint chain from start (front) to destination (back).
struct Route {
    std::vector<Waypoint> waypoints;

    std::size_t size() const { return waypoints.size(); }
    const Point& start() const { return waypoints.front().position; }
    const Point& destination() const { return waypoints.back().position; }
    double arrival_time() const { return waypoints.back().arrival_time; }

    /// Sum of edge lengths.
    double length() const;
    std::vector<Point> positions() const;

    static Route from_points(std::span<const Point> points);
};

/// Forward timing pass over the whole route. Unset speeds take the ship's
/// service speed; departure equals arrival. Throws RouteError for fewer than
/// two waypoints or a zero-length edge.
Route recompute_timing(Route route, const ShipSpec& ship, double start_time = 0.0);

/// Same as recompute_timing but reports structural problems by returning
/// false instead of throwing (route is left with unset timing).
bool try_recompute_timing(Route& route, const ShipSpec& ship, double start_time = 0.0);

inline constexpr double kUnsafeCost = std::numeric_limits<double>::infinity();

/// Depth checks for one ship on one map. Optionally memoizes edge verdicts;
/// a caching checker must not be shared between threads.
class SafetyChecker {
public:
    SafetyChecker(const ShipSpec& ship, const DepthGrid& grid, bool cache_edges = false);

    const ShipSpec& ship() const { return ship_; }
    const DepthGrid& grid() const { return grid_; }

    double probe_spacing() const { return probe_spacing_; }
    double sample_step() const { return sample_step_; }

    /// The footprint rectangle at `center` pointing along `heading`.
    OrientedRect footprint(Point center, double heading) const;
    bool position_is_safe(Point center, double heading) const;

    bool edge_is_safe(Point a, Point b);
    bool route_is_safe(const Route& route);
    double route_cost(const Route& route);

    std::size_t cached_edges() const { return cache_.size(); }

private:
    bool check_edge(Point a, Point b) const;

    struct EdgeKey {
        std::uint64_t ax, ay, bx, by;
        friend bool operator==(const EdgeKey&, const EdgeKey&) = default;
    };
    struct EdgeKeyHash {
        std::size_t operator()(const EdgeKey& k) const noexcept;
    };

    ShipSpec ship_;
    const DepthGrid& grid_;
    double probe_spacing_;
    double sample_step_;
    bool cache_enabled_;
    std::unordered_map<EdgeKey, bool, EdgeKeyHash> cache_;
};

bool edge_is_safe(Point a, Point b, const ShipSpec& ship, const DepthGrid& grid);
bool route_is_safe(const Route& route, const ShipSpec& ship, const DepthGrid& grid);

/// Destination arrival time (seconds from 0) for a safe route, kUnsafeCost
/// otherwise. Structural problems also map to kUnsafeCost.
double route_cost(const Route& route, const ShipSpec& ship, const DepthGrid& grid);

std::string route_to_json(const Route& route);
/// Throws RouteError on malformed input.
Route route_from_json(const std::string& text);
void save_route(const Route& route, const std::filesystem::path& path);
Route load_route(const std::filesystem::path& path);

}  // namespace searoute
