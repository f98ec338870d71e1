#include "searoute/ship_route.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace searoute {

double ShipSpec::clearance() const {
    return depth_clearance.value_or(std::max(0.5, 0.1 * draught));
}

void ShipSpec::validate() const {
    if (!(length > 0.0)) throw std::invalid_argument("ship length must be positive");
    if (!(beam > 0.0)) throw std::invalid_argument("ship beam must be positive");
    if (!(draught > 0.0)) throw std::invalid_argument("ship draught must be positive");
    if (!(service_speed > 0.0)) throw std::invalid_argument("ship service speed must be positive");
    if (!(footprint_factor >= 1.0)) throw std::invalid_argument("footprint factor must be >= 1");
    if (!(clearance() >= 0.0)) throw std::invalid_argument("depth clearance must be >= 0");
    if (!(domain_radius_factor >= 1.0)) throw std::invalid_argument("domain radius factor must be >= 1");
}

double Route::length() const {
    double total = 0.0;
    for (std::size_t k = 1; k < waypoints.size(); ++k) {
        total += distance(waypoints[k - 1].position, waypoints[k].position);
    }
    return total;
}

std::vector<Point> Route::positions() const {
    std::vector<Point> out;
    out.reserve(waypoints.size());
    for (const auto& w : waypoints) out.push_back(w.position);
    return out;
}

Route Route::from_points(std::span<const Point> points) {
    Route r;
    r.waypoints.reserve(points.size());
    for (const Point& p : points) r.waypoints.push_back(Waypoint{.position = p});
    return r;
}

bool try_recompute_timing(Route& route, const ShipSpec& ship, double start_time) {
    auto& w = route.waypoints;
    if (w.size() < 2) return false;
    double t = start_time;
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (k > 0) {
            const double d = distance(w[k - 1].position, w[k].position);
            if (!(d > 0.0)) return false;
            t += d / w[k - 1].speed;
        }
        w[k].arrival_time = t;
        w[k].departure_time = t;
        if (k + 1 < w.size() && !(w[k].speed > 0.0)) w[k].speed = ship.service_speed;
    }
    return true;
}

Route recompute_timing(Route route, const ShipSpec& ship, double start_time) {
    if (route.size() < 2) throw RouteError("route needs at least two waypoints");
    if (!try_recompute_timing(route, ship, start_time)) {
        throw RouteError("route has a zero-length edge");
    }
    return route;
}

SafetyChecker::SafetyChecker(const ShipSpec& ship, const DepthGrid& grid, bool cache_edges)
    : ship_(ship),
      grid_(grid),
      probe_spacing_(std::min(ship.length / 2.0, grid.cell_size())),
      sample_step_(std::min(grid.cell_size(), ship.beam) / 2.0),
      cache_enabled_(cache_edges) {}

OrientedRect SafetyChecker::footprint(Point center, double heading) const {
    return {center, ship_.footprint_length(), ship_.footprint_width(), heading};
}

bool SafetyChecker::position_is_safe(Point center, double heading) const {
    return grid_.rect_deeper_than(footprint(center, heading), sample_step_, ship_.required_depth());
}

bool SafetyChecker::check_edge(Point a, Point b) const {
    const double len = distance(a, b);
    if (len == 0.0) return position_is_safe(a, 0.0);
    const double heading = bearing(a, b);
    const auto steps = static_cast<std::size_t>(std::ceil(len / probe_spacing_));
    // The far end is the likeliest place for a candidate edge to fail.
    if (!position_is_safe(b, heading)) return false;
    for (std::size_t k = 0; k < steps; ++k) {
        const double t = static_cast<double>(k) / static_cast<double>(steps);
        const Point c = a + (b - a) * t;
        if (!position_is_safe(c, heading)) return false;
    }
    return true;
}

std::size_t SafetyChecker::EdgeKeyHash::operator()(const EdgeKey& k) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (std::uint64_t v : {k.ax, k.ay, k.bx, k.by}) {
        h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
}

bool SafetyChecker::edge_is_safe(Point a, Point b) {
    if (!cache_enabled_) return check_edge(a, b);
    const EdgeKey key{std::bit_cast<std::uint64_t>(a.x), std::bit_cast<std::uint64_t>(a.y),
                      std::bit_cast<std::uint64_t>(b.x), std::bit_cast<std::uint64_t>(b.y)};
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    const bool safe = check_edge(a, b);
    if (cache_.size() >= (std::size_t{1} << 20)) cache_.clear();
    cache_.emplace(key, safe);
    return safe;
}

bool SafetyChecker::route_is_safe(const Route& route) {
    if (route.size() < 2) return false;
    for (std::size_t k = 1; k < route.size(); ++k) {
        if (!edge_is_safe(route.waypoints[k - 1].position, route.waypoints[k].position)) return false;
    }
    return true;
}

double SafetyChecker::route_cost(const Route& route) {
    const auto& w = route.waypoints;
    if (w.size() < 2) return kUnsafeCost;
    double t = 0.0;
    for (std::size_t k = 1; k < w.size(); ++k) {
        const double d = distance(w[k - 1].position, w[k].position);
        if (!(d > 0.0)) return kUnsafeCost;
        const double v = w[k - 1].speed > 0.0 ? w[k - 1].speed : ship_.service_speed;
        t += d / v;
    }
    return route_is_safe(route) ? t : kUnsafeCost;
}

bool edge_is_safe(Point a, Point b, const ShipSpec& ship, const DepthGrid& grid) {
    return SafetyChecker(ship, grid).edge_is_safe(a, b);
}

bool route_is_safe(const Route& route, const ShipSpec& ship, const DepthGrid& grid) {
    return SafetyChecker(ship, grid).route_is_safe(route);
}

double route_cost(const Route& route, const ShipSpec& ship, const DepthGrid& grid) {
    return SafetyChecker(ship, grid).route_cost(route);
}

std::string route_to_json(const Route& route) {
    nlohmann::ordered_json waypoints = nlohmann::ordered_json::array();
    for (const auto& w : route.waypoints) {
        waypoints.push_back({{"x", w.position.x},
                             {"y", w.position.y},
                             {"arrival_s", w.arrival_time},
                             {"departure_s", w.departure_time},
                             {"speed_mps", w.speed},
                             {"turn_radius_m", w.turn_radius}});
    }
    nlohmann::ordered_json doc = {{"format", "searoute-route/1"}, {"waypoints", waypoints}};
    return doc.dump(2) + "\n";
}

Route route_from_json(const std::string& text) {
    try {
        const auto doc = nlohmann::json::parse(text);
        if (doc.value("format", "") != "searoute-route/1") throw RouteError("not a searoute route file");
        Route route;
        for (const auto& w : doc.at("waypoints")) {
            route.waypoints.push_back(Waypoint{
                .position = {w.at("x").get<double>(), w.at("y").get<double>()},
                .arrival_time = w.at("arrival_s").get<double>(),
                .departure_time = w.at("departure_s").get<double>(),
                .speed = w.at("speed_mps").get<double>(),
                .turn_radius = w.at("turn_radius_m").get<double>(),
            });
        }
        if (route.size() < 2) throw RouteError("route needs at least two waypoints");
        return route;
    } catch (const nlohmann::json::exception& e) {
        throw RouteError(std::string("malformed route: ") + e.what());
    }
}

void save_route(const Route& route, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out << route_to_json(route);
    if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

Route load_route(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open route '" + path.string() + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return route_from_json(ss.str());
}

}  // namespace searoute
