#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "searoute/depth_grid.hpp"
#include "searoute/random.hpp"
#include "searoute/ship_route.hpp"

namespace searoute {

/// How the radius of the sampling domain around the route's last point
/// evolves from step to step.
enum class DomainKind { constant, growing, random, min_radius };

std::string_view to_string(DomainKind k);
DomainKind parse_domain_kind(std::string_view name);

struct DomainPolicy {
    DomainKind kind = DomainKind::constant;
    std::optional<double> base_radius;  // unset: ship.length * ship.domain_radius_factor
    double growth_rate = 0.1;           // growing: fraction of base added per step
    std::optional<std::pair<double, double>> radius_bounds;  // random; unset: [0.5, 1.5] * base
    std::optional<double> min_radius;                        // min_radius; unset: 0.4 * base
};

struct PlannerConfig {
    DomainPolicy policy;
    std::size_t sectors = 8;
    std::size_t points_per_sector = 4;
    std::size_t max_points = 0;  // 0: ceil(4 * map diagonal / base radius)
    double xi = 1.0;
    double psi = 1.0;
    std::uint64_t seed = 0;
};

/// Fills every unset field from the ship and map and validates the result.
/// Throws std::invalid_argument on inconsistent settings.
PlannerConfig resolve_planner_config(PlannerConfig cfg, const ShipSpec& ship, const DepthGrid& grid);

double base_radius(const DomainPolicy& policy, const ShipSpec& ship);

/// Radius of the domain at `step_index` (0 for the first appended point).
double domain_radius(const DomainPolicy& policy, std::size_t step_index, const ShipSpec& ship,
                     RandomStream& rng);

/// sectors * points_per_sector candidates, exactly points_per_sector in each
/// equal-angle sector, each drawn uniformly by area. Sector s covers
/// [2*pi*s/sectors, 2*pi*(s+1)/sectors). The inner radius is the policy's
/// min_radius for the min-radius policy, 0 otherwise.
std::vector<Point> generate_candidates(Point last, double radius, const PlannerConfig& cfg,
                                       RandomStream& rng);

/// FF = -xi * d_td / d_cd + psi * theta / 180, where d_td is the candidate's
/// distance to the destination, d_cd the last point's, and theta the vertex
/// angle at `last` between the incoming edge and the edge to the candidate
/// (180 on the first step). Empty when the candidate coincides with `last`.
std::optional<double> point_fitness(Point candidate, Point last, std::optional<Point> before_last,
                                    Point dest, const PlannerConfig& cfg);

enum class PlanFailure { none, isolated, budget_exhausted, no_safe_candidates };

std::string_view to_string(PlanFailure f);

struct PlanResult {
    std::optional<Route> route;
    PlanFailure failure = PlanFailure::none;

    bool ok() const { return route.has_value(); }
};

/// Builds one safe route from `start` to `dest` by repeatedly appending the
/// best-scoring safe candidate from the domain around the last point.
PlanResult plan_route(Point start, Point dest, const PlannerConfig& cfg, SafetyChecker& checker,
                      RandomStream& rng);

/// Convenience overload: resolves `cfg` and seeds a fresh stream from cfg.seed.
PlanResult plan_route(Point start, Point dest, const ShipSpec& ship, const DepthGrid& grid,
                      const PlannerConfig& cfg);

}  // namespace searoute
