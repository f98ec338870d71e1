#include "searoute/planner.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace searoute {

std::string_view to_string(DomainKind k) {
    switch (k) {
        case DomainKind::constant: return "constant";
        case DomainKind::growing: return "growing";
        case DomainKind::random: return "random";
        case DomainKind::min_radius: return "min-radius";
    }
    return "unknown";
}

DomainKind parse_domain_kind(std::string_view name) {
    if (name == "constant") return DomainKind::constant;
    if (name == "growing") return DomainKind::growing;
    if (name == "random") return DomainKind::random;
    if (name == "min-radius" || name == "min_radius") return DomainKind::min_radius;
    throw std::invalid_argument("unknown domain policy '" + std::string(name) + "'");
}

std::string_view to_string(PlanFailure f) {
    switch (f) {
        case PlanFailure::none: return "none";
        case PlanFailure::isolated: return "isolated";
        case PlanFailure::budget_exhausted: return "budget exhausted";
        case PlanFailure::no_safe_candidates: return "no safe candidates";
    }
    return "unknown";
}

double base_radius(const DomainPolicy& policy, const ShipSpec& ship) {
    return policy.base_radius.value_or(ship.length * ship.domain_radius_factor);
}

PlannerConfig resolve_planner_config(PlannerConfig cfg, const ShipSpec& ship, const DepthGrid& grid) {
    auto& p = cfg.policy;
    const double base = base_radius(p, ship);
    if (!(base > 0.0)) throw std::invalid_argument("domain base radius must be positive");
    p.base_radius = base;
    if (!p.radius_bounds) p.radius_bounds = std::pair{0.5 * base, 1.5 * base};
    if (!p.min_radius) p.min_radius = 0.4 * base;
    if (p.kind == DomainKind::growing && !(p.growth_rate >= 0.0)) {
        throw std::invalid_argument("growth rate must be non-negative");
    }
    if (p.kind == DomainKind::random &&
        !(p.radius_bounds->first > 0.0 && p.radius_bounds->second >= p.radius_bounds->first)) {
        throw std::invalid_argument("random radius bounds must be positive and ordered");
    }
    if (p.kind == DomainKind::min_radius && !(*p.min_radius > 0.0 && *p.min_radius < base)) {
        throw std::invalid_argument("min radius must lie in (0, base radius)");
    }
    if (cfg.sectors < 1 || cfg.points_per_sector < 1) {
        throw std::invalid_argument("sectors and points per sector must be at least 1");
    }
    if (!(cfg.xi >= 0.0) || !(cfg.psi >= 0.0)) throw std::invalid_argument("xi and psi must be >= 0");
    if (cfg.max_points == 0) {
        const double diagonal = std::hypot(grid.extent_x(), grid.extent_y());
        cfg.max_points = static_cast<std::size_t>(std::ceil(4.0 * diagonal / base));
    }
    cfg.max_points = std::max<std::size_t>(cfg.max_points, 2);
    return cfg;
}

double domain_radius(const DomainPolicy& policy, std::size_t step_index, const ShipSpec& ship,
                     RandomStream& rng) {
    const double base = base_radius(policy, ship);
    switch (policy.kind) {
        case DomainKind::constant:
        case DomainKind::min_radius:
            return base;
        case DomainKind::growing:
            return std::min(base * (1.0 + policy.growth_rate * static_cast<double>(step_index)), 3.0 * base);
        case DomainKind::random: {
            const auto [lo, hi] = policy.radius_bounds.value_or(std::pair{0.5 * base, 1.5 * base});
            return lo == hi ? lo : rng.uniform(lo, hi);
        }
    }
    return base;
}

std::vector<Point> generate_candidates(Point last, double radius, const PlannerConfig& cfg,
                                       RandomStream& rng) {
    if (!(radius > 0.0)) throw std::invalid_argument("domain radius must be positive");
    double inner = 0.0;
    if (cfg.policy.kind == DomainKind::min_radius) {
        inner = std::min(cfg.policy.min_radius.value_or(0.0), radius);
        if (inner >= radius) inner = 0.0;
    }
    const double width = 2.0 * kPi / static_cast<double>(cfg.sectors);
    std::vector<Point> out;
    out.reserve(cfg.sectors * cfg.points_per_sector);
    for (std::size_t s = 0; s < cfg.sectors; ++s) {
        const double lo = width * static_cast<double>(s);
        for (std::size_t k = 0; k < cfg.points_per_sector; ++k) {
            out.push_back(sample_in_annular_sector(last, inner, radius, lo, lo + width, rng));
        }
    }
    return out;
}

std::optional<double> point_fitness(Point candidate, Point last, std::optional<Point> before_last,
                                    Point dest, const PlannerConfig& cfg) {
    if (candidate == last) return std::nullopt;
    const double d_cd = distance(last, dest);
    if (!(d_cd > 0.0)) return std::nullopt;
    const double d_td = distance(candidate, dest);
    double theta = 180.0;
    if (before_last) {
        const auto angle = vertex_angle(*before_last, last, candidate);
        if (!angle) return std::nullopt;
        theta = *angle;
    }
    return -cfg.xi * (d_td / d_cd) + cfg.psi * (theta / 180.0);
}

namespace {

// Best safe candidate of one sampling round, if any.
std::optional<Point> pick_candidate(Point last, std::optional<Point> before_last, Point dest,
                                    double radius, const PlannerConfig& cfg, SafetyChecker& checker,
                                    RandomStream& rng) {
    const auto candidates = generate_candidates(last, radius, cfg, rng);
    struct Scored {
        double fitness;
        double to_dest;
        std::size_t order;
    };
    std::vector<Scored> scored;
    scored.reserve(candidates.size());
    for (std::size_t k = 0; k < candidates.size(); ++k) {
        if (auto ff = point_fitness(candidates[k], last, before_last, dest, cfg)) {
            scored.push_back({*ff, distance(candidates[k], dest), k});
        }
    }
    const auto better = [](const Scored& a, const Scored& b) {
        if (a.fitness != b.fitness) return a.fitness > b.fitness;
        if (a.to_dest != b.to_dest) return a.to_dest < b.to_dest;
        return a.order < b.order;
    };
    // Checking in rank order selects the same point as filtering first. The
    // top candidate is usually safe, so select rather than sort.
    for (auto end = scored.end(); end != scored.begin(); --end) {
        auto top = std::min_element(scored.begin(), end, better);
        if (checker.edge_is_safe(last, candidates[top->order])) return candidates[top->order];
        std::iter_swap(top, end - 1);
    }
    return std::nullopt;
}

}  // namespace

PlanResult plan_route(Point start, Point dest, const PlannerConfig& raw_cfg, SafetyChecker& checker,
                      RandomStream& rng) {
    if (start == dest) throw std::invalid_argument("start and destination coincide");
    const ShipSpec& ship = checker.ship();
    const PlannerConfig cfg = resolve_planner_config(raw_cfg, ship, checker.grid());

    const double heading = bearing(start, dest);
    if (!checker.position_is_safe(start, heading) || !checker.position_is_safe(dest, heading)) {
        return {std::nullopt, PlanFailure::isolated};
    }

    std::vector<Point> points{start};
    for (std::size_t step = 0;; ++step) {
        const Point last = points.back();
        const double radius = domain_radius(cfg.policy, step, ship, rng);
        if (distance(last, dest) <= radius && checker.edge_is_safe(last, dest)) {
            points.push_back(dest);
            break;
        }
        // One slot must stay free for the destination.
        if (points.size() + 2 > cfg.max_points) return {std::nullopt, PlanFailure::budget_exhausted};

        std::optional<Point> before_last;
        if (points.size() >= 2) before_last = points[points.size() - 2];
        auto next = pick_candidate(last, before_last, dest, radius, cfg, checker, rng);
        if (!next) next = pick_candidate(last, before_last, dest, radius, cfg, checker, rng);
        if (!next) return {std::nullopt, PlanFailure::no_safe_candidates};
        points.push_back(*next);
    }

    Route route = Route::from_points(points);
    for (auto& w : route.waypoints) w.speed = ship.service_speed;
    route.waypoints.back().speed = 0.0;
    return {recompute_timing(std::move(route), ship), PlanFailure::none};
}

PlanResult plan_route(Point start, Point dest, const ShipSpec& ship, const DepthGrid& grid,
                      const PlannerConfig& cfg) {
    SafetyChecker checker(ship, grid);
    RandomStream rng(cfg.seed);
    return plan_route(start, dest, cfg, checker, rng);
}

}  // namespace searoute
