#include "searoute/ga.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace searoute {

std::string_view to_string(CrossoverKind k) {
    return k == CrossoverKind::short_distance ? "short" : "long";
}

CrossoverKind parse_crossover_kind(std::string_view name) {
    if (name == "short") return CrossoverKind::short_distance;
    if (name == "long") return CrossoverKind::long_distance;
    throw std::invalid_argument("unknown crossover operator '" + std::string(name) + "'");
}

void GaConfig::validate() const {
    if (population_size == 0) throw std::invalid_argument("population size must be positive");
    if (elite_count == 0 || elite_count > population_size) {
        throw std::invalid_argument("elite count must be in [1, population size]");
    }
    if (!(mutation_prob >= 0.0 && mutation_prob <= 1.0)) {
        throw std::invalid_argument("mutation probability must be in [0, 1]");
    }
    if (!(crossover_prob >= 0.0 && crossover_prob <= 1.0)) {
        throw std::invalid_argument("crossover probability must be in [0, 1]");
    }
    if (replenish_threshold > population_size) {
        throw std::invalid_argument("replenish threshold must not exceed population size");
    }
    if (planner_retries == 0) throw std::invalid_argument("planner retries must be at least 1");
}

const Individual* Population::best() const {
    const Individual* best = nullptr;
    for (const auto& ind : individuals) {
        if (!best || ind.cost < best->cost) best = &ind;
    }
    return best;
}

CostSample summarize(const Population& pop) {
    CostSample s;
    double sum = 0.0;
    std::size_t finite = 0;
    for (const auto& ind : pop.individuals) {
        s.best = std::min(s.best, ind.cost);
        if (std::isfinite(ind.cost)) {
            sum += ind.cost;
            ++finite;
        }
    }
    if (finite > 0) s.mean = sum / static_cast<double>(finite);
    return s;
}

namespace {

Point sample_in_disc(Point center, double radius, RandomStream& rng) {
    return sample_in_annular_sector(center, 0.0, radius, 0.0, 2.0 * kPi, rng);
}

Route retimed(Route route, const ShipSpec& ship) {
    try_recompute_timing(route, ship);
    return route;
}

}  // namespace

Route mutate_insert(const Route& route, const ShipSpec& ship, double radius, RandomStream& rng) {
    const std::size_t n = route.size();
    if (n < 2) return route;
    const Point anchor = route.waypoints[rng.index(n)].position;
    const std::size_t edge = rng.index(n - 1);
    Route out = route;
    out.waypoints.insert(out.waypoints.begin() + static_cast<std::ptrdiff_t>(edge + 1),
                         Waypoint{.position = sample_in_disc(anchor, radius, rng),
                                  .speed = ship.service_speed});
    return retimed(std::move(out), ship);
}

Route mutate_move(const Route& route, const ShipSpec& ship, double radius, RandomStream& rng) {
    if (route.size() < 3) return route;
    const std::size_t k = 1 + rng.index(route.size() - 2);
    Route out = route;
    out.waypoints[k].position = sample_in_disc(route.waypoints[k].position, radius, rng);
    return retimed(std::move(out), ship);
}

Route mutate_delete(const Route& route, const ShipSpec& ship, RandomStream& rng) {
    if (route.size() < 3) return route;
    const std::size_t k = 1 + rng.index(route.size() - 2);
    Route out = route;
    out.waypoints.erase(out.waypoints.begin() + static_cast<std::ptrdiff_t>(k));
    return retimed(std::move(out), ship);
}

Mutation mutate(const Route& route, const ShipSpec& ship, double radius, RandomStream& rng) {
    switch (rng.index(3)) {
        case 0: return {mutate_insert(route, ship, radius, rng), MutationKind::insert};
        case 1: return {mutate_move(route, ship, radius, rng), MutationKind::move};
        default: return {mutate_delete(route, ship, rng), MutationKind::remove};
    }
}

std::optional<std::pair<std::size_t, std::size_t>> closest_interior_pair(const Route& a, const Route& b) {
    if (a.size() < 3 || b.size() < 3) return std::nullopt;
    std::pair<std::size_t, std::size_t> best{1, 1};
    double best_d2 = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i + 1 < a.size(); ++i) {
        const Point p = a.waypoints[i].position;
        for (std::size_t j = 1; j + 1 < b.size(); ++j) {
            const Point q = b.waypoints[j].position;
            const double d2 = (p.x - q.x) * (p.x - q.x) + (p.y - q.y) * (p.y - q.y);
            if (d2 < best_d2) {
                best_d2 = d2;
                best = {i, j};
            }
        }
    }
    return best;
}

Offspring exchange_tails(const Route& a, std::size_t i, const Route& b, std::size_t j,
                         const ShipSpec& ship) {
    auto splice = [](const Route& head, std::size_t h, const Route& tail, std::size_t t) {
        Route out;
        out.waypoints.reserve(h + 1 + tail.size() - t - 1);
        out.waypoints.insert(out.waypoints.end(), head.waypoints.begin(),
                             head.waypoints.begin() + static_cast<std::ptrdiff_t>(h + 1));
        out.waypoints.insert(out.waypoints.end(),
                             tail.waypoints.begin() + static_cast<std::ptrdiff_t>(t + 1),
                             tail.waypoints.end());
        return out;
    };
    return {retimed(splice(a, i, b, j), ship), retimed(splice(b, j, a, i), ship)};
}

std::optional<Offspring> crossover_short(const Route& a, const Route& b, const ShipSpec& ship) {
    const auto pair = closest_interior_pair(a, b);
    if (!pair) return std::nullopt;
    return exchange_tails(a, pair->first, b, pair->second, ship);
}

std::optional<Offspring> crossover_long(const Route& a, const Route& b, const ShipSpec& ship,
                                        RandomStream& rng) {
    if (a.size() < 3 || b.size() < 3) return std::nullopt;
    const std::size_t i = 1 + rng.index(a.size() - 2);
    const std::size_t j = 1 + rng.index(b.size() - 2);
    return exchange_tails(a, i, b, j, ship);
}

std::optional<Offspring> crossover(CrossoverKind kind, const Route& a, const Route& b,
                                   const ShipSpec& ship, RandomStream& rng) {
    return kind == CrossoverKind::short_distance ? crossover_short(a, b, ship)
                                                 : crossover_long(a, b, ship, rng);
}

namespace {

struct Evolution {
    const GaConfig& cfg;  // planner part resolved
    SafetyChecker& checker;
    Point start;
    Point dest;
    double radius;
};

std::optional<Route> plan_with_retries(const Evolution& ev, RandomStream& rng) {
    // Planner edges are fresh random samples, so caching them only costs memory.
    SafetyChecker checker(ev.checker.ship(), ev.checker.grid());
    for (std::size_t attempt = 0; attempt < ev.cfg.planner_retries; ++attempt) {
        auto result = plan_route(ev.start, ev.dest, ev.cfg.planner, checker, rng);
        if (result.ok()) return std::move(*result.route);
    }
    return std::nullopt;
}

void shuffle(std::vector<std::size_t>& v, RandomStream& rng) {
    for (std::size_t k = v.size(); k > 1; --k) std::swap(v[k - 1], v[rng.index(k)]);
}

// Returns the mean cost of the individuals that survived selection.
double evolve_in_place(Population& pop, const Evolution& ev, RandomStream& rng) {
    const GaConfig& cfg = ev.cfg;
    const ShipSpec& ship = ev.checker.ship();
    struct Entry {
        Individual ind;
        bool evaluated;
    };
    std::vector<Entry> pool;
    pool.reserve(pop.individuals.size() * 3);
    for (auto& ind : pop.individuals) pool.push_back({std::move(ind), true});
    const std::size_t parents = pool.size();

    // Crossover: offspring join the pool, parents stay.
    std::vector<std::size_t> marked;
    for (std::size_t k = 0; k < parents; ++k) {
        if (rng.chance(cfg.crossover_prob)) marked.push_back(k);
    }
    shuffle(marked, rng);
    for (std::size_t k = 0; k + 1 < marked.size(); k += 2) {
        auto off = crossover(cfg.crossover, pool[marked[k]].ind.route, pool[marked[k + 1]].ind.route,
                             ship, rng);
        if (!off) continue;
        pool.push_back({{std::move(off->first), kUnsafeCost}, false});
        pool.push_back({{std::move(off->second), kUnsafeCost}, false});
    }

    // Mutation: a survivor of the last selection keeps its unmutated self in
    // the pool next to the mutant; fresh offspring are mutated in place.
    const std::size_t before_mutation = pool.size();
    for (std::size_t k = 0; k < before_mutation; ++k) {
        if (!rng.chance(cfg.mutation_prob)) continue;
        Route mutated = mutate(pool[k].ind.route, ship, ev.radius, rng).route;
        if (k < parents) {
            pool.push_back({{std::move(mutated), kUnsafeCost}, false});
        } else {
            pool[k] = {{std::move(mutated), kUnsafeCost}, false};
        }
    }

    for (auto& e : pool) {
        if (!e.evaluated) e.ind.cost = ev.checker.route_cost(e.ind.route);
    }

    std::stable_sort(pool.begin(), pool.end(),
                     [](const Entry& a, const Entry& b) { return a.ind.cost < b.ind.cost; });
    pool.resize(std::min(pool.size(), cfg.elite_count));

    pop.individuals.clear();
    for (auto& e : pool) pop.individuals.push_back(std::move(e.ind));
    const double selected_mean = summarize(pop).mean;

    if (pop.individuals.size() < cfg.effective_replenish_threshold()) {
        const std::size_t survivors = pop.individuals.size();
        while (pop.individuals.size() < cfg.population_size) {
            if (auto route = plan_with_retries(ev, rng)) {
                const double cost = ev.checker.route_cost(*route);
                pop.individuals.push_back({std::move(*route), cost});
            } else if (survivors > 0) {
                pop.individuals.push_back(pop.individuals[rng.index(survivors)]);
            } else {
                throw GaError("planner failed and no individual survived selection");
            }
        }
    }
    ++pop.generation_index;
    return selected_mean;
}

GaConfig resolved(GaConfig cfg, const ShipSpec& ship, const DepthGrid& grid) {
    cfg.validate();
    cfg.planner = resolve_planner_config(cfg.planner, ship, grid);
    return cfg;
}

}  // namespace

GeneticAlgorithm::GeneticAlgorithm(const GaConfig& cfg, const ShipSpec& ship, const DepthGrid& grid,
                                   Point start, Point dest)
    : cfg_(resolved(cfg, ship, grid)),
      ship_(ship),
      checker_(ship, grid, /*cache_edges=*/true),
      start_(start),
      dest_(dest),
      rng_(cfg.seed) {}

double GeneticAlgorithm::mutation_radius() const { return *cfg_.planner.policy.base_radius; }

std::optional<Route> GeneticAlgorithm::plan_with_retries() {
    return searoute::plan_with_retries({cfg_, checker_, start_, dest_, mutation_radius()}, rng_);
}

void GeneticAlgorithm::initialize() {
    population_ = {};
    history_.clear();
    std::vector<std::size_t> failed;
    for (std::size_t k = 0; k < cfg_.population_size; ++k) {
        if (auto route = plan_with_retries()) {
            const double cost = checker_.route_cost(*route);
            population_.individuals.push_back({std::move(*route), cost});
        } else {
            failed.push_back(k);
        }
    }
    if (population_.individuals.empty()) {
        throw GaError("planner could not build any route between the endpoints");
    }
    const std::size_t built = population_.individuals.size();
    for (std::size_t k = 0; k < failed.size(); ++k) {
        population_.individuals.push_back(population_.individuals[rng_.index(built)]);
    }
    history_.push_back(summarize(population_));
}

void GeneticAlgorithm::evolve() {
    const double selected_mean =
        evolve_in_place(population_, {cfg_, checker_, start_, dest_, mutation_radius()}, rng_);
    history_.push_back({summarize(population_).best, selected_mean});
}

void GeneticAlgorithm::add_individuals(std::vector<Route> routes) {
    for (auto& r : routes) {
        const double cost = checker_.route_cost(r);
        population_.individuals.push_back({std::move(r), cost});
    }
}

Population evolve_generation(Population pop, const GaConfig& cfg, const ShipSpec& ship,
                             const DepthGrid& grid, RandomStream& rng) {
    if (pop.individuals.empty()) throw GaError("cannot evolve an empty population");
    const GaConfig rc = resolved(cfg, ship, grid);
    SafetyChecker checker(ship, grid, /*cache_edges=*/true);
    const Route& any = pop.individuals.front().route;
    evolve_in_place(pop, {rc, checker, any.start(), any.destination(), *rc.planner.policy.base_radius},
                    rng);
    return pop;
}

GaResult run(const GaConfig& cfg, const ShipSpec& ship, const DepthGrid& grid, Point start, Point dest) {
    GeneticAlgorithm ga(cfg, ship, grid, start, dest);
    GaResult result;
    try {
        ga.initialize();
        for (std::size_t g = 0; g < cfg.generations; ++g) ga.evolve();
    } catch (const GaError&) {
        result.history = ga.history();
        return result;
    }
    result.history = ga.history();
    const Individual* best = ga.population().best();
    if (best && std::isfinite(best->cost)) {
        result.best = best->route;
        result.best_cost = best->cost;
    }
    return result;
}

}  // namespace searoute
