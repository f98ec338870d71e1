#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

#include "searoute/planner.hpp"
#include "searoute/ship_route.hpp"

namespace searoute {

enum class CrossoverKind { short_distance, long_distance };

std::string_view to_string(CrossoverKind k);
CrossoverKind parse_crossover_kind(std::string_view name);

struct GaConfig {
    std::size_t population_size = 20;
    std::size_t elite_count = 10;
    double mutation_prob = 0.1;
    double crossover_prob = 0.5;
    std::size_t replenish_threshold = 0;  // 0: population_size (always top up)
    std::size_t generations = 300;
    CrossoverKind crossover = CrossoverKind::short_distance;
    PlannerConfig planner;
    std::uint64_t seed = 0;
    std::size_t planner_retries = 3;  // planner attempts per replenished slot

    std::size_t effective_replenish_threshold() const {
        return replenish_threshold == 0 ? population_size : replenish_threshold;
    }
    /// Throws std::invalid_argument when a field is out of range.
    void validate() const;
};

class GaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Individual {
    Route route;
    double cost = kUnsafeCost;
};

struct Population {
    std::vector<Individual> individuals;
    std::size_t generation_index = 0;

    /// Lowest-cost individual (first one on ties); nullptr when empty.
    const Individual* best() const;
};

/// Per-generation statistics. `mean` averages the finite costs only and is
/// kUnsafeCost when the population has no safe route.
struct CostSample {
    double best = kUnsafeCost;
    double mean = kUnsafeCost;
};

CostSample summarize(const Population& pop);

// Mutations. Endpoints never move; timing is recomputed when the result is
// structurally valid. Results may be unsafe; the cost function rejects them.
Route mutate_insert(const Route& route, const ShipSpec& ship, double radius, RandomStream& rng);
Route mutate_move(const Route& route, const ShipSpec& ship, double radius, RandomStream& rng);
Route mutate_delete(const Route& route, const ShipSpec& ship, RandomStream& rng);

enum class MutationKind { insert, move, remove };

struct Mutation {
    Route route;
    MutationKind kind;
};

/// Applies one of the three mutations with equal probability; a variant
/// whose precondition fails returns the route unchanged.
Mutation mutate(const Route& route, const ShipSpec& ship, double radius, RandomStream& rng);

using Offspring = std::pair<Route, Route>;

/// Interior indices (i in a, j in b) of the closest pair of interior
/// waypoints; ties go to the smallest i, then the smallest j. Empty when
/// either route has no interior waypoint.
std::optional<std::pair<std::size_t, std::size_t>> closest_interior_pair(const Route& a, const Route& b);

/// a[0..i] + b[j+1..] and b[0..j] + a[i+1..], with timing recomputed.
Offspring exchange_tails(const Route& a, std::size_t i, const Route& b, std::size_t j,
                         const ShipSpec& ship);

std::optional<Offspring> crossover_short(const Route& a, const Route& b, const ShipSpec& ship);
std::optional<Offspring> crossover_long(const Route& a, const Route& b, const ShipSpec& ship,
                                        RandomStream& rng);
std::optional<Offspring> crossover(CrossoverKind kind, const Route& a, const Route& b,
                                   const ShipSpec& ship, RandomStream& rng);

/// One GA instance: owns its population, random stream and edge cache.
class GeneticAlgorithm {
public:
    GeneticAlgorithm(const GaConfig& cfg, const ShipSpec& ship, const DepthGrid& grid, Point start,
                     Point dest);

    /// Seeds the population with planner routes and records generation 0.
    /// Throws GaError when the planner cannot build a single route.
    void initialize();

    /// Runs one generation and records its statistics: the best cost in the
    /// population and the mean cost of the individuals that survived
    /// selection. Freshly planned replacements are left out of the mean;
    /// they are redrawn every generation and would mostly measure planner
    /// noise.
    void evolve();

    /// Appends routes (costs evaluated) to the current population.
    void add_individuals(std::vector<Route> routes);

    const Population& population() const { return population_; }
    const std::vector<CostSample>& history() const { return history_; }
    const GaConfig& config() const { return cfg_; }
    RandomStream& rng() { return rng_; }
    double mutation_radius() const;

private:
    std::optional<Route> plan_with_retries();

    GaConfig cfg_;
    const ShipSpec& ship_;
    SafetyChecker checker_;
    Point start_;
    Point dest_;
    RandomStream rng_;
    Population population_;
    std::vector<CostSample> history_;
};

/// One generation: crossover, mutation, evaluation, truncation selection of
/// the elite_count best, then planner replenishment to population_size.
/// Endpoints are taken from the population's routes.
Population evolve_generation(Population pop, const GaConfig& cfg, const ShipSpec& ship,
                             const DepthGrid& grid, RandomStream& rng);

struct GaResult {
    std::optional<Route> best;  // empty when no safe route was ever found
    double best_cost = kUnsafeCost;
    std::vector<CostSample> history;  // generations + 1 samples
};

GaResult run(const GaConfig& cfg, const ShipSpec& ship, const DepthGrid& grid, Point start, Point dest);

}  // namespace searoute
