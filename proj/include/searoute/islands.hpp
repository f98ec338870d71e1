#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "searoute/ga.hpp"

namespace searoute {

/// Several independently configured GA instances ("islands") that evolve
/// concurrently and periodically cross their populations.
struct IslandSetConfig {
    std::vector<GaConfig> islands;  // each island's own generations field is ignored
    std::size_t shared_generations = 300;
    std::size_t migration_epoch = 100;
    std::size_t migration_pairs_per_island = 5;
    std::uint64_t migration_seed = 0;
    /// Worker threads; 0 runs one thread per island.
    std::size_t threads = 0;

    void validate() const;
};

/// `count` islands (0: one per hardware thread) built from `base`, with seeds
/// derived from `master_seed` and domain policies cycling through constant,
/// growing, random and min-radius.
IslandSetConfig make_island_set(const GaConfig& base, std::size_t count, std::uint64_t master_seed);

/// Crosses `pairs` random (first, donor) individual pairs with the first
/// island's crossover operator and returns `first` with the offspring
/// appended (costs evaluated). The donor is read-only. Pairs whose routes
/// have no interior waypoint are skipped.
Population inter_island_crossover(const Population& first, const Population& donor,
                                  const GaConfig& first_cfg, std::size_t pairs, const ShipSpec& ship,
                                  const DepthGrid& grid, RandomStream& rng);

struct IslandsResult {
    std::optional<Route> best;  // empty when no island found a safe route
    double best_cost = kUnsafeCost;
    std::vector<std::vector<CostSample>> island_histories;  // shared_generations + 1 each
    /// Best over islands; mean is the average of the island means.
    std::vector<CostSample> combined_history;
    std::vector<std::size_t> migration_generations;
};

IslandsResult run_islands(const IslandSetConfig& cfg, const ShipSpec& ship, const DepthGrid& grid,
                          Point start, Point dest);

}  // namespace searoute
