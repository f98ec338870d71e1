#include "searoute/islands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <memory>
#include <thread>

namespace searoute {

void IslandSetConfig::validate() const {
    if (islands.empty()) throw std::invalid_argument("island set needs at least one island");
    if (migration_epoch == 0) throw std::invalid_argument("migration epoch must be at least 1");
    for (const auto& c : islands) c.validate();
}

IslandSetConfig make_island_set(const GaConfig& base, std::size_t count, std::uint64_t master_seed) {
    if (count == 0) count = std::max(1u, std::thread::hardware_concurrency());
    static constexpr DomainKind kCycle[] = {DomainKind::constant, DomainKind::growing, DomainKind::random,
                                            DomainKind::min_radius};
    IslandSetConfig set;
    set.shared_generations = base.generations;
    set.migration_pairs_per_island = std::max<std::size_t>(1, base.elite_count / 2);
    set.migration_seed = derive_seed(master_seed, 0xC0FFEE);
    for (std::size_t k = 0; k < count; ++k) {
        GaConfig c = base;
        c.seed = derive_seed(master_seed, k);
        c.planner.policy.kind = kCycle[k % 4];
        set.islands.push_back(c);
    }
    return set;
}

namespace {

std::vector<Route> cross_populations(const Population& first, const Population& donor, CrossoverKind kind,
                                     std::size_t pairs, const ShipSpec& ship, RandomStream& rng) {
    std::vector<Route> offspring;
    if (first.individuals.empty() || donor.individuals.empty()) return offspring;
    for (std::size_t p = 0; p < pairs; ++p) {
        const Route& a = first.individuals[rng.index(first.individuals.size())].route;
        const Route& b = donor.individuals[rng.index(donor.individuals.size())].route;
        if (auto off = crossover(kind, a, b, ship, rng)) {
            offspring.push_back(std::move(off->first));
            offspring.push_back(std::move(off->second));
        }
    }
    return offspring;
}

// Runs task(k) for every island index, on up to `threads` workers.
template <typename Task>
void for_each_island(std::size_t islands, std::size_t threads, Task&& task) {
    const std::size_t workers = std::min(islands, threads == 0 ? islands : threads);
    if (workers <= 1) {
        for (std::size_t k = 0; k < islands; ++k) task(k);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(islands);
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t k = next++; k < islands; k = next++) {
                    try {
                        task(k);
                    } catch (...) {
                        errors[k] = std::current_exception();
                    }
                }
            });
        }
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace

Population inter_island_crossover(const Population& first, const Population& donor,
                                  const GaConfig& first_cfg, std::size_t pairs, const ShipSpec& ship,
                                  const DepthGrid& grid, RandomStream& rng) {
    if (first.individuals.empty() || donor.individuals.empty()) {
        throw std::invalid_argument("inter-island crossover needs two non-empty populations");
    }
    Population out = first;
    SafetyChecker checker(ship, grid);
    for (auto& r : cross_populations(first, donor, first_cfg.crossover, pairs, ship, rng)) {
        const double cost = checker.route_cost(r);
        out.individuals.push_back({std::move(r), cost});
    }
    return out;
}

IslandsResult run_islands(const IslandSetConfig& cfg, const ShipSpec& ship, const DepthGrid& grid,
                          Point start, Point dest) {
    cfg.validate();
    const std::size_t n = cfg.islands.size();
    std::vector<std::unique_ptr<GeneticAlgorithm>> islands;
    for (const auto& c : cfg.islands) {
        islands.push_back(std::make_unique<GeneticAlgorithm>(c, ship, grid, start, dest));
    }

    IslandsResult result;
    std::vector<char> alive(n, 1);
    for_each_island(n, cfg.threads, [&](std::size_t k) {
        try {
            islands[k]->initialize();
        } catch (const GaError&) {
            alive[k] = 0;
        }
    });

    RandomStream migration_rng(cfg.migration_seed);
    std::size_t done = 0;
    while (done < cfg.shared_generations) {
        // Islands run freely until the next epoch boundary, then synchronize.
        const std::size_t boundary = std::min(cfg.shared_generations, (done / cfg.migration_epoch + 1) * cfg.migration_epoch);
        for_each_island(n, cfg.threads, [&](std::size_t k) {
            if (!alive[k]) return;
            for (std::size_t g = done; g < boundary; ++g) islands[k]->evolve();
        });
        done = boundary;
        if (done >= cfg.shared_generations || n < 2) continue;

        std::vector<Population> snapshot;
        for (const auto& island : islands) snapshot.push_back(island->population());
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t j = migration_rng.index(n - 1);
            if (j >= i) ++j;
            if (!alive[i] || !alive[j]) continue;
            islands[i]->add_individuals(cross_populations(snapshot[i], snapshot[j],
                                                          islands[i]->config().crossover,
                                                          cfg.migration_pairs_per_island, ship,
                                                          migration_rng));
        }
        result.migration_generations.push_back(done);
    }

    const CostSample dead;
    for (std::size_t k = 0; k < n; ++k) {
        if (alive[k]) {
            result.island_histories.push_back(islands[k]->history());
        } else {
            result.island_histories.emplace_back(cfg.shared_generations + 1, dead);
        }
        const Individual* best = islands[k]->population().best();
        if (alive[k] && best && best->cost < result.best_cost) {
            result.best_cost = best->cost;
            result.best = best->route;
        }
    }
    if (!std::isfinite(result.best_cost)) result.best.reset();

    for (std::size_t g = 0; g <= cfg.shared_generations; ++g) {
        CostSample s;
        double sum = 0.0;
        std::size_t count = 0;
        for (const auto& h : result.island_histories) {
            s.best = std::min(s.best, h[g].best);
            if (std::isfinite(h[g].mean)) {
                sum += h[g].mean;
                ++count;
            }
        }
        if (count > 0) s.mean = sum / static_cast<double>(count);
        result.combined_history.push_back(s);
    }
    return result;
}

}  // namespace searoute
