#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "searoute/islands.hpp"

namespace searoute {

class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& source, std::size_t line, const std::string& what);
    const std::string& source() const { return source_; }
    std::size_t line() const { return line_; }

private:
    std::string source_;
    std::size_t line_;
};

/// Everything a planning run needs besides the map and the endpoints.
///
/// Text form: one `key = value` per line, `#` starts a comment. Keys:
///
///   start, dest (as `x,y`), seed, islands (count or `auto`), threads,
///   generations, epoch, migration_pairs, population, elites, mutation, crossover,
///   crossover_op (short|long), replenish_threshold, planner_retries,
///   policies (comma list, cycled over islands), sectors, points_per_sector,
///   max_points, xi, psi, base_radius, growth_rate, radius_lo, radius_hi,
///   min_radius, ship.length, ship.beam, ship.draught, ship.speed,
///   ship.footprint_factor, ship.depth_clearance, ship.domain_radius_factor
///
/// `island.N.<key>` overrides a GA or planner key (or `policy`, `seed`) for
/// island N only.
struct RunConfig {
    GaConfig base;
    ShipSpec ship;
    std::uint64_t seed = 1;
    std::size_t islands = 4;  // 0: one per hardware thread
    std::size_t threads = 0;
    std::size_t epoch = 100;
    std::size_t migration_pairs = 0;  // 0: elites / 2
    std::vector<DomainKind> policies;  // empty: constant, growing, random, min-radius
    std::optional<Point> start;
    std::optional<Point> dest;

    struct Override {
        std::size_t island;
        std::string key;
        std::string value;
        std::size_t line;
    };
    std::vector<Override> overrides;
    std::string source = "<config>";

    /// Island set with derived seeds, policy cycle and overrides applied.
    /// Throws ConfigError for overrides that do not apply.
    IslandSetConfig island_set() const;
};

/// Parses "x,y" in meters. Throws std::invalid_argument.
Point parse_point(std::string_view text);

RunConfig parse_config(std::istream& in, const std::string& source = "<config>");
RunConfig load_config(const std::filesystem::path& path);

}  // namespace searoute
