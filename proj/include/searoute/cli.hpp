#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "searoute/config.hpp"
#include "searoute/map_generators.hpp"

namespace searoute {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNoRoute = 2;
inline constexpr int kExitInputError = 3;

struct RunReport {
    bool success = false;
    double route_length = 0.0;  // m
    double arrival_time = 0.0;  // s
    std::size_t waypoint_count = 0;
    double wall_time = 0.0;  // s
    std::size_t generations = 0;
    std::size_t islands = 0;
    std::uint64_t seed = 0;
    std::vector<CostSample> history;  // generations + 1 entries
};

/// Non-finite costs are written as null.
std::string report_to_json(const RunReport& report);

struct PlanOutcome {
    std::optional<Route> route;
    RunReport report;
};

/// Runs the configured island set once and times it.
PlanOutcome plan_on_map(const DepthGrid& grid, const RunConfig& cfg, Point start, Point dest);

/// SVG picture of the map with the route drawn on top. Depth is shaded in
/// bands, one rectangle per run of equally shaded cells in a row.
std::string render_svg(const DepthGrid& grid, const Route& route);

struct GenmapOptions {
    Archetype archetype = Archetype::wall;
    std::optional<double> size;  // unset: archetype default
    std::optional<double> deep;  // unset: archetype default
    int islands = 40;
    std::uint64_t seed = 1;
    std::filesystem::path out;
};

struct PlanOptions {
    std::filesystem::path map;
    std::filesystem::path config;
    std::string start;  // empty: the config's start/dest keys
    std::string dest;
    std::filesystem::path route_out;
    std::filesystem::path report_out;
};

struct BenchOptions {
    std::filesystem::path map;
    std::filesystem::path config;
    std::size_t runs = 5;
    std::string start;  // empty: the config's start/dest keys
    std::string dest;
    std::filesystem::path out;
};

struct RenderOptions {
    std::filesystem::path map;
    std::filesystem::path route;
    std::filesystem::path out;
};

/// Subcommands. Each returns a process exit code and writes diagnostics to
/// `log`.
int cmd_genmap(const GenmapOptions& opt, std::ostream& log);
int cmd_plan(const PlanOptions& opt, std::ostream& log);
int cmd_bench(const BenchOptions& opt, std::ostream& log);
int cmd_render(const RenderOptions& opt, std::ostream& log);

}  // namespace searoute
