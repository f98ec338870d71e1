#pragma once

#include <cstdint>
#include <string_view>

#include "searoute/depth_grid.hpp"

namespace searoute {

enum class Archetype { wall, labyrinth, islands };

std::string_view to_string(Archetype a);
/// Throws std::invalid_argument for unknown names.
Archetype parse_archetype(std::string_view name);

/// Canonical start and destination for each generated archetype.
struct Endpoints {
    Point start;
    Point dest;
};

inline constexpr double kSmallMapSize = 500.0;     // 0.25 km^2
inline constexpr double kIslandsMapSize = 20000.0;  // 400 km^2
inline constexpr double kLandDepth = -2.0;

/// U-shaped barrier whose pocket surrounds the start and opens away from the
/// destination, so a route has to head away from the goal before it can
/// reach it. Node spacing is size / 100.
DepthGrid gen_wall_map(double size = kSmallMapSize, double deep = 20.0);
Endpoints wall_map_endpoints(double size = kSmallMapSize);

/// `slats` land bars attached alternately to the bottom and top edges,
/// leaving a serpentine channel. Requires slats >= 2.
DepthGrid gen_labyrinth_map(double size = kSmallMapSize, double deep = 20.0, int slats = 3);
Endpoints labyrinth_map_endpoints(double size = kSmallMapSize);

/// Deep water scattered with elliptical islands (land core, shoaling rim).
/// Water within 500 m of both canonical endpoints is kept clear.
/// Node spacing is size / 400.
DepthGrid gen_islands_map(double size = kIslandsMapSize, double deep = 50.0, int island_count = 40,
                          std::uint64_t seed = 1);
Endpoints islands_map_endpoints(double size = kIslandsMapSize);

Endpoints default_endpoints(Archetype a, double size);

/// Uniform-depth square map, handy for tests and open-water benchmarks.
DepthGrid gen_open_map(double size, double deep, double cell_size);

}  // namespace searoute
