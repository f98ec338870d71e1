#include "searoute/map_generators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "searoute/random.hpp"

namespace searoute {

std::string_view to_string(Archetype a) {
    switch (a) {
        case Archetype::wall: return "wall";
        case Archetype::labyrinth: return "labyrinth";
        case Archetype::islands: return "islands";
    }
    return "unknown";
}

Archetype parse_archetype(std::string_view name) {
    if (name == "wall") return Archetype::wall;
    if (name == "labyrinth") return Archetype::labyrinth;
    if (name == "islands") return Archetype::islands;
    throw std::invalid_argument("unknown archetype '" + std::string(name) + "'");
}

namespace {

struct Box {
    double x0, y0, x1, y1;
};

class Raster {
public:
    Raster(double size, std::size_t intervals, double deep)
        : n_(intervals + 1), cell_(size / static_cast<double>(intervals)), depths_(n_ * n_, deep) {}

    void fill_land(const Box& b) {
        for (std::size_t j = 0; j < n_; ++j) {
            const double y = static_cast<double>(j) * cell_;
            if (y < b.y0 || y > b.y1) continue;
            for (std::size_t i = 0; i < n_; ++i) {
                const double x = static_cast<double>(i) * cell_;
                if (x >= b.x0 && x <= b.x1) depths_[j * n_ + i] = kLandDepth;
            }
        }
    }

    template <typename F>
    void lower(const Box& b, F&& depth_fn) {
        const auto lo = [&](double v) {
            return static_cast<std::size_t>(std::clamp(std::ceil(v / cell_), 0.0, double(n_ - 1)));
        };
        const auto hi = [&](double v) {
            return static_cast<std::size_t>(std::clamp(std::floor(v / cell_), 0.0, double(n_ - 1)));
        };
        for (std::size_t j = lo(b.y0); j <= hi(b.y1); ++j) {
            for (std::size_t i = lo(b.x0); i <= hi(b.x1); ++i) {
                const Point p{static_cast<double>(i) * cell_, static_cast<double>(j) * cell_};
                double& d = depths_[j * n_ + i];
                d = std::min(d, depth_fn(p));
            }
        }
    }

    DepthGrid finish() && { return DepthGrid(n_, n_, cell_, std::move(depths_)); }

private:
    std::size_t n_;
    double cell_;
    std::vector<double> depths_;
};

void require_positive(double size, double deep) {
    if (!(size > 0.0)) throw std::invalid_argument("map size must be positive");
    if (!(deep > 0.0)) throw std::invalid_argument("deep-water depth must be positive");
}

}  // namespace

DepthGrid gen_wall_map(double size, double deep) {
    require_positive(size, deep);
    const double s = size / kSmallMapSize;
    Raster raster(size, 100, deep);
    raster.fill_land({250 * s, 110 * s, 270 * s, 390 * s});  // back wall
    raster.fill_land({100 * s, 370 * s, 270 * s, 390 * s});  // upper arm
    raster.fill_land({100 * s, 110 * s, 270 * s, 130 * s});  // lower arm
    return std::move(raster).finish();
}

Endpoints wall_map_endpoints(double size) {
    const double s = size / kSmallMapSize;
    return {{150 * s, 250 * s}, {400 * s, 250 * s}};
}

DepthGrid gen_labyrinth_map(double size, double deep, int slats) {
    require_positive(size, deep);
    if (slats < 2) throw std::invalid_argument("labyrinth needs at least 2 slats");
    Raster raster(size, 100, deep);
    const double half = size / 50.0;
    for (int k = 1; k <= slats; ++k) {
        const double x = size * k / (slats + 1);
        if (k % 2 == 1) {
            raster.fill_land({x - half, 0.0, x + half, 0.75 * size});
        } else {
            raster.fill_land({x - half, 0.25 * size, x + half, size});
        }
    }
    return std::move(raster).finish();
}

Endpoints labyrinth_map_endpoints(double size) {
    return {{0.1 * size, 0.5 * size}, {0.9 * size, 0.5 * size}};
}

Endpoints islands_map_endpoints(double size) {
    return {{0.05 * size, 0.05 * size}, {0.95 * size, 0.95 * size}};
}

DepthGrid gen_islands_map(double size, double deep, int island_count, std::uint64_t seed) {
    require_positive(size, deep);
    if (island_count < 0) throw std::invalid_argument("island count must be non-negative");
    constexpr double kClearRadius = 500.0;
    constexpr double kRim = 1.5;  // rim outer edge, in units of the core ellipse

    Raster raster(size, 400, deep);
    RandomStream rng(seed);
    const Endpoints ends = islands_map_endpoints(size);

    for (int n = 0; n < island_count; ++n) {
        for (int attempt = 0; attempt < 100; ++attempt) {
            const Point c{rng.uniform(0.0, size), rng.uniform(0.0, size)};
            const double a = rng.uniform(0.015 * size, 0.05 * size);
            const double b = a * rng.uniform(0.4, 1.0);
            const double angle = rng.uniform(0.0, kPi);
            const double reach = kRim * a;
            if (distance(c, ends.start) < reach + kClearRadius ||
                distance(c, ends.dest) < reach + kClearRadius) {
                continue;
            }
            const double ca = std::cos(angle);
            const double sa = std::sin(angle);
            raster.lower({c.x - reach, c.y - reach, c.x + reach, c.y + reach}, [&](Point p) {
                const Point d = p - c;
                const double u = (d.x * ca + d.y * sa) / a;
                const double v = (-d.x * sa + d.y * ca) / b;
                const double rn = std::sqrt(u * u + v * v);
                if (rn <= 1.0) return kLandDepth;
                if (rn >= kRim) return deep;
                return deep * (rn - 1.0) / (kRim - 1.0);
            });
            break;
        }
    }
    return std::move(raster).finish();
}

Endpoints default_endpoints(Archetype a, double size) {
    switch (a) {
        case Archetype::wall: return wall_map_endpoints(size);
        case Archetype::labyrinth: return labyrinth_map_endpoints(size);
        case Archetype::islands: return islands_map_endpoints(size);
    }
    throw std::invalid_argument("unknown archetype");
}

DepthGrid gen_open_map(double size, double deep, double cell_size) {
    const auto intervals = static_cast<std::size_t>(std::ceil(size / cell_size));
    const std::size_t n = intervals + 1;
    return DepthGrid(n, n, cell_size, std::vector<double>(n * n, deep));
}

}  // namespace searoute
