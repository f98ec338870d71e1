#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "searoute/map_generators.hpp"

using namespace searoute;

namespace {

DepthGrid constant_grid(double depth, std::size_t n = 11, double cell = 10.0) {
    return DepthGrid(n, n, cell, std::vector<double>(n * n, depth));
}

// Random grid with land patches, for property tests.
DepthGrid rough_grid(std::uint64_t seed, std::size_t n = 21, double cell = 10.0) {
    RandomStream rng(seed);
    std::vector<double> d(n * n);
    for (auto& v : d) v = rng.chance(0.1) ? rng.uniform(-5.0, 0.0) : rng.uniform(1.0, 30.0);
    return DepthGrid(n, n, cell, std::move(d));
}

OrientedRect random_rect(RandomStream& rng, double extent) {
    return {{rng.uniform(0.0, extent), rng.uniform(0.0, extent)}, rng.uniform(2.0, 40.0), rng.uniform(1.0, 10.0),
            rng.uniform(0.0, 2 * kPi)};
}

// Independent version of the straight-line corridor check: a footprint swept
// densely along the segment, each probed with the dense-sampling oracle.
bool straight_corridor_clear(const DepthGrid& grid, Point a, Point b, const ShipSpec& ship) {
    const double len = distance(a, b);
    const double heading = std::atan2(b.y - a.y, b.x - a.x);
    const auto steps = static_cast<int>(std::ceil(len / (ship.length / 4)));
    for (int k = 0; k <= steps; ++k) {
        const Point c = a + (b - a) * (static_cast<double>(k) / steps);
        const OrientedRect r{c, ship.footprint_length(), ship.footprint_width(), heading};
        if (oracle::dense_min_depth(grid, r, grid.cell_size() / 4) <= ship.required_depth()) return false;
    }
    return true;
}

}  // namespace

TEST_SUITE("depthmap") {

TEST_CASE("grid construction validates its inputs") {
    CHECK_THROWS_AS(DepthGrid(1, 2, 1.0, {1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(DepthGrid(2, 2, 0.0, {1, 1, 1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(DepthGrid(2, 2, 1.0, {1, 1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(DepthGrid(2, 2, 1.0, {1, 1, 1, NAN}), std::invalid_argument);
}

TEST_CASE("depth_at on a constant grid") {
    const auto g = constant_grid(10.0);
    RandomStream rng(1);
    for (int k = 0; k < 100; ++k) CHECK(g.depth_at({rng.uniform(0, 100), rng.uniform(0, 100)}) == 10.0);
}

TEST_CASE("depth_at interpolates linearly between columns") {
    // Columns x = 0 and x = 1 hold 0 and 10.
    const DepthGrid g(2, 2, 1.0, {0, 10, 0, 10});
    CHECK(g.depth_at({0.5, 0.5}) == doctest::Approx(5.0));
}

TEST_CASE("depth_at reproduces lattice values") {
    const auto g = rough_grid(2);
    for (std::size_t j = 0; j < g.height_cells(); ++j) {
        for (std::size_t i = 0; i < g.width_cells(); ++i) {
            CHECK(g.depth_at({static_cast<double>(i) * 10.0, static_cast<double>(j) * 10.0}) == g.node(i, j));
        }
    }
}

TEST_CASE("depth_at outside the map throws") {
    const auto g = constant_grid(10.0);
    CHECK_THROWS_AS(g.depth_at({-0.1, 5}), OutOfMapError);
    CHECK_THROWS_AS(g.depth_at({5, 100.1}), OutOfMapError);
}

TEST_CASE("depth_at is continuous across cell boundaries") {
    const auto g = rough_grid(3);
    RandomStream rng(4);
    for (int k = 0; k < 1000; ++k) {
        const double line = 10.0 * static_cast<double>(1 + rng.index(19));
        const double along = rng.uniform(0.0, 200.0);
        CHECK(std::abs(g.depth_at({line - 1e-6, along}) - g.depth_at({line + 1e-6, along})) < 1e-3);
        CHECK(std::abs(g.depth_at({along, line - 1e-6}) - g.depth_at({along, line + 1e-6})) < 1e-3);
    }
}

TEST_CASE("min_depth_in_rect basics") {
    const auto g = constant_grid(10.0);
    CHECK(g.min_depth_in_rect({{50, 50}, 20, 8, 0.7}, 2.0) == 10.0);
    CHECK(g.min_depth_in_rect({{2, 50}, 20, 8, 0.0}, 2.0) == 0.0);  // sticks out on the left
    CHECK_THROWS_AS(g.min_depth_in_rect({{50, 50}, 20, 8, 0.0}, 0.0), std::invalid_argument);
}

TEST_CASE("min_depth_in_rect finds a land cell") {
    std::vector<double> d(11 * 11, 10.0);
    for (std::size_t j : {5, 6}) {
        for (std::size_t i : {5, 6}) d[j * 11 + i] = 0.0;  // cell [50, 60] x [50, 60]
    }
    const DepthGrid g(11, 11, 10.0, std::move(d));
    const OrientedRect r{{47, 52}, 12, 6, 0.3};
    CHECK(oracle::dense_min_depth(g, r, 1.0) <= 0.0);
    CHECK(g.min_depth_in_rect(r, 5.0) <= 0.0);
}

TEST_CASE("min_depth_in_rect is never above the dense-sampling oracle") {
    RandomStream rng(5);
    for (int k = 0; k < 300; ++k) {
        const auto g = rough_grid(100 + k);
        const auto r = random_rect(rng, 200.0);
        const double step = std::min(g.cell_size(), r.width) / 2;
        const double got = g.min_depth_in_rect(r, step);
        const double dense = oracle::dense_min_depth(g, r, 0.1 * g.cell_size());
        // Shared samples may differ in the last bit; land detection is exact.
        CHECK(got <= dense + 1e-9);
        if (dense <= 0.0) CHECK(got <= 0.0);
    }
}

TEST_CASE("min_depth_in_rect properties") {
    RandomStream rng(6);
    for (int k = 0; k < 300; ++k) {
        const auto g = rough_grid(400 + k);
        const auto r = random_rect(rng, 200.0);
        double previous = g.min_depth_in_rect(r, 8.0);
        for (double step : {4.0, 2.0, 1.0, 0.5}) {
            const double m = g.min_depth_in_rect(r, step);
            CHECK(m <= previous);
            previous = m;
        }
        // A rectangle leaving the map reports 0 whatever lies under its center.
        const auto corners = rect_corners(r);
        const bool inside = std::all_of(corners.begin(), corners.end(), [&](Point c) { return g.contains(c); });
        if (inside) CHECK(g.min_depth_in_rect(r, 2.0) <= g.depth_at(r.center));
        for (double threshold : {0.0, 5.0, 15.0}) {
            CHECK(g.rect_deeper_than(r, 2.0, threshold) == (g.min_depth_in_rect(r, 2.0) > threshold));
        }
    }
}

TEST_CASE("wall map") {
    const auto g = gen_wall_map(500, 20);
    CHECK(g.extent_x() == doctest::Approx(500));
    CHECK(g.extent_y() == doctest::Approx(500));
    CHECK(g.max_depth() == 20.0);
    CHECK(g == gen_wall_map(500, 20));
    const auto e = wall_map_endpoints(500);
    CHECK_FALSE(straight_corridor_clear(g, e.start, e.dest, ShipSpec{}));
    CHECK(g.depth_at(e.start) == 20.0);
    CHECK(g.depth_at(e.dest) == 20.0);
}

TEST_CASE("labyrinth map") {
    const auto g = gen_labyrinth_map(500, 20, 3);
    CHECK(g.max_depth() == 20.0);
    CHECK(g == gen_labyrinth_map(500, 20, 3));
    const auto e = labyrinth_map_endpoints(500);
    CHECK_FALSE(straight_corridor_clear(g, e.start, e.dest, ShipSpec{}));
    CHECK_THROWS_AS(gen_labyrinth_map(500, 20, 1), std::invalid_argument);
}

TEST_CASE("labyrinth channel is wider than three beams") {
    const ShipSpec ship;
    const double size = 500;
    const auto g = gen_labyrinth_map(size, 20, 3);
    const auto deep_run = [&](Point from, Point step, int n) {
        // Longest stretch of navigable depth along a sampled line, in meters.
        double best = 0, run = 0;
        for (int k = 0; k <= n; ++k) {
            const Point p = from + step * k;
            run = g.depth_at(p) > ship.required_depth() ? run + std::hypot(step.x, step.y) : 0;
            best = std::max(best, run);
        }
        return best;
    };
    // Between neighbouring slats, across the middle of the map.
    for (int k = 0; k <= 3; ++k) {
        const double x0 = size * k / 4 + (k == 0 ? 0 : size / 50);
        const double x1 = size * (k + 1) / 4 - (k == 3 ? 0 : size / 50);
        CHECK(deep_run({x0, size / 2}, {0.5, 0}, static_cast<int>((x1 - x0) / 0.5)) > 3 * ship.beam);
    }
    // Gaps between each slat tip and the opposite edge.
    for (int k = 1; k <= 3; ++k) {
        const double x = size * k / 4;
        const Point from = k % 2 == 1 ? Point{x, 0.75 * size} : Point{x, 0};
        CHECK(deep_run(from, {0, 0.5}, static_cast<int>(0.25 * size / 0.5)) > 3 * ship.beam);
    }
}

TEST_CASE("islands map") {
    CHECK(gen_islands_map(20000, 50, 0, 1) == gen_open_map(20000, 50, 50));
    const auto a = gen_islands_map(20000, 50, 40, 7);
    CHECK(a == gen_islands_map(20000, 50, 40, 7));
    CHECK_FALSE(a == gen_islands_map(20000, 50, 40, 8));
    CHECK(a.max_depth() == 50.0);
    CHECK(a.extent_x() == doctest::Approx(20000));

    const auto e = islands_map_endpoints(20000);
    CHECK_FALSE(straight_corridor_clear(a, e.start, e.dest, ShipSpec{}));
    // The surroundings of both endpoints stay deep.
    for (const Point c : {e.start, e.dest}) {
        for (int k = 0; k < 64; ++k) {
            const double t = 2 * kPi * k / 64;
            for (double r : {0.0, 250.0, 499.0}) {
                const Point p = c + Point{std::cos(t), std::sin(t)} * r;
                if (a.contains(p)) CHECK(a.depth_at(p) == 50.0);
            }
        }
    }
}

TEST_CASE("map file round trip is exact") {
    const auto g = rough_grid(7);
    std::stringstream buf;
    write_map(buf, g);
    CHECK(read_map(buf) == g);

    const auto big = gen_islands_map(2000, 33.3, 10, 3);
    std::stringstream buf2;
    write_map(buf2, big);
    CHECK(read_map(buf2) == big);
}

TEST_CASE("map file errors carry line numbers") {
    const auto line_of = [](const std::string& text) -> std::size_t {
        std::istringstream in(text);
        try {
            read_map(in);
        } catch (const MapParseError& e) {
            return e.line();
        }
        return 0;
    };
    CHECK(line_of("DMAP1 0 2 1\n") == 1);
    CHECK(line_of("DMAP2 2 2 1\n1 1\n1 1\n") == 1);
    CHECK(line_of("DMAP1 2 2 1\n1 1\n1\n") == 3);       // truncated row
    CHECK(line_of("DMAP1 2 2 1\n1 1\n") == 3);          // missing row
    CHECK(line_of("DMAP1 2 2 1\n1 x\n1 1\n") == 2);     // non-numeric
    CHECK(line_of("DMAP1 2 2 1\n1 1\n1 1\n1 1\n") == 4);  // extra row
    CHECK(line_of("DMAP1 2 2 1\n1 1\n1 1\n") == 0);

    std::istringstream in("DMAP1 3 2 1\n1 1 1\n1 1\n");
    try {
        read_map(in);
        FAIL("expected a parse error");
    } catch (const MapParseError& e) {
        CHECK(std::string(e.what()).find("row 1") != std::string::npos);
    }
}

}  // TEST_SUITE
