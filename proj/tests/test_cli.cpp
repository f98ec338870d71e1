#include <doctest.h>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "searoute/cli.hpp"
#include "searoute/config.hpp"

using namespace searoute;
namespace fs = std::filesystem;

namespace {

// Fresh scratch directory, removed on destruction.
struct TempDir {
    fs::path path;
    TempDir() {
        std::random_device rd;
        path = fs::temp_directory_path() / ("searoute-test-" + std::to_string(rd()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    fs::path operator/(const std::string& name) const { return path / name; }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

std::size_t count(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (auto at = text.find(needle); at != std::string::npos; at = text.find(needle, at + 1)) ++n;
    return n;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, sep)) out.push_back(cell);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

const char* kQuickConfig = "islands = 1\ngenerations = 30\n";

int run_binary(const std::string& args) {
    const std::string cmd = std::string(SEAROUTE_BIN) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("genmap sizes and determinism") {
    TempDir dir;
    std::ostringstream log;
    GenmapOptions opt;
    opt.archetype = Archetype::wall;
    opt.out = dir / "wall.dmap";
    REQUIRE(cmd_genmap(opt, log) == kExitOk);
    const DepthGrid wall = load_map(opt.out);
    CHECK(wall.extent_x() * wall.extent_y() == doctest::Approx(250000.0));

    opt.out = dir / "wall2.dmap";
    REQUIRE(cmd_genmap(opt, log) == kExitOk);
    CHECK(slurp(dir / "wall.dmap") == slurp(dir / "wall2.dmap"));

    opt.archetype = Archetype::islands;
    opt.out = dir / "islands.dmap";
    REQUIRE(cmd_genmap(opt, log) == kExitOk);
    const DepthGrid islands = load_map(opt.out);
    CHECK(islands.extent_x() * islands.extent_y() == doctest::Approx(4.0e8));
    // The straight corridor is blocked.
    const Endpoints ends = islands_map_endpoints();
    CHECK_FALSE(edge_is_safe(ends.start, ends.dest, ShipSpec{}, islands));
    opt.out = dir / "islands2.dmap";
    REQUIRE(cmd_genmap(opt, log) == kExitOk);
    CHECK(slurp(dir / "islands.dmap") == slurp(dir / "islands2.dmap"));

    // No islands means nothing can ever block the corridor.
    opt.islands = 0;
    opt.out = dir / "empty.dmap";
    CHECK(cmd_genmap(opt, log) == kExitInputError);

    opt = {};
    opt.size = -5;
    opt.out = dir / "neg.dmap";
    CHECK(cmd_genmap(opt, log) == kExitInputError);
    opt = {};
    opt.out = dir / "missing" / "x.dmap";
    CHECK(cmd_genmap(opt, log) == kExitInputError);
}

TEST_CASE("plan on open water") {
    TempDir dir;
    save_map(gen_open_map(500, 20, 5), dir / "open.dmap");
    write(dir / "run.cfg", kQuickConfig);
    std::ostringstream log;
    PlanOptions opt{dir / "open.dmap", dir / "run.cfg", "100,100", "400,400", dir / "route.json",
                    dir / "report.json"};
    REQUIRE(cmd_plan(opt, log) == kExitOk);

    const ShipSpec ship;
    const Route route = load_route(dir / "route.json");
    CHECK(route.start() == Point{100, 100});
    CHECK(route.destination() == Point{400, 400});
    CHECK(route_is_safe(route, ship, load_map(dir / "open.dmap")));

    const auto report = nlohmann::json::parse(slurp(dir / "report.json"));
    CHECK(report["success"] == true);
    const double straight_time = distance({100, 100}, {400, 400}) / ship.service_speed;
    CHECK(report["arrival_time_s"].get<double>() <= 1.05 * straight_time);
    CHECK(report["route_length_m"].get<double>() == doctest::Approx(route.length()));
    CHECK(report["arrival_time_s"].get<double>() == doctest::Approx(route.arrival_time()));
    CHECK(report["waypoint_count"] == route.size());
    CHECK(report["generations"] == 30);
    const auto& best = report["history"]["best"];
    REQUIRE(best.size() == 31);
    for (std::size_t g = 1; g < best.size(); ++g) CHECK(best[g].get<double>() <= best[g - 1].get<double>());

    // Same seed, same bytes.
    opt.route_out = dir / "route2.json";
    REQUIRE(cmd_plan(opt, log) == kExitOk);
    CHECK(slurp(dir / "route.json") == slurp(dir / "route2.json"));

    // Endpoints may come from the config instead.
    write(dir / "ends.cfg", std::string(kQuickConfig) + "start = 100,100\ndest = 400,400\n");
    PlanOptions from_cfg{dir / "open.dmap", dir / "ends.cfg", "", "", dir / "route3.json", {}};
    REQUIRE(cmd_plan(from_cfg, log) == kExitOk);
    CHECK(slurp(dir / "route.json") == slurp(dir / "route3.json"));
}

TEST_CASE("plan exit codes") {
    TempDir dir;
    std::vector<double> d(101 * 101, 20.0);
    for (std::size_t j = 0; j < 101; ++j) d[j * 101 + 60] = kLandDepth;
    save_map(DepthGrid(101, 101, 5.0, std::move(d)), dir / "blocked.dmap");
    save_map(gen_open_map(500, 20, 5), dir / "open.dmap");
    write(dir / "run.cfg", "islands = 2\ngenerations = 5\nplanner_retries = 1\npopulation = 4\nelites = 2\n");
    write(dir / "bad.cfg", "islands = 2\ngenerations = lots\n");
    write(dir / "bad.dmap", "DMAP1 3 3 5\n1 2 3\n4 five 6\n7 8 9\n");

    std::ostringstream log;
    PlanOptions opt{dir / "blocked.dmap", dir / "run.cfg", "100,250", "400,250", dir / "r.json",
                    dir / "report.json"};
    CHECK(cmd_plan(opt, log) == kExitNoRoute);
    CHECK_FALSE(fs::exists(dir / "r.json"));
    CHECK(nlohmann::json::parse(slurp(dir / "report.json"))["success"] == false);

    log.str("");
    opt.map = dir / "open.dmap";
    opt.config = dir / "bad.cfg";
    CHECK(cmd_plan(opt, log) == kExitInputError);
    CHECK(log.str().find("bad.cfg:2:") != std::string::npos);

    log.str("");
    opt.config = dir / "run.cfg";
    opt.map = dir / "bad.dmap";
    CHECK(cmd_plan(opt, log) == kExitInputError);
    CHECK(log.str().find("bad.dmap:3:") != std::string::npos);

    opt.map = dir / "open.dmap";
    opt.start = "900,900";
    CHECK(cmd_plan(opt, log) == kExitInputError);
    opt.start = "100;100";
    CHECK(cmd_plan(opt, log) == kExitInputError);
    opt.start = "400,250";
    CHECK(cmd_plan(opt, log) == kExitInputError);
    opt.start = "";
    CHECK(cmd_plan(opt, log) == kExitInputError);
}

TEST_CASE("bench aggregates") {
    TempDir dir;
    save_map(gen_open_map(500, 20, 5), dir / "open.dmap");
    write(dir / "quick.cfg", std::string(kQuickConfig) + "seed = 7\n");
    std::ostringstream log;

    BenchOptions one{dir / "open.dmap", dir / "quick.cfg", 1, "100,100", "400,400", dir / "one.csv"};
    REQUIRE(cmd_bench(one, log) == kExitOk);
    std::istringstream csv1(slurp(dir / "one.csv"));
    std::string header, row;
    std::getline(csv1, header);
    std::getline(csv1, row);
    const auto h = split(header, ',');
    const auto c = split(row, ',');
    REQUIRE(h.size() == 10);
    REQUIRE(c.size() == 10);
    CHECK(c[0] == "quick");
    CHECK(c[1] == "1");
    CHECK(c[2] == "1");
    CHECK(c[3] == "1");
    CHECK(c[4] == c[5]);
    CHECK(c[5] == c[6]);
    CHECK(c[7] == c[8]);
    CHECK(c[8] == c[9]);

    BenchOptions three = one;
    three.runs = 3;
    three.out = dir / "three.csv";
    REQUIRE(cmd_bench(three, log) == kExitOk);
    std::istringstream csv3(slurp(dir / "three.csv"));
    std::getline(csv3, header);
    std::getline(csv3, row);
    const auto t = split(row, ',');
    const double lo = std::stod(t[4]), hi = std::stod(t[5]), mean = std::stod(t[6]);
    CHECK(lo <= mean);
    CHECK(mean <= hi);
    CHECK(std::stod(t[7]) <= std::stod(t[9]));
    CHECK(std::stod(t[9]) <= std::stod(t[8]));

    // Recompute from single plans with seeds 7, 8, 9.
    std::vector<double> lengths;
    for (int s = 7; s <= 9; ++s) {
        write(dir / "one_seed.cfg", std::string(kQuickConfig) + "seed = " + std::to_string(s) + "\n");
        PlanOptions p{dir / "open.dmap", dir / "one_seed.cfg", "100,100", "400,400", dir / "r.json",
                      dir / "rep.json"};
        REQUIRE(cmd_plan(p, log) == kExitOk);
        lengths.push_back(nlohmann::json::parse(slurp(dir / "rep.json"))["route_length_m"].get<double>());
    }
    const double sum = lengths[0] + lengths[1] + lengths[2];
    CHECK(lo == doctest::Approx(*std::min_element(lengths.begin(), lengths.end())).epsilon(1e-6));
    CHECK(hi == doctest::Approx(*std::max_element(lengths.begin(), lengths.end())).epsilon(1e-6));
    CHECK(mean == doctest::Approx(sum / 3).epsilon(1e-6));

    three.runs = 0;
    CHECK(cmd_bench(three, log) == kExitInputError);
}

TEST_CASE("render") {
    TempDir dir;
    save_map(gen_open_map(500, 20, 5), dir / "open.dmap");
    const ShipSpec ship;
    save_route(recompute_timing(Route::from_points(std::vector<Point>{{100, 100}, {400, 400}}), ship),
               dir / "two.json");
    std::ostringstream log;
    REQUIRE(cmd_render({dir / "open.dmap", dir / "two.json", dir / "two.svg"}, log) == kExitOk);
    const std::string svg = slurp(dir / "two.svg");
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(count(svg, "<polyline") == 1);
    const auto polyline_vertices = [](const std::string& s) {
        const auto at = s.find("points=\"", s.find("<polyline")) + 8;
        return split(s.substr(at, s.find('"', at) - at), ' ').size();
    };
    CHECK(polyline_vertices(svg) == 2);
    CHECK(count(svg, "<circle") == 2);
    CHECK(svg.find(" m</text>") != std::string::npos);

    // Land is drawn in its own colour.
    const std::string wall_svg = render_svg(gen_wall_map(), load_route(dir / "two.json"));
    CHECK(wall_svg.find("#d8c99b") != std::string::npos);
    CHECK(svg.find("#d8c99b") == std::string::npos);

    const Route five = recompute_timing(
        Route::from_points(std::vector<Point>{{50, 50}, {100, 300}, {250, 250}, {300, 450}, {450, 450}}), ship);
    save_route(five, dir / "five.json");
    REQUIRE(cmd_render({dir / "open.dmap", dir / "five.json", dir / "five.svg"}, log) == kExitOk);
    CHECK(polyline_vertices(slurp(dir / "five.svg")) == 5);
    REQUIRE(cmd_render({dir / "open.dmap", dir / "five.json", dir / "five2.svg"}, log) == kExitOk);
    CHECK(slurp(dir / "five.svg") == slurp(dir / "five2.svg"));

    CHECK(cmd_render({dir / "open.dmap", dir / "nope.json", dir / "x.svg"}, log) == kExitInputError);
}

TEST_CASE("binary exit codes") {
    TempDir dir;
    save_map(gen_open_map(500, 20, 5), dir / "open.dmap");
    write(dir / "run.cfg", kQuickConfig);
    const std::string map = (dir / "open.dmap").string();
    const std::string cfg = (dir / "run.cfg").string();
    CHECK(run_binary("plan --map " + map + " --config " + cfg + " --start 100,100 --dest 400,400 --route-out " +
                     (dir / "r.json").string()) == kExitOk);
    CHECK(run_binary("plan --map " + map + " --config " + cfg + " --start 100,100 --dest 400,400") ==
          kExitInputError);
    CHECK(run_binary("frobnicate") == kExitInputError);
    CHECK(run_binary("genmap --archetype volcano --out " + (dir / "v.dmap").string()) == kExitInputError);
    CHECK(run_binary("--help") == kExitOk);
}

}  // TEST_SUITE
