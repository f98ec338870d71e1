#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>

#include "searoute/cli.hpp"

namespace searoute {

namespace {

// Raised for anything the user has to fix before rerunning.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot open '" + path.string() + "' for writing");
    out << text;
    if (!out) throw InputError("failed writing '" + path.string() + "'");
}

DepthGrid open_map(const std::filesystem::path& path) {
    try {
        return load_map(path);
    } catch (const MapParseError& e) {
        throw InputError(path.string() + ":" + std::to_string(e.line()) + ": " + e.detail());
    } catch (const std::exception& e) {
        throw InputError(e.what());
    }
}

Endpoints resolve_endpoints(const std::string& start, const std::string& dest, const RunConfig& cfg,
                            const DepthGrid& grid) {
    const auto pick = [](const std::string& flag, const std::optional<Point>& fallback, const char* name) {
        if (!flag.empty()) {
            try {
                return parse_point(flag);
            } catch (const std::invalid_argument& e) {
                throw InputError(std::string("--") + name + ": " + e.what());
            }
        }
        if (fallback) return *fallback;
        throw InputError(std::string("no ") + name + " point given (flag or config key '" + name + "')");
    };
    const Endpoints e{pick(start, cfg.start, "start"), pick(dest, cfg.dest, "dest")};
    if (!grid.contains(e.start)) throw InputError("start point lies outside the map");
    if (!grid.contains(e.dest)) throw InputError("destination point lies outside the map");
    if (e.start == e.dest) throw InputError("start and destination coincide");
    return e;
}

// Runs a command body, mapping failures onto exit codes.
template <typename Body>
int guarded(std::ostream& log, Body&& body) {
    try {
        return body();
    } catch (const InputError& e) {
        log << "error: " << e.what() << '\n';
    } catch (const ConfigError& e) {
        log << "error: " << e.what() << '\n';
    } catch (const std::invalid_argument& e) {
        log << "error: " << e.what() << '\n';
    } catch (const RouteError& e) {
        log << "error: " << e.what() << '\n';
    }
    return kExitInputError;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

}  // namespace

int cmd_genmap(const GenmapOptions& opt, std::ostream& log) {
    return guarded(log, [&] {
        const bool islands = opt.archetype == Archetype::islands;
        const double size = opt.size.value_or(islands ? kIslandsMapSize : kSmallMapSize);
        const double deep = opt.deep.value_or(islands ? 50.0 : 20.0);
        if (!(size > 0.0)) throw InputError("map size must be positive");
        if (!(deep > 0.0)) throw InputError("deep-water depth must be positive");
        const Endpoints ends = default_endpoints(opt.archetype, size);

        std::optional<DepthGrid> grid;
        std::uint64_t seed = opt.seed;
        switch (opt.archetype) {
            case Archetype::wall: grid = gen_wall_map(size, deep); break;
            case Archetype::labyrinth: grid = gen_labyrinth_map(size, deep); break;
            case Archetype::islands: {
                if (opt.islands < 0) throw InputError("island count must be non-negative");
                // A map whose straight start-destination line is clear would be
                // trivial, so try successive seeds until an island is in the way.
                constexpr std::uint64_t kAttempts = 100;
                const ShipSpec ship;
                for (std::uint64_t k = 0; k < kAttempts && !grid; ++k) {
                    DepthGrid candidate = gen_islands_map(size, deep, opt.islands, opt.seed + k);
                    if (!edge_is_safe(ends.start, ends.dest, ship, candidate)) {
                        grid = std::move(candidate);
                        seed = opt.seed + k;
                    }
                }
                if (!grid) {
                    throw InputError("no seed in [" + std::to_string(opt.seed) + ", " +
                                     std::to_string(opt.seed + kAttempts - 1) +
                                     "] blocks the straight route; try more islands");
                }
                break;
            }
        }
        try {
            save_map(*grid, opt.out);
        } catch (const std::runtime_error& e) {
            throw InputError(e.what());
        }
        log << "wrote " << opt.out.string() << ": " << to_string(opt.archetype) << ", " << size << " m";
        if (islands) log << ", seed " << seed;
        log << "\nstart " << ends.start.x << ',' << ends.start.y << "  dest " << ends.dest.x << ','
            << ends.dest.y << '\n';
        return kExitOk;
    });
}

int cmd_plan(const PlanOptions& opt, std::ostream& log) {
    return guarded(log, [&] {
        const DepthGrid grid = open_map(opt.map);
        const RunConfig cfg = load_config(opt.config);
        const Endpoints ends = resolve_endpoints(opt.start, opt.dest, cfg, grid);
        const PlanOutcome outcome = plan_on_map(grid, cfg, ends.start, ends.dest);
        if (!opt.report_out.empty()) write_text(opt.report_out, report_to_json(outcome.report));
        if (!outcome.route) {
            log << "no route found\n";
            return kExitNoRoute;
        }
        try {
            save_route(*outcome.route, opt.route_out);
        } catch (const std::runtime_error& e) {
            throw InputError(e.what());
        }
        const RunReport& r = outcome.report;
        log << "route: " << r.waypoint_count << " waypoints, " << fmt(r.route_length) << " m, arrival "
            << fmt(r.arrival_time) << " s, computed in " << fmt(r.wall_time) << " s\n";
        return kExitOk;
    });
}

int cmd_bench(const BenchOptions& opt, std::ostream& log) {
    return guarded(log, [&] {
        if (opt.runs < 1) throw InputError("--runs must be at least 1");
        const DepthGrid grid = open_map(opt.map);
        RunConfig cfg = load_config(opt.config);
        const Endpoints ends = resolve_endpoints(opt.start, opt.dest, cfg, grid);
        const std::uint64_t base_seed = cfg.seed;

        std::vector<double> lengths;
        std::vector<double> times;
        for (std::size_t r = 0; r < opt.runs; ++r) {
            cfg.seed = base_seed + r;
            const PlanOutcome outcome = plan_on_map(grid, cfg, ends.start, ends.dest);
            times.push_back(outcome.report.wall_time);
            if (outcome.route) lengths.push_back(outcome.report.route_length);
            log << "run " << r + 1 << "/" << opt.runs << " seed " << cfg.seed << ": "
                << (outcome.route ? fmt(outcome.report.route_length) + " m" : std::string("no route")) << ", "
                << fmt(outcome.report.wall_time) << " s\n";
        }

        const auto stats = [](const std::vector<double>& v) {
            if (v.empty()) return std::string(",,");
            const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
            double sum = 0.0;
            for (double x : v) sum += x;
            return fmt(*lo) + "," + fmt(*hi) + "," + fmt(sum / static_cast<double>(v.size()));
        };
        std::string csv =
            "config,islands,runs,successes,min_length_m,max_length_m,mean_length_m,min_time_s,max_time_s,"
            "mean_time_s\n";
        csv += opt.config.stem().string() + "," + std::to_string(cfg.island_set().islands.size()) + "," +
               std::to_string(opt.runs) + "," + std::to_string(lengths.size()) + "," + stats(lengths) + "," +
               stats(times) + "\n";
        write_text(opt.out, csv);
        return lengths.empty() ? kExitNoRoute : kExitOk;
    });
}

int cmd_render(const RenderOptions& opt, std::ostream& log) {
    return guarded(log, [&] {
        const DepthGrid grid = open_map(opt.map);
        Route route;
        try {
            route = load_route(opt.route);
        } catch (const std::runtime_error& e) {
            throw InputError(e.what());
        }
        write_text(opt.out, render_svg(grid, route));
        return kExitOk;
    });
}

}  // namespace searoute
