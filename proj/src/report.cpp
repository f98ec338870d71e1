#include <chrono>

#include <json.hpp>

#include "searoute/cli.hpp"

namespace searoute {

std::string report_to_json(const RunReport& report) {
    using nlohmann::ordered_json;
    const auto cost = [](double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); };
    ordered_json best = ordered_json::array();
    ordered_json mean = ordered_json::array();
    for (const auto& s : report.history) {
        best.push_back(cost(s.best));
        mean.push_back(cost(s.mean));
    }
    ordered_json doc = {
        {"format", "searoute-report/1"},
        {"success", report.success},
        {"route_length_m", report.route_length},
        {"arrival_time_s", report.arrival_time},
        {"waypoint_count", report.waypoint_count},
        {"wall_time_s", report.wall_time},
        {"generations", report.generations},
        {"islands", report.islands},
        {"seed", report.seed},
        {"history", {{"best", best}, {"mean", mean}}},
    };
    return doc.dump(2) + "\n";
}

PlanOutcome plan_on_map(const DepthGrid& grid, const RunConfig& cfg, Point start, Point dest) {
    const IslandSetConfig set = cfg.island_set();
    const auto t0 = std::chrono::steady_clock::now();
    IslandsResult result = run_islands(set, cfg.ship, grid, start, dest);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - t0;

    PlanOutcome out;
    RunReport& r = out.report;
    r.wall_time = elapsed.count();
    r.generations = set.shared_generations;
    r.islands = set.islands.size();
    r.seed = cfg.seed;
    r.history = std::move(result.combined_history);
    if (result.best) {
        r.success = true;
        r.route_length = result.best->length();
        r.arrival_time = result.best->arrival_time();
        r.waypoint_count = result.best->size();
        out.route = std::move(result.best);
    }
    return out;
}

}  // namespace searoute
