#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "searoute/cli.hpp"

int main(int argc, char** argv) {
    using namespace searoute;

    CLI::App app{"Depth-aware ship route planner"};
    app.require_subcommand(1);

    GenmapOptions gen;
    std::string archetype = "wall";
    auto* genmap = app.add_subcommand("genmap", "Generate a synthetic depth map");
    genmap->add_option("--archetype", archetype, "wall, labyrinth or islands")
        ->check(CLI::IsMember({"wall", "labyrinth", "islands"}));
    genmap->add_option("--size", gen.size, "Side length in meters (500, or 20000 for islands)");
    genmap->add_option("--deep", gen.deep, "Open-water depth in meters (20, or 50 for islands)");
    genmap->add_option("--islands", gen.islands, "Island count for the islands archetype")->capture_default_str();
    genmap->add_option("--seed", gen.seed, "First seed tried for the islands archetype")->capture_default_str();
    genmap->add_option("--out", gen.out, "Output map file")->required();

    PlanOptions plan;
    auto* plan_cmd = app.add_subcommand("plan", "Plan one route");
    plan_cmd->add_option("--map", plan.map, "Depth map file")->required()->check(CLI::ExistingFile);
    plan_cmd->add_option("--config", plan.config, "Run configuration file")->required()->check(CLI::ExistingFile);
    plan_cmd->add_option("--start", plan.start, "Start point x,y in meters");
    plan_cmd->add_option("--dest", plan.dest, "Destination point x,y in meters");
    plan_cmd->add_option("--route-out", plan.route_out, "Route output file")->required();
    plan_cmd->add_option("--report-out", plan.report_out, "Run report output file");

    BenchOptions bench;
    auto* bench_cmd = app.add_subcommand("bench", "Repeat a run with consecutive seeds and aggregate");
    bench_cmd->add_option("--map", bench.map, "Depth map file")->required()->check(CLI::ExistingFile);
    bench_cmd->add_option("--config", bench.config, "Run configuration file")->required()->check(CLI::ExistingFile);
    bench_cmd->add_option("--runs", bench.runs, "Number of runs")->capture_default_str()->check(CLI::PositiveNumber);
    bench_cmd->add_option("--start", bench.start, "Start point x,y in meters");
    bench_cmd->add_option("--dest", bench.dest, "Destination point x,y in meters");
    bench_cmd->add_option("--out", bench.out, "CSV output file")->required();

    RenderOptions render;
    auto* render_cmd = app.add_subcommand("render", "Draw a map and a route as SVG");
    render_cmd->add_option("--map", render.map, "Depth map file")->required()->check(CLI::ExistingFile);
    render_cmd->add_option("--route", render.route, "Route file")->required()->check(CLI::ExistingFile);
    render_cmd->add_option("--out", render.out, "SVG output file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInputError;
    }

    try {
        if (*genmap) {
            gen.archetype = parse_archetype(archetype);
            return cmd_genmap(gen, std::cerr);
        }
        if (*plan_cmd) return cmd_plan(plan, std::cerr);
        if (*bench_cmd) return cmd_bench(bench, std::cerr);
        return cmd_render(render, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
}
