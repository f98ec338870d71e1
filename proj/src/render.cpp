#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <string>

#include "searoute/cli.hpp"

namespace searoute {

namespace {

constexpr double kImageSize = 800.0;  // px along the longer map side
constexpr double kMargin = 20.0;
constexpr double kFooter = 40.0;

constexpr const char* kLandColor = "#d8c99b";
constexpr std::array<const char*, 8> kWaterColors = {"#deebf7", "#c6dbef", "#9ecae1", "#6baed6",
                                                     "#4292c6", "#2171b5", "#08519c", "#08306b"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

// 1, 2 or 5 times a power of ten, close to a fifth of the map width.
double scale_bar_length(double extent) {
    const double target = extent / 5.0;
    const double magnitude = std::pow(10.0, std::floor(std::log10(target)));
    for (double f : {5.0, 2.0, 1.0}) {
        if (f * magnitude <= target) return f * magnitude;
    }
    return magnitude;
}

}  // namespace

std::string render_svg(const DepthGrid& grid, const Route& route) {
    const double ex = grid.extent_x();
    const double ey = grid.extent_y();
    const double px = kImageSize / std::max(ex, ey);
    const double width = ex * px + 2 * kMargin;
    const double height = ey * px + 2 * kMargin + kFooter;
    const auto sx = [&](double x) { return kMargin + x * px; };
    const auto sy = [&](double y) { return kMargin + (ey - y) * px; };

    const double deepest = std::max(grid.max_depth(), 1e-9);
    const auto shade = [&](std::size_t i, std::size_t j) {
        const double d = 0.25 * (grid.node(i, j) + grid.node(i + 1, j) + grid.node(i, j + 1) +
                                 grid.node(i + 1, j + 1));
        if (d <= 0.0) return -1;
        const auto band = static_cast<int>(std::floor(8.0 * d / deepest));
        return std::clamp(band, 0, 7);
    };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) + "\" height=\"" + num(height) +
           "\" viewBox=\"0 0 " + num(width) + " " + num(height) + "\">\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"" + num(width) + "\" height=\"" + num(height) + "\" fill=\"#ffffff\"/>\n";

    svg += "<g shape-rendering=\"crispEdges\">\n";
    const double cs = grid.cell_size();
    for (std::size_t j = 0; j + 1 < grid.height_cells(); ++j) {
        std::size_t i = 0;
        while (i + 1 < grid.width_cells()) {
            const int band = shade(i, j);
            std::size_t end = i + 1;
            while (end + 1 < grid.width_cells() && shade(end, j) == band) ++end;
            const double x0 = static_cast<double>(i) * cs;
            const double x1 = static_cast<double>(end) * cs;
            const double y1 = static_cast<double>(j + 1) * cs;
            svg += "<rect x=\"" + num(sx(x0)) + "\" y=\"" + num(sy(y1)) + "\" width=\"" + num((x1 - x0) * px) +
                   "\" height=\"" + num(cs * px) + "\" fill=\"" +
                   (band < 0 ? kLandColor : kWaterColors[static_cast<std::size_t>(band)]) + "\"/>\n";
            i = end;
        }
    }
    svg += "</g>\n";

    svg += "<polyline fill=\"none\" stroke=\"#d62728\" stroke-width=\"2\" stroke-linejoin=\"round\" points=\"";
    for (std::size_t k = 0; k < route.size(); ++k) {
        const Point& p = route.waypoints[k].position;
        if (k > 0) svg += ' ';
        svg += num(sx(p.x)) + "," + num(sy(p.y));
    }
    svg += "\"/>\n";

    if (route.size() > 0) {
        const Point s = route.start();
        const Point d = route.destination();
        svg += "<circle cx=\"" + num(sx(s.x)) + "\" cy=\"" + num(sy(s.y)) +
               "\" r=\"6\" fill=\"#2ca02c\" stroke=\"#000000\"><title>start</title></circle>\n";
        svg += "<circle cx=\"" + num(sx(d.x)) + "\" cy=\"" + num(sy(d.y)) +
               "\" r=\"6\" fill=\"#ff7f0e\" stroke=\"#000000\"><title>destination</title></circle>\n";
    }

    const double bar = scale_bar_length(ex);
    const double bar_y = height - kFooter / 2.0;
    svg += "<line x1=\"" + num(kMargin) + "\" y1=\"" + num(bar_y) + "\" x2=\"" + num(kMargin + bar * px) +
           "\" y2=\"" + num(bar_y) + "\" stroke=\"#000000\" stroke-width=\"3\"/>\n";
    char label[64];
    std::snprintf(label, sizeof label, "%g m", bar);
    svg += "<text x=\"" + num(kMargin + bar * px + 8.0) + "\" y=\"" + num(bar_y + 5.0) +
           "\" font-family=\"sans-serif\" font-size=\"14\">" + label + "</text>\n";
    svg += "</svg>\n";
    return svg;
}

}  // namespace searoute
