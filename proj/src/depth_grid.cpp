#include "searoute/depth_grid.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string_view>

namespace searoute {

MapParseError::MapParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line), detail_(what) {}

DepthGrid::DepthGrid(std::size_t width_cells, std::size_t height_cells, double cell_size,
                     std::vector<double> depths)
    : width_(width_cells), height_(height_cells), cell_size_(cell_size), depths_(std::move(depths)) {
    if (width_ < 2 || height_ < 2) {
        throw std::invalid_argument("depth grid needs at least 2x2 nodes");
    }
    if (!(cell_size_ > 0.0) || !std::isfinite(cell_size_)) {
        throw std::invalid_argument("depth grid cell size must be positive");
    }
    if (depths_.size() != width_ * height_) {
        throw std::invalid_argument("depth grid size does not match its dimensions");
    }
    for (double d : depths_) {
        if (!std::isfinite(d)) throw std::invalid_argument("depth grid contains a non-finite value");
    }
    cell_min_.resize((width_ - 1) * (height_ - 1));
    for (std::size_t j = 0; j + 1 < height_; ++j) {
        for (std::size_t i = 0; i + 1 < width_; ++i) {
            cell_min_[j * (width_ - 1) + i] =
                std::min({node(i, j), node(i + 1, j), node(i, j + 1), node(i + 1, j + 1)});
        }
    }
}

double DepthGrid::max_depth() const { return *std::max_element(depths_.begin(), depths_.end()); }

bool DepthGrid::contains(Point p) const {
    return p.x >= 0.0 && p.y >= 0.0 && p.x <= extent_x() && p.y <= extent_y();
}

double DepthGrid::cell_value(std::size_t i, std::size_t j, double u, double v) const {
    const double d00 = node(i, j);
    const double d10 = node(i + 1, j);
    const double d01 = node(i, j + 1);
    const double d11 = node(i + 1, j + 1);
    const double bottom = d00 * (1.0 - u) + d10 * u;
    const double top = d01 * (1.0 - u) + d11 * u;
    return bottom * (1.0 - v) + top * v;
}

double DepthGrid::depth_at(Point p) const {
    if (!contains(p)) {
        throw OutOfMapError("point (" + std::to_string(p.x) + ", " + std::to_string(p.y) +
                            ") is outside the depth map");
    }
    const double fx = p.x / cell_size_;
    const double fy = p.y / cell_size_;
    const auto i = std::min(static_cast<std::size_t>(fx), width_ - 2);
    const auto j = std::min(static_cast<std::size_t>(fy), height_ - 2);
    return cell_value(i, j, fx - static_cast<double>(i), fy - static_cast<double>(j));
}

namespace {

struct RectAxes {
    Point along;
    Point across;
};

RectAxes axes_of(const OrientedRect& r) {
    const double c = std::cos(r.heading);
    const double s = std::sin(r.heading);
    return {{c, s}, {-s, c}};
}

}  // namespace

double DepthGrid::lattice_min_in_rect(const OrientedRect& r, double sample_step, double stop_at) const {
    const auto [along, across] = axes_of(r);
    const auto n_len = static_cast<std::size_t>(std::max(1.0, std::ceil(r.length / sample_step)));
    const auto n_wid = static_cast<std::size_t>(std::max(1.0, std::ceil(r.width / sample_step)));
    // Corners are inside the map, so any excursion here is rounding only.
    auto clamped_depth = [this](Point p) {
        p.x = std::clamp(p.x, 0.0, extent_x());
        p.y = std::clamp(p.y, 0.0, extent_y());
        return depth_at(p);
    };
    double result = clamped_depth(r.center);
    for (std::size_t a = 0; a <= n_len && result > stop_at; ++a) {
        const double s = -r.length / 2.0 + r.length * static_cast<double>(a) / static_cast<double>(n_len);
        for (std::size_t b = 0; b <= n_wid; ++b) {
            const double t = -r.width / 2.0 + r.width * static_cast<double>(b) / static_cast<double>(n_wid);
            result = std::min(result, clamped_depth(r.center + along * s + across * t));
        }
    }
    return result;
}

// The bilinear surface is a saddle inside every cell, so its minimum over the
// rectangle lies on the boundary of some (rectangle ∩ cell) piece. Along grid
// lines the surface is linear; along the rectangle edges it is quadratic.
double DepthGrid::exact_min_in_rect(const std::array<Point, 4>& corners) const {
    double result = std::numeric_limits<double>::infinity();
    const double cs = cell_size_;
    thread_local std::vector<double> cuts;

    for (std::size_t k = 0; k < 4; ++k) {
        const Point p = corners[k];
        const Point q = corners[(k + 1) % 4];
        const Point d = q - p;
        cuts.assign({0.0, 1.0});
        auto add_cuts = [&](double from, double delta) {
            if (delta == 0.0) return;
            const double lo = std::min(from, from + delta);
            const double hi = std::max(from, from + delta);
            for (double line = std::ceil(lo / cs); line * cs <= hi; line += 1.0) {
                const double t = (line * cs - from) / delta;
                if (t > 0.0 && t < 1.0) cuts.push_back(t);
            }
        };
        add_cuts(p.x, d.x);
        add_cuts(p.y, d.y);
        std::sort(cuts.begin(), cuts.end());

        for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
            const double t0 = cuts[c];
            const double t1 = cuts[c + 1];
            if (!(t1 > t0)) continue;
            const Point mid = p + d * ((t0 + t1) / 2.0);
            const auto i = std::min(static_cast<std::size_t>(std::max(0.0, mid.x / cs)), width_ - 2);
            const auto j = std::min(static_cast<std::size_t>(std::max(0.0, mid.y / cs)), height_ - 2);
            const Point a = p + d * t0;
            const Point b = p + d * t1;
            const double u0 = std::clamp(a.x / cs - static_cast<double>(i), 0.0, 1.0);
            const double v0 = std::clamp(a.y / cs - static_cast<double>(j), 0.0, 1.0);
            const double u1 = std::clamp(b.x / cs - static_cast<double>(i), 0.0, 1.0);
            const double v1 = std::clamp(b.y / cs - static_cast<double>(j), 0.0, 1.0);
            result = std::min({result, cell_value(i, j, u0, v0), cell_value(i, j, u1, v1)});

            const double du = u1 - u0;
            const double dv = v1 - v0;
            const double dx = node(i + 1, j) - node(i, j);
            const double dy = node(i, j + 1) - node(i, j);
            const double dxy = node(i + 1, j + 1) - node(i + 1, j) - node(i, j + 1) + node(i, j);
            const double quad = dxy * du * dv;
            if (quad > 0.0) {
                const double lin = dx * du + dy * dv + dxy * (u0 * dv + v0 * du);
                const double s = -lin / (2.0 * quad);
                if (s > 0.0 && s < 1.0) {
                    result = std::min(result, cell_value(i, j, u0 + du * s, v0 + dv * s));
                }
            }
        }
    }

    // Lattice nodes strictly inside the rectangle.
    double min_x = corners[0].x, max_x = corners[0].x, min_y = corners[0].y, max_y = corners[0].y;
    for (const Point& c : corners) {
        min_x = std::min(min_x, c.x);
        max_x = std::max(max_x, c.x);
        min_y = std::min(min_y, c.y);
        max_y = std::max(max_y, c.y);
    }
    const Point center = (corners[0] + corners[2]) * 0.5;
    const Point e_len = (corners[0] - corners[3]);
    const Point e_wid = (corners[0] - corners[1]);
    const double len2 = dot(e_len, e_len);
    const double wid2 = dot(e_wid, e_wid);
    const auto i0 = static_cast<std::size_t>(std::ceil(min_x / cs));
    const auto i1 = std::min(static_cast<std::size_t>(std::floor(max_x / cs)), width_ - 1);
    const auto j0 = static_cast<std::size_t>(std::ceil(min_y / cs));
    const auto j1 = std::min(static_cast<std::size_t>(std::floor(max_y / cs)), height_ - 1);
    for (std::size_t j = j0; j <= j1; ++j) {
        for (std::size_t i = i0; i <= i1; ++i) {
            const Point rel = Point{static_cast<double>(i) * cs, static_cast<double>(j) * cs} - center;
            if (std::abs(dot(rel, e_len)) <= len2 / 2.0 && std::abs(dot(rel, e_wid)) <= wid2 / 2.0) {
                result = std::min(result, node(i, j));
            }
        }
    }
    return result;
}

double DepthGrid::min_depth_in_rect(const OrientedRect& r, double sample_step) const {
    if (!(sample_step > 0.0)) throw std::invalid_argument("sample step must be positive");
    const auto corners = rect_corners(r);
    for (const Point& c : corners) {
        if (!contains(c)) return 0.0;
    }
    return std::min(lattice_min_in_rect(r, sample_step, -std::numeric_limits<double>::infinity()),
                    exact_min_in_rect(corners));
}

bool DepthGrid::rect_deeper_than(const OrientedRect& r, double sample_step, double threshold) const {
    const auto corners = rect_corners(r);
    double min_x = corners[0].x, max_x = corners[0].x, min_y = corners[0].y, max_y = corners[0].y;
    for (const Point& c : corners) {
        if (!contains(c)) return 0.0 > threshold;
        min_x = std::min(min_x, c.x);
        max_x = std::max(max_x, c.x);
        min_y = std::min(min_y, c.y);
        max_y = std::max(max_y, c.y);
    }
    const auto i0 = std::min(static_cast<std::size_t>(min_x / cell_size_), width_ - 2);
    const auto i1 = std::min(static_cast<std::size_t>(max_x / cell_size_), width_ - 2);
    const auto j0 = std::min(static_cast<std::size_t>(min_y / cell_size_), height_ - 2);
    const auto j1 = std::min(static_cast<std::size_t>(max_y / cell_size_), height_ - 2);
    bool all_deep = true;
    for (std::size_t j = j0; j <= j1 && all_deep; ++j) {
        for (std::size_t i = i0; i <= i1; ++i) {
            if (!(cell_min_[j * (width_ - 1) + i] > threshold)) {
                all_deep = false;
                break;
            }
        }
    }
    if (all_deep) return true;
    if (!(lattice_min_in_rect(r, sample_step, threshold) > threshold)) return false;
    return exact_min_in_rect(corners) > threshold;
}

namespace {

void append_number(std::string& out, double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    out.append(buf, res.ptr);
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (pos < line.size()) {
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
        const std::size_t start = pos;
        while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t' && line[pos] != '\r') ++pos;
        if (pos > start) fields.push_back(line.substr(start, pos - start));
    }
    return fields;
}

template <typename T>
T parse_field(std::string_view field, std::size_t line, const char* what) {
    T value{};
    const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
    if (res.ec != std::errc{} || res.ptr != field.data() + field.size()) {
        throw MapParseError(line, std::string("invalid ") + what + " '" + std::string(field) + "'");
    }
    return value;
}

}  // namespace

void write_map(std::ostream& out, const DepthGrid& grid) {
    std::string text = "DMAP1 " + std::to_string(grid.width_cells()) + " " +
                       std::to_string(grid.height_cells()) + " ";
    append_number(text, grid.cell_size());
    text += '\n';
    for (std::size_t j = 0; j < grid.height_cells(); ++j) {
        for (std::size_t i = 0; i < grid.width_cells(); ++i) {
            if (i > 0) text += ' ';
            append_number(text, grid.node(i, j));
        }
        text += '\n';
    }
    out << text;
}

DepthGrid read_map(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw MapParseError(1, "empty map file");
    const auto header = split_fields(line);
    if (header.size() != 4 || header[0] != "DMAP1") {
        throw MapParseError(1, "expected header 'DMAP1 <width> <height> <cell_size>'");
    }
    const auto width = parse_field<std::size_t>(header[1], 1, "width");
    const auto height = parse_field<std::size_t>(header[2], 1, "height");
    const auto cell = parse_field<double>(header[3], 1, "cell size");
    if (width < 2 || height < 2) throw MapParseError(1, "width and height must be at least 2");
    if (!(cell > 0.0) || !std::isfinite(cell)) throw MapParseError(1, "cell size must be positive");

    std::vector<double> depths;
    depths.reserve(width * height);
    for (std::size_t row = 0; row < height; ++row) {
        const std::size_t line_no = row + 2;
        if (!std::getline(in, line)) {
            throw MapParseError(line_no, "truncated map: row " + std::to_string(row) + " is missing");
        }
        const auto fields = split_fields(line);
        if (fields.size() != width) {
            throw MapParseError(line_no, "row " + std::to_string(row) + " has " +
                                             std::to_string(fields.size()) + " values, expected " +
                                             std::to_string(width));
        }
        for (auto f : fields) {
            const double d = parse_field<double>(f, line_no, "depth");
            if (!std::isfinite(d)) throw MapParseError(line_no, "non-finite depth");
            depths.push_back(d);
        }
    }
    std::size_t line_no = height + 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!split_fields(line).empty()) throw MapParseError(line_no, "unexpected data after last row");
    }
    return DepthGrid(width, height, cell, std::move(depths));
}

void save_map(const DepthGrid& grid, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    write_map(out, grid);
    if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

DepthGrid load_map(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open map '" + path.string() + "'");
    return read_map(in);
}

}  // namespace searoute
