#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "searoute/geometry.hpp"

namespace searoute {

class OutOfMapError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

class MapParseError : public std::runtime_error {
public:
    MapParseError(std::size_t line, const std::string& what);
    std::size_t line() const { return line_; }
    /// The message without the line prefix.
    const std::string& detail() const { return detail_; }

private:
    std::size_t line_;
    std::string detail_;
};

/// Raster of average depths sampled at lattice nodes (i * cell_size,
/// j * cell_size). Depth is positive downward; values <= 0 are land.
/// Immutable after construction.
class DepthGrid {
public:
    /// `depths` is row-major, row j = y index. Throws std::invalid_argument
    /// when the dimensions or values are invalid.
    DepthGrid(std::size_t width_cells, std::size_t height_cells, double cell_size,
              std::vector<double> depths);

    std::size_t width_cells() const { return width_; }
    std::size_t height_cells() const { return height_; }
    double cell_size() const { return cell_size_; }
    std::span<const double> depths() const { return depths_; }

    double node(std::size_t i, std::size_t j) const { return depths_[j * width_ + i]; }

    double extent_x() const { return static_cast<double>(width_ - 1) * cell_size_; }
    double extent_y() const { return static_cast<double>(height_ - 1) * cell_size_; }
    double max_depth() const;

    bool contains(Point p) const;

    /// Bilinear interpolation. Throws OutOfMapError outside the covered area.
    double depth_at(Point p) const;

    /// Conservative minimum depth under `r`. Evaluates a lattice of samples
    /// spaced at most `sample_step` along both rectangle axes (corners and
    /// center included) and, in addition, the exact minimum of the bilinear
    /// surface over the rectangle, so thin shoals between samples are never
    /// missed. Returns 0 when any part of `r` leaves the covered area.
    double min_depth_in_rect(const OrientedRect& r, double sample_step) const;

    /// Same verdict as `min_depth_in_rect(r, sample_step) > threshold`, with
    /// a shortcut through per-cell minima when the whole rectangle sits over
    /// cells that are all deeper than `threshold`.
    bool rect_deeper_than(const OrientedRect& r, double sample_step, double threshold) const;

    friend bool operator==(const DepthGrid& a, const DepthGrid& b) {
        return a.width_ == b.width_ && a.height_ == b.height_ &&
               a.cell_size_ == b.cell_size_ && a.depths_ == b.depths_;
    }

private:
    double cell_value(std::size_t i, std::size_t j, double u, double v) const;
    double exact_min_in_rect(const std::array<Point, 4>& corners) const;
    // Stops early once a sample at or below `stop_at` is seen.
    double lattice_min_in_rect(const OrientedRect& r, double sample_step, double stop_at) const;

    std::size_t width_;
    std::size_t height_;
    double cell_size_;
    std::vector<double> depths_;
    // Minimum of the four corner depths per cell; bounds the bilinear surface
    // from below inside that cell.
    std::vector<double> cell_min_;
};

/// DMAP1 text format: header `DMAP1 <width> <height> <cell_size>` followed by
/// `height` rows of `width` depths. Numbers are written in shortest
/// round-trip form, so save/load is bit-exact.
void write_map(std::ostream& out, const DepthGrid& grid);
DepthGrid read_map(std::istream& in);

void save_map(const DepthGrid& grid, const std::filesystem::path& path);
DepthGrid load_map(const std::filesystem::path& path);

}  // namespace searoute
