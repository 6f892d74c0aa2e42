#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "errscope/errorspace.hpp"

namespace errscope {

struct Bandwidth {
  double hx = 1.0;
  double hy = 1.0;
};

/// Evaluation grid. Values are sampled at cell centres:
/// x_i = x_min + (i + 0.5) * (x_max - x_min) / nx.
struct GridSpec {
  double x_min = 0.0, x_max = 1.0, y_min = 0.0, y_max = 1.0;
  std::size_t nx = 200, ny = 200;

  double dx() const { return (x_max - x_min) / static_cast<double>(nx); }
  double dy() const { return (y_max - y_min) / static_cast<double>(ny); }
  double x_at(std::size_t i) const { return x_min + (static_cast<double>(i) + 0.5) * dx(); }
  double y_at(std::size_t j) const { return y_min + (static_cast<double>(j) + 0.5) * dy(); }
};

struct KdeGrid {
  GridSpec grid;
  Bandwidth bandwidth;
  std::vector<double> values;  // row-major over x: values[i * ny + j] at (x_at(i), y_at(j))

  double at(std::size_t i, std::size_t j) const { return values[i * grid.ny + j]; }
  double max_value() const;
  /// Sum of value * cell area.
  double mass() const;
};

/// Scott's rule per axis, h = sigma * N^(-1/6). An axis with zero spread falls
/// back to IQR/1.349, then to the other axis' bandwidth. Throws
/// DegenerateDistribution when both axes have zero spread.
Bandwidth scott_bandwidth(std::span<const Point2> points);

/// Data bounds padded by `pad_bandwidths` bandwidths on every side.
GridSpec padded_grid(std::span<const Point2> points, const Bandwidth& bw, double pad_bandwidths = 3.0,
                     std::size_t nx = 200, std::size_t ny = 200);

/// Product-Gaussian KDE evaluated by direct summation. N >= 2.
KdeGrid kde2d(std::span<const Point2> points, std::optional<GridSpec> grid = std::nullopt,
              std::optional<Bandwidth> bandwidth = std::nullopt);

struct HexCell {
  int q = 0;
  int r = 0;
  std::size_t count = 0;

  bool operator==(const HexCell&) const = default;
};

/// Pointy-top hexagonal lattice anchored at the origin; cells ordered by (q, r).
struct HexbinLayer {
  double hex_radius = 1.0;
  Point2 origin{};
  std::vector<HexCell> cells;

  std::size_t total() const;
  std::size_t max_count() const;
};

struct AxialCoord {
  int q = 0;
  int r = 0;

  bool operator==(const AxialCoord&) const = default;
};

/// Nearest hexagon centre via cube rounding.
AxialCoord hex_cell_of(Point2 p, double hex_radius, Point2 origin = {});
Point2 hex_center(AxialCoord c, double hex_radius, Point2 origin = {});
/// Corner k (0..5) of a pointy-top hexagon; corner 0 points up-right at 30 degrees.
Point2 hex_corner(Point2 center, double hex_radius, int k);

HexbinLayer hexbin(std::span<const Point2> points, double hex_radius);

/// Bounding-box diagonal / 40, or 1 for a zero-size box.
double default_hex_radius(std::span<const Point2> points);

}  // namespace errscope
