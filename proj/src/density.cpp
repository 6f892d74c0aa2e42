#include "errscope/density.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "errscope/error.hpp"
#include "errscope/metrics.hpp"

namespace errscope {

namespace {

double sample_sd(std::span<const double> v) {
  const double n = static_cast<double>(v.size());
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= n;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / (n - 1.0));
}

double iqr(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return quantile_sorted(v, 0.75) - quantile_sorted(v, 0.25);
}

void require_valid_grid(const GridSpec& g) {
  if (g.nx == 0 || g.ny == 0 || !(g.x_max > g.x_min) || !(g.y_max > g.y_min)) {
    throw Error(ErrorKind::InvalidArgument, "KDE grid needs positive resolution and non-empty bounds");
  }
}

// Gaussian weights of one point against every grid coordinate on one axis.
void axis_kernel(double p, double h, std::size_t count, double lo, double step, double* out) {
  const double norm = 1.0 / (h * std::sqrt(2.0 * std::numbers::pi));
  for (std::size_t i = 0; i < count; ++i) {
    const double g = lo + (static_cast<double>(i) + 0.5) * step;
    const double z = (g - p) / h;
    out[i] = norm * std::exp(-0.5 * z * z);
  }
}

}  // namespace

double KdeGrid::max_value() const {
  return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
}

double KdeGrid::mass() const {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum * grid.dx() * grid.dy();
}

Bandwidth scott_bandwidth(std::span<const Point2> points) {
  if (points.size() < 2) throw Error(ErrorKind::DegenerateDistribution, "KDE needs at least two points");
  std::vector<double> xs, ys;
  xs.reserve(points.size());
  ys.reserve(points.size());
  for (const auto& p : points) {
    xs.push_back(p.x);
    ys.push_back(p.y);
  }
  const double factor = std::pow(static_cast<double>(points.size()), -1.0 / 6.0);
  auto spread = [&](const std::vector<double>& v) {
    const double sd = sample_sd(v);
    return sd > 0.0 ? sd : iqr(v) / 1.349;
  };
  double hx = spread(xs) * factor;
  double hy = spread(ys) * factor;
  if (hx == 0.0 && hy == 0.0) {
    throw Error(ErrorKind::DegenerateDistribution, "all points identical, bandwidth undefined");
  }
  if (hx == 0.0) hx = hy;
  if (hy == 0.0) hy = hx;
  return {hx, hy};
}

GridSpec padded_grid(std::span<const Point2> points, const Bandwidth& bw, double pad_bandwidths, std::size_t nx,
                     std::size_t ny) {
  if (points.empty()) throw Error(ErrorKind::DegenerateDistribution, "grid of an empty point set");
  auto [xlo, xhi] = std::minmax_element(points.begin(), points.end(),
                                        [](const Point2& a, const Point2& b) { return a.x < b.x; });
  auto [ylo, yhi] = std::minmax_element(points.begin(), points.end(),
                                        [](const Point2& a, const Point2& b) { return a.y < b.y; });
  GridSpec g;
  g.x_min = xlo->x - pad_bandwidths * bw.hx;
  g.x_max = xhi->x + pad_bandwidths * bw.hx;
  g.y_min = ylo->y - pad_bandwidths * bw.hy;
  g.y_max = yhi->y + pad_bandwidths * bw.hy;
  g.nx = nx;
  g.ny = ny;
  return g;
}

KdeGrid kde2d(std::span<const Point2> points, std::optional<GridSpec> grid, std::optional<Bandwidth> bandwidth) {
  if (points.size() < 2) throw Error(ErrorKind::DegenerateDistribution, "KDE needs at least two points");
  KdeGrid out;
  out.bandwidth = bandwidth ? *bandwidth : scott_bandwidth(points);
  if (!(out.bandwidth.hx > 0.0) || !(out.bandwidth.hy > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "bandwidths must be positive");
  }
  out.grid = grid ? *grid : padded_grid(points, out.bandwidth);
  require_valid_grid(out.grid);

  const auto& g = out.grid;
  const std::size_t nx = g.nx, ny = g.ny;
  out.values.assign(nx * ny, 0.0);

  // The product kernel separates per axis. Points are folded in chunks, in
  // input order, so every cell accumulates the same sequence of terms.
  constexpr std::size_t chunk = 2048;
  std::vector<double> kx(chunk * nx), ky(chunk * ny);
  for (std::size_t base = 0; base < points.size(); base += chunk) {
    const std::size_t m = std::min(chunk, points.size() - base);
    for (std::size_t k = 0; k < m; ++k) {
      const auto& p = points[base + k];
      axis_kernel(p.x, out.bandwidth.hx, nx, g.x_min, g.dx(), &kx[k * nx]);
      axis_kernel(p.y, out.bandwidth.hy, ny, g.y_min, g.dy(), &ky[k * ny]);
    }
    for (std::size_t i = 0; i < nx; ++i) {
      double* row = &out.values[i * ny];
      for (std::size_t k = 0; k < m; ++k) {
        const double w = kx[k * nx + i];
        if (w == 0.0) continue;
        const double* col = &ky[k * ny];
        for (std::size_t j = 0; j < ny; ++j) row[j] += w * col[j];
      }
    }
  }
  const double inv_n = 1.0 / static_cast<double>(points.size());
  for (double& v : out.values) v *= inv_n;
  return out;
}

std::size_t HexbinLayer::total() const {
  std::size_t t = 0;
  for (const auto& c : cells) t += c.count;
  return t;
}

std::size_t HexbinLayer::max_count() const {
  std::size_t m = 0;
  for (const auto& c : cells) m = std::max(m, c.count);
  return m;
}

AxialCoord hex_cell_of(Point2 p, double hex_radius, Point2 origin) {
  const double x = (p.x - origin.x) / hex_radius;
  const double y = (p.y - origin.y) / hex_radius;
  const double qf = std::sqrt(3.0) / 3.0 * x - y / 3.0;
  const double rf = 2.0 / 3.0 * y;
  const double sf = -qf - rf;

  double q = std::round(qf), r = std::round(rf), s = std::round(sf);
  const double dq = std::abs(q - qf), dr = std::abs(r - rf), ds = std::abs(s - sf);
  if (dq > dr && dq > ds) q = -r - s;
  else if (dr > ds) r = -q - s;
  return {static_cast<int>(q), static_cast<int>(r)};
}

Point2 hex_center(AxialCoord c, double hex_radius, Point2 origin) {
  const double q = c.q, r = c.r;
  return {origin.x + hex_radius * std::sqrt(3.0) * (q + 0.5 * r), origin.y + hex_radius * 1.5 * r};
}

Point2 hex_corner(Point2 center, double hex_radius, int k) {
  const double angle = std::numbers::pi / 180.0 * (60.0 * k + 30.0);
  return {center.x + hex_radius * std::cos(angle), center.y + hex_radius * std::sin(angle)};
}

HexbinLayer hexbin(std::span<const Point2> points, double hex_radius) {
  if (!(hex_radius > 0.0) || !std::isfinite(hex_radius)) {
    throw Error(ErrorKind::InvalidArgument, "hex radius must be positive");
  }
  std::map<std::pair<int, int>, std::size_t> counts;
  for (const auto& p : points) {
    const auto c = hex_cell_of(p, hex_radius);
    ++counts[{c.q, c.r}];
  }
  HexbinLayer layer;
  layer.hex_radius = hex_radius;
  layer.cells.reserve(counts.size());
  for (const auto& [key, count] : counts) layer.cells.push_back({key.first, key.second, count});
  return layer;
}

double default_hex_radius(std::span<const Point2> points) {
  if (points.empty()) return 1.0;
  double xlo = points[0].x, xhi = xlo, ylo = points[0].y, yhi = ylo;
  for (const auto& p : points) {
    xlo = std::min(xlo, p.x);
    xhi = std::max(xhi, p.x);
    ylo = std::min(ylo, p.y);
    yhi = std::max(yhi, p.y);
  }
  const double diag = std::hypot(xhi - xlo, yhi - ylo);
  return diag > 0.0 ? diag / 40.0 : 1.0;
}

}  // namespace errscope
