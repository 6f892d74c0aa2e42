#include <doctest.h>

#include <map>
#include <numbers>

#include "errscope/density.hpp"
#include "support.hpp"

using namespace errscope;
using doctest::Approx;
using testkit::error_kind_of;

namespace {

double sample_sd(const std::vector<double>& v) {
  double m = 0;
  for (double x : v) m += x;
  m /= static_cast<double>(v.size());
  double s = 0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

// Direct double loop, no separation.
double kde_oracle(const std::vector<Point2>& pts, Bandwidth bw, double x, double y) {
  double s = 0;
  for (const auto& p : pts) {
    const double u = (x - p.x) / bw.hx, v = (y - p.y) / bw.hy;
    s += std::exp(-0.5 * (u * u + v * v));
  }
  return s / (2 * std::numbers::pi * bw.hx * bw.hy * static_cast<double>(pts.size()));
}

}  // namespace

TEST_CASE("scott bandwidth") {
  testkit::Gen g(41);
  const auto pts = g.gaussian_points(500, 3.0, 7.0, 0.4);
  std::vector<double> xs, ys;
  for (const auto& p : pts) xs.push_back(p.x), ys.push_back(p.y);
  const auto bw = scott_bandwidth(pts);
  CHECK(bw.hx == Approx(sample_sd(xs) * std::pow(500.0, -1.0 / 6.0)).epsilon(1e-12));
  CHECK(bw.hy == Approx(sample_sd(ys) * std::pow(500.0, -1.0 / 6.0)).epsilon(1e-12));

  const std::vector<Point2> flat_x{{1, 0}, {1, 2}, {1, 5}, {1, 9}};
  const auto fb = scott_bandwidth(flat_x);
  CHECK(fb.hx == fb.hy);
  CHECK(fb.hy > 0);

  const std::vector<Point2> same{{2, 2}, {2, 2}, {2, 2}};
  CHECK(error_kind_of([&] { scott_bandwidth(same); }) == ErrorKind::DegenerateDistribution);
  CHECK(error_kind_of([&] { kde2d(same); }) == ErrorKind::DegenerateDistribution);
  CHECK(error_kind_of([] { kde2d(std::vector<Point2>{{1, 2}}); }) == ErrorKind::DegenerateDistribution);
}

TEST_CASE("kde peak of a single cluster equals the Gaussian normaliser") {
  const std::vector<Point2> cluster(7, Point2{0, 0});
  const Bandwidth bw{0.8, 1.7};
  // 11 cells over [-5.5, 5.5]: the centre of cell 5 is exactly 0.
  const GridSpec grid{-5.5, 5.5, -5.5, 5.5, 11, 11};
  const auto k = kde2d(cluster, grid, bw);
  CHECK(grid.x_at(5) == 0.0);
  CHECK(k.at(5, 5) == Approx(1.0 / (2 * std::numbers::pi * bw.hx * bw.hy)).epsilon(1e-14));
  CHECK(k.max_value() == k.at(5, 5));
}

TEST_CASE("kde matches the direct double-sum oracle") {
  testkit::Gen g(42);
  const auto pts = g.gaussian_points(300, 2.0, 5.0, -0.3);
  const auto bw = scott_bandwidth(pts);
  const auto k = kde2d(pts, padded_grid(pts, bw, 3.0, 23, 17), bw);
  for (std::size_t i = 0; i < 23; i += 3)
    for (std::size_t j = 0; j < 17; j += 2)
      CHECK(k.at(i, j) == Approx(kde_oracle(pts, bw, k.grid.x_at(i), k.grid.y_at(j))).epsilon(1e-12));
}

TEST_CASE("kde default grid and total mass") {
  testkit::Gen g(43);
  const auto pts = g.gaussian_points(200, 4.0, 1.0, 0.7);
  const auto k = kde2d(pts);
  CHECK(k.grid.nx == 200);
  CHECK(k.grid.ny == 200);
  double xmin = 1e300, xmax = -1e300;
  for (const auto& p : pts) xmin = std::min(xmin, p.x), xmax = std::max(xmax, p.x);
  CHECK(k.grid.x_min == Approx(xmin - 3 * k.bandwidth.hx));
  CHECK(k.grid.x_max == Approx(xmax + 3 * k.bandwidth.hx));
  for (double v : k.values) CHECK((v >= 0.0 && std::isfinite(v)));

  const auto wide = kde2d(pts, padded_grid(pts, k.bandwidth, 4.0, 400, 400), k.bandwidth);
  CHECK(wide.mass() == Approx(1.0).epsilon(0.02));
}

TEST_CASE("kde: two mirrored clusters give equal maxima") {
  std::vector<Point2> pts;
  for (double dx : {-0.3, 0.0, 0.4})
    for (double dy : {-0.2, 0.5}) {
      pts.push_back({-10 + dx, dy});
      pts.push_back({10 - dx, dy});
    }
  const auto k = kde2d(pts, GridSpec{-20, 20, -4, 4, 160, 32}, Bandwidth{1.0, 1.0});
  double left = 0, right = 0;
  for (std::size_t i = 0; i < 80; ++i)
    for (std::size_t j = 0; j < 32; ++j) {
      left = std::max(left, k.at(i, j));
      right = std::max(right, k.at(159 - i, j));
    }
  CHECK(left > 0.01);
  CHECK(std::fabs(left - right) < 1e-9);
}

TEST_CASE("property: kde translation and permutation invariance") {
  testkit::Gen g(44);
  for (int t = 0; t < 10; ++t) {
    const auto pts = g.gaussian_points(g.size(2, 300), g.uniform(0.5, 5), g.uniform(0.5, 5), g.uniform(-0.8, 0.8));
    const auto bw = scott_bandwidth(pts);
    const auto grid = padded_grid(pts, bw, 3.0, 40, 30);
    const auto base = kde2d(pts, grid, bw);

    const double a = g.uniform(-100, 100), b = g.uniform(-100, 100);
    auto moved = pts;
    for (auto& p : moved) p.x += a, p.y += b;
    auto grid2 = grid;
    grid2.x_min += a, grid2.x_max += a, grid2.y_min += b, grid2.y_max += b;
    const auto shifted = kde2d(moved, grid2, bw);

    auto perm = pts;
    std::shuffle(perm.begin(), perm.end(), g.eng);
    const auto permuted = kde2d(perm, grid, bw);
    for (std::size_t c = 0; c < base.values.size(); ++c) {
      CHECK(std::fabs(shifted.values[c] - base.values[c]) < 1e-12);
      CHECK(std::fabs(permuted.values[c] - base.values[c]) < 1e-12);
    }
  }
}

TEST_CASE("kde is deterministic across calls") {
  testkit::Gen g(45);
  const auto pts = g.gaussian_points(5000, 3, 3, 0.2);  // more than one chunk
  CHECK(kde2d(pts).values == kde2d(pts).values);
}

TEST_CASE("hex lattice geometry") {
  const double R = 2.0;
  CHECK(hex_center({0, 0}, R) == Point2{0, 0});
  const auto c = hex_center({1, 2}, R);
  CHECK(c.x == Approx(R * std::sqrt(3.0) * 2.0));
  CHECK(c.y == Approx(1.5 * R * 2));
  for (int k = 0; k < 6; ++k) {
    const auto v = hex_corner(c, R, k);
    CHECK(std::hypot(v.x - c.x, v.y - c.y) == Approx(R));
  }
  const auto v0 = hex_corner({0, 0}, R, 0);
  CHECK(v0.x == Approx(R * std::cos(std::numbers::pi / 6)));
  CHECK(v0.y == Approx(R * 0.5));
  CHECK(hex_cell_of(c, R) == AxialCoord{1, 2});
  CHECK(hex_cell_of({c.x + 0.9, c.y - 0.9}, R) == AxialCoord{1, 2});
}

TEST_CASE("hexbin examples") {
  const auto one = hexbin(std::vector<Point2>{{0, 0}}, 0.37);
  REQUIRE(one.cells.size() == 1);
  CHECK(one.cells[0] == HexCell{0, 0, 1});

  std::vector<Point2> inside;
  for (int i = 0; i < 50; ++i) inside.push_back({10.0 + 0.01 * std::sin(i), 10.0 + 0.01 * std::cos(i)});
  const auto single = hexbin(inside, 3.0);
  REQUIRE(single.cells.size() == 1);
  CHECK(single.cells[0].count == 50);

  CHECK(error_kind_of([] { hexbin(std::vector<Point2>{{0, 0}}, 0.0); }) == ErrorKind::InvalidArgument);
  CHECK(default_hex_radius(std::vector<Point2>{{0, 0}, {30, 40}}) == Approx(50.0 / 40.0));
  CHECK(default_hex_radius(std::vector<Point2>{{1, 1}}) == 1.0);
}

TEST_CASE("hexbin conservation and brute-force nearest centre") {
  testkit::Gen g(46);
  for (double radius : {0.7, 3.0, 11.0}) {
    const auto pts = g.points(10000, -40, 40);
    const auto layer = hexbin(pts, radius);
    CHECK(layer.total() == 10000);
    for (std::size_t k = 1; k < layer.cells.size(); ++k) {
      const auto& a = layer.cells[k - 1];
      const auto& b = layer.cells[k];
      CHECK(std::pair(a.q, a.r) < std::pair(b.q, b.r));
      CHECK(b.count >= 1);
    }
    std::vector<Point2> centers;
    for (const auto& c : layer.cells) centers.push_back(hex_center({c.q, c.r}, radius));
    std::map<std::pair<int, int>, std::size_t> tally;
    std::size_t mismatches = 0;
    for (const auto& p : pts) {
      const auto cell = hex_cell_of(p, radius);
      ++tally[{cell.q, cell.r}];
      double best = 1e300;
      for (const auto& c : centers) best = std::min(best, std::hypot(p.x - c.x, p.y - c.y));
      const auto own = hex_center(cell, radius);
      if (std::hypot(p.x - own.x, p.y - own.y) > best + 1e-12) ++mismatches;
    }
    CHECK(mismatches == 0);
    for (const auto& c : layer.cells) CHECK(tally[{c.q, c.r}] == c.count);
  }
}
