#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "errscope/metrics.hpp"

namespace errscope {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Point2&) const = default;
};

/// Row-major 2x2 matrix.
struct Matrix2 {
  double xx = 0.0, xy = 0.0, yx = 0.0, yy = 0.0;

  static constexpr Matrix2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static constexpr Matrix2 diagonal(double a, double b) { return {a, 0.0, 0.0, b}; }

  double det() const { return xx * yy - xy * yx; }
  std::array<double, 4> row_major() const { return {xx, xy, yx, yy}; }
  Matrix2 operator*(const Matrix2& o) const;
  Point2 operator*(const Point2& p) const { return {xx * p.x + xy * p.y, yx * p.x + yy * p.y}; }
  bool operator==(const Matrix2&) const = default;
};

enum class Zone { a_better, b_better, tie };
enum class Quadrant { over_over, over_under, under_over, under_under, on_axis };
enum class DistanceMetric { euclidean, mahalanobis };

std::string_view to_string(Zone z);
std::string_view to_string(Quadrant q);
std::string_view to_string(DistanceMetric m);
std::optional<DistanceMetric> parse_metric(std::string_view name);

inline constexpr std::array<Zone, 3> all_zones{Zone::a_better, Zone::b_better, Zone::tie};
inline constexpr std::array<Quadrant, 5> all_quadrants{Quadrant::over_over, Quadrant::over_under,
                                                       Quadrant::under_over, Quadrant::under_under,
                                                       Quadrant::on_axis};

/// Model A is better where its absolute error is strictly smaller. Both
/// diagonals (|e1| == |e2|, exact comparison) are ties.
Zone classify_zone(double e1, double e2);

/// e1 > 0: model A overestimates; e2 > 0: model B overestimates. Any exact
/// zero coordinate is on_axis.
Quadrant classify_quadrant(double e1, double e2);

std::vector<Point2> zip_points(std::span<const double> e1, std::span<const double> e2);

/// Componentwise median, same interpolation rule as boxplot quartiles.
Point2 median2d(std::span<const Point2> points);

/// Mean-centred sample covariance with 1/(N-1) normalization. N >= 2.
Matrix2 covariance2(std::span<const Point2> points);

struct RegularizedInverse {
  Matrix2 inverse;
  double ridge = 0.0;  // added to the diagonal before inversion, 0 if none
};

/// Inverts a covariance, adding ridge 1e-9 * max(var_x, var_y, 1) to the
/// diagonal first when it is singular or its condition number exceeds 1e12.
RegularizedInverse regularized_inverse(const Matrix2& cov);

double condition_number(const Matrix2& symmetric);

/// sqrt(d' * cov_inv * d), d = p - center. Throws NonPositiveDefinite when
/// cov_inv is not symmetric positive definite.
double mahalanobis(Point2 p, Point2 center, const Matrix2& cov_inv);
double euclidean(Point2 p, Point2 center);

/// Distances of every point from `center`. One pass, no per-point setup.
std::vector<double> distances(std::span<const Point2> points, Point2 center, DistanceMetric metric,
                              const Matrix2& cov_inv = Matrix2::identity());

/// Midrank percentile: (#strictly smaller + 0.5 * #tied incl. self) / N.
std::vector<double> percentile_ranks(std::span<const double> values);

/// Median of the distances; splits points into equal inside/outside halves.
double crown_threshold(std::span<const double> distances);

struct ErrorSpacePoint {
  double e1 = 0.0;
  double e2 = 0.0;
  Zone zone = Zone::tie;
  Quadrant quadrant = Quadrant::on_axis;
  double distance = 0.0;
  double percentile = 0.0;
};

struct ErrorSpaceAnalysis {
  std::vector<ErrorSpacePoint> points;
  Point2 median2d;
  Matrix2 covariance;
  Matrix2 covariance_inverse;
  double ridge = 0.0;
  DistanceMetric metric = DistanceMetric::mahalanobis;
  double crown_threshold = 0.0;
  std::array<std::size_t, 3> zone_counts{};      // indexed by Zone
  std::array<std::size_t, 5> quadrant_counts{};  // indexed by Quadrant

  std::size_t zone_count(Zone z) const { return zone_counts[static_cast<std::size_t>(z)]; }
  std::size_t quadrant_count(Quadrant q) const { return quadrant_counts[static_cast<std::size_t>(q)]; }
  std::vector<Point2> xy() const;
};

/// Builds the full 2D error space for a model pair. Model A's errors go on
/// the x axis. Mahalanobis needs N >= 3 (DegenerateDistribution otherwise).
ErrorSpaceAnalysis analyze_pair(const ErrorVector& ea, const ErrorVector& eb, DistanceMetric metric);

}  // namespace errscope
