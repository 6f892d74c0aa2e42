#include "errscope/errorspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "errscope/error.hpp"

namespace errscope {

Matrix2 Matrix2::operator*(const Matrix2& o) const {
  return {xx * o.xx + xy * o.yx, xx * o.xy + xy * o.yy, yx * o.xx + yy * o.yx, yx * o.xy + yy * o.yy};
}

std::string_view to_string(Zone z) {
  switch (z) {
    case Zone::a_better: return "A_better";
    case Zone::b_better: return "B_better";
    case Zone::tie: return "tie";
  }
  return "tie";
}

std::string_view to_string(Quadrant q) {
  switch (q) {
    case Quadrant::over_over: return "over_over";
    case Quadrant::over_under: return "over_under";
    case Quadrant::under_over: return "under_over";
    case Quadrant::under_under: return "under_under";
    case Quadrant::on_axis: return "on_axis";
  }
  return "on_axis";
}

std::string_view to_string(DistanceMetric m) {
  return m == DistanceMetric::euclidean ? "euclidean" : "mahalanobis";
}

std::optional<DistanceMetric> parse_metric(std::string_view name) {
  if (name == "euclidean") return DistanceMetric::euclidean;
  if (name == "mahalanobis") return DistanceMetric::mahalanobis;
  return std::nullopt;
}

Zone classify_zone(double e1, double e2) {
  const double a = std::abs(e1);
  const double b = std::abs(e2);
  if (a < b) return Zone::a_better;
  if (a > b) return Zone::b_better;
  return Zone::tie;
}

Quadrant classify_quadrant(double e1, double e2) {
  if (e1 == 0.0 || e2 == 0.0) return Quadrant::on_axis;
  if (e1 > 0.0) return e2 > 0.0 ? Quadrant::over_over : Quadrant::over_under;
  return e2 > 0.0 ? Quadrant::under_over : Quadrant::under_under;
}

std::vector<Point2> zip_points(std::span<const double> e1, std::span<const double> e2) {
  if (e1.size() != e2.size()) {
    throw Error(ErrorKind::LengthMismatch, "error vectors have lengths " + std::to_string(e1.size()) + " and " +
                                               std::to_string(e2.size()));
  }
  std::vector<Point2> pts(e1.size());
  for (std::size_t i = 0; i < e1.size(); ++i) pts[i] = {e1[i], e2[i]};
  return pts;
}

Point2 median2d(std::span<const Point2> points) {
  if (points.empty()) throw Error(ErrorKind::DegenerateDistribution, "median of an empty point set");
  std::vector<double> xs(points.size()), ys(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    xs[i] = points[i].x;
    ys[i] = points[i].y;
  }
  return {median(xs), median(ys)};
}

Matrix2 covariance2(std::span<const Point2> points) {
  if (points.size() < 2) {
    throw Error(ErrorKind::DegenerateDistribution, "covariance needs at least two points");
  }
  const double n = static_cast<double>(points.size());
  double mx = 0.0, my = 0.0;
  for (const auto& p : points) {
    mx += p.x;
    my += p.y;
  }
  mx /= n;
  my /= n;
  // Fixed input-order accumulation keeps results bitwise reproducible.
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (const auto& p : points) {
    const double dx = p.x - mx;
    const double dy = p.y - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  const double d = n - 1.0;
  return {sxx / d, sxy / d, sxy / d, syy / d};
}

double condition_number(const Matrix2& m) {
  const double tr = m.xx + m.yy;
  const double disc = std::hypot(m.xx - m.yy, m.xy + m.yx);
  const double hi = 0.5 * (tr + disc);
  const double lo = 0.5 * (tr - disc);
  if (!(lo > 0.0)) return std::numeric_limits<double>::infinity();
  return hi / lo;
}

RegularizedInverse regularized_inverse(const Matrix2& cov) {
  RegularizedInverse out;
  Matrix2 m = cov;
  if (m.det() <= 0.0 || condition_number(m) > 1e12) {
    out.ridge = 1e-9 * std::max({cov.xx, cov.yy, 1.0});
    m.xx += out.ridge;
    m.yy += out.ridge;
  }
  const double det = m.det();
  if (!(det > 0.0) || !std::isfinite(det)) {
    throw Error(ErrorKind::NonPositiveDefinite, "covariance is not positive definite after regularization");
  }
  out.inverse = {m.yy / det, -m.xy / det, -m.yx / det, m.xx / det};
  return out;
}

namespace {

void require_spd(const Matrix2& m) {
  const double scale = std::max(std::abs(m.xy), std::abs(m.yx));
  const bool symmetric = std::abs(m.xy - m.yx) <= 1e-12 * scale;
  if (!symmetric || !(m.xx > 0.0) || !(m.det() > 0.0)) {
    throw Error(ErrorKind::NonPositiveDefinite, "inverse covariance must be symmetric positive definite");
  }
}

inline double quad_form(double dx, double dy, const Matrix2& m) {
  const double q = dx * (m.xx * dx + m.xy * dy) + dy * (m.yx * dx + m.yy * dy);
  return std::sqrt(std::max(q, 0.0));
}

}  // namespace

double mahalanobis(Point2 p, Point2 center, const Matrix2& cov_inv) {
  require_spd(cov_inv);
  return quad_form(p.x - center.x, p.y - center.y, cov_inv);
}

double euclidean(Point2 p, Point2 center) { return std::hypot(p.x - center.x, p.y - center.y); }

std::vector<double> distances(std::span<const Point2> points, Point2 center, DistanceMetric metric,
                              const Matrix2& cov_inv) {
  std::vector<double> out(points.size());
  if (metric == DistanceMetric::euclidean) {
    for (std::size_t i = 0; i < points.size(); ++i) out[i] = euclidean(points[i], center);
  } else {
    require_spd(cov_inv);
    for (std::size_t i = 0; i < points.size(); ++i) {
      out[i] = quad_form(points[i].x - center.x, points[i].y - center.y, cov_inv);
    }
  }
  return out;
}

std::vector<double> percentile_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<double> out(n);
  if (n == 0) return out;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::size_t start = 0;
  while (start < n) {
    std::size_t end = start + 1;
    while (end < n && values[order[end]] == values[order[start]]) ++end;
    const double tied = static_cast<double>(end - start);
    const double rank = (static_cast<double>(start) + 0.5 * tied) / static_cast<double>(n);
    for (std::size_t k = start; k < end; ++k) out[order[k]] = rank;
    start = end;
  }
  return out;
}

double crown_threshold(std::span<const double> distances) {
  if (distances.empty()) throw Error(ErrorKind::DegenerateDistribution, "crown of an empty point set");
  return median(distances);
}

std::vector<Point2> ErrorSpaceAnalysis::xy() const {
  std::vector<Point2> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back({p.e1, p.e2});
  return out;
}

ErrorSpaceAnalysis analyze_pair(const ErrorVector& ea, const ErrorVector& eb, DistanceMetric metric) {
  const auto pts = zip_points(ea.errors, eb.errors);
  if (pts.empty()) throw Error(ErrorKind::DegenerateDistribution, "no points");
  if (metric == DistanceMetric::mahalanobis && pts.size() < 3) {
    throw Error(ErrorKind::DegenerateDistribution, "Mahalanobis distance needs at least 3 points");
  }

  ErrorSpaceAnalysis out;
  out.metric = metric;
  out.median2d = median2d(pts);
  out.covariance = pts.size() >= 2 ? covariance2(pts) : Matrix2{};
  const auto inv = regularized_inverse(out.covariance);
  out.covariance_inverse = inv.inverse;
  out.ridge = inv.ridge;

  const auto dist = distances(pts, out.median2d, metric, out.covariance_inverse);
  const auto pct = percentile_ranks(dist);
  out.crown_threshold = crown_threshold(dist);

  out.points.resize(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    auto& p = out.points[i];
    p.e1 = pts[i].x;
    p.e2 = pts[i].y;
    p.zone = classify_zone(p.e1, p.e2);
    p.quadrant = classify_quadrant(p.e1, p.e2);
    p.distance = dist[i];
    p.percentile = pct[i];
    ++out.zone_counts[static_cast<std::size_t>(p.zone)];
    ++out.quadrant_counts[static_cast<std::size_t>(p.quadrant)];
  }
  return out;
}

}  // namespace errscope
