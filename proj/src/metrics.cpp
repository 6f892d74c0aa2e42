#include "errscope/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

#include "errscope/error.hpp"

namespace errscope {

namespace {

void require_same_length(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw Error(ErrorKind::LengthMismatch, std::string(what) + ": lengths " + std::to_string(a) +
                                               " and " + std::to_string(b) + " differ");
  }
}

void require_non_empty(std::size_t n, const char* what) {
  if (n == 0) throw Error(ErrorKind::LengthMismatch, std::string(what) + ": empty input");
}

}  // namespace

ErrorVector compute_errors(std::span<const double> y_true, std::span<const double> y_pred,
                           std::string model_name) {
  require_same_length(y_true.size(), y_pred.size(), "compute_errors");
  require_non_empty(y_true.size(), "compute_errors");
  ErrorVector out{std::move(model_name), std::vector<double>(y_true.size())};
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    if (!std::isfinite(y_true[i]) || !std::isfinite(y_pred[i])) {
      throw Error(ErrorKind::NonFinite, "compute_errors: non-finite value at index " + std::to_string(i));
    }
    out.errors[i] = y_pred[i] - y_true[i];
  }
  return out;
}

double mae(const ErrorVector& e) {
  require_non_empty(e.n(), "mae");
  double sum = 0.0;
  for (double r : e.errors) sum += std::abs(r);
  return sum / static_cast<double>(e.n());
}

double rmse(const ErrorVector& e) {
  require_non_empty(e.n(), "rmse");
  double sum = 0.0;
  for (double r : e.errors) sum += r * r;
  return std::sqrt(sum / static_cast<double>(e.n()));
}

double r_squared(std::span<const double> y_true, std::span<const double> y_pred) {
  require_same_length(y_true.size(), y_pred.size(), "r_squared");
  if (y_true.size() < 2) throw Error(ErrorKind::ConstantTarget, "r_squared needs at least two instances");
  const double mean = std::accumulate(y_true.begin(), y_true.end(), 0.0) / static_cast<double>(y_true.size());
  double ss_res = 0.0;
  double ss_tot = 0.0;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    const double r = y_true[i] - y_pred[i];
    const double d = y_true[i] - mean;
    ss_res += r * r;
    ss_tot += d * d;
  }
  if (ss_tot == 0.0) throw Error(ErrorKind::ConstantTarget, "target has zero total sum of squares");
  return 1.0 - ss_res / ss_tot;
}

std::vector<double> deviation(std::span<const double> pred_a, std::span<const double> pred_b) {
  require_same_length(pred_a.size(), pred_b.size(), "deviation");
  std::vector<double> out(pred_a.size());
  for (std::size_t i = 0; i < pred_a.size(); ++i) out[i] = pred_a[i] - pred_b[i];
  return out;
}

double quantile_sorted(std::span<const double> sorted, double p) {
  require_non_empty(sorted.size(), "quantile");
  const double h = static_cast<double>(sorted.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = h - static_cast<double>(lo);
  if (frac == 0.0) return sorted[lo];
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

double median(std::span<const double> values) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  return quantile_sorted(sorted, 0.5);
}

BoxplotStats boxplot_stats(const ErrorVector& e) {
  require_non_empty(e.n(), "boxplot_stats");
  std::vector<double> sorted = e.errors;
  std::sort(sorted.begin(), sorted.end());

  BoxplotStats s;
  s.q1 = quantile_sorted(sorted, 0.25);
  s.median = quantile_sorted(sorted, 0.5);
  s.q3 = quantile_sorted(sorted, 0.75);
  s.iqr = s.q3 - s.q1;
  const double lo_fence = s.q1 - 1.5 * s.iqr;
  const double hi_fence = s.q3 + 1.5 * s.iqr;

  auto first_in = std::find_if(sorted.begin(), sorted.end(), [&](double v) { return v >= lo_fence; });
  auto last_in = std::find_if(sorted.rbegin(), sorted.rend(), [&](double v) { return v <= hi_fence; });
  // Interpolated quartiles can sit strictly between an outlier and the next
  // point; the whisker never retracts inside the box.
  s.min_whisker = std::min(*first_in, s.q1);
  s.max_whisker = std::max(*last_in, s.q3);

  for (double v : sorted) {
    if (v < lo_fence || v > hi_fence) s.outliers.push_back(v);
  }
  return s;
}

MetricReport metric_report(std::span<const double> y_true, std::span<const double> y_pred) {
  const ErrorVector e = compute_errors(y_true, y_pred);
  MetricReport m;
  m.mae = mae(e);
  m.rmse = rmse(e);
  m.n = e.n();
  try {
    m.r_squared = r_squared(y_true, y_pred);
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::ConstantTarget) throw;
  }
  return m;
}

std::vector<std::string> sort_models_by_metric(const std::map<std::string, MetricReport>& reports,
                                               SortKey key) {
  if (reports.empty()) throw Error(ErrorKind::InvalidArgument, "sort_models_by_metric: no models");
  std::vector<std::pair<double, std::string>> keyed;
  keyed.reserve(reports.size());
  for (const auto& [name, report] : reports) {
    keyed.emplace_back(key == SortKey::mae ? report.mae : report.rmse, name);
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<std::string> names;
  names.reserve(keyed.size());
  for (auto& [value, name] : keyed) names.push_back(std::move(name));
  return names;
}

std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
  require_same_length(x.size(), y.size(), "pearson");
  require_non_empty(x.size(), "pearson");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

const char* to_string(SortKey key) { return key == SortKey::mae ? "mae" : "rmse"; }

}  // namespace errscope
