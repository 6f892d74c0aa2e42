#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace errscope {

/// Signed per-instance errors of one model, r_i = prediction_i - truth_i.
/// Positive entries are overestimations.
struct ErrorVector {
  std::string model_name;
  std::vector<double> errors;

  std::size_t n() const noexcept { return errors.size(); }
};

struct MetricReport {
  double mae = 0.0;
  double rmse = 0.0;
  // Undefined when the target is constant or n < 2.
  std::optional<double> r_squared;
  std::size_t n = 0;
};

/// Tukey boxplot summary. Quartiles use linear interpolation at (n-1)*p,
/// whiskers reach the most extreme point inside 1.5*IQR of the box (clamped
/// to the box when no such point lies beyond the quartile).
struct BoxplotStats {
  double min_whisker = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max_whisker = 0.0;
  double iqr = 0.0;
  std::vector<double> outliers;  // ascending
};

enum class SortKey { mae, rmse };

ErrorVector compute_errors(std::span<const double> y_true, std::span<const double> y_pred,
                           std::string model_name = {});

double mae(const ErrorVector& e);
double rmse(const ErrorVector& e);
double r_squared(std::span<const double> y_true, std::span<const double> y_pred);

/// delta_i = pred_a[i] - pred_b[i].
std::vector<double> deviation(std::span<const double> pred_a, std::span<const double> pred_b);

/// Quantile by linear interpolation between order statistics at (n-1)*p.
/// `sorted` must be ascending and non-empty.
double quantile_sorted(std::span<const double> sorted, double p);
double median(std::span<const double> values);

BoxplotStats boxplot_stats(const ErrorVector& e);

MetricReport metric_report(std::span<const double> y_true, std::span<const double> y_pred);

/// Ascending by key; equal values ordered by name.
std::vector<std::string> sort_models_by_metric(const std::map<std::string, MetricReport>& reports,
                                               SortKey key);

/// Pearson correlation; nullopt when either input has zero variance.
std::optional<double> pearson(std::span<const double> x, std::span<const double> y);

const char* to_string(SortKey key);

}  // namespace errscope
