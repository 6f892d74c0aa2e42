#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "errscope/density.hpp"
#include "errscope/errorspace.hpp"
#include "errscope/ingest.hpp"
#include "errscope/metrics.hpp"

namespace errscope {

using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "0.1.0";

Json to_json(const MetricReport& m);
Json to_json(const BoxplotStats& b);
Json to_json(const KdeGrid& k);
Json to_json(const HexbinLayer& h);
Json to_json(const Matrix2& m);  // row-major 4-array
/// Per-point records plus the summary block.
Json to_json(const ErrorSpaceAnalysis& a);
Json analysis_summary(const ErrorSpaceAnalysis& a);

struct ModelSummary {
  std::string name;
  MetricReport metrics;
  BoxplotStats boxplot;
};

struct PairSummary {
  std::string model_a;
  std::string model_b;
  DistanceMetric metric = DistanceMetric::mahalanobis;
  std::array<std::size_t, 3> zone_counts{};
  std::array<std::size_t, 5> quadrant_counts{};
  double crown_threshold = 0.0;
  std::optional<double> error_correlation;  // Pearson of (e1, e2); absent if either is constant
  Point2 median2d;
  double above_identity_fraction = 0.0;     // share of points with e2 > e1
  std::vector<std::string> notes;
};

/// Result of the two-step screening: per-model 1D summaries and ranking,
/// optionally one 2D pairwise comparison.
struct AnalysisReport {
  std::vector<ModelSummary> per_model;  // input column order
  SortKey key = SortKey::rmse;
  std::vector<std::string> ranking;
  std::optional<PairSummary> pair;
  std::vector<std::string> warnings;
};

AnalysisReport build_metrics_report(const PredictionSet& ps, SortKey key);
PairSummary summarize_pair(const std::string& model_a, const std::string& model_b, const ErrorSpaceAnalysis& a);

/// Tool version and the fixed methodological choices behind every figure.
Json tool_metadata(std::optional<std::string> bandwidth_note = std::nullopt);

Json to_json(const PairSummary& p);
Json to_json(const AnalysisReport& r);

}  // namespace errscope
