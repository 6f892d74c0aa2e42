#include <doctest.h>

#include "errscope/report.hpp"
#include "errscope/synth.hpp"
#include "support.hpp"

using namespace errscope;
using doctest::Approx;

namespace {

bool has_note(const PairSummary& p, std::string_view needle) {
  for (const auto& n : p.notes)
    if (n.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("metrics report on the outlier scenario") {
  const auto ps = synth::gen_outlier_vs_moderate(1000, 500, 9.9, 7);
  const auto r = build_metrics_report(ps, SortKey::rmse);
  REQUIRE(r.per_model.size() == 2);
  CHECK(r.per_model[0].name == "B1");
  CHECK(r.per_model[0].metrics.mae < r.per_model[1].metrics.mae);
  CHECK(r.per_model[0].metrics.rmse > r.per_model[1].metrics.rmse);
  CHECK(r.ranking == std::vector<std::string>{"B2", "B1"});
  CHECK(build_metrics_report(ps, SortKey::mae).ranking == std::vector<std::string>{"B1", "B2"});
  CHECK(r.warnings.empty());

  const auto j = to_json(r);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"tool_metadata", "per_model", "ranking", "warnings"});
  CHECK(j["ranking"]["key"] == "rmse");
  CHECK(j["per_model"]["B1"]["metrics"]["mae"].get<double>() == Approx(0.5));
  CHECK(j["per_model"]["B1"]["metrics"]["n"] == 1000);
  CHECK(j["per_model"]["B2"]["boxplot"].contains("outliers"));
  const auto& d = j["tool_metadata"]["decisions"];
  CHECK(d.contains("quartile_rule"));
  CHECK(d.contains("median_definition"));
  CHECK(d["colormap"] == "warm_cool");
  CHECK(j["tool_metadata"]["version"] == kVersion);
}

TEST_CASE("ranking matches sort_models_by_metric") {
  testkit::Gen g(61);
  for (int t = 0; t < 30; ++t) {
    const auto ps = g.prediction_set(g.size(2, 30), g.size(1, 7));
    const auto r = build_metrics_report(ps, SortKey::mae);
    std::map<std::string, MetricReport> m;
    for (const auto& s : r.per_model) m[s.name] = s.metrics;
    CHECK(r.ranking == sort_models_by_metric(m, SortKey::mae));
  }
}

TEST_CASE("duplicate ids produce a warning; constant target gives null r_squared") {
  PredictionSet ps{{"a", "a", "b"}, {1, 1, 1}, {{"M", {1, 2, 3}}}};
  const auto r = build_metrics_report(ps, SortKey::rmse);
  REQUIRE(r.warnings.size() == 1);
  CHECK(r.warnings[0].find("'a'") != std::string::npos);
  CHECK(!r.per_model[0].metrics.r_squared);
  CHECK(to_json(r)["per_model"]["M"]["metrics"]["r_squared"].is_null());
}

TEST_CASE("pair summary") {
  const std::vector<double> e{1, -2, 3, 5, -8, 13, 0.5};
  const auto same = summarize_pair("A", "B", analyze_pair({"A", e}, {"B", e}, DistanceMetric::mahalanobis));
  CHECK(same.zone_counts[static_cast<std::size_t>(Zone::tie)] == e.size());
  CHECK(*same.error_correlation == Approx(1.0));
  CHECK(has_note(same, "neither model"));

  const auto ps = synth::gen_asymmetric_pair(2000, 0.9, 5, 10, 8);
  const auto [a, b] = select_pair(ps, "E1", "E2");
  const auto p = summarize_pair("E1", "E2", analyze_pair(a, b, DistanceMetric::mahalanobis));
  CHECK(p.above_identity_fraction > 0.5);
  CHECK(has_note(p, "above y=x"));
  CHECK(has_note(p, "strongly correlated"));
  CHECK(*p.error_correlation <= 1.0);

  const auto anti = synth::gen_correlated_pair(2000, -0.9, 5, 5, 8);
  const auto [c, d] = select_pair(anti, "P1", "P2");
  CHECK(has_note(summarize_pair("P1", "P2", analyze_pair(c, d, DistanceMetric::euclidean)), "anti-correlated"));

  const auto j = to_json(p);
  CHECK(j["model_a"] == "E1");
  CHECK(j["metric"] == "mahalanobis");
  CHECK(j["zone_counts"].size() == 3);
  CHECK(j["quadrant_counts"].size() == 5);
}

TEST_CASE("analysis json layout") {
  const std::vector<double> e1{1, 2, 3, -4}, e2{0, -2, 5, 1};
  const auto an = analyze_pair({"A", e1}, {"B", e2}, DistanceMetric::euclidean);
  const auto j = to_json(an);
  CHECK(j["points"].size() == 4);
  CHECK(j["points"][0]["zone"] == "B_better");
  CHECK(j["points"][0]["quadrant"] == "on_axis");
  CHECK(j["points"][1]["zone"] == "tie");
  CHECK(j["summary"]["covariance"].size() == 4);
  CHECK(j["summary"]["zone_counts"]["tie"] == 1);

  const std::vector<Point2> pts{{0, 0}, {1, 1}, {5, 5}};
  const auto h = to_json(hexbin(pts, 1.0));
  CHECK(h["cells"][0].contains("q"));
  CHECK(h["cells"][0].contains("count"));
}
