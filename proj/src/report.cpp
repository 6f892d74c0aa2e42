#include "errscope/report.hpp"

#include <map>

namespace errscope {

namespace {

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

Json to_json(const MetricReport& m) {
  return Json{{"mae", m.mae}, {"rmse", m.rmse}, {"r_squared", optional_number(m.r_squared)}, {"n", m.n}};
}

Json to_json(const BoxplotStats& b) {
  return Json{{"min_whisker", b.min_whisker}, {"q1", b.q1},     {"median", b.median},    {"q3", b.q3},
              {"max_whisker", b.max_whisker}, {"iqr", b.iqr},   {"outliers", b.outliers}};
}

Json to_json(const Matrix2& m) { return Json(m.row_major()); }

Json to_json(const KdeGrid& k) {
  const auto& g = k.grid;
  return Json{{"x_min", g.x_min},
              {"x_max", g.x_max},
              {"y_min", g.y_min},
              {"y_max", g.y_max},
              {"nx", g.nx},
              {"ny", g.ny},
              {"bandwidth", {k.bandwidth.hx, k.bandwidth.hy}},
              {"values", k.values}};
}

Json to_json(const HexbinLayer& h) {
  Json cells = Json::array();
  for (const auto& c : h.cells) cells.push_back({{"q", c.q}, {"r", c.r}, {"count", c.count}});
  return Json{{"hex_radius", h.hex_radius}, {"origin", {h.origin.x, h.origin.y}}, {"cells", std::move(cells)}};
}

namespace {

Json zone_counts_json(const std::array<std::size_t, 3>& counts) {
  Json j = Json::object();
  for (auto z : all_zones) j[std::string(to_string(z))] = counts[static_cast<std::size_t>(z)];
  return j;
}

Json quadrant_counts_json(const std::array<std::size_t, 5>& counts) {
  Json j = Json::object();
  for (auto q : all_quadrants) j[std::string(to_string(q))] = counts[static_cast<std::size_t>(q)];
  return j;
}

}  // namespace

Json analysis_summary(const ErrorSpaceAnalysis& a) {
  return Json{{"n", a.points.size()},
              {"metric", std::string(to_string(a.metric))},
              {"median2d", {a.median2d.x, a.median2d.y}},
              {"covariance", to_json(a.covariance)},
              {"covariance_inverse", to_json(a.covariance_inverse)},
              {"ridge", a.ridge},
              {"crown_threshold", a.crown_threshold},
              {"zone_counts", zone_counts_json(a.zone_counts)},
              {"quadrant_counts", quadrant_counts_json(a.quadrant_counts)}};
}

Json to_json(const ErrorSpaceAnalysis& a) {
  Json points = Json::array();
  for (const auto& p : a.points) {
    points.push_back({{"e1", p.e1},
                      {"e2", p.e2},
                      {"zone", std::string(to_string(p.zone))},
                      {"quadrant", std::string(to_string(p.quadrant))},
                      {"distance", p.distance},
                      {"percentile", p.percentile}});
  }
  return Json{{"summary", analysis_summary(a)}, {"points", std::move(points)}};
}

AnalysisReport build_metrics_report(const PredictionSet& ps, SortKey key) {
  validate(ps);
  AnalysisReport r;
  r.key = key;
  std::map<std::string, MetricReport> by_name;
  for (const auto& m : ps.models) {
    ModelSummary s;
    s.name = m.name;
    s.metrics = metric_report(ps.y_true, m.predictions);
    s.boxplot = boxplot_stats(compute_errors(ps.y_true, m.predictions, m.name));
    by_name[m.name] = s.metrics;
    r.per_model.push_back(std::move(s));
  }
  r.ranking = sort_models_by_metric(by_name, key);
  const auto dups = ps.duplicate_ids();
  if (!dups.empty()) {
    std::string msg = std::to_string(dups.size()) + " instance id(s) occur more than once, first: '" + dups.front() + "'";
    r.warnings.push_back(std::move(msg));
  }
  return r;
}

PairSummary summarize_pair(const std::string& model_a, const std::string& model_b, const ErrorSpaceAnalysis& a) {
  PairSummary p;
  p.model_a = model_a;
  p.model_b = model_b;
  p.metric = a.metric;
  p.zone_counts = a.zone_counts;
  p.quadrant_counts = a.quadrant_counts;
  p.crown_threshold = a.crown_threshold;
  p.median2d = a.median2d;
  std::vector<double> e1, e2;
  e1.reserve(a.points.size());
  e2.reserve(a.points.size());
  std::size_t above = 0, below = 0;
  for (const auto& pt : a.points) {
    e1.push_back(pt.e1);
    e2.push_back(pt.e2);
    if (pt.e2 > pt.e1) ++above;
    if (pt.e2 < pt.e1) ++below;
  }
  p.error_correlation = pearson(e1, e2);
  const double n = static_cast<double>(a.points.size());
  p.above_identity_fraction = static_cast<double>(above) / n;

  const auto a_better = a.zone_count(Zone::a_better);
  const auto b_better = a.zone_count(Zone::b_better);
  if (a_better > b_better) {
    p.notes.push_back(model_a + " has the smaller absolute error on more instances (" + std::to_string(a_better) +
                      " vs " + std::to_string(b_better) + ")");
  } else if (b_better > a_better) {
    p.notes.push_back(model_b + " has the smaller absolute error on more instances (" + std::to_string(b_better) +
                      " vs " + std::to_string(a_better) + ")");
  } else {
    p.notes.push_back("neither model has the smaller absolute error on more instances");
  }
  if (p.above_identity_fraction > 0.5) {
    p.notes.push_back("majority of points lie above y=x: the error of " + model_b +
                      " is arithmetically larger than that of " + model_a);
  } else if (static_cast<double>(below) > 0.5 * n) {
    p.notes.push_back("majority of points lie below y=x: the error of " + model_a +
                      " is arithmetically larger than that of " + model_b);
  }
  if (p.error_correlation && *p.error_correlation >= 0.7) {
    p.notes.push_back("errors are strongly correlated: both models struggle on the same instances");
  } else if (p.error_correlation && *p.error_correlation <= -0.7) {
    p.notes.push_back("errors are strongly anti-correlated: one model overestimates where the other underestimates");
  }
  return p;
}

Json tool_metadata(std::optional<std::string> bandwidth_note) {
  Json decisions{{"error_sign", "error = prediction - truth (positive = overestimation)"},
                 {"quartile_rule", "linear interpolation between order statistics at (n-1)*p"},
                 {"whisker_rule", "Tukey 1.5*IQR"},
                 {"median_definition", "componentwise median"},
                 {"covariance", "sample covariance (1/(N-1)), mean-centred; ridge when condition number > 1e12"},
                 {"percentile_rule", "midrank"},
                 {"colormap", "warm_cool"},
                 {"kde", "product Gaussian kernel, Scott's rule bandwidth"},
                 {"hexbin", "pointy-top lattice at origin, cube rounding"}};
  if (bandwidth_note) decisions["bandwidth"] = *bandwidth_note;
  return Json{{"tool", "errscope"}, {"version", kVersion}, {"decisions", std::move(decisions)}};
}

Json to_json(const PairSummary& p) {
  return Json{{"model_a", p.model_a},
              {"model_b", p.model_b},
              {"metric", std::string(to_string(p.metric))},
              {"zone_counts", zone_counts_json(p.zone_counts)},
              {"quadrant_counts", quadrant_counts_json(p.quadrant_counts)},
              {"crown_threshold", p.crown_threshold},
              {"error_correlation", optional_number(p.error_correlation)},
              {"median2d", {p.median2d.x, p.median2d.y}},
              {"above_identity_fraction", p.above_identity_fraction},
              {"notes", p.notes}};
}

Json to_json(const AnalysisReport& r) {
  Json per_model = Json::object();
  for (const auto& m : r.per_model) {
    per_model[m.name] = Json{{"metrics", to_json(m.metrics)}, {"boxplot", to_json(m.boxplot)}};
  }
  Json out{{"tool_metadata", tool_metadata()},
           {"per_model", std::move(per_model)},
           {"ranking", {{"key", to_string(r.key)}, {"models", r.ranking}}}};
  if (r.pair) out["pair"] = to_json(*r.pair);
  out["warnings"] = r.warnings;
  return out;
}

}  // namespace errscope
