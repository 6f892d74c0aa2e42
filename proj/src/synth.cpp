#include "errscope/synth.hpp"

#include <cmath>
#include <functional>
#include <numbers>

#include "errscope/error.hpp"

namespace errscope::synth {

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double Rng::exponential() { return -std::log(1.0 - uniform()); }

std::size_t Rng::index(std::size_t n) {
  const auto i = static_cast<std::size_t>(uniform() * static_cast<double>(n));
  return i < n ? i : n - 1;
}

std::string_view to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::outlier_vs_moderate: return "outlier_vs_moderate";
    case ScenarioKind::under_vs_over: return "under_vs_over";
    case ScenarioKind::equal_metrics_divergent: return "equal_metrics_divergent";
    case ScenarioKind::asymmetric_pair: return "asymmetric_pair";
    case ScenarioKind::correlated_pair: return "correlated_pair";
  }
  return "";
}

const std::vector<ScenarioKind>& all_kinds() {
  static const std::vector<ScenarioKind> kinds{ScenarioKind::outlier_vs_moderate, ScenarioKind::under_vs_over,
                                               ScenarioKind::equal_metrics_divergent, ScenarioKind::asymmetric_pair,
                                               ScenarioKind::correlated_pair};
  return kinds;
}

std::optional<ScenarioKind> parse_kind(std::string_view name) {
  for (auto k : all_kinds()) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw Error(ErrorKind::InvalidArgument, message);
}

void require_truth(const TruthRange& t) {
  require(std::isfinite(t.y_min) && std::isfinite(t.y_max) && t.y_min <= t.y_max, "y_min must not exceed y_max");
}

// Builds a two-model set; `draw` fills the errors of both models for one
// instance after its truth value has been drawn.
PredictionSet build(std::size_t n, const char* name_a, const char* name_b, Rng& rng, const TruthRange& truth,
                    const std::function<void(std::size_t, double&, double&)>& draw) {
  PredictionSet ps;
  ps.models = {ModelColumn{name_a, {}}, ModelColumn{name_b, {}}};
  ps.instance_ids.reserve(n);
  ps.y_true.reserve(n);
  for (auto& m : ps.models) m.predictions.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double y = rng.uniform(truth.y_min, truth.y_max);
    double ea = 0.0, eb = 0.0;
    draw(i, ea, eb);
    ps.instance_ids.push_back(std::to_string(i + 1));
    ps.y_true.push_back(y);
    ps.models[0].predictions.push_back(y + ea);
    ps.models[1].predictions.push_back(y + eb);
  }
  return ps;
}

}  // namespace

PredictionSet gen_outlier_vs_moderate(std::size_t n, double outlier_magnitude, double moderate_sigma,
                                      std::uint64_t seed, TruthRange truth) {
  require(n >= 2, "outlier_vs_moderate needs n >= 2");
  require(std::isfinite(outlier_magnitude), "outlier_magnitude must be finite");
  require(moderate_sigma > 0.0 && std::isfinite(moderate_sigma), "moderate_sigma must be positive");
  require_truth(truth);
  // A standard normal cut at +-3 has sd sqrt(1 - 6 phi(3) / (2 Phi(3) - 1)); dividing it out
  // gives B2 errors with sd exactly moderate_sigma.
  const double phi3 = std::exp(-4.5) / std::sqrt(2.0 * std::numbers::pi);
  const double kept = std::erf(3.0 / std::numbers::sqrt2);
  const double raw_sigma = moderate_sigma / std::sqrt(1.0 - 6.0 * phi3 / kept);
  Rng rng(seed);
  const std::size_t outlier_at = rng.index(n);
  return build(n, "B1", "B2", rng, truth, [&](std::size_t i, double& ea, double& eb) {
    ea = i == outlier_at ? outlier_magnitude : 0.0;
    double z = rng.normal();
    while (std::abs(z) > 3.0) z = rng.normal();
    eb = raw_sigma * z;
  });
}

PredictionSet gen_under_vs_over(std::size_t n, double bias, double sigma, std::uint64_t seed, TruthRange truth) {
  require(n >= 1, "under_vs_over needs n >= 1");
  require(bias > 0.0 && std::isfinite(bias), "bias must be positive");
  require(sigma > 0.0 && std::isfinite(sigma), "sigma must be positive");
  require_truth(truth);
  Rng rng(seed);
  return build(n, "C1", "C2", rng, truth, [&](std::size_t, double& ea, double& eb) {
    ea = -std::abs(bias + sigma * rng.normal());
    eb = std::abs(bias + sigma * rng.normal());
  });
}

PredictionSet gen_equal_metrics_divergent(std::size_t n, double c, double jitter, std::uint64_t seed,
                                          TruthRange truth) {
  require(n >= 2, "equal_metrics_divergent needs n >= 2");
  require(c > 0.0 && std::isfinite(c), "c must be positive");
  require(jitter >= 0.0 && std::isfinite(jitter), "jitter must be non-negative");
  require_truth(truth);
  Rng rng(seed);
  std::vector<double> e1(n), raw(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = rng.uniform(truth.y_min, truth.y_max);
    e1[i] = -c + jitter * rng.normal();
    raw[i] = rng.exponential();
  }
  double abs1 = 0.0, raw_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    abs1 += std::abs(e1[i]);
    raw_sum += raw[i];
  }
  // Exponential draws are all zero only with vanishing probability.
  const double scale = raw_sum > 0.0 ? abs1 / raw_sum : 0.0;

  PredictionSet ps;
  ps.models = {ModelColumn{"D1", {}}, ModelColumn{"D2", {}}};
  for (std::size_t i = 0; i < n; ++i) {
    ps.instance_ids.push_back(std::to_string(i + 1));
    ps.y_true.push_back(y[i]);
    ps.models[0].predictions.push_back(y[i] + e1[i]);
    ps.models[1].predictions.push_back(y[i] - scale * raw[i]);
  }
  return ps;
}

namespace {

PredictionSet bivariate(std::size_t n, const char* a, const char* b, double rho, double mean_a, double mean_b,
                        double sd_a, double sd_b, std::uint64_t seed, const TruthRange& truth) {
  Rng rng(seed);
  const double tail = std::sqrt(1.0 - rho * rho);
  return build(n, a, b, rng, truth, [&](std::size_t, double& ea, double& eb) {
    const double z1 = rng.normal();
    const double z2 = rng.normal();
    ea = mean_a + sd_a * z1;
    eb = mean_b + sd_b * (rho * z1 + tail * z2);
  });
}

}  // namespace

PredictionSet gen_asymmetric_pair(std::size_t n, double correlation, double shift, double sigma,
                                  std::uint64_t seed, TruthRange truth) {
  require(n >= 3, "asymmetric_pair needs n >= 3");
  require(correlation >= 0.0 && correlation < 1.0, "correlation must lie in [0, 1)");
  require(shift >= 0.0 && std::isfinite(shift), "shift must be non-negative");
  require(sigma > 0.0 && std::isfinite(sigma), "sigma must be positive");
  require_truth(truth);
  return bivariate(n, "E1", "E2", correlation, -shift, 0.0, sigma, sigma, seed, truth);
}

PredictionSet gen_correlated_pair(std::size_t n, double correlation, double sigma_a, double sigma_b,
                                  std::uint64_t seed, TruthRange truth) {
  require(n >= 3, "correlated_pair needs n >= 3");
  require(correlation > -1.0 && correlation < 1.0, "correlation must lie in (-1, 1)");
  require(sigma_a > 0.0 && sigma_b > 0.0 && std::isfinite(sigma_a) && std::isfinite(sigma_b),
          "sigma_a and sigma_b must be positive");
  require_truth(truth);
  return bivariate(n, "P1", "P2", correlation, 0.0, 0.0, sigma_a, sigma_b, seed, truth);
}

std::map<std::string, double> default_parameters(ScenarioKind kind) {
  std::map<std::string, double> p{{"y_min", 0.0}, {"y_max", 100.0}};
  switch (kind) {
    case ScenarioKind::outlier_vs_moderate:
      p["outlier_magnitude"] = 500.0;
      p["moderate_sigma"] = 9.9;
      break;
    case ScenarioKind::under_vs_over:
      p["bias"] = 9.0;
      p["sigma"] = 5.5;
      break;
    case ScenarioKind::equal_metrics_divergent:
      p["c"] = 3.2;
      p["jitter"] = 0.3;
      break;
    case ScenarioKind::asymmetric_pair:
      p["correlation"] = 0.9;
      p["shift"] = 5.0;
      p["sigma"] = 10.0;
      break;
    case ScenarioKind::correlated_pair:
      p["correlation"] = 0.8;
      p["sigma_a"] = 20.0;
      p["sigma_b"] = 8.0;
      break;
  }
  return p;
}

PredictionSet generate(const ScenarioSpec& spec) {
  auto p = default_parameters(spec.kind);
  for (const auto& [key, value] : spec.parameters) {
    auto it = p.find(key);
    if (it == p.end()) {
      throw Error(ErrorKind::InvalidArgument,
                  "unknown parameter '" + key + "' for scenario " + std::string(to_string(spec.kind)));
    }
    require(std::isfinite(value), "parameter '" + key + "' must be finite");
    it->second = value;
  }
  const TruthRange truth{p["y_min"], p["y_max"]};
  switch (spec.kind) {
    case ScenarioKind::outlier_vs_moderate:
      return gen_outlier_vs_moderate(spec.n, p["outlier_magnitude"], p["moderate_sigma"], spec.seed, truth);
    case ScenarioKind::under_vs_over:
      return gen_under_vs_over(spec.n, p["bias"], p["sigma"], spec.seed, truth);
    case ScenarioKind::equal_metrics_divergent:
      return gen_equal_metrics_divergent(spec.n, p["c"], p["jitter"], spec.seed, truth);
    case ScenarioKind::asymmetric_pair:
      return gen_asymmetric_pair(spec.n, p["correlation"], p["shift"], p["sigma"], spec.seed, truth);
    case ScenarioKind::correlated_pair:
      return gen_correlated_pair(spec.n, p["correlation"], p["sigma_a"], p["sigma_b"], spec.seed, truth);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown scenario kind");
}

}  // namespace errscope::synth
