#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "errscope/ingest.hpp"

namespace errscope::synth {

/// Reproducible random stream.
///
/// Bits come from std::mt19937_64 (MT19937-64 with the standard seeding
/// routine; the 10000th output of a default-seeded engine is
/// 9981545732273789042). Derived variates avoid the implementation-defined
/// std distributions:
///   uniform()  = (next() >> 11) * 2^-53, in [0, 1)
///   normal()   = sqrt(-2 ln(1 - u1)) * cos(2 pi u2), two uniforms per draw
///   index(n)   = floor(uniform() * n)
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();
  double exponential();  // -ln(1 - u), mean 1
  std::size_t index(std::size_t n);

 private:
  std::mt19937_64 engine_;
};

enum class ScenarioKind { outlier_vs_moderate, under_vs_over, equal_metrics_divergent, asymmetric_pair, correlated_pair };

std::string_view to_string(ScenarioKind kind);
std::optional<ScenarioKind> parse_kind(std::string_view name);
const std::vector<ScenarioKind>& all_kinds();

/// Ground truth is uniform on [y_min, y_max]; predictions are truth + error.
struct TruthRange {
  double y_min = 0.0;
  double y_max = 100.0;
};

/// B1: exact predictions except one error of +outlier_magnitude at a random
/// instance. B2: Gaussian errors truncated at 3 raw sd (draws beyond are
/// resampled), scaled so the truncated distribution has sd moderate_sigma.
/// n >= 2.
PredictionSet gen_outlier_vs_moderate(std::size_t n, double outlier_magnitude, double moderate_sigma,
                                      std::uint64_t seed, TruthRange truth = {});

/// C1 errors -|bias + sigma z|, C2 errors +|bias + sigma z'| with independent z, z'.
PredictionSet gen_under_vs_over(std::size_t n, double bias, double sigma, std::uint64_t seed, TruthRange truth = {});

/// D1 errors -c + jitter z; D2 errors are negative exponential draws rescaled
/// so that mae(D2) equals mae(D1) in the generated errors. n >= 2.
PredictionSet gen_equal_metrics_divergent(std::size_t n, double c, double jitter, std::uint64_t seed,
                                          TruthRange truth = {});

/// Bivariate Gaussian errors with correlation rho and equal sd `sigma`;
/// E1 has mean -shift, E2 mean 0. rho in [0, 1), n >= 3.
PredictionSet gen_asymmetric_pair(std::size_t n, double correlation, double shift, double sigma,
                                  std::uint64_t seed, TruthRange truth = {});

/// Zero-mean bivariate Gaussian errors with unequal scales; rho in (-1, 1).
PredictionSet gen_correlated_pair(std::size_t n, double correlation, double sigma_a, double sigma_b,
                                  std::uint64_t seed, TruthRange truth = {});

struct ScenarioSpec {
  ScenarioKind kind = ScenarioKind::outlier_vs_moderate;
  std::size_t n = 1000;
  std::uint64_t seed = 0;
  std::map<std::string, double> parameters;
};

/// Parameter names and defaults accepted by a scenario kind (y_min and
/// y_max are accepted by all kinds).
std::map<std::string, double> default_parameters(ScenarioKind kind);

/// Dispatches on kind. Unknown or non-finite parameters throw InvalidArgument.
PredictionSet generate(const ScenarioSpec& spec);

}  // namespace errscope::synth
