#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "errscope/error.hpp"
#include "errscope/errorspace.hpp"
#include "errscope/ingest.hpp"

namespace testkit {

// Small generators for property tests. Independent of the library's Rng.
struct Gen {
  std::mt19937_64 eng;
  explicit Gen(std::uint64_t seed) : eng(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng); }
  double normal(double mu = 0.0, double sd = 1.0) { return std::normal_distribution<double>(mu, sd)(eng); }
  std::size_t size(std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(eng); }
  bool coin() { return (eng() & 1u) != 0; }

  std::vector<double> values(std::size_t n, double lo = -50.0, double hi = 50.0) {
    std::vector<double> v(n);
    for (auto& x : v) x = uniform(lo, hi);
    return v;
  }
  std::vector<errscope::Point2> points(std::size_t n, double lo = -50.0, double hi = 50.0) {
    std::vector<errscope::Point2> v(n);
    for (auto& p : v) p = {uniform(lo, hi), uniform(lo, hi)};
    return v;
  }
  std::vector<errscope::Point2> gaussian_points(std::size_t n, double sx, double sy, double rho) {
    std::vector<errscope::Point2> v(n);
    for (auto& p : v) {
      const double z1 = normal(), z2 = normal();
      p = {sx * z1, sy * (rho * z1 + std::sqrt(1.0 - rho * rho) * z2)};
    }
    return v;
  }

  // Random prediction set with awkward ids and model names.
  errscope::PredictionSet prediction_set(std::size_t n, std::size_t models) {
    static const char* const names[] = {"M1", "model b", "q\"uoted", "comma,name", "x", "lin reg", "NN"};
    static const char* const ids[] = {"a", "b,c", "d\"e", " spaced ", "7", "", "id"};
    errscope::PredictionSet ps;
    for (std::size_t i = 0; i < n; ++i) {
      ps.instance_ids.push_back(std::string(ids[size(0, 6)]) + std::to_string(i));
      const double scale = std::pow(10.0, uniform(-8.0, 8.0));
      ps.y_true.push_back(uniform(-1.0, 1.0) * scale);
    }
    for (std::size_t m = 0; m < models; ++m) {
      errscope::ModelColumn col{std::string(names[m % 7]) + (m >= 7 ? std::to_string(m) : ""), {}};
      for (std::size_t i = 0; i < n; ++i) col.predictions.push_back(ps.y_true[i] + normal(0.0, 3.0));
      ps.models.push_back(std::move(col));
    }
    return ps;
  }
};

inline errscope::ErrorKind error_kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const errscope::Error& e) {
    return e.kind();
  }
  throw std::runtime_error("expected an errscope::Error");
}

inline std::string error_message_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const errscope::Error& e) {
    return e.what();
  }
  return {};
}

inline std::vector<double> sorted_copy(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace testkit
