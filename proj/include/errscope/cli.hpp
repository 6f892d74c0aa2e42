#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "errscope/density.hpp"
#include "errscope/error.hpp"
#include "errscope/errorspace.hpp"
#include "errscope/metrics.hpp"
#include "errscope/render.hpp"

namespace errscope::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsageError = 2;
inline constexpr int kNumericalError = 3;

struct MetricsOptions {
  std::filesystem::path input;
  SortKey sort = SortKey::rmse;
  std::optional<std::filesystem::path> plots_dir;
  bool json = false;
  bool global_scale = false;
};

struct CompareOptions {
  std::filesystem::path input;
  std::string model_a;
  std::string model_b;
  DistanceMetric metric = DistanceMetric::mahalanobis;
  LayerSet layers = LayerSet::parse("zones,proximity,crown");
  std::optional<Bandwidth> bandwidth;
  std::optional<double> hex_radius;
  std::filesystem::path svg_out = "error_space.svg";
  std::optional<std::filesystem::path> json_out;
};

struct SynthOptions {
  std::string kind;
  std::size_t n = 1000;
  std::uint64_t seed = 0;
  std::vector<std::string> params;  // "key=value"
  std::filesystem::path output;
};

struct Console {
  std::ostream& out;
  std::ostream& err;
  bool color = false;
};

int run_metrics(const MetricsOptions& opts, const Console& io);
int run_compare(const CompareOptions& opts, const Console& io);
int run_synth(const SynthOptions& opts, const Console& io);

/// Parses argv (argv[0] is the program name) and dispatches to a command.
int run(int argc, const char* const* argv, const Console& io);

/// Maps a library error kind to a process exit code.
int exit_code_for(ErrorKind kind);

}  // namespace errscope::cli
