#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errscope/metrics.hpp"

namespace errscope {

struct ModelColumn {
  std::string name;
  std::vector<double> predictions;

  bool operator==(const ModelColumn&) const = default;
};

/// Ground truth plus one prediction column per model, all of length N.
/// Model columns keep file order.
struct PredictionSet {
  std::vector<std::string> instance_ids;
  std::vector<double> y_true;
  std::vector<ModelColumn> models;

  std::size_t size() const noexcept { return y_true.size(); }
  const ModelColumn* find(std::string_view name) const;
  const ModelColumn& model(std::string_view name) const;  // throws UnknownModel
  std::vector<std::string> model_names() const;
  /// Ids that occur more than once, in first-seen order.
  std::vector<std::string> duplicate_ids() const;

  bool operator==(const PredictionSet&) const = default;
};

enum class InputFormat { csv, json };

/// Parses and validates. Throws Error with MalformedHeader, LengthMismatch,
/// NonNumeric, NonFinite or DuplicateModelName.
PredictionSet parse_predictions(std::string_view content, InputFormat format);

/// Reads a file; the format is picked from the extension (.json, else csv).
PredictionSet load_predictions(const std::filesystem::path& path);

/// Checks every invariant of a PredictionSet built in memory.
void validate(const PredictionSet& ps);

std::string to_csv(const PredictionSet& ps);
std::string to_json(const PredictionSet& ps);

/// Error vectors for two named models, in argument order.
std::pair<ErrorVector, ErrorVector> select_pair(const PredictionSet& ps, std::string_view name_a,
                                                std::string_view name_b);

ErrorVector model_errors(const PredictionSet& ps, std::string_view name);

}  // namespace errscope
