#include "errscope/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "errscope/error.hpp"
#include "errscope/format.hpp"

namespace errscope {

namespace {

using ordered_json = nlohmann::ordered_json;

struct CsvRecord {
  std::vector<std::string> fields;
  std::size_t line = 0;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

// RFC 4180 style splitter: quoted fields may hold commas, doubled quotes and
// line breaks. Blank lines are skipped.
std::vector<CsvRecord> split_csv(std::string_view text) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
  std::vector<CsvRecord> records;
  CsvRecord current;
  std::string field;
  bool in_quotes = false;
  bool field_quoted = false;
  bool record_has_content = false;
  std::size_t line = 1;
  current.line = 1;

  auto end_field = [&] {
    current.fields.push_back(field_quoted ? field : std::string(trim(field)));
    field.clear();
    field_quoted = false;
  };
  auto end_record = [&] {
    if (record_has_content || current.fields.size() > 0) {
      end_field();
      records.push_back(std::move(current));
    }
    current = CsvRecord{};
    current.line = line;
    record_has_content = false;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!trim(field).empty()) {
          throw Error(ErrorKind::NonNumeric, "line " + std::to_string(line) + ": stray quote inside field");
        }
        field.clear();
        in_quotes = true;
        field_quoted = true;
        record_has_content = true;
        break;
      case ',':
        end_field();
        record_has_content = true;
        break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') break;
        [[fallthrough]];
      case '\n':
        ++line;
        end_record();
        break;
      default:
        field.push_back(c);
        if (c != ' ' && c != '\t') record_has_content = true;
        break;
    }
  }
  if (in_quotes) throw Error(ErrorKind::NonNumeric, "unterminated quoted field");
  end_record();
  return records;
}

// Throws NonNumeric for unparsable cells and NonFinite for nan/inf.
double parse_number(std::string_view cell, const std::string& where) {
  std::string_view s = trim(cell);
  if (s.empty()) throw Error(ErrorKind::NonNumeric, where + ": empty cell");
  if (s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec == std::errc::result_out_of_range) {
    throw Error(ErrorKind::NonFinite, where + ": value '" + std::string(cell) + "' overflows");
  }
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorKind::NonNumeric, where + ": cannot parse '" + std::string(cell) + "' as a number");
  }
  if (!std::isfinite(value)) {
    throw Error(ErrorKind::NonFinite, where + ": value '" + std::string(cell) + "' is not finite");
  }
  return value;
}

PredictionSet parse_csv(std::string_view content) {
  const auto records = split_csv(content);
  if (records.empty()) throw Error(ErrorKind::MalformedHeader, "empty input, expected header 'id,y_true,<model>...'");
  const auto& header = records.front().fields;
  if (header.size() < 2 || header[0] != "id" || header[1] != "y_true") {
    throw Error(ErrorKind::MalformedHeader, "header must start with 'id,y_true'");
  }
  if (header.size() < 3) throw Error(ErrorKind::MalformedHeader, "header names no model columns");

  PredictionSet ps;
  for (std::size_t c = 2; c < header.size(); ++c) ps.models.push_back(ModelColumn{header[c], {}});

  const std::size_t width = header.size();
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    const std::string row_label = "row " + std::to_string(r) + " (line " + std::to_string(rec.line) + ")";
    if (rec.fields.size() != width) {
      throw Error(ErrorKind::LengthMismatch, row_label + " has " + std::to_string(rec.fields.size()) +
                                                 " cells, header has " + std::to_string(width));
    }
    ps.instance_ids.push_back(rec.fields[0]);
    ps.y_true.push_back(parse_number(rec.fields[1], row_label + ", column 'y_true'"));
    for (std::size_t c = 2; c < width; ++c) {
      ps.models[c - 2].predictions.push_back(
          parse_number(rec.fields[c], row_label + ", column '" + header[c] + "'"));
    }
  }
  validate(ps);
  return ps;
}

double json_number(const ordered_json& v, const std::string& where) {
  if (!v.is_number()) throw Error(ErrorKind::NonNumeric, where + ": expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw Error(ErrorKind::NonFinite, where + ": value is not finite");
  return d;
}

PredictionSet parse_json(std::string_view content) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(content);
  } catch (const ordered_json::out_of_range& e) {
    throw Error(ErrorKind::NonFinite, std::string("number overflow: ") + e.what());
  } catch (const ordered_json::parse_error& e) {
    throw Error(ErrorKind::MalformedHeader, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("instances") || !doc["instances"].is_array()) {
    throw Error(ErrorKind::MalformedHeader, "expected an object with an 'instances' array");
  }
  const auto& instances = doc["instances"];
  if (instances.empty()) throw Error(ErrorKind::LengthMismatch, "no instances");

  PredictionSet ps;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const auto& inst = instances[i];
    const std::string where = "instance " + std::to_string(i + 1);
    if (!inst.is_object() || !inst.contains("id") || !inst.contains("y_true") || !inst.contains("predictions")) {
      throw Error(ErrorKind::MalformedHeader, where + ": needs 'id', 'y_true' and 'predictions'");
    }
    if (!inst["id"].is_string()) throw Error(ErrorKind::MalformedHeader, where + ": 'id' must be a string");
    const auto& preds = inst["predictions"];
    if (!preds.is_object()) throw Error(ErrorKind::MalformedHeader, where + ": 'predictions' must be an object");

    if (i == 0) {
      if (preds.empty()) throw Error(ErrorKind::MalformedHeader, "no models in 'predictions'");
      for (const auto& [name, value] : preds.items()) ps.models.push_back(ModelColumn{name, {}});
    } else if (preds.size() != ps.models.size()) {
      throw Error(ErrorKind::LengthMismatch, where + ": lists " + std::to_string(preds.size()) +
                                                 " models, expected " + std::to_string(ps.models.size()));
    }
    ps.instance_ids.push_back(inst["id"].get<std::string>());
    ps.y_true.push_back(json_number(inst["y_true"], where + ", 'y_true'"));
    for (auto& column : ps.models) {
      auto it = preds.find(column.name);
      if (it == preds.end()) {
        throw Error(ErrorKind::LengthMismatch, where + ": missing prediction for model '" + column.name + "'");
      }
      column.predictions.push_back(json_number(*it, where + ", model '" + column.name + "'"));
    }
  }
  validate(ps);
  return ps;
}

std::string csv_quote(const std::string& s) {
  const bool needs = s.find_first_of(",\"\r\n") != std::string::npos || s != trim(s);
  if (!needs) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += '"';
  return out;
}

}  // namespace

const ModelColumn* PredictionSet::find(std::string_view name) const {
  auto it = std::find_if(models.begin(), models.end(), [&](const ModelColumn& m) { return m.name == name; });
  return it == models.end() ? nullptr : &*it;
}

const ModelColumn& PredictionSet::model(std::string_view name) const {
  if (const auto* m = find(name)) return *m;
  throw Error(ErrorKind::UnknownModel, std::string(name));
}

std::vector<std::string> PredictionSet::model_names() const {
  std::vector<std::string> names;
  names.reserve(models.size());
  for (const auto& m : models) names.push_back(m.name);
  return names;
}

std::vector<std::string> PredictionSet::duplicate_ids() const {
  std::map<std::string_view, std::size_t> seen;
  std::vector<std::string> dups;
  for (const auto& id : instance_ids) {
    if (++seen[id] == 2) dups.push_back(id);
  }
  return dups;
}

void validate(const PredictionSet& ps) {
  const std::size_t n = ps.y_true.size();
  if (n == 0) throw Error(ErrorKind::LengthMismatch, "no data rows");
  if (ps.instance_ids.size() != n) throw Error(ErrorKind::LengthMismatch, "instance ids and y_true differ in length");
  if (ps.models.empty()) throw Error(ErrorKind::MalformedHeader, "no model columns");
  std::set<std::string_view> names;
  for (const auto& m : ps.models) {
    if (m.name.empty()) throw Error(ErrorKind::MalformedHeader, "empty model name");
    if (m.name == "id" || m.name == "y_true") {
      throw Error(ErrorKind::DuplicateModelName, "model name '" + m.name + "' collides with a reserved column");
    }
    if (!names.insert(m.name).second) throw Error(ErrorKind::DuplicateModelName, m.name);
    if (m.predictions.size() != n) {
      throw Error(ErrorKind::LengthMismatch, "model '" + m.name + "' has " + std::to_string(m.predictions.size()) +
                                                 " predictions, expected " + std::to_string(n));
    }
    for (double v : m.predictions) {
      if (!std::isfinite(v)) throw Error(ErrorKind::NonFinite, "model '" + m.name + "' has a non-finite prediction");
    }
  }
  for (double v : ps.y_true) {
    if (!std::isfinite(v)) throw Error(ErrorKind::NonFinite, "y_true has a non-finite value");
  }
}

PredictionSet parse_predictions(std::string_view content, InputFormat format) {
  return format == InputFormat::json ? parse_json(content) : parse_csv(content);
}

PredictionSet load_predictions(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return parse_predictions(buf.str(), ext == ".json" ? InputFormat::json : InputFormat::csv);
}

std::string to_csv(const PredictionSet& ps) {
  std::string out = "id,y_true";
  for (const auto& m : ps.models) out += "," + csv_quote(m.name);
  out += '\n';
  for (std::size_t i = 0; i < ps.size(); ++i) {
    out += csv_quote(ps.instance_ids[i]);
    out += ',';
    out += format_roundtrip(ps.y_true[i]);
    for (const auto& m : ps.models) {
      out += ',';
      out += format_roundtrip(m.predictions[i]);
    }
    out += '\n';
  }
  return out;
}

std::string to_json(const PredictionSet& ps) {
  ordered_json instances = ordered_json::array();
  for (std::size_t i = 0; i < ps.size(); ++i) {
    ordered_json preds = ordered_json::object();
    for (const auto& m : ps.models) preds[m.name] = m.predictions[i];
    instances.push_back({{"id", ps.instance_ids[i]}, {"y_true", ps.y_true[i]}, {"predictions", std::move(preds)}});
  }
  return ordered_json{{"instances", std::move(instances)}}.dump(2) + "\n";
}

ErrorVector model_errors(const PredictionSet& ps, std::string_view name) {
  return compute_errors(ps.y_true, ps.model(name).predictions, std::string(name));
}

std::pair<ErrorVector, ErrorVector> select_pair(const PredictionSet& ps, std::string_view name_a,
                                                std::string_view name_b) {
  return {model_errors(ps, name_a), model_errors(ps, name_b)};
}

}  // namespace errscope
