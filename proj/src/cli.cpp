#include "errscope/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "errscope/error.hpp"
#include "errscope/format.hpp"
#include "errscope/ingest.hpp"
#include "errscope/report.hpp"
#include "errscope/synth.hpp"

namespace errscope::cli {

namespace fs = std::filesystem;

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegenerateDistribution:
    case ErrorKind::NonPositiveDefinite:
    case ErrorKind::ConstantTarget:
      return kNumericalError;
    default:
      return kUsageError;
  }
}

namespace {

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw Error(ErrorKind::InvalidArgument, "failed writing '" + path.string() + "'");
}

std::string bold(const Console& io, const std::string& s) { return io.color ? "\033[1m" + s + "\033[0m" : s; }

std::string fixed(double v, int digits = 4) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

std::string optional_fixed(const std::optional<double>& v) { return v ? fixed(*v) : "n/a"; }

void print_metric_table(const Console& io, const std::vector<ModelSummary>& models,
                        const std::vector<std::string>& ranking) {
  std::map<std::string, const ModelSummary*> by_name;
  for (const auto& m : models) by_name[m.name] = &m;
  std::size_t width = 5;
  for (const auto& m : models) width = std::max(width, m.name.size());
  io.out << bold(io, std::string("rank  ") + std::string(width, ' ').replace(0, 5, "model") +
                         "          mae         rmse          r2        n")
         << '\n';
  for (std::size_t k = 0; k < ranking.size(); ++k) {
    const auto& s = *by_name.at(ranking[k]);
    io.out << std::setw(4) << (k + 1) << "  " << std::left << std::setw(static_cast<int>(width)) << s.name
           << std::right << std::setw(13) << fixed(s.metrics.mae) << std::setw(13) << fixed(s.metrics.rmse)
           << std::setw(12) << optional_fixed(s.metrics.r_squared) << std::setw(9) << s.metrics.n << '\n';
  }
}

// "hx,hy"
Bandwidth parse_bandwidth(const std::string& text) {
  const auto comma = text.find(',');
  auto parse = [&](std::string_view s) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || !(v > 0.0) || !std::isfinite(v)) {
      throw Error(ErrorKind::InvalidArgument, "bandwidth must be 'hx,hy' with positive numbers, got '" + text + "'");
    }
    return v;
  };
  if (comma == std::string::npos) {
    throw Error(ErrorKind::InvalidArgument, "bandwidth must be 'hx,hy', got '" + text + "'");
  }
  const std::string_view sv(text);
  return {parse(sv.substr(0, comma)), parse(sv.substr(comma + 1))};
}

template <typename Fn>
int guarded(const Console& io, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    io.err << "errscope: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const fs::filesystem_error& e) {
    io.err << "errscope: " << e.what() << '\n';
    return kUsageError;
  }
}

}  // namespace

int run_metrics(const MetricsOptions& opts, const Console& io) {
  return guarded(io, [&] {
    const auto ps = load_predictions(opts.input);
    const auto report = build_metrics_report(ps, opts.sort);
    for (const auto& w : report.warnings) io.err << "errscope: warning: " << w << '\n';

    if (opts.plots_dir) {
      std::map<std::string, const ModelSummary*> by_name;
      for (const auto& m : report.per_model) by_name[m.name] = &m;
      std::vector<std::pair<std::string, BoxplotStats>> boxes;
      for (const auto& name : report.ranking) boxes.emplace_back(name, by_name.at(name)->boxplot);
      const auto cmap = Colormap::warm_cool();
      write_file(*opts.plots_dir / "boxplots.svg",
                 render_boxplots(boxes, Labels{std::string("prediction errors, sorted by ") + to_string(opts.sort),
                                               "", "error"})
                     .to_svg());
      write_file(*opts.plots_dir / "pred_vs_actual.svg",
                 render_pred_grid(ps, report.ranking, cmap, opts.global_scale).to_svg());
      std::vector<Figure> hists;
      for (const auto& name : report.ranking) {
        const auto e = model_errors(ps, name);
        hists.push_back(render_histogram(e.errors, 30, Labels{name, "error", "count"}));
      }
      write_file(*opts.plots_dir / "error_histograms.svg",
                 Figure::grid(hists, std::min<std::size_t>(hists.size(), 4)).to_svg());
    }

    if (opts.json) {
      io.out << to_json(report).dump(2) << '\n';
    } else {
      print_metric_table(io, report.per_model, report.ranking);
    }
    return kOk;
  });
}

int run_compare(const CompareOptions& opts, const Console& io) {
  return guarded(io, [&] {
    const auto ps = load_predictions(opts.input);
    const auto [ea, eb] = select_pair(ps, opts.model_a, opts.model_b);
    const auto analysis = analyze_pair(ea, eb, opts.metric);
    const auto pair = summarize_pair(opts.model_a, opts.model_b, analysis);
    const auto points = analysis.xy();

    std::optional<KdeGrid> kde;
    std::optional<HexbinLayer> hex;
    std::optional<std::string> bandwidth_note;
    if (opts.layers.kde) {
      kde = kde2d(points, std::nullopt, opts.bandwidth);
      bandwidth_note = (opts.bandwidth ? "user-supplied " : "Scott's rule ") + format_roundtrip(kde->bandwidth.hx) +
                       "," + format_roundtrip(kde->bandwidth.hy);
    }
    if (opts.layers.hexbin) hex = hexbin(points, opts.hex_radius.value_or(default_hex_radius(points)));

    const Labels labels{opts.model_a + " vs " + opts.model_b + " (" + std::string(to_string(opts.metric)) + ")",
                        "error of " + opts.model_a, "error of " + opts.model_b};
    const auto fig = render_error_space(analysis, opts.layers, Colormap::warm_cool(), kde ? &*kde : nullptr,
                                        hex ? &*hex : nullptr, labels);
    write_file(opts.svg_out, fig.to_svg());

    if (opts.json_out) {
      Json doc{{"tool_metadata", tool_metadata(bandwidth_note)},
               {"pair", to_json(pair)},
               {"metrics",
                {{opts.model_a, to_json(metric_report(ps.y_true, ps.model(opts.model_a).predictions))},
                 {opts.model_b, to_json(metric_report(ps.y_true, ps.model(opts.model_b).predictions))}}},
               {"layers", opts.layers.to_string()},
               {"analysis", to_json(analysis)}};
      if (kde) doc["density"]["kde"] = to_json(*kde);
      if (hex) doc["density"]["hexbin"] = to_json(*hex);
      write_file(*opts.json_out, doc.dump(2) + "\n");
    }

    const double n = static_cast<double>(analysis.points.size());
    auto share = [n](std::size_t c) { return fixed(100.0 * static_cast<double>(c) / n, 1) + "%"; };
    io.out << bold(io, "error space: " + opts.model_a + " (x) vs " + opts.model_b + " (y), " +
                           std::string(to_string(opts.metric)) + ", N=" + std::to_string(analysis.points.size()))
           << '\n';
    io.out << bold(io, "zone         count    share") << '\n';
    for (auto z : all_zones) {
      io.out << std::left << std::setw(10) << to_string(z) << std::right << std::setw(8) << analysis.zone_count(z)
             << std::setw(9) << share(analysis.zone_count(z)) << '\n';
    }
    io.out << bold(io, "quadrant     count    share") << '\n';
    for (auto q : all_quadrants) {
      io.out << std::left << std::setw(12) << to_string(q) << std::right << std::setw(6)
             << analysis.quadrant_count(q) << std::setw(9) << share(analysis.quadrant_count(q)) << '\n';
    }
    io.out << "median2d: (" << fixed(analysis.median2d.x) << ", " << fixed(analysis.median2d.y) << ")\n"
           << "crown threshold: " << fixed(analysis.crown_threshold) << '\n'
           << "error correlation: " << optional_fixed(pair.error_correlation) << '\n'
           << "above y=x: " << share(static_cast<std::size_t>(std::llround(pair.above_identity_fraction * n))) << '\n';
    for (const auto& note : pair.notes) io.out << "note: " << note << '\n';
    return kOk;
  });
}

int run_synth(const SynthOptions& opts, const Console& io) {
  return guarded(io, [&] {
    const auto kind = synth::parse_kind(opts.kind);
    if (!kind) {
      std::string known;
      for (auto k : synth::all_kinds()) known += (known.empty() ? "" : ", ") + std::string(synth::to_string(k));
      throw Error(ErrorKind::InvalidArgument, "unknown scenario kind '" + opts.kind + "' (known: " + known + ")");
    }
    synth::ScenarioSpec spec{*kind, opts.n, opts.seed, {}};
    for (const auto& kv : opts.params) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos || eq == 0) {
        throw Error(ErrorKind::InvalidArgument, "parameter must be key=value, got '" + kv + "'");
      }
      const std::string_view value(kv.data() + eq + 1, kv.size() - eq - 1);
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
      if (ec != std::errc() || ptr != value.data() + value.size()) {
        throw Error(ErrorKind::InvalidArgument, "parameter value is not a number in '" + kv + "'");
      }
      spec.parameters[kv.substr(0, eq)] = v;
    }
    const auto ps = synth::generate(spec);
    write_file(opts.output, to_csv(ps));
    const auto report = build_metrics_report(ps, SortKey::rmse);
    io.out << "wrote " << ps.size() << " rows to " << opts.output.string() << '\n';
    print_metric_table(io, report.per_model, report.ranking);
    return kOk;
  });
}

int run(int argc, const char* const* argv, const Console& io) {
  CLI::App app{"errscope: compare regression models through their per-instance errors"};
  app.name("errscope");
  app.require_subcommand(1);

  MetricsOptions m;
  std::string sort = "rmse";
  std::string plots;
  auto* metrics = app.add_subcommand("metrics", "1D screening: per-model metrics, ranking and boxplots");
  metrics->add_option("input", m.input, "prediction file (.csv or .json)")->required();
  metrics->add_option("--sort", sort, "ranking metric")->check(CLI::IsMember({"mae", "rmse"}));
  metrics->add_option("--plots", plots, "directory for boxplot, scatter grid and histogram SVGs");
  metrics->add_flag("--json", m.json, "print the JSON report instead of a table");
  metrics->add_flag("--global-scale", m.global_scale, "rank |error| across all models in the scatter grid");

  CompareOptions c;
  std::string metric = "mahalanobis";
  std::string layers = "zones,proximity,crown";
  std::string bandwidth;
  double hex_radius = 0.0;
  std::string svg_out = "error_space.svg";
  std::string json_out;
  auto* compare = app.add_subcommand("compare", "2D error space for a pair of models");
  compare->add_option("input", c.input, "prediction file (.csv or .json)")->required();
  compare->add_option("--a", c.model_a, "model on the x axis")->required();
  compare->add_option("--b", c.model_b, "model on the y axis")->required();
  compare->add_option("--metric", metric, "distance from the median")
      ->check(CLI::IsMember({"euclidean", "mahalanobis"}));
  compare->add_option("--layers", layers, "comma list of zones,scatter,proximity,crown,kde,hexbin");
  auto* bw_opt = compare->add_option("--bandwidth", bandwidth, "KDE bandwidth 'hx,hy'");
  auto* hex_opt = compare->add_option("--hex-radius", hex_radius, "hexagon centre-to-vertex radius")
                      ->check(CLI::PositiveNumber);
  compare->add_option("-o,--output", svg_out, "SVG output path");
  compare->add_option("--json", json_out, "JSON report path");

  SynthOptions s;
  std::string synth_out;
  auto* synth_cmd = app.add_subcommand("synth", "generate a synthetic prediction set");
  synth_cmd->add_option("--kind", s.kind, "scenario kind")->required();
  synth_cmd->add_option("--n", s.n, "number of instances")->required()->check(CLI::PositiveNumber);
  synth_cmd->add_option("--seed", s.seed, "random seed")->required();
  synth_cmd->add_option("--param", s.params, "scenario parameter key=value (repeatable)");
  synth_cmd->add_option("-o,--output", synth_out, "CSV output path")->required();

  // Reserved for selecting instances by operating condition; any value is rejected.
  std::string filter;
  for (auto* sub : {metrics, compare}) sub->add_option("--filter", filter, "reserved, not implemented")->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, io.out, io.err);
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, io.out, io.err);
    return kOk;
  } catch (const CLI::CallForVersion& e) {
    app.exit(e, io.out, io.err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, io.out, io.err);
    return kUsageError;
  }

  if (!filter.empty() || metrics->count("--filter") + compare->count("--filter") > 0) {
    io.err << "error: --filter is reserved and not implemented\n";
    return kUsageError;
  }
  if (metrics->parsed()) {
    m.sort = sort == "mae" ? SortKey::mae : SortKey::rmse;
    if (!plots.empty()) m.plots_dir = fs::path(plots);
    return run_metrics(m, io);
  }
  if (compare->parsed()) {
    return guarded(io, [&] {
      c.metric = *parse_metric(metric);
      c.layers = LayerSet::parse(layers);
      if (bw_opt->count() > 0) c.bandwidth = parse_bandwidth(bandwidth);
      if (hex_opt->count() > 0) c.hex_radius = hex_radius;
      c.svg_out = svg_out;
      if (!json_out.empty()) c.json_out = fs::path(json_out);
      return run_compare(c, io);
    });
  }
  s.output = synth_out;
  return run_synth(s, io);
}

}  // namespace errscope::cli
