#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "errscope/density.hpp"
#include "errscope/error.hpp"
#include "errscope/errorspace.hpp"
#include "errscope/ingest.hpp"
#include "errscope/metrics.hpp"
#include "errscope/render.hpp"
#include "errscope/report.hpp"
#include "errscope/synth.hpp"

namespace py = pybind11;
using namespace errscope;

namespace {

std::vector<Point2> to_points(const std::vector<std::pair<double, double>>& xy) {
  std::vector<Point2> out;
  out.reserve(xy.size());
  for (const auto& [x, y] : xy) out.push_back({x, y});
  return out;
}

DistanceMetric metric_from(const std::string& name) {
  if (auto m = parse_metric(name)) return *m;
  throw Error(ErrorKind::InvalidArgument, "unknown metric '" + name + "'");
}

// JSON values cross the boundary as Python objects via json.loads.
py::object json_to_py(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "errscope core: per-instance error analysis and 2D error space";
  m.attr("__version__") = kVersion;

  static py::exception<Error> exc(m, "ErrscopeError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object err = py::handle(exc.ptr())(std::string(e.what()));
      py::setattr(err, "kind", py::str(std::string(to_string(e.kind()))));
      PyErr_SetObject(exc.ptr(), err.ptr());
    }
  });

  py::class_<PredictionSet>(m, "PredictionSet")
      .def_readonly("instance_ids", &PredictionSet::instance_ids)
      .def_readonly("y_true", &PredictionSet::y_true)
      .def_property_readonly("model_names", &PredictionSet::model_names)
      .def("predictions", [](const PredictionSet& ps, const std::string& name) { return ps.model(name).predictions; })
      .def("__len__", &PredictionSet::size)
      .def("to_csv", [](const PredictionSet& ps) { return to_csv(ps); })
      .def("to_json", [](const PredictionSet& ps) { return to_json(ps); });

  m.def("parse_predictions", [](const std::string& content, const std::string& format) {
    if (format != "csv" && format != "json") throw Error(ErrorKind::InvalidArgument, "format must be csv or json");
    return parse_predictions(content, format == "json" ? InputFormat::json : InputFormat::csv);
  }, py::arg("content"), py::arg("format") = "csv");
  m.def("load_predictions", &load_predictions, py::arg("path"));
  m.def("select_pair", [](const PredictionSet& ps, const std::string& a, const std::string& b) {
    auto [ea, eb] = select_pair(ps, a, b);
    return std::make_pair(ea.errors, eb.errors);
  });

  m.def("compute_errors", [](const std::vector<double>& y, const std::vector<double>& p) {
    return compute_errors(y, p).errors;
  }, py::arg("y_true"), py::arg("y_pred"));
  m.def("mae", [](const std::vector<double>& e) { return mae(ErrorVector{"", e}); });
  m.def("rmse", [](const std::vector<double>& e) { return rmse(ErrorVector{"", e}); });
  m.def("r_squared", [](const std::vector<double>& y, const std::vector<double>& p) { return r_squared(y, p); });
  m.def("deviation", [](const std::vector<double>& a, const std::vector<double>& b) { return deviation(a, b); });
  m.def("boxplot_stats", [](const std::vector<double>& e) { return json_to_py(to_json(boxplot_stats(ErrorVector{"", e}))); });
  m.def("sort_models_by_metric", [](const std::map<std::string, std::pair<double, double>>& mae_rmse,
                                    const std::string& key) {
    std::map<std::string, MetricReport> reports;
    for (const auto& [name, v] : mae_rmse) reports[name] = MetricReport{v.first, v.second, std::nullopt, 0};
    if (key != "mae" && key != "rmse") throw Error(ErrorKind::InvalidArgument, "key must be mae or rmse");
    return sort_models_by_metric(reports, key == "mae" ? SortKey::mae : SortKey::rmse);
  }, py::arg("mae_rmse"), py::arg("key") = "rmse");

  m.def("classify_zone", [](double e1, double e2) { return std::string(to_string(classify_zone(e1, e2))); });
  m.def("classify_quadrant", [](double e1, double e2) { return std::string(to_string(classify_quadrant(e1, e2))); });
  m.def("median2d", [](const std::vector<std::pair<double, double>>& pts) {
    const auto c = median2d(to_points(pts));
    return std::make_pair(c.x, c.y);
  });
  m.def("covariance2", [](const std::vector<std::pair<double, double>>& pts) {
    return covariance2(to_points(pts)).row_major();
  });
  m.def("mahalanobis", [](std::pair<double, double> p, std::pair<double, double> c, std::array<double, 4> inv) {
    return mahalanobis({p.first, p.second}, {c.first, c.second}, Matrix2{inv[0], inv[1], inv[2], inv[3]});
  }, py::arg("point"), py::arg("center"), py::arg("cov_inv"));
  m.def("percentile_ranks", [](const std::vector<double>& d) { return percentile_ranks(d); });
  m.def("crown_threshold", [](const std::vector<double>& d) { return crown_threshold(d); });

  py::class_<ErrorSpaceAnalysis>(m, "ErrorSpaceAnalysis")
      .def_property_readonly("n", [](const ErrorSpaceAnalysis& a) { return a.points.size(); })
      .def_property_readonly("median2d", [](const ErrorSpaceAnalysis& a) { return std::make_pair(a.median2d.x, a.median2d.y); })
      .def_property_readonly("covariance", [](const ErrorSpaceAnalysis& a) { return a.covariance.row_major(); })
      .def_property_readonly("covariance_inverse", [](const ErrorSpaceAnalysis& a) { return a.covariance_inverse.row_major(); })
      .def_readonly("crown_threshold", &ErrorSpaceAnalysis::crown_threshold)
      .def_property_readonly("metric", [](const ErrorSpaceAnalysis& a) { return std::string(to_string(a.metric)); })
      .def_property_readonly("zone_counts", [](const ErrorSpaceAnalysis& a) {
        std::map<std::string, std::size_t> out;
        for (auto z : all_zones) out[std::string(to_string(z))] = a.zone_count(z);
        return out;
      })
      .def_property_readonly("quadrant_counts", [](const ErrorSpaceAnalysis& a) {
        std::map<std::string, std::size_t> out;
        for (auto q : all_quadrants) out[std::string(to_string(q))] = a.quadrant_count(q);
        return out;
      })
      .def_property_readonly("distances", [](const ErrorSpaceAnalysis& a) {
        std::vector<double> d;
        for (const auto& p : a.points) d.push_back(p.distance);
        return d;
      })
      .def_property_readonly("percentiles", [](const ErrorSpaceAnalysis& a) {
        std::vector<double> d;
        for (const auto& p : a.points) d.push_back(p.percentile);
        return d;
      })
      .def("to_dict", [](const ErrorSpaceAnalysis& a) { return json_to_py(to_json(a)); });

  m.def("analyze_pair", [](const std::vector<double>& e1, const std::vector<double>& e2, const std::string& metric) {
    return analyze_pair(ErrorVector{"A", e1}, ErrorVector{"B", e2}, metric_from(metric));
  }, py::arg("e1"), py::arg("e2"), py::arg("metric") = "mahalanobis");

  m.def("kde2d", [](const std::vector<std::pair<double, double>>& pts, std::optional<std::pair<double, double>> bw,
                    std::size_t nx, std::size_t ny) {
    const auto points = to_points(pts);
    std::optional<Bandwidth> b;
    if (bw) b = Bandwidth{bw->first, bw->second};
    const auto bandwidth = b ? *b : scott_bandwidth(points);
    return json_to_py(to_json(kde2d(points, padded_grid(points, bandwidth, 3.0, nx, ny), bandwidth)));
  }, py::arg("points"), py::arg("bandwidth") = py::none(), py::arg("nx") = 200, py::arg("ny") = 200);
  m.def("hexbin", [](const std::vector<std::pair<double, double>>& pts, std::optional<double> radius) {
    const auto points = to_points(pts);
    return json_to_py(to_json(hexbin(points, radius.value_or(default_hex_radius(points)))));
  }, py::arg("points"), py::arg("hex_radius") = py::none());

  m.def("synth", [](const std::string& kind, std::size_t n, std::uint64_t seed, const std::map<std::string, double>& params) {
    auto k = synth::parse_kind(kind);
    if (!k) throw Error(ErrorKind::InvalidArgument, "unknown scenario kind '" + kind + "'");
    return synth::generate(synth::ScenarioSpec{*k, n, seed, params});
  }, py::arg("kind"), py::arg("n"), py::arg("seed"), py::arg("params") = std::map<std::string, double>{});

  m.def("render_error_space", [](const ErrorSpaceAnalysis& a, const std::string& layers) {
    const auto l = LayerSet::parse(layers);
    const auto pts = a.xy();
    std::optional<KdeGrid> kde;
    std::optional<HexbinLayer> hex;
    if (l.kde) kde = kde2d(pts);
    if (l.hexbin) hex = hexbin(pts, default_hex_radius(pts));
    return render_error_space(a, l, Colormap::warm_cool(), kde ? &*kde : nullptr, hex ? &*hex : nullptr).to_svg();
  }, py::arg("analysis"), py::arg("layers") = "zones,proximity,crown");
  m.def("render_histogram", [](const std::vector<double>& v, std::size_t bins) {
    return render_histogram(v, bins).to_svg();
  }, py::arg("values"), py::arg("bins") = 30);
  m.def("histogram_counts", [](const std::vector<double>& v, std::size_t bins) { return histogram_counts(v, bins); });
  m.def("metrics_report", [](const PredictionSet& ps, const std::string& key) {
    return json_to_py(to_json(build_metrics_report(ps, key == "mae" ? SortKey::mae : SortKey::rmse)));
  }, py::arg("predictions"), py::arg("key") = "rmse");
}
