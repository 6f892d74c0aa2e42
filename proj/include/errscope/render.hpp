#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "errscope/density.hpp"
#include "errscope/errorspace.hpp"
#include "errscope/ingest.hpp"
#include "errscope/metrics.hpp"

namespace errscope {

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;

  std::string hex() const;
  bool operator==(const Rgb&) const = default;
};

/// Piecewise-linear colormap over t in [0, 1]; t outside is clamped.
class Colormap {
 public:
  struct Stop {
    double t;
    Rgb color;
  };

  /// Throws InvalidArgument unless stops start at 0, end at 1 and strictly increase.
  Colormap(std::string name, std::vector<Stop> stops);

  /// Red at 0 through yellow to blue at 1: warm for near/accurate, cool for far.
  static Colormap warm_cool();

  Rgb at(double t) const;
  const std::string& name() const { return name_; }
  const std::vector<Stop>& stops() const { return stops_; }

 private:
  std::string name_;
  std::vector<Stop> stops_;
};

struct Style {
  std::optional<Rgb> fill;
  std::optional<Rgb> stroke;
  double opacity = 1.0;
  double stroke_width = 1.0;
};

// Primitives live in canvas units; y grows downwards.
struct Circle {
  Point2 center;
  double radius = 3.0;
  Style style;
  std::string cls;
};
struct Polygon {
  std::vector<Point2> vertices;
  Style style;
  std::string cls;
};
struct Polyline {
  std::vector<Point2> vertices;
  Style style;
  std::string cls;
};
struct Line {
  Point2 a, b;
  Style style;
  std::string cls;
};
struct Rect {
  double x = 0, y = 0, w = 0, h = 0;
  Style style;
  std::string cls;
};
struct Text {
  Point2 pos;
  std::string text;
  double size = 12.0;
  std::string anchor = "middle";
  Rgb color{};
  std::string cls;
  double rotate = 0.0;  // degrees about pos
};

using Element = std::variant<Circle, Polygon, Polyline, Line, Rect, Text>;

/// Data-to-canvas map: canvas = (sx * x + tx, sy * y + ty).
struct Affine {
  double sx = 1.0, tx = 0.0, sy = -1.0, ty = 0.0;

  Point2 apply(Point2 p) const { return {sx * p.x + tx, sy * p.y + ty}; }
  /// Maps [x0, x1] x [y0, y1] onto the canvas box, y axis pointing up.
  static Affine fit(double x0, double x1, double y0, double y1, double left, double top, double right,
                    double bottom);
};

class Figure {
 public:
  Figure(double width, double height) : width_(width), height_(height) {}

  double width() const { return width_; }
  double height() const { return height_; }
  const std::vector<Element>& elements() const { return elements_; }
  const Affine& view() const { return view_; }
  void set_view(const Affine& v) { view_ = v; }

  void add(Element e) { elements_.push_back(std::move(e)); }

  /// Standalone SVG 1.1 document. Numbers use at most six significant digits.
  std::string to_svg() const;

  /// Tiles equally sized panels row by row, `columns` per row.
  static Figure grid(std::span<const Figure> panels, std::size_t columns);

 private:
  double width_;
  double height_;
  Affine view_;
  std::vector<Element> elements_;
};

inline constexpr double kPanelSize = 800.0;

struct Labels {
  std::string title;
  std::string x_label;
  std::string y_label;
};

Figure render_boxplots(std::span<const std::pair<std::string, BoxplotStats>> stats, const Labels& labels = {});

/// Scatter of (truth, prediction) with the identity diagonal. Points are
/// coloured at the percentile rank of |error| (warm = accurate). When
/// `percentiles` is given it overrides the per-model ranking.
Figure render_pred_vs_actual(const PredictionSet& ps, std::string_view model, const Colormap& cmap,
                             std::optional<std::span<const double>> percentiles = std::nullopt);

/// One panel per model in `order`; ceil(M/4) rows by min(M, 4) columns.
/// `global_scale` ranks |error| across all models instead of per model.
Figure render_pred_grid(const PredictionSet& ps, std::span<const std::string> order, const Colormap& cmap,
                        bool global_scale = false);

struct LayerSet {
  bool zones = false;
  bool scatter = false;
  bool proximity = false;
  bool crown = false;
  bool kde = false;
  bool hexbin = false;

  /// Comma-separated names; throws InvalidArgument on an unknown name.
  static LayerSet parse(std::string_view csv);
  std::string to_string() const;
};

/// The crown level curve around the median: a circle for Euclidean distance,
/// the ellipse d' S^-1 d = threshold^2 for Mahalanobis. Data units; closed
/// polygon with `segments` vertices.
std::vector<Point2> crown_curve(const ErrorSpaceAnalysis& analysis, std::size_t segments = 256);

/// Square window [-E, E]^2 around the origin. Stacking, bottom to top:
/// zones, density layers, diagonals and axes, crown, points, legend.
/// Throws MissingLayerInput when a kde/hexbin layer is requested without data.
Figure render_error_space(const ErrorSpaceAnalysis& analysis, const LayerSet& layers, const Colormap& cmap,
                          const KdeGrid* kde = nullptr, const HexbinLayer* hex = nullptr,
                          const Labels& labels = {});

/// Equal-width bins over [min, max]; the last bin is closed on the right.
std::vector<std::size_t> histogram_counts(std::span<const double> values, std::size_t bins);

Figure render_histogram(std::span<const double> values, std::size_t bins, const Labels& labels = {});

inline constexpr Rgb kZoneOrange{255, 165, 0};
inline constexpr Rgb kZoneGreen{34, 139, 34};
inline constexpr double kZoneOpacity = 0.15;

}  // namespace errscope
