#include "errscope/render.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "errscope/error.hpp"
#include "errscope/format.hpp"

namespace errscope {

std::string Rgb::hex() const {
  std::array<char, 8> buf{};
  std::snprintf(buf.data(), buf.size(), "#%02x%02x%02x", r, g, b);
  return buf.data();
}

Colormap::Colormap(std::string name, std::vector<Stop> stops) : name_(std::move(name)), stops_(std::move(stops)) {
  if (stops_.size() < 2 || stops_.front().t != 0.0 || stops_.back().t != 1.0) {
    throw Error(ErrorKind::InvalidArgument, "colormap stops must start at t=0 and end at t=1");
  }
  for (std::size_t i = 1; i < stops_.size(); ++i) {
    if (!(stops_[i].t > stops_[i - 1].t)) {
      throw Error(ErrorKind::InvalidArgument, "colormap stops must be strictly increasing");
    }
  }
}

Colormap Colormap::warm_cool() {
  return Colormap("warm_cool", {{0.0, {215, 48, 39}},
                                {0.25, {253, 174, 97}},
                                {0.5, {254, 224, 144}},
                                {0.75, {145, 191, 219}},
                                {1.0, {69, 117, 180}}});
}

Rgb Colormap::at(double t) const {
  if (!(t > 0.0)) return stops_.front().color;  // also catches NaN
  if (t >= 1.0) return stops_.back().color;
  auto hi = std::upper_bound(stops_.begin(), stops_.end(), t, [](double v, const Stop& s) { return v < s.t; });
  auto lo = hi - 1;
  const double f = (t - lo->t) / (hi->t - lo->t);
  auto mix = [f](std::uint8_t a, std::uint8_t b) {
    return static_cast<std::uint8_t>(std::lround(a + f * (static_cast<double>(b) - a)));
  };
  return {mix(lo->color.r, hi->color.r), mix(lo->color.g, hi->color.g), mix(lo->color.b, hi->color.b)};
}

Affine Affine::fit(double x0, double x1, double y0, double y1, double left, double top, double right,
                   double bottom) {
  Affine a;
  a.sx = (right - left) / (x1 - x0);
  a.tx = left - a.sx * x0;
  a.sy = -(bottom - top) / (y1 - y0);
  a.ty = bottom - a.sy * y0;
  return a;
}

namespace {

std::string escape_xml(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string num(double v) { return format_compact(v); }

void write_style(std::ostringstream& os, const Style& s) {
  os << " fill=\"" << (s.fill ? s.fill->hex() : "none") << '"';
  if (s.stroke) os << " stroke=\"" << s.stroke->hex() << "\" stroke-width=\"" << num(s.stroke_width) << '"';
  if (s.opacity != 1.0) os << " opacity=\"" << num(s.opacity) << '"';
}

void write_class(std::ostringstream& os, const std::string& cls) {
  if (!cls.empty()) os << " class=\"" << escape_xml(cls) << '"';
}

void write_points(std::ostringstream& os, const std::vector<Point2>& pts) {
  os << " points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) os << ' ';
    os << num(pts[i].x) << ',' << num(pts[i].y);
  }
  os << '"';
}

struct SvgWriter {
  std::ostringstream& os;

  void operator()(const Circle& c) const {
    os << "<circle";
    write_class(os, c.cls);
    os << " cx=\"" << num(c.center.x) << "\" cy=\"" << num(c.center.y) << "\" r=\"" << num(c.radius) << '"';
    write_style(os, c.style);
    os << "/>\n";
  }
  void operator()(const Polygon& p) const {
    os << "<polygon";
    write_class(os, p.cls);
    write_points(os, p.vertices);
    write_style(os, p.style);
    os << "/>\n";
  }
  void operator()(const Polyline& p) const {
    os << "<polyline";
    write_class(os, p.cls);
    write_points(os, p.vertices);
    write_style(os, p.style);
    os << "/>\n";
  }
  void operator()(const Line& l) const {
    os << "<line";
    write_class(os, l.cls);
    os << " x1=\"" << num(l.a.x) << "\" y1=\"" << num(l.a.y) << "\" x2=\"" << num(l.b.x) << "\" y2=\""
       << num(l.b.y) << '"';
    write_style(os, l.style);
    os << "/>\n";
  }
  void operator()(const Rect& r) const {
    os << "<rect";
    write_class(os, r.cls);
    os << " x=\"" << num(r.x) << "\" y=\"" << num(r.y) << "\" width=\"" << num(r.w) << "\" height=\"" << num(r.h)
       << '"';
    write_style(os, r.style);
    os << "/>\n";
  }
  void operator()(const Text& t) const {
    os << "<text";
    write_class(os, t.cls);
    os << " x=\"" << num(t.pos.x) << "\" y=\"" << num(t.pos.y) << "\" font-size=\"" << num(t.size)
       << "\" font-family=\"sans-serif\" text-anchor=\"" << t.anchor << "\" fill=\"" << t.color.hex() << '"';
    if (t.rotate != 0.0) {
      os << " transform=\"rotate(" << num(t.rotate) << ' ' << num(t.pos.x) << ' ' << num(t.pos.y) << ")\"";
    }
    os << '>' << escape_xml(t.text) << "</text>\n";
  }
};

Point2 shift(Point2 p, double dx, double dy) { return {p.x + dx, p.y + dy}; }

struct Offset {
  double dx, dy;

  void operator()(Circle& c) const { c.center = shift(c.center, dx, dy); }
  void operator()(Polygon& p) const {
    for (auto& v : p.vertices) v = shift(v, dx, dy);
  }
  void operator()(Polyline& p) const {
    for (auto& v : p.vertices) v = shift(v, dx, dy);
  }
  void operator()(Line& l) const {
    l.a = shift(l.a, dx, dy);
    l.b = shift(l.b, dx, dy);
  }
  void operator()(Rect& r) const {
    r.x += dx;
    r.y += dy;
  }
  void operator()(Text& t) const { t.pos = shift(t.pos, dx, dy); }
};

// Plot box inside a panel.
struct Box {
  double left = 80, top = 60, right = 720, bottom = 700;
};

constexpr Rgb kInk{40, 40, 40};
constexpr Rgb kGrey{150, 150, 150};
constexpr Rgb kWhite{255, 255, 255};

// Roughly `target` round tick values (1, 2, 5 times a power of ten) in [lo, hi].
std::vector<double> nice_ticks(double lo, double hi, int target = 6) {
  std::vector<double> ticks;
  const double span = hi - lo;
  if (!(span > 0.0) || !std::isfinite(span)) return ticks;
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    step = m * mag;
    if (span / step <= target) break;
  }
  for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * step; t += step) {
    ticks.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
  }
  return ticks;
}

void draw_frame(Figure& fig, const Affine& view, const Box& box, double x0, double x1, double y0, double y1,
                const Labels& labels, bool x_ticks = true) {
  fig.add(Rect{box.left, box.top, box.right - box.left, box.bottom - box.top, Style{std::nullopt, kInk, 1.0, 1.0},
               "frame"});
  if (x_ticks) {
    for (double t : nice_ticks(x0, x1)) {
      const double x = view.apply({t, 0.0}).x;
      fig.add(Line{{x, box.bottom}, {x, box.bottom + 5}, Style{std::nullopt, kInk, 1.0, 1.0}, "tick"});
      fig.add(Text{{x, box.bottom + 20}, num(t), 12.0, "middle", kInk, "tick-label"});
    }
  }
  for (double t : nice_ticks(y0, y1)) {
    const double y = view.apply({0.0, t}).y;
    fig.add(Line{{box.left - 5, y}, {box.left, y}, Style{std::nullopt, kInk, 1.0, 1.0}, "tick"});
    fig.add(Text{{box.left - 8, y + 4}, num(t), 12.0, "end", kInk, "tick-label"});
  }
  if (!labels.title.empty()) {
    fig.add(Text{{0.5 * (box.left + box.right), box.top - 20}, labels.title, 18.0, "middle", kInk, "title"});
  }
  if (!labels.x_label.empty()) {
    fig.add(Text{{0.5 * (box.left + box.right), box.bottom + 45}, labels.x_label, 14.0, "middle", kInk, "x-label"});
  }
  if (!labels.y_label.empty()) {
    fig.add(Text{{24, 0.5 * (box.top + box.bottom)}, labels.y_label, 14.0, "middle", kInk, "y-label", -90.0});
  }
}

// Vertical colour bar right of the plot box, t = 0 at the top.
void draw_colorbar(Figure& fig, const Colormap& cmap, const Box& box, const std::string& top_label,
                   const std::string& bottom_label) {
  constexpr int steps = 32;
  const double x = box.right + 25;
  const double h = (box.bottom - box.top) / steps;
  for (int i = 0; i < steps; ++i) {
    const double t = (i + 0.5) / steps;
    fig.add(Rect{x, box.top + i * h, 18, h, Style{cmap.at(t), std::nullopt, 1.0, 1.0}, "legend"});
  }
  fig.add(Text{{x + 9, box.top - 8}, top_label, 11.0, "middle", kInk, "legend-label"});
  fig.add(Text{{x + 9, box.bottom + 16}, bottom_label, 11.0, "middle", kInk, "legend-label"});
}

}  // namespace

std::string Figure::to_svg() const {
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(width_) << "\" height=\""
     << num(height_) << "\" viewBox=\"0 0 " << num(width_) << ' ' << num(height_) << "\">\n"
     << "<rect x=\"0\" y=\"0\" width=\"" << num(width_) << "\" height=\"" << num(height_)
     << "\" fill=\"#ffffff\"/>\n";
  SvgWriter writer{os};
  for (const auto& e : elements_) std::visit(writer, e);
  os << "</svg>\n";
  return os.str();
}

Figure Figure::grid(std::span<const Figure> panels, std::size_t columns) {
  if (panels.empty() || columns == 0) return Figure(kPanelSize, kPanelSize);
  const double pw = panels.front().width();
  const double ph = panels.front().height();
  const std::size_t rows = (panels.size() + columns - 1) / columns;
  Figure out(pw * static_cast<double>(columns), ph * static_cast<double>(rows));
  for (std::size_t k = 0; k < panels.size(); ++k) {
    const Offset off{pw * static_cast<double>(k % columns), ph * static_cast<double>(k / columns)};
    for (Element e : panels[k].elements()) {
      std::visit(off, e);
      out.add(std::move(e));
    }
  }
  return out;
}

Figure render_boxplots(std::span<const std::pair<std::string, BoxplotStats>> stats, const Labels& labels) {
  if (stats.empty()) throw Error(ErrorKind::InvalidArgument, "render_boxplots: no models");
  double lo = 0.0, hi = 0.0;
  for (const auto& [name, s] : stats) {
    lo = std::min({lo, s.min_whisker, s.outliers.empty() ? lo : s.outliers.front()});
    hi = std::max({hi, s.max_whisker, s.outliers.empty() ? hi : s.outliers.back()});
  }
  if (hi - lo <= 0.0) {
    lo -= 1.0;
    hi += 1.0;
  }
  const double pad = 0.05 * (hi - lo);
  lo -= pad;
  hi += pad;

  const double slots = static_cast<double>(stats.size());
  const double width = std::max(kPanelSize, 80.0 * slots + 160.0);
  Figure fig(width, kPanelSize);
  const Box box{80, 60, width - 40, 700};
  const auto view = Affine::fit(0.0, slots, lo, hi, box.left, box.top, box.right, box.bottom);
  fig.set_view(view);

  Labels l = labels;
  if (l.y_label.empty()) l.y_label = "error";
  draw_frame(fig, view, box, 0.0, slots, lo, hi, l, false);
  const double zero_y = view.apply({0.0, 0.0}).y;
  fig.add(Line{{box.left, zero_y}, {box.right, zero_y}, Style{std::nullopt, kGrey, 1.0, 1.0}, "zero-line"});

  const Style box_style{Rgb{166, 206, 227}, kInk, 1.0, 1.5};
  const Style ink{std::nullopt, kInk, 1.0, 1.5};
  for (std::size_t k = 0; k < stats.size(); ++k) {
    const auto& [name, s] = stats[k];
    const double c = static_cast<double>(k) + 0.5;
    auto at = [&](double dx, double v) { return view.apply({c + dx, v}); };
    const Point2 q3 = at(-0.3, s.q3), q1 = at(0.3, s.q1);
    fig.add(Rect{q3.x, q3.y, q1.x - q3.x, q1.y - q3.y, box_style, "box"});
    fig.add(Line{at(-0.3, s.median), at(0.3, s.median), Style{std::nullopt, Rgb{0, 0, 0}, 1.0, 2.5}, "median"});
    fig.add(Line{at(0, s.q3), at(0, s.max_whisker), ink, "whisker"});
    fig.add(Line{at(0, s.q1), at(0, s.min_whisker), ink, "whisker"});
    fig.add(Line{at(-0.15, s.max_whisker), at(0.15, s.max_whisker), ink, "whisker-cap"});
    fig.add(Line{at(-0.15, s.min_whisker), at(0.15, s.min_whisker), ink, "whisker-cap"});
    for (double o : s.outliers) {
      fig.add(Circle{at(0, o), 3.0, Style{std::nullopt, kInk, 1.0, 1.0}, "outlier"});
    }
    fig.add(Text{{view.apply({c, 0}).x, box.bottom + 20}, name, 12.0, "middle", kInk, "model-label"});
  }
  return fig;
}

Figure render_pred_vs_actual(const PredictionSet& ps, std::string_view model, const Colormap& cmap,
                             std::optional<std::span<const double>> percentiles) {
  const auto& column = ps.model(model);
  const auto errors = compute_errors(ps.y_true, column.predictions);
  std::vector<double> pct;
  if (percentiles) {
    if (percentiles->size() != ps.size()) throw Error(ErrorKind::LengthMismatch, "percentile override length");
    pct.assign(percentiles->begin(), percentiles->end());
  } else {
    std::vector<double> abs_err(errors.n());
    for (std::size_t i = 0; i < errors.n(); ++i) abs_err[i] = std::abs(errors.errors[i]);
    pct = percentile_ranks(abs_err);
  }

  double lo = ps.y_true.front(), hi = lo;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    lo = std::min({lo, ps.y_true[i], column.predictions[i]});
    hi = std::max({hi, ps.y_true[i], column.predictions[i]});
  }
  if (hi - lo <= 0.0) {
    lo -= 1.0;
    hi += 1.0;
  }
  const double pad = 0.05 * (hi - lo);
  lo -= pad;
  hi += pad;

  Figure fig(kPanelSize, kPanelSize);
  const Box box{80, 60, 700, 680};
  const auto view = Affine::fit(lo, hi, lo, hi, box.left, box.top, box.right, box.bottom);
  fig.set_view(view);
  draw_frame(fig, view, box, lo, hi, lo, hi, Labels{std::string(model), "real value", "predicted value"});
  fig.add(Line{view.apply({lo, lo}), view.apply({hi, hi}), Style{std::nullopt, kInk, 1.0, 1.0}, "identity"});
  for (std::size_t i = 0; i < ps.size(); ++i) {
    fig.add(Circle{view.apply({ps.y_true[i], column.predictions[i]}), 3.0,
                   Style{cmap.at(pct[i]), std::nullopt, 0.85, 1.0}, "pt"});
  }
  draw_colorbar(fig, cmap, box, "accurate", "large error");
  return fig;
}

Figure render_pred_grid(const PredictionSet& ps, std::span<const std::string> order, const Colormap& cmap,
                        bool global_scale) {
  if (order.empty()) throw Error(ErrorKind::InvalidArgument, "render_pred_grid: no models");
  std::vector<std::vector<double>> pooled_pct;
  if (global_scale) {
    std::vector<double> all;
    all.reserve(order.size() * ps.size());
    for (const auto& name : order) {
      const auto& col = ps.model(name);
      for (std::size_t i = 0; i < ps.size(); ++i) all.push_back(std::abs(col.predictions[i] - ps.y_true[i]));
    }
    const auto pct = percentile_ranks(all);
    for (std::size_t m = 0; m < order.size(); ++m) {
      pooled_pct.emplace_back(pct.begin() + static_cast<std::ptrdiff_t>(m * ps.size()),
                              pct.begin() + static_cast<std::ptrdiff_t>((m + 1) * ps.size()));
    }
  }
  std::vector<Figure> panels;
  panels.reserve(order.size());
  for (std::size_t m = 0; m < order.size(); ++m) {
    if (global_scale) {
      panels.push_back(render_pred_vs_actual(ps, order[m], cmap, std::span<const double>(pooled_pct[m])));
    } else {
      panels.push_back(render_pred_vs_actual(ps, order[m], cmap));
    }
  }
  return Figure::grid(panels, std::min<std::size_t>(order.size(), 4));
}

LayerSet LayerSet::parse(std::string_view csv) {
  LayerSet l;
  while (!csv.empty()) {
    const auto comma = csv.find(',');
    std::string_view name = csv.substr(0, comma);
    csv = comma == std::string_view::npos ? std::string_view{} : csv.substr(comma + 1);
    while (!name.empty() && name.front() == ' ') name.remove_prefix(1);
    while (!name.empty() && name.back() == ' ') name.remove_suffix(1);
    if (name.empty()) continue;
    if (name == "zones") l.zones = true;
    else if (name == "scatter") l.scatter = true;
    else if (name == "proximity") l.proximity = true;
    else if (name == "crown") l.crown = true;
    else if (name == "kde") l.kde = true;
    else if (name == "hexbin") l.hexbin = true;
    else throw Error(ErrorKind::InvalidArgument, "unknown layer '" + std::string(name) + "'");
  }
  return l;
}

std::string LayerSet::to_string() const {
  std::string out;
  auto add = [&](bool on, const char* name) {
    if (!on) return;
    if (!out.empty()) out += ',';
    out += name;
  };
  add(zones, "zones");
  add(scatter, "scatter");
  add(proximity, "proximity");
  add(crown, "crown");
  add(kde, "kde");
  add(hexbin, "hexbin");
  return out;
}

std::vector<Point2> crown_curve(const ErrorSpaceAnalysis& analysis, std::size_t segments) {
  segments = std::max<std::size_t>(segments, 3);
  const double t = analysis.crown_threshold;
  const Point2 c = analysis.median2d;
  // Columns of L with L L' = S map the unit circle onto the level set.
  double l11 = 1.0, l21 = 0.0, l22 = 1.0;
  if (analysis.metric == DistanceMetric::mahalanobis) {
    const double a = analysis.covariance.xx + analysis.ridge;
    const double b = analysis.covariance.xy;
    const double d = analysis.covariance.yy + analysis.ridge;
    l11 = std::sqrt(a);
    l21 = b / l11;
    l22 = std::sqrt(std::max(d - l21 * l21, 0.0));
  }
  std::vector<Point2> pts(segments);
  for (std::size_t k = 0; k < segments; ++k) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(segments);
    const double u = std::cos(theta), v = std::sin(theta);
    pts[k] = {c.x + t * l11 * u, c.y + t * (l21 * u + l22 * v)};
  }
  return pts;
}

Figure render_error_space(const ErrorSpaceAnalysis& analysis, const LayerSet& layers, const Colormap& cmap,
                          const KdeGrid* kde, const HexbinLayer* hex, const Labels& labels) {
  if (layers.kde && kde == nullptr) throw Error(ErrorKind::MissingLayerInput, "kde layer requested without a KDE grid");
  if (layers.hexbin && hex == nullptr) {
    throw Error(ErrorKind::MissingLayerInput, "hexbin layer requested without hexbin data");
  }

  const auto crown = layers.crown ? crown_curve(analysis) : std::vector<Point2>{};
  double extent = 0.0;
  for (const auto& p : analysis.points) extent = std::max({extent, std::abs(p.e1), std::abs(p.e2)});
  for (const auto& p : crown) extent = std::max({extent, std::abs(p.x), std::abs(p.y)});
  extent *= 1.05;
  if (layers.hexbin) extent += hex->hex_radius;
  if (!(extent > 0.0)) extent = 1.0;
  const double lo = -extent, hi = extent;

  Figure fig(kPanelSize, kPanelSize);
  const Box box{80, 60, 700, 680};
  const auto view = Affine::fit(lo, hi, lo, hi, box.left, box.top, box.right, box.bottom);
  fig.set_view(view);
  auto inside = [&](Point2 p) { return p.x >= lo && p.x <= hi && p.y >= lo && p.y <= hi; };

  if (layers.zones) {
    const Point2 o = view.apply({0, 0});
    const Point2 tl = view.apply({lo, hi}), tr = view.apply({hi, hi});
    const Point2 bl = view.apply({lo, lo}), br = view.apply({hi, lo});
    const Style a{kZoneOrange, std::nullopt, kZoneOpacity, 1.0};
    const Style b{kZoneGreen, std::nullopt, kZoneOpacity, 1.0};
    // |y| > |x|: model A has the smaller error.
    fig.add(Polygon{{o, tl, tr}, a, "zone-a"});
    fig.add(Polygon{{o, br, bl}, a, "zone-a"});
    fig.add(Polygon{{o, tr, br}, b, "zone-b"});
    fig.add(Polygon{{o, bl, tl}, b, "zone-b"});
  }

  if (layers.kde) {
    const double vmax = kde->max_value();
    const auto& g = kde->grid;
    for (std::size_t i = 0; i < g.nx && vmax > 0.0; ++i) {
      for (std::size_t j = 0; j < g.ny; ++j) {
        const double v = kde->at(i, j);
        if (v < 1e-3 * vmax) continue;
        const double x0 = g.x_min + static_cast<double>(i) * g.dx();
        const double y0 = g.y_min + static_cast<double>(j) * g.dy();
        const Point2 c0{x0, y0 + g.dy()}, c1{x0 + g.dx(), y0};
        if (!inside({x0 + 0.5 * g.dx(), y0 + 0.5 * g.dy()})) continue;
        const Point2 p0 = view.apply(c0), p1 = view.apply(c1);
        fig.add(Rect{p0.x, p0.y, p1.x - p0.x, p1.y - p0.y, Style{cmap.at(1.0 - v / vmax), std::nullopt, 0.8, 1.0},
                     "kde"});
      }
    }
  }

  if (layers.hexbin) {
    const double cmax = static_cast<double>(hex->max_count());
    for (const auto& cell : hex->cells) {
      const Point2 c = hex_center({cell.q, cell.r}, hex->hex_radius, hex->origin);
      std::vector<Point2> verts;
      verts.reserve(6);
      for (int k = 0; k < 6; ++k) verts.push_back(view.apply(hex_corner(c, hex->hex_radius, k)));
      const double t = 1.0 - static_cast<double>(cell.count) / cmax;
      fig.add(Polygon{std::move(verts), Style{cmap.at(t), kWhite, 0.85, 0.5}, "hex"});
    }
  }

  if (layers.zones) {
    const Style diag{std::nullopt, kInk, 1.0, 1.0};
    fig.add(Line{view.apply({lo, lo}), view.apply({hi, hi}), diag, "diagonal"});
    fig.add(Line{view.apply({lo, hi}), view.apply({hi, lo}), diag, "anti-diagonal"});
  }
  const Style axis{std::nullopt, kGrey, 1.0, 1.0};
  fig.add(Line{view.apply({lo, 0}), view.apply({hi, 0}), axis, "axis"});
  fig.add(Line{view.apply({0, lo}), view.apply({0, hi}), axis, "axis"});

  if (layers.crown) {
    std::vector<Point2> verts;
    verts.reserve(crown.size());
    for (const auto& p : crown) verts.push_back(view.apply(p));
    fig.add(Polygon{std::move(verts), Style{std::nullopt, kWhite, 1.0, 2.0}, "crown"});
  }

  if (layers.proximity || layers.scatter) {
    for (const auto& p : analysis.points) {
      const Style s = layers.proximity ? Style{cmap.at(p.percentile), std::nullopt, 0.9, 1.0}
                                       : Style{Rgb{60, 60, 60}, std::nullopt, 0.7, 1.0};
      fig.add(Circle{view.apply({p.e1, p.e2}), 3.0, s, "pt"});
    }
  }

  Labels l = labels;
  if (l.x_label.empty()) l.x_label = "error of model A";
  if (l.y_label.empty()) l.y_label = "error of model B";
  draw_frame(fig, view, box, lo, hi, lo, hi, l);
  if (layers.proximity) draw_colorbar(fig, cmap, box, "near median", "far");
  else if (layers.kde || layers.hexbin) draw_colorbar(fig, cmap, box, "dense", "sparse");
  return fig;
}

std::vector<std::size_t> histogram_counts(std::span<const double> values, std::size_t bins) {
  if (bins == 0) throw Error(ErrorKind::InvalidArgument, "histogram needs at least one bin");
  std::vector<std::size_t> counts(bins, 0);
  if (values.empty()) return counts;
  const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
  const double lo = *mn, width = (*mx - lo) / static_cast<double>(bins);
  for (double v : values) {
    std::size_t k = 0;
    if (width > 0.0) {
      k = static_cast<std::size_t>(std::floor((v - lo) / width));
      k = std::min(k, bins - 1);
    }
    ++counts[k];
  }
  return counts;
}

Figure render_histogram(std::span<const double> values, std::size_t bins, const Labels& labels) {
  const auto counts = histogram_counts(values, bins);
  double lo = 0.0, hi = 1.0;
  if (!values.empty()) {
    const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
    lo = *mn;
    hi = *mx;
  }
  if (hi - lo <= 0.0) {
    lo -= 0.5;
    hi += 0.5;
  }
  const std::size_t cmax = counts.empty() ? 1 : std::max<std::size_t>(1, *std::max_element(counts.begin(), counts.end()));
  Figure fig(kPanelSize, kPanelSize);
  const Box box{80, 60, 760, 700};
  const auto view = Affine::fit(lo, hi, 0.0, static_cast<double>(cmax) * 1.05, box.left, box.top, box.right,
                                box.bottom);
  fig.set_view(view);
  Labels l = labels;
  if (l.y_label.empty()) l.y_label = "count";
  draw_frame(fig, view, box, lo, hi, 0.0, static_cast<double>(cmax) * 1.05, l);
  const double w = (hi - lo) / static_cast<double>(bins);
  for (std::size_t k = 0; k < bins; ++k) {
    const Point2 top = view.apply({lo + static_cast<double>(k) * w, static_cast<double>(counts[k])});
    const Point2 base = view.apply({lo + static_cast<double>(k + 1) * w, 0.0});
    fig.add(Rect{top.x, top.y, base.x - top.x, base.y - top.y, Style{Rgb{69, 117, 180}, kWhite, 1.0, 0.5}, "bar"});
  }
  return fig;
}

}  // namespace errscope
