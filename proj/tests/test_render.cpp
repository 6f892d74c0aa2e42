#include <doctest.h>

#include <regex>

#include "errscope/density.hpp"
#include "errscope/render.hpp"
#include "errscope/synth.hpp"
#include "support.hpp"

using namespace errscope;
using doctest::Approx;
using testkit::error_kind_of;

namespace {

template <typename T>
std::vector<T> of_class(const Figure& fig, std::string_view cls) {
  std::vector<T> out;
  for (const auto& e : fig.elements()) {
    if (const auto* t = std::get_if<T>(&e); t && t->cls == cls) out.push_back(*t);
  }
  return out;
}

std::vector<std::string> class_sequence(const Figure& fig) {
  std::vector<std::string> out;
  for (const auto& e : fig.elements()) {
    std::visit([&](const auto& el) {
      if (out.empty() || out.back() != el.cls) out.push_back(el.cls);
    }, e);
  }
  return out;
}

struct SvgCircle {
  double cx, cy;
  std::string fill;
};

std::vector<SvgCircle> parse_points(const std::string& svg) {
  static const std::regex re(R"re(<circle class="pt" cx="([^"]+)" cy="([^"]+)" r="[^"]+" fill="([^"]+)")re");
  std::vector<SvgCircle> out;
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), re); it != std::sregex_iterator(); ++it) {
    out.push_back({std::stod((*it)[1]), std::stod((*it)[2]), (*it)[3]});
  }
  return out;
}

// Even-odd ray casting.
bool contains(const std::vector<Point2>& poly, Point2 p) {
  bool in = false;
  for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    const auto& a = poly[i];
    const auto& b = poly[j];
    if ((a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x) in = !in;
  }
  return in;
}

ErrorSpaceAnalysis analysis_of(const PredictionSet& ps, DistanceMetric m) {
  const auto [a, b] = select_pair(ps, ps.models[0].name, ps.models[1].name);
  return analyze_pair(a, b, m);
}

}  // namespace

TEST_CASE("colormap") {
  const auto cm = Colormap::warm_cool();
  CHECK(cm.name() == "warm_cool");
  CHECK(cm.at(0.0) == Rgb{215, 48, 39});
  CHECK(cm.at(0.25) == Rgb{253, 174, 97});
  CHECK(cm.at(0.5) == Rgb{254, 224, 144});
  CHECK(cm.at(0.75) == Rgb{145, 191, 219});
  CHECK(cm.at(1.0) == Rgb{69, 117, 180});
  CHECK(cm.at(-3.0) == cm.at(0.0));
  CHECK(cm.at(7.0) == cm.at(1.0));
  const auto mid = cm.at(0.125);  // halfway between the first two stops
  CHECK(mid.r == 234);
  CHECK(mid.g == 111);
  CHECK(mid.b == 68);
  CHECK(Rgb{255, 165, 0}.hex() == "#ffa500");

  CHECK(error_kind_of([] { Colormap("x", {{0.0, {}}}); }) == ErrorKind::InvalidArgument);
  CHECK(error_kind_of([] { Colormap("x", {{0.1, {}}, {1.0, {}}}); }) == ErrorKind::InvalidArgument);
  CHECK(error_kind_of([] { Colormap("x", {{0.0, {}}, {0.5, {}}, {0.5, {}}, {1.0, {}}}); }) ==
        ErrorKind::InvalidArgument);
}

TEST_CASE("svg document basics") {
  Figure f(100, 50);
  f.add(Circle{{-0.0, 1.0 / 3.0}, 2.0, Style{Rgb{1, 2, 3}, std::nullopt, 0.5, 1.0}, "pt"});
  f.add(Text{{1, 2}, "a<b & \"c\"", 12.0, "middle", {}, "t"});
  const auto svg = f.to_svg();
  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(svg.find("version=\"1.1\"") != std::string::npos);
  CHECK(svg.find("viewBox=\"0 0 100 50\"") != std::string::npos);
  CHECK(svg.find("cx=\"0\" cy=\"0.333333\"") != std::string::npos);
  CHECK(svg.find("a&lt;b &amp; &quot;c&quot;") != std::string::npos);
  CHECK(svg.find("opacity=\"0.5\"") != std::string::npos);
  CHECK(svg.find("http://") == svg.find("http://www.w3.org/2000/svg"));
}

TEST_CASE("boxplots") {
  const auto sym = boxplot_stats(ErrorVector{"s", {-3, -2, -1, 0, 1, 2, 3}});
  std::vector<std::pair<std::string, BoxplotStats>> one{{"s", sym}};
  const auto f1 = render_boxplots(one);
  const auto boxes = of_class<Rect>(f1, "box");
  REQUIRE(boxes.size() == 1);
  const auto zero = of_class<Line>(f1, "zero-line");
  REQUIRE(zero.size() == 1);
  CHECK(boxes[0].y + 0.5 * boxes[0].h == Approx(zero[0].a.y).epsilon(1e-9));

  const auto lo = boxplot_stats(ErrorVector{"lo", {-30, -25, -20, -22, -28}});
  const auto hi = boxplot_stats(ErrorVector{"hi", {10, 12, 14, 16, 18, 200}});
  std::vector<std::pair<std::string, BoxplotStats>> two{{"lo", lo}, {"hi", hi}};
  const auto f2 = render_boxplots(two);
  const auto b2 = of_class<Rect>(f2, "box");
  REQUIRE(b2.size() == 2);
  CHECK(b2[0].x + b2[0].w < b2[1].x);
  // disjoint vertical ranges, canvas y pointing down
  CHECK(b2[1].y + b2[1].h < b2[0].y);
  CHECK(of_class<Circle>(f2, "outlier").size() == hi.outliers.size() + lo.outliers.size());
  CHECK(of_class<Circle>(f2, "outlier").size() == 1);
  const auto labels = of_class<Text>(f2, "model-label");
  REQUIRE(labels.size() == 2);
  CHECK(labels[0].text == "lo");
  CHECK(labels[1].text == "hi");
}

TEST_CASE("pred_vs_actual") {
  PredictionSet ps{{"a", "b", "c", "d"}, {1, 2, 3, 4}, {{"perfect", {1, 2, 3, 4}}, {"one_bad", {1.1, 2.1, 2.9, 40}}}};
  const auto cm = Colormap::warm_cool();
  const auto perfect = render_pred_vs_actual(ps, "perfect", cm);
  const auto pts = of_class<Circle>(perfect, "pt");
  REQUIRE(pts.size() == 4);
  for (const auto& c : pts) CHECK(*c.style.fill == cm.at(0.5));
  const auto& v = perfect.view();
  for (std::size_t i = 0; i < 4; ++i) {
    const auto expect = v.apply({ps.y_true[i], ps.y_true[i]});
    CHECK(pts[i].center.x == Approx(expect.x));
    CHECK(pts[i].center.y == Approx(expect.y));
  }
  CHECK(of_class<Line>(perfect, "identity").size() == 1);

  const auto bad = of_class<Circle>(render_pred_vs_actual(ps, "one_bad", cm), "pt");
  const auto coolest = *bad[3].style.fill;
  for (std::size_t i = 0; i < 3; ++i) CHECK(*bad[i].style.fill != coolest);
  CHECK(coolest == cm.at(0.875));

  CHECK(error_kind_of([&] { render_pred_vs_actual(ps, "nope", cm); }) == ErrorKind::UnknownModel);
}

TEST_CASE("pred grid: 12 models in 4 columns and 3 rows") {
  PredictionSet ps{{"1", "2", "3"}, {1, 2, 3}, {}};
  std::vector<std::string> order;
  for (int m = 12; m >= 1; --m) {
    ps.models.push_back({"A" + std::to_string(m), {1.0 + m, 2.0 - m, 3.0}});
    order.push_back("A" + std::to_string(m));
  }
  const auto f = render_pred_grid(ps, order, Colormap::warm_cool());
  CHECK(f.width() == 4 * kPanelSize);
  CHECK(f.height() == 3 * kPanelSize);
  const auto titles = of_class<Text>(f, "title");
  REQUIRE(titles.size() == 12);
  for (std::size_t k = 0; k < 12; ++k) {
    CHECK(titles[k].text == order[k]);
    CHECK(titles[k].pos.x - titles[k / 4 * 4].pos.x == Approx(kPanelSize * static_cast<double>(k % 4)));
    CHECK(titles[k].pos.y < kPanelSize * static_cast<double>(k / 4 + 1));
    CHECK(titles[k].pos.y > kPanelSize * static_cast<double>(k / 4));
  }
  const auto g = render_pred_grid(ps, std::span(order).first(3), Colormap::warm_cool());
  CHECK(g.width() == 3 * kPanelSize);
  CHECK(g.height() == kPanelSize);
}

TEST_CASE("layer parsing") {
  const auto l = LayerSet::parse("zones, crown,kde");
  CHECK(l.zones);
  CHECK(l.crown);
  CHECK(l.kde);
  CHECK(!l.hexbin);
  CHECK(l.to_string() == "zones,crown,kde");
  CHECK(error_kind_of([] { LayerSet::parse("zones,glitter"); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("error space: stacking order and styling") {
  const auto ps = synth::gen_correlated_pair(300, 0.6, 5, 3, 1);
  const auto an = analysis_of(ps, DistanceMetric::mahalanobis);
  const auto pts = an.xy();
  const auto kde = kde2d(pts);
  const auto hex = hexbin(pts, default_hex_radius(pts));
  const auto all = LayerSet::parse("zones,proximity,crown,kde,hexbin");
  const auto fig = render_error_space(an, all, Colormap::warm_cool(), &kde, &hex);
  const auto seq = class_sequence(fig);
  auto pos = [&](const std::string& c) { return std::find(seq.begin(), seq.end(), c) - seq.begin(); };
  CHECK(pos("zone-a") < pos("kde"));
  CHECK(pos("kde") < pos("hex"));
  CHECK(pos("hex") < pos("diagonal"));
  CHECK(pos("diagonal") < pos("crown"));
  CHECK(pos("crown") < pos("pt"));
  CHECK(pos("pt") < pos("legend"));

  const auto crowns = of_class<Polygon>(fig, "crown");
  REQUIRE(crowns.size() == 1);
  CHECK(crowns[0].vertices.size() >= 128);
  CHECK(*crowns[0].style.stroke == Rgb{255, 255, 255});
  CHECK(crowns[0].style.stroke_width == 2.0);
  CHECK(!crowns[0].style.fill.has_value());
  for (const auto& z : of_class<Polygon>(fig, "zone-a")) {
    CHECK(*z.style.fill == kZoneOrange);
    CHECK(z.style.opacity == kZoneOpacity);
  }
  for (const auto& z : of_class<Polygon>(fig, "zone-b")) CHECK(*z.style.fill == kZoneGreen);

  CHECK(error_kind_of([&] { render_error_space(an, all, Colormap::warm_cool(), nullptr, &hex); }) ==
        ErrorKind::MissingLayerInput);
  CHECK(error_kind_of([&] { render_error_space(an, all, Colormap::warm_cool(), &kde, nullptr); }) ==
        ErrorKind::MissingLayerInput);
}

TEST_CASE("error space: points round-trip through the svg within half a unit") {
  const auto ps = synth::gen_asymmetric_pair(500, 0.8, 4, 9, 6);
  const auto an = analysis_of(ps, DistanceMetric::mahalanobis);
  const auto cm = Colormap::warm_cool();
  const auto fig = render_error_space(an, LayerSet::parse("zones,proximity,crown"), cm);
  const auto circles = parse_points(fig.to_svg());
  REQUIRE(circles.size() == an.points.size());
  for (std::size_t i = 0; i < circles.size(); ++i) {
    const auto expect = fig.view().apply({an.points[i].e1, an.points[i].e2});
    CHECK(std::fabs(circles[i].cx - expect.x) <= 0.5);
    CHECK(std::fabs(circles[i].cy - expect.y) <= 0.5);
    CHECK(circles[i].fill == cm.at(an.points[i].percentile).hex());
  }
}

TEST_CASE("error space: square symmetric window") {
  const auto ps = synth::gen_correlated_pair(200, 0.3, 10, 2, 9);
  const auto an = analysis_of(ps, DistanceMetric::euclidean);
  const auto fig = render_error_space(an, LayerSet::parse("scatter"), Colormap::warm_cool());
  const auto& v = fig.view();
  CHECK(v.sx == Approx(-v.sy));
  const auto o = v.apply({0, 0});
  CHECK(o.x == Approx(0.5 * (80 + 700)));
  CHECK(o.y == Approx(0.5 * (60 + 680)));
  for (const auto& p : an.points) {
    const auto c = v.apply({p.e1, p.e2});
    CHECK((c.x >= 80 && c.x <= 700 && c.y >= 60 && c.y <= 680));
  }
}

TEST_CASE("property: zone fill agrees with classify_zone") {
  testkit::Gen g(51);
  const auto ps = synth::gen_correlated_pair(200, 0.1, 7, 7, 2);
  const auto an = analysis_of(ps, DistanceMetric::euclidean);
  const auto fig = render_error_space(an, LayerSet::parse("zones"), Colormap::warm_cool());
  const auto za = of_class<Polygon>(fig, "zone-a");
  const auto zb = of_class<Polygon>(fig, "zone-b");
  REQUIRE(za.size() == 2);
  REQUIRE(zb.size() == 2);
  const auto& v = fig.view();
  const double extent = (700.0 - 80.0) / 2.0 / v.sx;
  auto check = [&](double x, double y) {
    const auto zone = classify_zone(x, y);
    if (zone == Zone::tie) return;
    const auto c = v.apply({x, y});
    const bool in_a = contains(za[0].vertices, c) || contains(za[1].vertices, c);
    const bool in_b = contains(zb[0].vertices, c) || contains(zb[1].vertices, c);
    CHECK(in_a != in_b);
    CHECK(in_a == (zone == Zone::a_better));
  };
  for (int i = 0; i < 5000; ++i) {
    const double x = g.uniform(-0.99, 0.99) * extent, y = g.uniform(-0.99, 0.99) * extent;
    // stay off the diagonals by more than a canvas rounding step
    if (std::fabs(std::fabs(x) - std::fabs(y)) < 1e-6 * extent) continue;
    check(x, y);
  }
  for (const auto& p : an.points) {
    if (std::fabs(std::fabs(p.e1) - std::fabs(p.e2)) > 1e-6 * extent) check(p.e1, p.e2);
  }
}

TEST_CASE("crown curve geometry") {
  const auto ps = synth::gen_correlated_pair(400, 0.7, 6, 2, 4);
  const auto eu = analysis_of(ps, DistanceMetric::euclidean);
  const auto circle = crown_curve(eu);
  CHECK(circle.size() == 256);
  double rmin = 1e300, rmax = 0;
  for (const auto& p : circle) {
    const double r = std::hypot(p.x - eu.median2d.x, p.y - eu.median2d.y);
    rmin = std::min(rmin, r), rmax = std::max(rmax, r);
  }
  CHECK(rmax / rmin == Approx(1.0).epsilon(1e-6));
  CHECK(rmax == Approx(eu.crown_threshold));

  const auto ma = analysis_of(ps, DistanceMetric::mahalanobis);
  for (const auto& p : crown_curve(ma, 300)) {
    CHECK(mahalanobis(p, ma.median2d, ma.covariance_inverse) == Approx(ma.crown_threshold).epsilon(1e-9));
  }

  ErrorSpaceAnalysis diag;
  diag.metric = DistanceMetric::mahalanobis;
  diag.covariance = Matrix2::diagonal(4, 1);
  diag.covariance_inverse = Matrix2::diagonal(0.25, 1);
  diag.crown_threshold = 1.5;
  const auto ell = crown_curve(diag);
  double xmax = 0, ymax = 0;
  for (const auto& p : ell) xmax = std::max(xmax, std::fabs(p.x)), ymax = std::max(ymax, std::fabs(p.y));
  CHECK(xmax / ymax == Approx(2.0).epsilon(1e-9));
  CHECK(xmax == Approx(3.0));
}

TEST_CASE("histograms") {
  CHECK(histogram_counts(std::vector<double>{0, 0, 0, 0}, 1) == std::vector<std::size_t>{4});
  CHECK(histogram_counts(std::vector<double>{0, 1, 2, 3}, 2) == std::vector<std::size_t>{2, 2});
  CHECK(histogram_counts(std::vector<double>{0, 1, 2, 3}, 3) == std::vector<std::size_t>{1, 1, 2});
  CHECK(error_kind_of([] { histogram_counts(std::vector<double>{1}, 0); }) == ErrorKind::InvalidArgument);
  testkit::Gen g(52);
  for (int t = 0; t < 200; ++t) {
    const auto v = g.values(g.size(1, 300), -1e3, 1e3);
    const auto c = histogram_counts(v, g.size(1, 40));
    std::size_t s = 0;
    for (auto x : c) s += x;
    CHECK(s == v.size());
  }
  const auto fig = render_histogram(std::vector<double>{0, 0, 0, 0}, 1);
  const auto bars = of_class<Rect>(fig, "bar");
  REQUIRE(bars.size() == 1);
  CHECK(bars[0].h > 0);
}

TEST_CASE("byte determinism") {
  const auto ps = synth::gen_asymmetric_pair(800, 0.9, 5, 10, 12);
  auto render = [&] {
    const auto an = analysis_of(ps, DistanceMetric::mahalanobis);
    const auto pts = an.xy();
    const auto kde = kde2d(pts);
    const auto hex = hexbin(pts, default_hex_radius(pts));
    return render_error_space(an, LayerSet::parse("zones,proximity,crown,kde,hexbin"), Colormap::warm_cool(), &kde,
                              &hex)
        .to_svg();
  };
  const auto a = render();
  CHECK(a == render());
  CHECK(a.find("nan") == std::string::npos);
  CHECK(a.find("inf") == std::string::npos);
  CHECK(a.find("-0 ") == std::string::npos);
}
