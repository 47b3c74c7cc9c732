#include "spectra/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "spectra/errors.hpp"

namespace spectra::svg {

namespace {

std::vector<geom::Vec2> outline_of(const geom::Shape& shape) {
  if (const auto* poly = std::get_if<geom::ConvexPolygon>(&shape))
    return poly->vertices();
  if (const auto* dom = std::get_if<geom::ProfileDomain>(&shape))
    return dom->boundary_polygon().vertices();
  if (const auto* ball = std::get_if<geom::Ball>(&shape)) {
    std::vector<geom::Vec2> pts;
    for (int i = 0; i < 128; ++i) {
      const double t = 2.0 * geom::kPi * i / 128;
      pts.push_back({ball->radius * std::cos(t), ball->radius * std::sin(t)});
    }
    return pts;
  }
  if (const auto* box = std::get_if<geom::Cuboid>(&shape)) {
    if (box->dim() == 2)
      return {{0.0, 0.0},
              {box->sides()[0], 0.0},
              {box->sides()[0], box->sides()[1]},
              {0.0, box->sides()[1]}};
    throw UnsupportedShape("svg: only 2-d cuboids can be rendered");
  }
  throw UnsupportedShape("svg: unsupported shape");
}

}  // namespace

std::string render_shape(const geom::Shape& shape, const std::string& caption,
                         int canvas) {
  const auto pts = outline_of(shape);
  double xmin = pts[0].x, xmax = pts[0].x, ymin = pts[0].y, ymax = pts[0].y;
  for (const auto& p : pts) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  const double ext = std::max({xmax - xmin, ymax - ymin, 1e-12});
  const double pad = 0.08 * ext;
  const double scale = canvas / (ext + 2.0 * pad);
  auto tx = [&](double x) { return (x - xmin + pad) * scale; };
  auto ty = [&](double y) { return canvas - (y - ymin + pad) * scale; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << canvas
      << "\" height=\"" << canvas + 24 << "\" viewBox=\"0 0 " << canvas << " "
      << canvas + 24 << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<polygon points=\"";
  for (const auto& p : pts) out << tx(p.x) << "," << ty(p.y) << " ";
  out << "\" fill=\"#9ecae1\" stroke=\"#08519c\" stroke-width=\"1.5\"/>\n";
  out << "<text x=\"8\" y=\"" << canvas + 16
      << "\" font-family=\"monospace\" font-size=\"13\">" << caption
      << "</text>\n</svg>\n";
  return out.str();
}

std::string render_chart(const std::vector<Series>& series,
                         const std::string& caption, int canvas, bool log_x) {
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  auto fx = [&](double x) { return log_x ? std::log10(std::max(x, 1e-300)) : x; };
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      xmin = std::min(xmin, fx(s.x[i]));
      xmax = std::max(xmax, fx(s.x[i]));
      ymin = std::min(ymin, s.y[i]);
      ymax = std::max(ymax, s.y[i]);
    }
  if (!(xmax >= xmin)) throw ValidationError("svg chart: empty series");
  const double dx = std::max(xmax - xmin, 1e-12);
  const double dy = std::max(ymax - ymin, 1e-12);
  const int w = canvas, h = canvas * 3 / 5;
  auto tx = [&](double x) { return 40.0 + (fx(x) - xmin) / dx * (w - 60); };
  auto ty = [&](double y) { return h - 30.0 - (y - ymin) / dy * (h - 50); };

  static const char* colors[] = {"#1b9e77", "#d95f02", "#7570b3", "#e7298a"};
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
      << "\" height=\"" << h + 20 << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  int ci = 0;
  for (const auto& s : series) {
    out << "<polyline fill=\"none\" stroke=\"" << colors[ci % 4]
        << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i)
      out << tx(s.x[i]) << "," << ty(s.y[i]) << " ";
    out << "\"/>\n";
    out << "<text x=\"" << w - 150 << "\" y=\"" << 20 + 14 * ci
        << "\" font-family=\"monospace\" font-size=\"11\" fill=\"" << colors[ci % 4]
        << "\">" << s.label << "</text>\n";
    ++ci;
  }
  out << "<text x=\"8\" y=\"" << h + 14
      << "\" font-family=\"monospace\" font-size=\"12\">" << caption
      << "</text>\n</svg>\n";
  return out.str();
}

}  // namespace spectra::svg
