#include <algorithm>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "legendrian/io.hpp"

namespace legendrian::io {

namespace {

constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 20.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 50.0;

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string short_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

std::string xml_escape(std::string_view text) {
  std::string out;
  for (char ch : text) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += ch;
    }
  }
  return out;
}

Polyline front_projection(const LegendrianCurve& curve, int samples) {
  Polyline line;
  for (double t : uniform_grid(curve.domain(), samples)) {
    const Vec3 p = curve.eval(t);
    line.x.push_back(p.x);
    line.y.push_back(p.z);
  }
  return line;
}

Polyline lagrangian_projection(const LegendrianCurve& curve, int samples) {
  Polyline line;
  for (double t : uniform_grid(curve.domain(), samples)) {
    const Vec3 p = curve.eval(t);
    line.x.push_back(p.x);
    line.y.push_back(p.y);
  }
  return line;
}

std::string render_svg(const Polyline& line, const SvgOptions& options) {
  if (line.x.size() != line.y.size() || line.x.size() < 2) {
    throw std::invalid_argument("render_svg: need at least two points of matching size");
  }
  const auto [xmin_it, xmax_it] = std::minmax_element(line.x.begin(), line.x.end());
  const auto [ymin_it, ymax_it] = std::minmax_element(line.y.begin(), line.y.end());
  const double xmin = *xmin_it, xmax = *xmax_it, ymin = *ymin_it, ymax = *ymax_it;
  const double xspan = xmax > xmin ? xmax - xmin : 1.0;
  const double yspan = ymax > ymin ? ymax - ymin : 1.0;
  const double w = options.width, h = options.height;
  const double plot_w = w - kMarginLeft - kMarginRight;
  const double plot_h = h - kMarginTop - kMarginBottom;
  auto px = [&](double x) { return kMarginLeft + (x - xmin) / xspan * plot_w; };
  auto py = [&](double y) { return kMarginTop + (ymax - y) / yspan * plot_h; };

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
       std::to_string(options.width) + "\" height=\"" + std::to_string(options.height) +
       "\" viewBox=\"0 0 " + std::to_string(options.width) + " " +
       std::to_string(options.height) + "\">\n";
  s += "  <title>" + xml_escape(options.title) + "</title>\n";
  s += "  <rect x=\"0\" y=\"0\" width=\"" + std::to_string(options.width) + "\" height=\"" +
       std::to_string(options.height) + "\" fill=\"white\"/>\n";
  s += "  <rect x=\"" + fixed(kMarginLeft, 1) + "\" y=\"" + fixed(kMarginTop, 1) +
       "\" width=\"" + fixed(plot_w, 1) + "\" height=\"" + fixed(plot_h, 1) +
       "\" fill=\"none\" stroke=\"#888\" stroke-width=\"1\"/>\n";
  s += "  <text x=\"" + fixed(w / 2, 1) + "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">" +
       xml_escape(options.title) + "</text>\n";
  const std::string label = "font-family=\"sans-serif\" font-size=\"12\"";
  const double base = kMarginTop + plot_h;
  s += "  <text x=\"" + fixed(kMarginLeft, 1) + "\" y=\"" + fixed(base + 18, 1) + "\" " + label +
       " text-anchor=\"start\">" + short_number(xmin) + "</text>\n";
  s += "  <text x=\"" + fixed(kMarginLeft + plot_w, 1) + "\" y=\"" + fixed(base + 18, 1) + "\" " +
       label + " text-anchor=\"end\">" + short_number(xmax) + "</text>\n";
  s += "  <text x=\"" + fixed(kMarginLeft + plot_w / 2, 1) + "\" y=\"" + fixed(base + 38, 1) +
       "\" " + label + " text-anchor=\"middle\">" + xml_escape(options.x_label) + "</text>\n";
  s += "  <text x=\"" + fixed(kMarginLeft - 6, 1) + "\" y=\"" + fixed(base, 1) + "\" " + label +
       " text-anchor=\"end\">" + short_number(ymin) + "</text>\n";
  s += "  <text x=\"" + fixed(kMarginLeft - 6, 1) + "\" y=\"" + fixed(kMarginTop + 10, 1) + "\" " +
       label + " text-anchor=\"end\">" + short_number(ymax) + "</text>\n";
  s += "  <text x=\"18\" y=\"" + fixed(kMarginTop + plot_h / 2, 1) + "\" " + label +
       " text-anchor=\"middle\" transform=\"rotate(-90 18 " + fixed(kMarginTop + plot_h / 2, 1) +
       ")\">" + xml_escape(options.y_label) + "</text>\n";

  s += "  <polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"0.8\" points=\"";
  for (std::size_t i = 0; i < line.x.size(); ++i) {
    if (i) s += ' ';
    s += fixed(px(line.x[i]), 3);
    s += ',';
    s += fixed(py(line.y[i]), 3);
  }
  s += "\"/>\n";
  s += "</svg>\n";
  return s;
}

}  // namespace legendrian::io
