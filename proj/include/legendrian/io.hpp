#pragma once

// CSV and SVG exporters.
//
// CSV files carry a single header line and one row per sample; numbers are
// written with 17 significant digits so that reading them back is exact.
//   input curves:     t,x,y,z
//   Legendrian curve: t,a,b,c

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "legendrian/curve.hpp"
#include "legendrian/legendrian_curve.hpp"

namespace legendrian::io {

/// %.17g formatting.
std::string format_number(double value);

/// Parses `t,x,y,z` rows after a header line. Blank lines are skipped. Throws
/// std::runtime_error on malformed rows and std::invalid_argument if the
/// samples violate SampledCurve::validate().
SampledCurve parse_samples_csv(std::istream& in, bool periodic);
SampledCurve read_samples_csv(const std::filesystem::path& path, bool periodic);

void write_curve_csv(std::ostream& out, const LegendrianCurve& curve, int samples);
void write_reference_csv(std::ostream& out, const ParamCurve& curve, Interval domain,
                         int samples);

struct Polyline {
  std::vector<double> x;
  std::vector<double> y;
};

/// (a, c) samples.
Polyline front_projection(const LegendrianCurve& curve, int samples);
/// (a, b) samples.
Polyline lagrangian_projection(const LegendrianCurve& curve, int samples);

struct SvgOptions {
  std::string title;
  std::string x_label;
  std::string y_label;
  int width = 800;
  int height = 500;
};

/// Standalone SVG 1.1 document: a frame with the data ranges printed on the
/// axes and exactly one <polyline> for the data.
std::string render_svg(const Polyline& line, const SvgOptions& options);

std::string xml_escape(std::string_view text);

void write_text_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace legendrian::io
