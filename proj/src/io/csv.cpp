#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "legendrian/io.hpp"

namespace legendrian::io {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

double parse_field(const std::string& field, std::size_t line) {
  double value = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw std::runtime_error("csv line " + std::to_string(line) + ": cannot parse '" + field + "'");
  }
  return value;
}

}  // namespace

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

SampledCurve parse_samples_csv(std::istream& in, bool periodic) {
  SampledCurve curve;
  curve.periodic = periodic;
  std::string line;
  std::size_t number = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++number;
    const std::string row = trim(line);
    if (row.empty()) continue;
    if (!header_seen) {
      header_seen = true;
      std::string compact;
      for (char ch : row) {
        if (ch != ' ' && ch != '\t') compact += ch;
      }
      if (compact != "t,x,y,z") {
        throw std::runtime_error("csv: expected header 't,x,y,z', got '" + row + "'");
      }
      continue;
    }
    std::stringstream ss(row);
    std::string field;
    double v[4];
    int count = 0;
    while (std::getline(ss, field, ',')) {
      if (count == 4) throw std::runtime_error("csv line " + std::to_string(number) + ": too many fields");
      v[count++] = parse_field(trim(field), number);
    }
    if (count != 4) throw std::runtime_error("csv line " + std::to_string(number) + ": expected 4 fields");
    curve.samples.push_back({v[0], Vec3{v[1], v[2], v[3]}});
  }
  if (!header_seen) throw std::runtime_error("csv: empty input");
  curve.validate();
  return curve;
}

SampledCurve read_samples_csv(const std::filesystem::path& path, bool periodic) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return parse_samples_csv(in, periodic);
}

void write_curve_csv(std::ostream& out, const LegendrianCurve& curve, int samples) {
  out << "t,a,b,c\n";
  for (double t : uniform_grid(curve.domain(), samples)) {
    const Vec3 p = curve.eval(t);
    out << format_number(t) << ',' << format_number(p.x) << ',' << format_number(p.y) << ','
        << format_number(p.z) << '\n';
  }
}

void write_reference_csv(std::ostream& out, const ParamCurve& curve, Interval domain,
                         int samples) {
  out << "t,x,y,z\n";
  for (double t : uniform_grid(domain, samples)) {
    const Vec3 p = curve.eval(t);
    out << format_number(t) << ',' << format_number(p.x) << ',' << format_number(p.y) << ','
        << format_number(p.z) << '\n';
  }
}

void write_text_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << contents;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace legendrian::io
