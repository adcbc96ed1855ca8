#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "legendrian/convex_integration.hpp"
#include "legendrian/io.hpp"
#include "legendrian/run.hpp"
#include "legendrian/targets.hpp"
#include "oracles.hpp"

using namespace legendrian;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("legendrian_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

cli::RunConfig quick(cli::Command command, const fs::path& out) {
  cli::RunConfig c;
  c.command = command;
  c.out_dir = out;
  c.grid = 300;
  c.measure_grid = 10000;
  c.svg_samples = 2000;
  return c;
}

// Minimal well-formedness check: balanced tags, quoted attributes, a single root.
bool well_formed_xml(const std::string& doc) {
  std::vector<std::string> stack;
  int roots = 0;
  std::size_t i = 0;
  while ((i = doc.find('<', i)) != std::string::npos) {
    const std::size_t close = doc.find('>', i);
    if (close == std::string::npos) return false;
    std::string tag = doc.substr(i + 1, close - i - 1);
    i = close + 1;
    if (tag.empty()) return false;
    if (tag[0] == '?' || tag[0] == '!') continue;
    int quotes = 0;
    for (char ch : tag) quotes += ch == '"';
    if (quotes % 2) return false;
    if (tag[0] == '/') {
      if (stack.empty() || stack.back() != tag.substr(1)) return false;
      stack.pop_back();
      continue;
    }
    const bool self_closing = tag.back() == '/';
    const std::string name = tag.substr(0, tag.find_first_of(" \t\n/"));
    if (stack.empty()) ++roots;
    if (!self_closing) stack.push_back(name);
  }
  for (std::size_t j = 0; j < doc.size(); ++j) {
    if (doc[j] == '&') {
      const std::size_t semi = doc.find(';', j);
      if (semi == std::string::npos || semi - j > 6) return false;
    }
  }
  return stack.empty() && roots == 1;
}

int count(const std::string& text, const std::string& needle) {
  int n = 0;
  for (std::size_t i = text.find(needle); i != std::string::npos; i = text.find(needle, i + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("number formatting round-trips") {
  for (double v : {0.1, -1.0 / 3.0, 1e-300, 6.02214076e23, 2 * oracle::pi}) {
    CHECK(std::stod(io::format_number(v)) == v);
  }
  CHECK(io::format_number(0.5) == "0.5");
}

TEST_CASE("sample CSV parsing") {
  std::istringstream in("t,x,y,z\n0,1,2,3\n\n0.5,1.5,2.5,3.5\n1,2,3,4\n2,0,0,0\n");
  const SampledCurve c = io::parse_samples_csv(in, false);
  REQUIRE(c.samples.size() == 4);
  CHECK(c.samples[1].t == 0.5);
  CHECK(c.samples[1].p == Vec3{1.5, 2.5, 3.5});
  CHECK_FALSE(c.periodic);

  std::istringstream bad_field("t,x,y,z\n0,1,two,3\n1,1,2,3\n2,1,2,3\n3,1,2,3\n");
  CHECK_THROWS_AS(io::parse_samples_csv(bad_field, false), std::runtime_error);
  std::istringstream short_row("t,x,y,z\n0,1,2\n");
  CHECK_THROWS_AS(io::parse_samples_csv(short_row, false), std::runtime_error);
  std::istringstream unordered("t,x,y,z\n0,0,0,0\n2,0,0,0\n1,0,0,0\n3,0,0,0\n");
  CHECK_THROWS_AS(io::parse_samples_csv(unordered, false), std::invalid_argument);
}

TEST_CASE("curve CSV round trip is exact") {
  ApproxOptions o;
  o.r_override = 30.0;
  o.n_override = 200;
  const LegendrianCurve eta = approximate_open(targets::helix(), 0.3, o);
  std::ostringstream out;
  io::write_curve_csv(out, eta, 257);
  std::string text = out.str();
  CHECK(text.rfind("t,a,b,c\n", 0) == 0);
  text.replace(0, 7, "t,x,y,z");
  std::istringstream in(text);
  const SampledCurve back = io::parse_samples_csv(in, false);
  REQUIRE(back.samples.size() == 257);
  const auto grid = uniform_grid(eta.domain(), 257);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(back.samples[i].t == grid[i]);
    CHECK(back.samples[i].p == eta.eval(grid[i]));
  }
}

TEST_CASE("SVG documents") {
  io::Polyline line{{0, 1, 2}, {0, 1, 0}};
  const std::string svg = io::render_svg(line, {"a < b & c", "a", "c"});
  CHECK(well_formed_xml(svg));
  CHECK(count(svg, "<polyline") == 1);
  CHECK(svg.find("a &lt; b &amp; c") != std::string::npos);
  const auto polys = oracle::svg_polylines(svg);
  REQUIRE(polys.size() == 1);
  CHECK(polys[0].size() == 3);
  CHECK(io::xml_escape("\"<'>&") == "&quot;&lt;&apos;&gt;&amp;");
  CHECK_FALSE(well_formed_xml("<svg><g></svg>"));
}

TEST_CASE("command names") {
  for (auto c : {cli::Command::approx_open, cli::Command::approx_closed, cli::Command::glue_demo,
                 cli::Command::park, cli::Command::helix, cli::Command::verify}) {
    CHECK(cli::parse_command(cli::to_string(c)) == c);
  }
  CHECK_FALSE(cli::parse_command("bogus").has_value());
}

TEST_CASE("every command runs and writes its artifacts") {
  for (auto command : {cli::Command::helix, cli::Command::park, cli::Command::approx_open,
                       cli::Command::approx_closed, cli::Command::glue_demo}) {
    const std::string name(cli::to_string(command));
    CAPTURE(name);
    const fs::path dir = scratch(name);
    const cli::RunOutcome out = cli::run(quick(command, dir));
    CHECK(out.status == 0);
    CHECK(out.report["status"] == "pass");
    CHECK(out.report["command"] == name);
    for (const char* file : {"curve.csv", "reference.csv", "front.svg", "lagrangian.svg", "report.json"}) {
      CHECK(fs::exists(dir / file));
    }
    for (const char* file : {"front.svg", "lagrangian.svg"}) {
      const std::string svg = slurp(dir / file);
      CHECK(well_formed_xml(svg));
      CHECK(count(svg, "<polyline") == 1);
    }
    const auto report = nlohmann::json::parse(slurp(dir / "report.json"));
    CHECK(report == out.report);
    CHECK(report["measured"]["residual_max"].get<double>() <= 1e-10);
    for (const auto& [key, check] : report["checks"].items()) {
      CAPTURE(key);
      CHECK(check["pass"].get<bool>());
    }
  }
}

TEST_CASE("helix report: coefficient checks and the closed bound") {
  const fs::path dir = scratch("helix_report");
  const cli::RunOutcome out = cli::run(quick(cli::Command::helix, dir));
  const auto& r = out.report;
  CHECK(r["checks"]["closed_form_a"]["pass"].get<bool>());
  CHECK(r["checks"]["closed_form_c"]["pass"].get<bool>());
  const double gamma_c1 = r["curve"]["gamma_c1"].get<double>();
  CHECK(r["measured"]["ac_error"].get<double>() <= 8 * oracle::pi * oracle::pi * gamma_c1 / 200);
}

TEST_CASE("verify command") {
  const fs::path dir = scratch("verify");
  const cli::RunOutcome out = cli::run(quick(cli::Command::verify, dir));
  CHECK(out.status == 0);
  CHECK(fs::exists(dir / "report.json"));
  CHECK_FALSE(fs::exists(dir / "curve.csv"));
}

TEST_CASE("identical configurations give byte-identical outputs") {
  for (std::uint64_t seed : {3u, 4u}) {
    const fs::path a = scratch("det_a");
    const fs::path b = scratch("det_b");
    cli::RunConfig ca = quick(cli::Command::approx_open, a);
    ca.seed = seed;
    cli::RunConfig cb = ca;
    cb.out_dir = b;
    cli::run(ca);
    cli::run(cb);
    for (const char* file : {"curve.csv", "reference.csv", "front.svg", "lagrangian.svg", "report.json"}) {
      CHECK(slurp(a / file) == slurp(b / file));
    }
  }
  const fs::path c = scratch("det_c");
  cli::RunConfig other = quick(cli::Command::approx_open, c);
  other.seed = 5;
  cli::run(other);
  CHECK(slurp(c / "curve.csv") != slurp(fs::temp_directory_path() / "legendrian_test_det_b" / "curve.csv"));
}

TEST_CASE("sampled input is mollified and approximated") {
  const fs::path dir = scratch("input");
  {
    std::ofstream csv(dir / "samples.csv");
    csv << "t,x,y,z\n";
    for (double t : oracle::linspace(0.0, 2 * oracle::pi, 400)) {
      csv << io::format_number(t) << ',' << io::format_number(std::cos(t)) << ','
          << io::format_number(std::sin(t)) << ',' << io::format_number(0.3 * std::sin(2 * t)) << '\n';
    }
  }
  cli::RunConfig open = quick(cli::Command::approx_open, dir / "open");
  open.input = dir / "samples.csv";
  open.eps = 0.2;
  CHECK(cli::run(open).status == 0);

  cli::RunConfig closed = quick(cli::Command::approx_closed, dir / "closed");
  closed.input = dir / "samples.csv";
  closed.eps = 0.3;
  CHECK_THROWS_AS(cli::run(closed), std::invalid_argument);
  closed.periodic = true;
  const cli::RunOutcome out = cli::run(closed);
  CHECK(out.status == 0);
  CHECK(out.report["checks"]["endpoint_values"]["pass"].get<bool>());
}

TEST_CASE("configuration validation") {
  cli::RunConfig c;
  c.eps = -1.0;
  CHECK_THROWS_AS(cli::run(c), std::invalid_argument);
  c = cli::RunConfig{};
  c.grid = 1;
  CHECK_THROWS_AS(cli::run(c), std::invalid_argument);
  c = cli::RunConfig{};
  c.command = cli::Command::glue_demo;
  c.eps = 0.6;
  CHECK_THROWS_AS(cli::run(c), std::invalid_argument);
  c = cli::RunConfig{};
  c.command = cli::Command::approx_open;
  c.input = "/nonexistent/samples.csv";
  c.out_dir = scratch("missing");
  CHECK_THROWS(cli::run(c));
}
