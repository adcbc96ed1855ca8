#pragma once

// Command driver shared by the CLI and the tests. Every command writes into
// `out_dir`:
//   curve.csv       t,a,b,c samples of the Legendrian curve
//   reference.csv   t,x,y,z samples of the target on the same parameter grid
//   front.svg       (a, c) projection
//   lagrangian.svg  (a, b) projection
//   report.json     see docs/report-schema.md
// The `verify` command writes only report.json.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "legendrian/curve.hpp"
#include "legendrian/legendrian_curve.hpp"

namespace legendrian::cli {

enum class Command { approx_open, approx_closed, glue_demo, park, helix, verify };

std::optional<Command> parse_command(std::string_view name);
std::string_view to_string(Command command);

struct RunConfig {
  Command command = Command::verify;
  std::optional<double> eps;
  std::optional<double> r;
  std::optional<std::int64_t> n;
  /// Rows written to curve.csv and reference.csv.
  int grid = 1000;
  /// Grid used for the measured errors in the report.
  int measure_grid = 10000;
  int svg_samples = 8000;
  std::optional<std::filesystem::path> input;
  bool periodic = false;
  /// Mollifier half-width applied to --input samples.
  double bandwidth = 0.05;
  std::uint64_t seed = 1;
  std::filesystem::path out_dir = "out";

  /// Throws std::invalid_argument on inconsistent settings.
  void validate() const;
};

struct RunOutcome {
  /// 0 when every check recorded in the report passed, 1 otherwise.
  int status = 0;
  nlohmann::json report;
  std::vector<std::filesystem::path> files;
};

/// Runs one command. Construction failures propagate as exceptions.
RunOutcome run(const RunConfig& config);

struct Measurements {
  double ac_error = 0.0;
  double b_error = 0.0;
  double residual_max = 0.0;
};

/// Grid maxima of |(a,c) − (x,z)|, |b − y| and |ċ − b·ȧ| over the curve domain.
Measurements measure(const LegendrianCurve& curve, const ParamCurve& target, int grid);

nlohmann::json describe(const LegendrianCurve& curve);

}  // namespace legendrian::cli
