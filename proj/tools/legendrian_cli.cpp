#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "legendrian/run.hpp"

int main(int argc, char** argv) {
  using legendrian::cli::RunConfig;
  CLI::App app{"Legendrian approximation of curves in contact 3-space"};
  app.require_subcommand(1, 1);

  RunConfig config;
  double eps = 0.0, r = 0.0;
  std::int64_t n = 0;
  std::string input, out = "out";

  const char* names[] = {"approx-open", "approx-closed", "glue-demo", "park", "helix", "verify"};
  const char* help[] = {
      "approximate an open curve (--input CSV, else a random trigonometric target)",
      "approximate a closed curve (--input CSV with --periodic, else the unit circle)",
      "glue two approximations of (t, 0, sin t) on [-1, 1]",
      "parallel-parking example; --r is the car-model amplitude",
      "helix (t, cos 5t, sin 5t) with r = 30, n = 200 unless overridden",
      "run the built-in self-check suite",
  };
  for (int i = 0; i < 6; ++i) {
    CLI::App* sub = app.add_subcommand(names[i], help[i]);
    sub->add_option("--eps", eps, "closeness parameter");
    sub->add_option("--r", r, "loop amplitude override");
    sub->add_option("--n", n, "oscillation frequency override");
    sub->add_option("--grid", config.grid, "rows in curve.csv / reference.csv");
    sub->add_option("--measure-grid", config.measure_grid, "grid for measured errors");
    sub->add_option("--svg-samples", config.svg_samples, "points per SVG polyline");
    sub->add_flag("--periodic", config.periodic, "input samples describe a closed curve on [0, 2pi]");
    sub->add_option("--input", input, "CSV with header t,x,y,z");
    sub->add_option("--bandwidth", config.bandwidth, "mollifier half-width for --input");
    sub->add_option("--out", out, "output directory");
    sub->add_option("--seed", config.seed, "seed for random targets");
  }
  CLI11_PARSE(app, argc, argv);

  CLI::App* chosen = app.get_subcommands().front();
  config.command = *legendrian::cli::parse_command(chosen->get_name());
  if (chosen->count("--eps")) config.eps = eps;
  if (chosen->count("--r")) config.r = r;
  if (chosen->count("--n")) config.n = n;
  if (chosen->count("--input")) config.input = input;
  config.out_dir = out;

  try {
    const auto outcome = legendrian::cli::run(config);
    for (const auto& file : outcome.files) std::cout << file.string() << '\n';
    std::cout << "status: " << outcome.report["status"].get<std::string>() << '\n';
    return outcome.status;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
