#include "legendrian/run.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "legendrian/contact.hpp"
#include "legendrian/convex_integration.hpp"
#include "legendrian/gluing.hpp"
#include "legendrian/io.hpp"
#include "legendrian/targets.hpp"
#include "legendrian/verify.hpp"

namespace legendrian::cli {

namespace {

using nlohmann::json;

struct Checks {
  json items = json::object();
  bool all = true;

  void add(const std::string& name, double value, double limit, bool pass) {
    items[name] = {{"value", value}, {"limit", limit}, {"pass", pass}};
    all = all && pass;
  }
  void at_most(const std::string& name, double value, double limit) {
    add(name, value, limit, value <= limit);
  }
};

double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

std::vector<std::filesystem::path> emit(const RunConfig& config, const LegendrianCurve& curve,
                                        const ParamCurve& target) {
  std::filesystem::create_directories(config.out_dir);
  std::vector<std::filesystem::path> files;
  {
    std::ostringstream csv;
    io::write_curve_csv(csv, curve, config.grid);
    files.push_back(config.out_dir / "curve.csv");
    io::write_text_file(files.back(), csv.str());
  }
  {
    std::ostringstream csv;
    io::write_reference_csv(csv, target, curve.domain(), config.grid);
    files.push_back(config.out_dir / "reference.csv");
    io::write_text_file(files.back(), csv.str());
  }
  const std::string name = curve.meta().target;
  io::SvgOptions front{"Front projection (a, c) of " + name, "a", "c"};
  files.push_back(config.out_dir / "front.svg");
  io::write_text_file(files.back(),
                      io::render_svg(io::front_projection(curve, config.svg_samples), front));
  io::SvgOptions lagrangian{"Lagrangian projection (a, b) of " + name, "a", "b"};
  files.push_back(config.out_dir / "lagrangian.svg");
  io::write_text_file(
      files.back(), io::render_svg(io::lagrangian_projection(curve, config.svg_samples), lagrangian));
  return files;
}

json measurements_json(const Measurements& m) {
  return {{"ac_error", m.ac_error}, {"b_error", m.b_error}, {"residual_max", m.residual_max}};
}

ApproxOptions options_from(const RunConfig& config) {
  ApproxOptions options;
  options.r_override = config.r;
  options.n_override = config.n;
  return options;
}

ParamCurve input_or(const RunConfig& config, ParamCurve fallback) {
  if (!config.input) return fallback;
  const SampledCurve raw = io::read_samples_csv(*config.input, config.periodic);
  return mollify(raw, config.bandwidth).renamed(config.input->filename().string());
}

RunOutcome finish(const RunConfig& config, json report, Checks checks,
                  std::vector<std::filesystem::path> files) {
  report["command"] = std::string(to_string(config.command));
  report["checks"] = checks.items;
  report["status"] = checks.all ? "pass" : "fail";
  std::filesystem::create_directories(config.out_dir);
  files.push_back(config.out_dir / "report.json");
  io::write_text_file(files.back(), report.dump(2) + "\n");
  return {checks.all ? 0 : 1, std::move(report), std::move(files)};
}

RunOutcome run_curve(const RunConfig& config, const LegendrianCurve& curve,
                     const ParamCurve& target, json report, Checks checks) {
  const Measurements m = measure(curve, target, config.measure_grid);
  report["curve"] = describe(curve);
  report["measured"] = measurements_json(m);
  checks.at_most("legendrian_residual", m.residual_max, 1e-10);
  if (std::isfinite(curve.meta().ac_bound)) {
    checks.at_most("ac_error_within_bound", m.ac_error, curve.meta().ac_bound);
  }
  auto files = emit(config, curve, target);
  return finish(config, std::move(report), std::move(checks), std::move(files));
}

RunOutcome run_helix(const RunConfig& config) {
  const double r = config.r.value_or(30.0);
  const std::int64_t n = config.n.value_or(200);
  ApproxOptions options;
  options.r_override = r;
  options.n_override = n;
  const ParamCurve target = targets::helix();
  const LegendrianCurve curve = approximate_open(target, config.eps.value_or(0.3), options);

  Checks checks;
  json report;
  if (r == 30.0 && n == 200) {
    double da = 0.0, db = 0.0, dc = 0.0;
    for (double t : uniform_grid(target.domain(), 1000)) {
      const Vec3 p = curve.eval(t);
      const double a = t + 0.15 * std::sin(200 * t);
      const double b = 455.0 / 451.0 * std::cos(5 * t) +
                       120.0 / 451.0 * std::cos(5 * t) * std::cos(200 * t);
      const double c = std::sin(5 * t) + 459.0 / 5863.0 * std::sin(195 * t) +
                       1377.0 / 18491.0 * std::sin(205 * t) + 180.0 / 35629.0 * std::sin(395 * t) +
                       20.0 / 4059.0 * std::sin(405 * t);
      da = std::max(da, std::abs(p.x - a));
      db = std::max(db, std::abs(p.y - b));
      dc = std::max(dc, std::abs(p.z - c));
    }
    checks.at_most("closed_form_a", da, 1e-8);
    checks.at_most("closed_form_b", db, 1e-8);
    checks.at_most("closed_form_c", dc, 1e-8);
  }
  return run_curve(config, curve, target, std::move(report), std::move(checks));
}

RunOutcome run_park(const RunConfig& config) {
  const double r = config.r.value_or(30.0);
  const std::int64_t n = config.n.value_or(200);
  ApproxOptions options;
  // The parking loop 2(r cos s, cos² s) is the standard loop with amplitude 2r.
  options.r_override = 2.0 * r;
  options.n_override = n;
  const ParamCurve target = targets::parking();
  const LegendrianCurve curve = approximate_open(target, config.eps.value_or(0.3), options);
  const ParamCurve car = car_from_standard(curve);

  const double nn = static_cast<double>(n);
  double da = 0.0, dc = 0.0, dphi = 0.0;
  for (double t : uniform_grid(target.domain(), 1000)) {
    const Vec3 p = curve.eval(t);
    const Vec3 q = car.eval(t);
    da = std::max(da, std::abs(p.x - 2 * r * t * sinc(nn * t)));
    dc = std::max(dc, std::abs(p.z - (t + t * sinc(2 * nn * t))));
    const double arccot = std::atan(1.0 / (r / std::cos(nn * t)));
    dphi = std::max(dphi, std::abs(q.x - arccot));
  }
  Checks checks;
  checks.at_most("closed_form_a", da, 1e-9);
  checks.at_most("closed_form_c", dc, 1e-9);
  checks.at_most("closed_form_phi", dphi, 1e-9);
  checks.at_most("car_residual", legendrian_residual(car, ContactModel::Car, config.measure_grid).max_abs,
                 1e-10);
  json report;
  report["paper_r"] = r;
  return run_curve(config, curve, target, std::move(report), std::move(checks));
}

RunOutcome run_open(const RunConfig& config) {
  const ParamCurve target = input_or(config, targets::random_trig(config.seed));
  const double eps = config.eps.value_or(0.1);
  const LegendrianCurve curve = approximate_open(target, eps, options_from(config));
  Checks checks;
  const Measurements m = measure(curve, target, config.measure_grid);
  checks.at_most("b_close", m.b_error, eps);
  return run_curve(config, curve, target, json::object(), std::move(checks));
}

RunOutcome run_closed(const RunConfig& config) {
  if (config.input && !config.periodic) {
    throw std::invalid_argument("approx-closed: --input requires --periodic");
  }
  const ParamCurve target = input_or(config, targets::circle());
  const double eps = config.eps.value_or(0.4);
  const LegendrianCurve curve = approximate_closed(target, eps, options_from(config));
  const Interval d = curve.domain();
  const Vec3 gap = curve.eval(d.end) - curve.eval(d.begin);
  const Vec3 dgap = curve.deriv(d.end) - curve.deriv(d.begin);
  auto sup = [](Vec3 v) { return std::max({std::abs(v.x), std::abs(v.y), std::abs(v.z)}); };
  Checks checks;
  checks.at_most("endpoint_values", sup(gap), 1e-9);
  checks.at_most("endpoint_derivatives", sup(dgap), 1e-9);
  const Measurements m = measure(curve, target, config.measure_grid);
  checks.at_most("b_close", m.b_error, eps);
  return run_curve(config, curve, target, json::object(), std::move(checks));
}

RunOutcome run_glue(const RunConfig& config) {
  const double eps = config.eps.value_or(0.45);
  const Interval overlap{-1.0, 1.0};
  const ParamCurve reference = targets::sine_reference(overlap);
  const LegendrianCurve sigma = approximate_open(reference, 0.1);
  const LegendrianCurve tau = approximate_open(reference, 0.08);
  const GlueProblem problem{sigma, tau, reference, eps};
  const GlueResult glued = glue(problem);
  const Connector& c = glued.connector;

  Checks checks;
  const Vec3 left = glued.curve.eval(-c.delta) - sigma.eval(-c.delta);
  const Vec3 right = glued.curve.eval(c.delta) - tau.eval(c.delta);
  checks.at_most("endpoint_sigma", left.norm(), 1e-9);
  checks.at_most("endpoint_tau", right.norm(), 1e-9);
  const Measurements m = measure(glued.curve, reference, config.measure_grid);
  checks.add("b_within_two_eps", m.b_error, 2 * eps, m.b_error < 2 * eps);
  checks.at_most("ramp_mass_left", c.left_mass_bound, 0.5 * c.delta * eps);
  checks.at_most("ramp_mass_right", c.right_mass_bound, 0.5 * c.delta * eps);

  json report;
  report["connector"] = {{"delta", c.delta}, {"rho", c.rho},       {"k", c.k},
                         {"y0", c.y0},       {"r_bar", c.r_bar},   {"r_cap", c.r_cap},
                         {"loop_r", c.loop_r}, {"p", {c.p.u, c.p.v}}, {"pbar", {c.pbar.u, c.pbar.v}}};
  return run_curve(config, glued.curve, reference, std::move(report), std::move(checks));
}

RunOutcome run_verify(const RunConfig& config) {
  Checks checks;
  const ParamCurve helix = targets::helix();
  const LoopFamily family(helix, 30.0);
  checks.at_most("barycenter_helix", loop_barycenter_check(family, 0.0, 1e-10).defect, 1e-10);
  checks.at_most("quad_cos_squared",
                 std::abs(verify::quad_oracle([](double s) { return std::cos(s) * std::cos(s); }, 0.0,
                                              kTwoPi, 1e-12)
                              .value -
                          kPi),
                 1e-12);
  ApproxOptions pinned;
  pinned.r_override = 30.0;
  pinned.n_override = 200;
  const LegendrianCurve open = approximate_open(helix, 0.3, pinned);
  checks.at_most("open_residual",
                 legendrian_residual(open.path(), ContactModel::Standard3, 10000).max_abs, 1e-10);
  const LegendrianCurve closed = approximate_closed(targets::circle(), 0.4);
  checks.add("closed_endpoint_jets", 0.0, 1e-9, verify::endpoint_jet_match(closed.path(), 1, 1e-9));
  checks.at_most("radius_formula", std::abs(radius_R(1.0, 0.0, 0.5) - std::sqrt(5.0)), 1e-14);
  json report;
  report["isa"] = std::string(kernels::to_string(kernels::active()));
  return finish(config, std::move(report), std::move(checks), {});
}

}  // namespace

std::optional<Command> parse_command(std::string_view name) {
  if (name == "approx-open") return Command::approx_open;
  if (name == "approx-closed") return Command::approx_closed;
  if (name == "glue-demo") return Command::glue_demo;
  if (name == "park") return Command::park;
  if (name == "helix") return Command::helix;
  if (name == "verify") return Command::verify;
  return std::nullopt;
}

std::string_view to_string(Command command) {
  switch (command) {
    case Command::approx_open: return "approx-open";
    case Command::approx_closed: return "approx-closed";
    case Command::glue_demo: return "glue-demo";
    case Command::park: return "park";
    case Command::helix: return "helix";
    case Command::verify: return "verify";
  }
  return "unknown";
}

void RunConfig::validate() const {
  if (eps && !(*eps > 0.0)) throw std::invalid_argument("--eps must be positive");
  if (r && !(*r > 0.0)) throw std::invalid_argument("--r must be positive");
  if (n && *n < 1) throw std::invalid_argument("--n must be >= 1");
  if (grid < 2 || measure_grid < 2 || svg_samples < 2) {
    throw std::invalid_argument("grid sizes must be >= 2");
  }
  if (!(bandwidth > 0.0)) throw std::invalid_argument("--bandwidth must be positive");
  if (command == Command::glue_demo && eps && !(*eps < 0.5)) {
    throw std::invalid_argument("glue-demo: --eps must lie in (0, 1/2)");
  }
}

RunOutcome run(const RunConfig& config) {
  config.validate();
  switch (config.command) {
    case Command::approx_open: return run_open(config);
    case Command::approx_closed: return run_closed(config);
    case Command::glue_demo: return run_glue(config);
    case Command::park: return run_park(config);
    case Command::helix: return run_helix(config);
    case Command::verify: return run_verify(config);
  }
  throw std::invalid_argument("unknown command");
}

}  // namespace legendrian::cli
