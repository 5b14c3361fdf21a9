// Command-line front end: element, sweep, fit, validate.
// Exit codes: 0 ok, 1 validation failure, 2 configuration error, 3 domain error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lgscatter/config.hpp"
#include "lgscatter/errors.hpp"
#include "lgscatter/fit.hpp"
#include "lgscatter/sweep.hpp"
#include "lgscatter/validate.hpp"

namespace {

using lgs::ConfigError;
using nlohmann::json;

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, "cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path, e.what());
  }
}

lgs::GouyConvention gouy_of(bool mutate) {
  return mutate ? lgs::GouyConvention::signed_winding : lgs::GouyConvention::abs_winding;
}

int cmd_element(const std::string& path, bool mutate) {
  const lgs::ElementRecord rec = lgs::run_matrix_element(read_json(path), gouy_of(mutate));
  std::cout << rec.record.dump(2) << '\n';
  return 0;
}

int cmd_sweep(const std::string& path, const std::string& axis, const std::string& grid,
              const std::string& output, bool mutate) {
  lgs::SweepSpec spec;
  spec.axis = lgs::parse_sweep_axis(axis);
  spec.grid = lgs::parse_grid(grid);
  spec.channel_template = read_json(path);
  const std::string csv = lgs::run_sweep(spec, gouy_of(mutate));

  if (output.empty()) {
    std::cout << csv;
  } else {
    std::ofstream out(output, std::ios::binary);
    if (!out) throw ConfigError(output, "cannot write file");
    out << csv;
  }

  std::istringstream in(csv);
  auto pts = lgs::read_csv_points(in, "axis_value", "abs_M");
  std::erase_if(pts, [](const auto& p) { return !(p.first > 0.0 && p.second > 0.0); });
  if (pts.size() >= 2) {
    const lgs::FitResult fit = lgs::fit_power_law(pts);
    std::cerr << "fitted slope d log|M| / d log " << axis << " = "
              << lgs::format_double(fit.slope) << '\n';
  }
  return 0;
}

int cmd_fit(const std::string& path, const std::string& x, const std::string& y) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, "cannot open file");
  const lgs::FitResult fit = lgs::fit_power_law(lgs::read_csv_points(in, x, y));
  nlohmann::ordered_json out;
  out["x"] = x;
  out["y"] = y;
  out["slope"] = fit.slope;
  out["intercept"] = fit.intercept;
  out["max_residual"] = fit.max_residual;
  std::cout << out.dump(2) << '\n';
  return 0;
}

int cmd_validate(const std::string& profile, bool mutate) {
  const lgs::ValidationReport report =
      lgs::validate_suite(lgs::ValidationProfile::named(profile), gouy_of(mutate));
  std::cout << report.text();
  return report.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Photon-hydrogen matrix elements for plane-wave and Laguerre-Gaussian photons"};
  app.require_subcommand(1);

  std::string config, axis, grid, output, csv, xcol = "axis_value", ycol = "abs_M";
  std::string profile = "default";
  bool mutate = false;

  auto* element = app.add_subcommand("element", "evaluate one matrix element from a JSON config");
  element->add_option("config", config, "JSON config file")->required();
  element->add_flag("--mutate-gouy", mutate, "use the sign-carrying Gouy phase (falsification only)");

  auto* sweep = app.add_subcommand("sweep", "evaluate a config over a parameter grid, CSV out");
  sweep->add_option("config", config, "JSON config with the swept field left out")->required();
  sweep->add_option("--axis", axis, "waist | rayleigh_range | wavelength | ell | p | N")->required();
  sweep->add_option("--grid", grid, "comma-separated values, strictly monotone")->required();
  sweep->add_option("-o,--output", output, "CSV path (default stdout)");
  sweep->add_flag("--mutate-gouy", mutate, "use the sign-carrying Gouy phase (falsification only)");

  auto* fit = app.add_subcommand("fit", "log-log least-squares slope of a sweep CSV");
  fit->add_option("csv", csv, "sweep CSV")->required();
  fit->add_option("--x", xcol, "x column")->capture_default_str();
  fit->add_option("--y", ycol, "y column")->capture_default_str();

  auto* validate = app.add_subcommand("validate", "run the invariant suite");
  validate->add_option("--profile", profile, "default | tight")->capture_default_str();
  validate->add_flag("--mutate-gouy", mutate, "use the sign-carrying Gouy phase (falsification only)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*element) return cmd_element(config, mutate);
    if (*sweep) return cmd_sweep(config, axis, grid, output, mutate);
    if (*fit) return cmd_fit(csv, xcol, ycol);
    if (*validate) return cmd_validate(profile, mutate);
  } catch (const lgs::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const lgs::DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
