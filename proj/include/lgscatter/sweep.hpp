#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "lgscatter/beams.hpp"

namespace lgs {

enum class SweepAxis { waist, rayleigh_range, wavelength, ell, p, n };

/// Parses "waist", "rayleigh_range", "wavelength", "ell", "p" or "N".
SweepAxis parse_sweep_axis(const std::string& name);
std::string_view to_string(SweepAxis axis);

struct SweepSpec {
  SweepAxis axis = SweepAxis::waist;
  std::vector<double> grid;
  nlohmann::json channel_template;  // element config with the axis field unset

  /// Throws ConfigError: grid shorter than 2, not strictly monotone,
  /// non-integer values on an integer axis, or the axis field present in
  /// the template.
  void validate() const;
};

/// Element config for one grid point. The waist axis holds the wavelength
/// fixed and sets rayleigh_range = pi w0^2 / wavelength.
nlohmann::json sweep_point_config(const SweepSpec& spec, double value);

/// Writes the CSV header and one row per grid point in grid order. Points
/// are evaluated concurrently; a failing point fills the `error` column and
/// the sweep continues.
void run_sweep(const SweepSpec& spec, std::ostream& out,
               GouyConvention gouy = GouyConvention::abs_winding);
std::string run_sweep(const SweepSpec& spec, GouyConvention gouy = GouyConvention::abs_winding);

/// Comma-separated list of numbers, e.g. "100,200,400".
std::vector<double> parse_grid(const std::string& text);

}  // namespace lgs
