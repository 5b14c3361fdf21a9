#pragma once

// JSON configuration for a single matrix-element evaluation:
//
//   {
//     "beam":       {"p": 0, "ell": 1, "wavelength_au": 50, "rayleigh_range_au": 628.3},
//     "beam_out":   {...},            // optional; defaults to the flip of "beam"
//     "atom_in":    {"n": 2, "l": 1, "m": -1},
//     "atom_out":   {"n": 2, "l": 1, "m": 1},
//     "scattering": {"mode": "forward_flip", "theta_deg": 0, "elastic": true,
//                    "polarization_overlap": 1, "q_convention": "exact"},
//     "quadrature": {"rel_tol": 1e-8, "max_doublings": 12}
//   }
//
// Unknown keys are rejected. Every default that is filled in is echoed in
// the output record.

#include <optional>
#include <string>

#include <json.hpp>

#include "lgscatter/melement.hpp"

namespace lgs {

enum class ScatteringMode { plane, general, forward_flip };

struct ElementConfig {
  ScatteringMode mode = ScatteringMode::forward_flip;
  ScatteringChannel channel;
  QuadratureSpec quadrature;
  double theta_deg = 0.0;
  bool beam_out_explicit = false;
  nlohmann::ordered_json resolved;  // inputs with defaults filled in
};

/// Throws ConfigError on schema violations and DomainError on physics
/// violations (L >= N, |M| > L, non-positive lengths, ...).
ElementConfig parse_element_config(const nlohmann::json& doc,
                                   GouyConvention gouy = GouyConvention::abs_winding);

struct ElementRecord {
  AmplitudeResult result;
  nlohmann::ordered_json record;
};

/// Dispatches on scattering.mode: "plane" -> compton_M, "general" ->
/// twisted_M_general, "forward_flip" -> twisted_M_forward_flip. The
/// reported value includes the polarization overlap factor in every mode.
ElementRecord run_matrix_element(const nlohmann::json& doc,
                                 GouyConvention gouy = GouyConvention::abs_winding);
ElementRecord run_matrix_element(const ElementConfig& config);

std::string_view to_string(ScatteringMode mode);
std::string_view to_string(GouyConvention convention);
std::string_view to_string(QConvention convention);

/// printf("%.17g") in the C locale.
std::string format_double(double value);

}  // namespace lgs
