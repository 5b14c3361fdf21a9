#include "lgscatter/config.hpp"

#include <cmath>
#include <cstdio>
#include <initializer_list>
#include <stdexcept>

#include "lgscatter/errors.hpp"

namespace lgs {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

void check_keys(const json& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* a : allowed) known = known || it.key() == a;
    if (!known) throw ConfigError(join(path, it.key()), "unknown key");
  }
}

const json& require_object(const json& parent, const std::string& key, const std::string& path) {
  const std::string p = join(path, key);
  if (!parent.contains(key)) throw ConfigError(p, "missing required object");
  const json& v = parent.at(key);
  if (!v.is_object()) throw ConfigError(p, "expected an object");
  return v;
}

int get_int(const json& obj, const std::string& key, const std::string& path,
            std::optional<int> fallback = std::nullopt) {
  const std::string p = join(path, key);
  if (!obj.contains(key)) {
    if (fallback) return *fallback;
    throw ConfigError(p, "missing required integer");
  }
  const json& v = obj.at(key);
  if (v.is_number_integer()) return v.get<int>();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (std::floor(d) == d && std::abs(d) < 1e9) return static_cast<int>(d);
  }
  throw ConfigError(p, "expected an integer");
}

double get_number(const json& obj, const std::string& key, const std::string& path,
                  std::optional<double> fallback = std::nullopt) {
  const std::string p = join(path, key);
  if (!obj.contains(key)) {
    if (fallback) return *fallback;
    throw ConfigError(p, "missing required number");
  }
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(p, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(p, "expected a finite number");
  return d;
}

bool get_bool(const json& obj, const std::string& key, const std::string& path, bool fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_boolean()) throw ConfigError(join(path, key), "expected a boolean");
  return v.get<bool>();
}

std::string get_string(const json& obj, const std::string& key, const std::string& path,
                       std::optional<std::string> fallback = std::nullopt) {
  const std::string p = join(path, key);
  if (!obj.contains(key)) {
    if (fallback) return *fallback;
    throw ConfigError(p, "missing required string");
  }
  const json& v = obj.at(key);
  if (!v.is_string()) throw ConfigError(p, "expected a string");
  return v.get<std::string>();
}

struct BeamFields {
  int p;
  int ell;
  double wavelength;
  double rayleigh_range;
};

BeamFields parse_beam(const json& obj, const std::string& path) {
  check_keys(obj, path, {"p", "ell", "wavelength_au", "rayleigh_range_au"});
  return {get_int(obj, "p", path, 0), get_int(obj, "ell", path, 0),
          get_number(obj, "wavelength_au", path), get_number(obj, "rayleigh_range_au", path)};
}

HydrogenState parse_atom(const json& obj, const std::string& path) {
  check_keys(obj, path, {"n", "l", "m"});
  return HydrogenState(get_int(obj, "n", path), get_int(obj, "l", path), get_int(obj, "m", path));
}

ordered_json beam_echo(const BeamMode& b) {
  ordered_json j;
  j["p"] = b.p();
  j["ell"] = b.ell();
  j["wavelength_au"] = b.wavelength();
  j["rayleigh_range_au"] = b.rayleigh_range();
  return j;
}

ordered_json atom_echo(const HydrogenState& s) {
  ordered_json j;
  j["n"] = s.n();
  j["l"] = s.l();
  j["m"] = s.m();
  return j;
}

}  // namespace

std::string_view to_string(ScatteringMode mode) {
  switch (mode) {
    case ScatteringMode::plane: return "plane";
    case ScatteringMode::general: return "general";
    case ScatteringMode::forward_flip: return "forward_flip";
  }
  return "unknown";
}

std::string_view to_string(GouyConvention convention) {
  return convention == GouyConvention::abs_winding ? "abs_winding" : "signed_winding";
}

std::string_view to_string(QConvention convention) {
  return convention == QConvention::exact ? "exact" : "paper_small_angle";
}

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

ElementConfig parse_element_config(const json& doc, GouyConvention gouy) {
  if (!doc.is_object()) throw ConfigError("$", "expected a JSON object");
  check_keys(doc, "", {"beam", "beam_out", "atom_in", "atom_out", "scattering", "quadrature"});

  const json& scat = require_object(doc, "scattering", "");
  check_keys(scat, "scattering",
             {"mode", "theta_deg", "elastic", "polarization_overlap", "q_convention"});
  const std::string mode_name = get_string(scat, "mode", "scattering");
  ScatteringMode mode;
  if (mode_name == "plane") {
    mode = ScatteringMode::plane;
  } else if (mode_name == "general") {
    mode = ScatteringMode::general;
  } else if (mode_name == "forward_flip") {
    mode = ScatteringMode::forward_flip;
  } else {
    throw ConfigError("scattering.mode", "expected \"plane\", \"general\" or \"forward_flip\"");
  }
  const double theta_deg = get_number(scat, "theta_deg", "scattering", 0.0);
  const bool elastic = get_bool(scat, "elastic", "scattering", true);
  const double overlap = get_number(scat, "polarization_overlap", "scattering", 1.0);
  const std::string qc_name = get_string(scat, "q_convention", "scattering", "exact");
  QConvention qc;
  if (qc_name == "exact") {
    qc = QConvention::exact;
  } else if (qc_name == "paper_small_angle") {
    qc = QConvention::paper_small_angle;
  } else {
    throw ConfigError("scattering.q_convention", "expected \"exact\" or \"paper_small_angle\"");
  }

  const BeamFields bf = parse_beam(require_object(doc, "beam", ""), "beam");
  const bool out_explicit = doc.contains("beam_out");
  BeamFields bo = bf;
  if (out_explicit) {
    bo = parse_beam(require_object(doc, "beam_out", ""), "beam_out");
  } else if (mode != ScatteringMode::plane) {
    bo.ell = -bf.ell;
  }
  const HydrogenState atom_in = parse_atom(require_object(doc, "atom_in", ""), "atom_in");
  const HydrogenState atom_out = parse_atom(require_object(doc, "atom_out", ""), "atom_out");

  QuadratureSpec quad = default_quadrature(atom_in, atom_out);
  if (doc.contains("quadrature")) {
    const json& q = require_object(doc, "quadrature", "");
    check_keys(q, "quadrature", {"rel_tol", "max_doublings", "abs_floor", "radial_scale"});
    quad.rel_tol = get_number(q, "rel_tol", "quadrature", quad.rel_tol);
    quad.max_doublings = get_int(q, "max_doublings", "quadrature", quad.max_doublings);
    quad.abs_floor = get_number(q, "abs_floor", "quadrature", quad.abs_floor);
    quad.radial_scale = get_number(q, "radial_scale", "quadrature", quad.radial_scale);
  }
  try {
    quad.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("quadrature", e.what());
  }

  ElementConfig cfg{
      mode,
      ScatteringChannel{BeamMode(bf.p, bf.ell, bf.wavelength, bf.rayleigh_range),
                        BeamMode(bo.p, bo.ell, bo.wavelength, bo.rayleigh_range), atom_in,
                        atom_out, theta_deg * kPi / 180.0, elastic, overlap, qc, gouy},
      quad,
      theta_deg,
      out_explicit,
      {}};

  ordered_json& r = cfg.resolved;
  r["beam"] = beam_echo(cfg.channel.beam_in);
  r["beam_out"] = beam_echo(cfg.channel.beam_out);
  r["atom_in"] = atom_echo(atom_in);
  r["atom_out"] = atom_echo(atom_out);
  r["scattering"] = {{"mode", std::string(to_string(mode))},
                     {"theta_deg", theta_deg},
                     {"elastic", elastic},
                     {"polarization_overlap", overlap},
                     {"q_convention", std::string(to_string(qc))}};
  r["quadrature"] = {{"rel_tol", quad.rel_tol},
                     {"max_doublings", quad.max_doublings},
                     {"abs_floor", quad.abs_floor},
                     {"radial_scale", quad.radial_scale}};
  r["gouy_convention"] = std::string(to_string(gouy));
  return cfg;
}

ElementRecord run_matrix_element(const ElementConfig& cfg) {
  const ScatteringChannel& ch = cfg.channel;
  ch.validate();

  AmplitudeResult res;
  switch (cfg.mode) {
    case ScatteringMode::plane:
      res = compton_M(ch, cfg.quadrature);
      break;
    case ScatteringMode::general:
      res = twisted_M_general(ch, cfg.quadrature);
      res.value *= ch.polarization_overlap;
      res.error_estimate *= std::abs(ch.polarization_overlap);
      break;
    case ScatteringMode::forward_flip: {
      if (ch.theta_scatter != 0.0 || !ch.elastic) {
        throw DomainError("forward_flip mode requires theta_deg = 0 and elastic scattering");
      }
      const BeamMode expected = ch.beam_in.with_indices(ch.beam_in.p(), -ch.beam_in.ell());
      if (!(ch.beam_out == expected)) {
        throw DomainError("forward_flip mode requires beam_out = (p, -ell) on the same geometry");
      }
      res = twisted_M_forward_flip(ch.beam_in, ch.atom_in, ch.atom_out, cfg.quadrature, ch.gouy);
      res.value *= ch.polarization_overlap;
      res.error_estimate *= std::abs(ch.polarization_overlap);
      break;
    }
  }

  ElementRecord out{res, {}};
  ordered_json& rec = out.record;
  rec["inputs"] = cfg.resolved;
  const Vec3 q = ch.momentum_transfer();
  rec["derived"] = {{"waist_in_au", ch.beam_in.waist()},
                    {"waist_out_au", ch.beam_out.waist()},
                    {"k_in_au", ch.k_in()},
                    {"k_out_au", ch.k_out()},
                    {"momentum_transfer_au", {q[0] + 0.0, q[1] + 0.0, q[2] + 0.0}},
                    {"paraxial", ch.beam_in.paraxial() && ch.beam_out.paraxial()}};
  rec["result"] = {{"re", res.value.real()},
                   {"im", res.value.imag()},
                   {"abs", std::abs(res.value)},
                   {"error_estimate", res.error_estimate},
                   {"method", std::string(to_string(res.method))},
                   {"rescale_power", res.rescale_power},
                   {"converged", res.converged}};
  ordered_json warnings = ordered_json::array();
  if (cfg.mode != ScatteringMode::plane && !(ch.beam_in.paraxial() && ch.beam_out.paraxial())) {
    warnings.push_back("wavelength >= rayleigh_range/10: paraxial approximation is questionable");
  }
  if (!res.converged) warnings.push_back("quadrature did not converge; value is the best estimate");
  if (res.rescale_power != 0) {
    warnings.push_back("underflow guard engaged: value is M * w0^" +
                       std::to_string(res.rescale_power));
  }
  rec["warnings"] = warnings;
  return out;
}

ElementRecord run_matrix_element(const json& doc, GouyConvention gouy) {
  return run_matrix_element(parse_element_config(doc, gouy));
}

}  // namespace lgs
