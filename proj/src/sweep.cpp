#include "lgscatter/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <ostream>
#include <sstream>
#include <thread>

#include "lgscatter/config.hpp"
#include "lgscatter/errors.hpp"

namespace lgs {
namespace {

using nlohmann::json;

const char* const kColumns[] = {
    "axis_name", "axis_value", "re_M", "im_M", "abs_M", "err_est", "closed_form_abs_M",
    "rel_diff", "leading_order_abs_M", "leading_order_rel_diff", "method", "rescale_power",
    "converged", "p", "ell", "p_out", "ell_out", "wavelength_au", "rayleigh_range_au",
    "waist_au", "n_in", "l_in", "m_in", "n_out", "l_out", "m_out", "mode", "theta_deg",
    "elastic", "polarization_overlap", "q_convention", "gouy_convention", "rel_tol",
    "max_doublings", "error"};
constexpr std::size_t kColumnCount = sizeof(kColumns) / sizeof(kColumns[0]);

bool integer_axis(SweepAxis axis) {
  return axis == SweepAxis::ell || axis == SweepAxis::p || axis == SweepAxis::n;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += (c == '\n') ? ' ' : c;
  }
  return out + "\"";
}

bool has_field(const json& doc, const char* object, const char* key) {
  return doc.contains(object) && doc.at(object).is_object() && doc.at(object).contains(key);
}

void require_absent(const json& doc, const char* object, const char* key, SweepAxis axis) {
  if (has_field(doc, object, key)) {
    throw ConfigError(std::string(object) + "." + key,
                      "must be absent from the template when sweeping axis " +
                          std::string(to_string(axis)));
  }
}

bool forward_flip_shape(const ScatteringChannel& ch) {
  return ch.theta_scatter == 0.0 && ch.elastic && ch.is_flip() &&
         ch.beam_out.p() == ch.beam_in.p() && ch.atom_in.n() == ch.atom_out.n() &&
         ch.atom_in.n() >= ch.beam_in.abs_ell() + 1;
}

std::vector<std::string> evaluate_row(const SweepSpec& spec, double value, GouyConvention gouy) {
  std::vector<std::string> row(kColumnCount);
  row[0] = std::string(to_string(spec.axis));
  row[1] = format_double(value);
  try {
    ElementConfig cfg = parse_element_config(sweep_point_config(spec, value), gouy);
    cfg.quadrature.threads = 1;
    const ElementRecord rec = run_matrix_element(cfg);
    const AmplitudeResult& r = rec.result;
    const ScatteringChannel& ch = cfg.channel;
    const double abs_m = std::abs(r.value);
    row[2] = format_double(r.value.real());
    row[3] = format_double(r.value.imag());
    row[4] = format_double(abs_m);
    row[5] = format_double(r.error_estimate);
    if (cfg.mode != ScatteringMode::plane && forward_flip_shape(ch)) {
      const double scale = std::abs(ch.polarization_overlap);
      if (ch.atom_in.l() == ch.beam_in.abs_ell() && ch.atom_out.l() == ch.beam_in.abs_ell()) {
        const double cf = scale * std::abs(closed_form_flip_M(ch.beam_in, ch.atom_in.n()).value);
        row[6] = format_double(cf);
        if (cf > 0.0) row[7] = format_double(std::abs(abs_m - cf) / cf);
      }
      const double lo = scale * std::abs(leading_order_M(ch.beam_in, ch.atom_in, ch.atom_out).value);
      row[8] = format_double(lo);
      if (lo > 0.0) row[9] = format_double(std::abs(abs_m - lo) / lo);
    }
    row[10] = std::string(to_string(r.method));
    row[11] = std::to_string(r.rescale_power);
    row[12] = r.converged ? "true" : "false";
    row[13] = std::to_string(ch.beam_in.p());
    row[14] = std::to_string(ch.beam_in.ell());
    row[15] = std::to_string(ch.beam_out.p());
    row[16] = std::to_string(ch.beam_out.ell());
    row[17] = format_double(ch.beam_in.wavelength());
    row[18] = format_double(ch.beam_in.rayleigh_range());
    row[19] = format_double(ch.beam_in.waist());
    row[20] = std::to_string(ch.atom_in.n());
    row[21] = std::to_string(ch.atom_in.l());
    row[22] = std::to_string(ch.atom_in.m());
    row[23] = std::to_string(ch.atom_out.n());
    row[24] = std::to_string(ch.atom_out.l());
    row[25] = std::to_string(ch.atom_out.m());
    row[26] = std::string(to_string(cfg.mode));
    row[27] = format_double(cfg.theta_deg);
    row[28] = ch.elastic ? "true" : "false";
    row[29] = format_double(ch.polarization_overlap);
    row[30] = std::string(to_string(ch.q_convention));
    row[31] = std::string(to_string(gouy));
    row[32] = format_double(cfg.quadrature.rel_tol);
    row[33] = std::to_string(cfg.quadrature.max_doublings);
  } catch (const std::exception& e) {
    for (std::size_t i = 2; i + 1 < kColumnCount; ++i) row[i].clear();
    row[kColumnCount - 1] = csv_escape(e.what());
  }
  return row;
}

}  // namespace

SweepAxis parse_sweep_axis(const std::string& name) {
  if (name == "waist") return SweepAxis::waist;
  if (name == "rayleigh_range") return SweepAxis::rayleigh_range;
  if (name == "wavelength") return SweepAxis::wavelength;
  if (name == "ell") return SweepAxis::ell;
  if (name == "p") return SweepAxis::p;
  if (name == "N" || name == "n") return SweepAxis::n;
  throw ConfigError("axis", "unknown sweep axis '" + name + "'");
}

std::string_view to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::waist: return "waist";
    case SweepAxis::rayleigh_range: return "rayleigh_range";
    case SweepAxis::wavelength: return "wavelength";
    case SweepAxis::ell: return "ell";
    case SweepAxis::p: return "p";
    case SweepAxis::n: return "N";
  }
  return "unknown";
}

void SweepSpec::validate() const {
  if (grid.size() < 2) throw ConfigError("grid", "needs at least two values");
  const bool increasing = grid[1] > grid[0];
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (increasing ? !(grid[i] > grid[i - 1]) : !(grid[i] < grid[i - 1])) {
      throw ConfigError("grid", "must be strictly monotone");
    }
  }
  for (double v : grid) {
    if (!std::isfinite(v)) throw ConfigError("grid", "values must be finite");
    if (integer_axis(axis) && std::floor(v) != v) {
      throw ConfigError("grid", "axis " + std::string(to_string(axis)) + " takes integer values");
    }
  }
  if (!channel_template.is_object()) throw ConfigError("$", "expected a JSON object");
  const json& t = channel_template;
  switch (axis) {
    case SweepAxis::waist:
    case SweepAxis::rayleigh_range:
      require_absent(t, "beam", "rayleigh_range_au", axis);
      require_absent(t, "beam_out", "rayleigh_range_au", axis);
      break;
    case SweepAxis::wavelength:
      require_absent(t, "beam", "wavelength_au", axis);
      require_absent(t, "beam_out", "wavelength_au", axis);
      break;
    case SweepAxis::ell:
      require_absent(t, "beam", "ell", axis);
      require_absent(t, "beam_out", "ell", axis);
      break;
    case SweepAxis::p:
      require_absent(t, "beam", "p", axis);
      require_absent(t, "beam_out", "p", axis);
      break;
    case SweepAxis::n:
      require_absent(t, "atom_in", "n", axis);
      require_absent(t, "atom_out", "n", axis);
      break;
  }
}

json sweep_point_config(const SweepSpec& spec, double value) {
  json doc = spec.channel_template;
  auto set_both_beams = [&](const char* key, auto compute) {
    for (const char* name : {"beam", "beam_out"}) {
      if (name == std::string("beam") || doc.contains(name)) {
        json& b = doc[name];
        b[key] = compute(b);
      }
    }
  };
  switch (spec.axis) {
    case SweepAxis::waist:
      set_both_beams("rayleigh_range_au", [&](const json& b) -> json {
        if (!b.contains("wavelength_au") || !b.at("wavelength_au").is_number()) {
          throw ConfigError("beam.wavelength_au", "required to sweep the waist");
        }
        return kPi * value * value / b.at("wavelength_au").get<double>();
      });
      break;
    case SweepAxis::rayleigh_range:
      set_both_beams("rayleigh_range_au", [&](const json&) -> json { return value; });
      break;
    case SweepAxis::wavelength:
      set_both_beams("wavelength_au", [&](const json&) -> json { return value; });
      break;
    case SweepAxis::ell: {
      const int ell = static_cast<int>(value);
      doc["beam"]["ell"] = ell;
      if (doc.contains("beam_out")) doc["beam_out"]["ell"] = -ell;
      break;
    }
    case SweepAxis::p: {
      const int p = static_cast<int>(value);
      set_both_beams("p", [&](const json&) -> json { return p; });
      break;
    }
    case SweepAxis::n: {
      const int n = static_cast<int>(value);
      doc["atom_in"]["n"] = n;
      doc["atom_out"]["n"] = n;
      break;
    }
  }
  return doc;
}

void run_sweep(const SweepSpec& spec, std::ostream& out, GouyConvention gouy) {
  spec.validate();
  const std::size_t n = spec.grid.size();
  std::vector<std::vector<std::string>> rows(n);
  const std::size_t batch = std::max(1u, std::thread::hardware_concurrency());
  for (std::size_t start = 0; start < n; start += batch) {
    std::vector<std::future<std::vector<std::string>>> jobs;
    for (std::size_t i = start; i < std::min(n, start + batch); ++i) {
      jobs.push_back(std::async(std::launch::async, evaluate_row, std::cref(spec), spec.grid[i],
                                gouy));
    }
    for (std::size_t i = 0; i < jobs.size(); ++i) rows[start + i] = jobs[i].get();
  }

  for (std::size_t c = 0; c < kColumnCount; ++c) out << (c ? "," : "") << kColumns[c];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < kColumnCount; ++c) out << (c ? "," : "") << row[c];
    out << '\n';
  }
}

std::string run_sweep(const SweepSpec& spec, GouyConvention gouy) {
  std::ostringstream os;
  run_sweep(spec, os, gouy);
  return os.str();
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw ConfigError("grid", "cannot parse '" + item + "' as a number");
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (used != item.size()) throw ConfigError("grid", "cannot parse '" + item + "' as a number");
    out.push_back(v);
  }
  return out;
}

}  // namespace lgs
