#include "lgscatter/fit.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <sstream>

#include "lgscatter/errors.hpp"

namespace lgs {
namespace {

// Splits one CSV line; handles double-quoted fields.
std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::size_t column_index(const std::vector<std::string>& header, const std::string& name) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw ConfigError(name, "column not found in CSV header");
}

double parse_number(const std::string& s, const std::string& column, std::size_t row) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) {
    throw ConfigError(column, "row " + std::to_string(row) + ": '" + s + "' is not a number");
  }
  return v;
}

}  // namespace

FitResult fit_power_law(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 2) throw DomainError("power-law fit needs at least two points");
  double sx = 0.0, sy = 0.0;
  for (const auto& [x, y] : points) {
    if (!(x > 0.0) || !(y > 0.0)) throw DomainError("power-law fit needs positive x and y");
    sx += std::log(x);
    sy += std::log(y);
  }
  const double n = static_cast<double>(points.size());
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : points) {
    const double dx = std::log(x) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(y) - my);
  }
  if (sxx == 0.0) throw DomainError("power-law fit needs at least two distinct x values");
  FitResult r;
  r.slope = sxy / sxx;
  r.intercept = my - r.slope * mx;
  for (const auto& [x, y] : points) {
    r.max_residual =
        std::max(r.max_residual, std::abs(std::log(y) - (r.intercept + r.slope * std::log(x))));
  }
  return r;
}

std::vector<std::pair<double, double>> read_csv_points(std::istream& in,
                                                       const std::string& x_column,
                                                       const std::string& y_column) {
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("csv", "empty file");
  const auto header = split_csv(line);
  const std::size_t ix = column_index(header, x_column);
  const std::size_t iy = column_index(header, y_column);
  std::size_t ierr = header.size();
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == "error") ierr = i;
  }

  std::vector<std::pair<double, double>> points;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    const auto fields = split_csv(line);
    if (fields.size() != header.size()) {
      throw ConfigError("csv", "row " + std::to_string(row) + " has " +
                                   std::to_string(fields.size()) + " fields, header has " +
                                   std::to_string(header.size()));
    }
    if (ierr < fields.size() && !fields[ierr].empty()) continue;
    points.emplace_back(parse_number(fields[ix], x_column, row),
                        parse_number(fields[iy], y_column, row));
  }
  return points;
}

}  // namespace lgs
