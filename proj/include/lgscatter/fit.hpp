#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace lgs {

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;     // natural-log intercept
  double max_residual = 0.0;  // in natural-log units
};

/// Least-squares line through (log x, log y). Requires at least two points,
/// all coordinates positive; throws DomainError otherwise.
FitResult fit_power_law(const std::vector<std::pair<double, double>>& points);

/// Reads (x, y) pairs from a sweep CSV by column name, skipping rows whose
/// `error` column is non-empty. Throws ConfigError on a malformed file.
std::vector<std::pair<double, double>> read_csv_points(std::istream& in,
                                                       const std::string& x_column,
                                                       const std::string& y_column);

}  // namespace lgs
