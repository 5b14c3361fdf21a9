#pragma once

// Gaussian quadrature rules. Rules are computed once per order and cached
// for the lifetime of the process; the returned references stay valid.

#include <vector>

namespace lgs {

/// n-point Gauss-Legendre rule on [-1, 1], nodes ascending.
struct LegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Laguerre rule for int_0^inf e^{-x} f(x) dx.
/// `scaled_weights[i] == weights[i] * exp(nodes[i])`, computed in log space
/// so that int_0^inf g(x) dx ~= sum scaled_weights[i] * g(nodes[i]) is usable
/// for integrands that carry their own exponential decay.
struct LaguerreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> scaled_weights;
};

const LegendreRule& gauss_legendre(int n);
const LaguerreRule& gauss_laguerre(int n);

inline constexpr int kMaxLegendreOrder = 8192;
inline constexpr int kMaxLaguerreOrder = 1024;

}  // namespace lgs
