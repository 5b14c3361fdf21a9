#include "lgscatter/specfun.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "lgscatter/errors.hpp"
#include "lgscatter/gauss_rules.hpp"

namespace lgs {
namespace {

void check_lm(int l, int m, const char* who) {
  if (l < 0 || std::abs(m) > l) {
    throw DomainError(std::string(who) + ": require 0 <= L and |M| <= L, got L=" +
                      std::to_string(l) + " M=" + std::to_string(m));
  }
}

void check_nl(int n, int l, const char* who) {
  if (n < 1 || l < 0 || l >= n) {
    throw DomainError(std::string(who) + ": require 0 <= L < N, got N=" +
                      std::to_string(n) + " L=" + std::to_string(l));
  }
}

// sqrt((2/N)^3 (N-L-1)! / (2N (N+L)!))
double radial_normalization(int n, int l) {
  double inv_ratio = 1.0;  // (N+L)! / (N-L-1)!
  for (int k = n - l; k <= n + l; ++k) inv_ratio *= k;
  const double two_over_n = 2.0 / n;
  return std::sqrt(two_over_n * two_over_n * two_over_n / (2.0 * n * inv_ratio));
}

double radial_unnormalized(int n, int l, double r) {
  const double rho = 2.0 * r / n;
  return std::pow(rho, l) * std::exp(-0.5 * rho) *
         assoc_laguerre(n - l - 1, 2 * l + 1, rho);
}

}  // namespace

HydrogenState::HydrogenState(int n, int l, int m) : n_(n), l_(l), m_(m) {
  check_nl(n, l, "HydrogenState");
  check_lm(l, m, "HydrogenState");
}

double assoc_laguerre(int p, int alpha, double x) {
  if (p < 0 || alpha < 0) {
    throw DomainError("assoc_laguerre: p and alpha must be non-negative");
  }
  if (p == 0) return 1.0;
  double prev = 1.0;
  double cur = 1.0 + alpha - x;
  for (int k = 1; k < p; ++k) {
    const double next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

double normalized_legendre(int l, int m, double cos_theta, double sin_theta) {
  const int am = std::abs(m);
  double pmm = 0.5 / std::sqrt(kPi);
  for (int k = 1; k <= am; ++k) {
    pmm *= -std::sqrt((2.0 * k + 1.0) / (2.0 * k)) * sin_theta;
  }
  double result = pmm;
  if (l > am) {
    double prev = pmm;
    double a_prev = std::sqrt(2.0 * am + 3.0);
    double cur = a_prev * cos_theta * pmm;
    for (int ll = am + 2; ll <= l; ++ll) {
      const double a = std::sqrt((4.0 * ll * ll - 1.0) / (double(ll) * ll - double(am) * am));
      const double next = a * (cos_theta * cur - prev / a_prev);
      prev = cur;
      cur = next;
      a_prev = a;
    }
    result = cur;
  }
  // P_l^{-m} = (-1)^m P_l^m for the normalized functions.
  if (m < 0 && (am % 2 == 1)) result = -result;
  return result;
}

double normalized_legendre(int l, int m, double cos_theta) {
  return normalized_legendre(l, m, cos_theta,
                             std::sqrt(std::max(0.0, 1.0 - cos_theta * cos_theta)));
}

cplx spherical_harmonic(int l, int m, double theta, double phi) {
  check_lm(l, m, "spherical_harmonic");
  const double p = normalized_legendre(l, m, std::cos(theta), std::abs(std::sin(theta)));
  return std::polar(p, m * phi);
}

double hydrogen_radial(int n, int l, double r) {
  check_nl(n, l, "hydrogen_radial");
  return radial_normalization(n, l) * radial_unnormalized(n, l, r);
}

HydrogenOrbital::HydrogenOrbital(const HydrogenState& state)
    : state_(state), radial_norm_(radial_normalization(state.n(), state.l())) {}

double HydrogenOrbital::radial(double r) const {
  return radial_norm_ * radial_unnormalized(state_.n(), state_.l(), r);
}

cplx HydrogenOrbital::operator()(double r, double theta, double phi) const {
  return radial(r) * spherical_harmonic(state_.l(), state_.m(), theta, phi);
}

cplx hydrogen_wavefunction(const HydrogenState& state, double r, double theta,
                           double phi) {
  return HydrogenOrbital(state)(r, theta, phi);
}

double radial_moment(int n, int l_i, int l_f, int power) {
  check_nl(n, l_i, "radial_moment");
  check_nl(n, l_f, "radial_moment");
  if (power < 0) throw DomainError("radial_moment: power must be non-negative");

  // With r = (N/2) s the integrand is exp(-s) times a polynomial of degree
  // 2N + power in s, so this many Laguerre nodes integrate it exactly.
  const int order = n + power / 2 + 2;
  const LaguerreRule& rule = gauss_laguerre(order);
  const double scale = 0.5 * n;
  const double norm = radial_normalization(n, l_i) * radial_normalization(n, l_f);
  double sum = 0.0;
  for (int j = 0; j < order; ++j) {
    const double s = rule.nodes[j];
    const double r = scale * s;
    // exp(-s) is carried by the weight; the two radial factors supply
    // exp(-s/2) each, so drop them here.
    const double poly = std::pow(s, l_i + l_f) *
                        assoc_laguerre(n - l_i - 1, 2 * l_i + 1, s) *
                        assoc_laguerre(n - l_f - 1, 2 * l_f + 1, s);
    sum += rule.weights[j] * poly * std::pow(r, power + 2);
  }
  return norm * scale * sum;
}

double angular_moment(int l_i, int m_i, int l_f, int m_f, int sin_power,
                      int winding) {
  check_lm(l_i, m_i, "angular_moment");
  check_lm(l_f, m_f, "angular_moment");
  if (sin_power < 0) throw DomainError("angular_moment: sin_power must be non-negative");
  if (winding != m_f - m_i) return 0.0;

  const int total_sin = std::abs(m_i) + std::abs(m_f) + sin_power;
  const int degree = l_i + l_f + sin_power;
  double sum = 0.0;
  if (total_sin % 2 == 0) {
    // Polynomial in x = cos(theta).
    const int order = degree + 2;
    const LegendreRule& rule = gauss_legendre(order);
    for (int j = 0; j < order; ++j) {
      const double x = rule.nodes[j];
      const double s = std::sqrt(1.0 - x * x);
      sum += rule.weights[j] * normalized_legendre(l_f, m_f, x, s) *
             normalized_legendre(l_i, m_i, x, s) * std::pow(s, sin_power);
    }
  } else {
    // The theta integrand (including the sin(theta) Jacobian) is a cosine
    // polynomial of degree <= degree + 1; the interior trapezoid rule with
    // K panels is exact for cos(k theta), k < 2K.
    const int panels = degree + 3;
    const double h = kPi / panels;
    for (int j = 1; j < panels; ++j) {
      const double t = j * h;
      const double x = std::cos(t);
      const double s = std::sin(t);
      sum += h * normalized_legendre(l_f, m_f, x, s) *
             normalized_legendre(l_i, m_i, x, s) * std::pow(s, sin_power + 1);
    }
  }
  return 2.0 * kPi * sum;
}

}  // namespace lgs
