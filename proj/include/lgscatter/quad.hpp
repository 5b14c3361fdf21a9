#pragma once

// Deterministic nested quadrature over spherical coordinates. The volume
// element r^2 dr d(cos theta) dphi is applied by the integrator; integrands
// supply only the function value.
//
// Each refinement level doubles every order. Within a level, radial nodes
// may be evaluated on several threads, but partial sums are reduced in node
// order, so results are bit-identical regardless of the thread count.

#include <array>
#include <complex>
#include <functional>
#include <vector>

namespace lgs {

using cplx = std::complex<double>;

enum class RadialRule {
  laguerre,         // r = radial_scale * s, Gauss-Laguerre in s
  mapped_legendre,  // Gauss-Legendre on [0, radial_cutoff]
};

struct QuadratureSpec {
  double rel_tol = 1e-8;
  double abs_floor = 1e-30;  // |value| below this is reported as zero
  int max_doublings = 12;
  double radial_scale = 1.0;   // bohr; decay length of the radial integrand
  double radial_cutoff = 0.0;  // bohr; 0 selects 40 * radial_scale
  RadialRule radial_rule = RadialRule::laguerre;
  int n_r = 16;
  int n_theta = 16;
  int n_phi = 16;
  unsigned threads = 0;      // 0: hardware concurrency
  long long max_points = 1LL << 26;

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
  double effective_cutoff() const {
    return radial_cutoff > 0.0 ? radial_cutoff : 40.0 * radial_scale;
  }
};

struct QuadratureResult {
  cplx value{};
  double error_estimate = 0.0;  // last successive difference, absolute
  bool converged = false;
  int doublings = 0;
  std::vector<double> error_history;  // successive differences, oldest first
  std::array<int, 3> orders{};        // (n_r, n_theta, n_phi) at the last level
};

struct SphericalPoint {
  double r;
  double cos_theta;
  double sin_theta;  // >= 0
  double phi;
};

using Integrand3D = std::function<cplx(const SphericalPoint&)>;
/// Integrand with the azimuth already reduced: f(r, cos theta, sin theta).
using Integrand2D = std::function<cplx(double, double, double)>;
using Integrand1D = std::function<cplx(double)>;

/// int f d^3r over all space.
QuadratureResult integrate_3d(const Integrand3D& integrand, const QuadratureSpec& spec);

/// 2 pi * int f r^2 dr d(cos theta). When `winding_ok` is false the
/// azimuthal integral vanishes and (0, 0) is returned without evaluating f.
QuadratureResult integrate_2d_after_phi(const Integrand2D& integrand, bool winding_ok,
                                        const QuadratureSpec& spec);

/// int_a^b f(x) dx by Gauss-Legendre with order doubling from spec.n_r.
QuadratureResult integrate_1d(const Integrand1D& integrand, double a, double b,
                              const QuadratureSpec& spec);

}  // namespace lgs
