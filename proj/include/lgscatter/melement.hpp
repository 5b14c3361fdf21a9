#pragma once

// Photon-hydrogen matrix elements M = <f| ... |i> for plane-wave and
// Laguerre-Gaussian photons. Only the bare M is computed; photon-field
// volume normalization is not applied anywhere.

#include <array>
#include <string_view>

#include "lgscatter/beams.hpp"
#include "lgscatter/quad.hpp"
#include "lgscatter/specfun.hpp"

namespace lgs {

using Vec3 = std::array<double, 3>;

enum class Method { plane_wave, general_quadrature, forward_quadrature, leading_order, closed_form };
std::string_view to_string(Method method);

struct AmplitudeResult {
  cplx value{};
  double error_estimate = 0.0;
  Method method = Method::plane_wave;
  /// Nonzero only when the underflow guard engaged; `value` is then
  /// M * w0^rescale_power.
  int rescale_power = 0;
  bool converged = true;
};

/// How |q| is obtained from the scattering angle for elastic scattering.
/// `exact` uses q = k_i - k_f (|q| = 2k sin(Theta/2)); `paper_small_angle`
/// keeps the direction of the exact vector but sets |q| = k sin(Theta).
enum class QConvention { exact, paper_small_angle };

struct ScatteringChannel {
  BeamMode beam_in;
  BeamMode beam_out;
  HydrogenState atom_in;
  HydrogenState atom_out;
  double theta_scatter = 0.0;  // radians, rotation of k_f about +y
  bool elastic = true;
  double polarization_overlap = 1.0;
  QConvention q_convention = QConvention::exact;
  GouyConvention gouy = GouyConvention::abs_winding;

  double k_in() const { return beam_in.wavenumber(); }
  /// Equals k_in() for elastic channels.
  double k_out() const { return elastic ? beam_in.wavenumber() : beam_out.wavenumber(); }
  Vec3 momentum_transfer() const;
  bool is_flip() const { return beam_out.ell() == -beam_in.ell(); }

  /// Throws DomainError for: overlap outside [-1, 1], angle outside [0, pi],
  /// elastic channels whose atomic energies or wavelengths differ, and the
  /// small-angle convention on an inelastic channel.
  void validate() const;
};

/// Quadrature defaults matched to the product decay exp(-r/N_i - r/N_f).
QuadratureSpec default_quadrature(const HydrogenState& atom_in, const HydrogenState& atom_out);

/// <f| exp(i q.r) |i>. The azimuth is reduced analytically when q is along z.
AmplitudeResult plane_wave_M(const Vec3& q, const HydrogenState& atom_in,
                             const HydrogenState& atom_out, const QuadratureSpec& spec);
AmplitudeResult plane_wave_M(const Vec3& q, const HydrogenState& atom_in,
                             const HydrogenState& atom_out);

/// q^n <f| (r cos theta)^n |i>.
cplx dipole_series_term(double q, int n, const HydrogenState& atom_in,
                        const HydrogenState& atom_out);

/// (Lambda_f . Lambda_i) * plane_wave_M(q). Beam shapes are ignored.
AmplitudeResult compton_M(const ScatteringChannel& channel, const QuadratureSpec& spec);
AmplitudeResult compton_M(const ScatteringChannel& channel);

/// Net azimuthal winding ell_in - ell_out + M_in - M_out of the forward
/// integrand; the transition is allowed iff it is zero.
int azimuthal_selection(int ell_in, int ell_out, int m_in, int m_out);

/// Full twisted matrix element at any scattering angle. At Theta = 0 the
/// azimuth is reduced analytically; otherwise a 3-D quadrature is used.
AmplitudeResult twisted_M_general(const ScatteringChannel& channel, const QuadratureSpec& spec);
AmplitudeResult twisted_M_general(const ScatteringChannel& channel);

/// Forward elastic OAM flip ell -> -ell with equal p and N, q = 0. The
/// Gouy phases cancel unless the signed mutation is requested.
/// Throws DomainError when N differs between the states or N < |ell| + 1.
AmplitudeResult twisted_M_forward_flip(const BeamMode& beam, const HydrogenState& atom_in,
                                       const HydrogenState& atom_out, const QuadratureSpec& spec,
                                       GouyConvention gouy = GouyConvention::abs_winding);
AmplitudeResult twisted_M_forward_flip(const BeamMode& beam, const HydrogenState& atom_in,
                                       const HydrogenState& atom_out,
                                       GouyConvention gouy = GouyConvention::abs_winding);

/// Lowest order in a/w0 of the forward flip: the Laguerre factor at its
/// origin value, w(z) -> w0, and the moments evaluated between the
/// channel's own states (winding 2 ell).
AmplitudeResult leading_order_M(const BeamMode& beam, const HydrogenState& atom_in,
                                const HydrogenState& atom_out);

/// Closed form for L_i = L_f = |ell| with M = 0 moments: the
/// transverse moment <rho^{2|ell|}> is taken between M = 0 states,
/// factorized as radial_moment * angular_moment.
AmplitudeResult closed_form_flip_M(const BeamMode& beam, int n);
/// As above, after checking L_i = L_f = |ell| and equal N.
AmplitudeResult closed_form_flip_M(const BeamMode& beam, const HydrogenState& atom_in,
                                   const HydrogenState& atom_out);

/// (E_f - E_i) |<f|exp(i q z)|i>|^2 / q^2. Throws DomainError for q <= 0.
double gos(double q, const HydrogenState& atom_in, const HydrogenState& atom_out);

/// 2 p! / (pi (p+|ell|)!) * 2^|ell| * binom(p+|ell|, p)^2.
double flip_prefactor(int p, int abs_ell);

/// True when |ell| log10(a / w0) < -120 with a = N^2.
bool underflow_guard(int abs_ell, int n, double waist);

}  // namespace lgs
