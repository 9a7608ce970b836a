#pragma once

#include <complex>
#include <string_view>

namespace dkg {

using cplx = std::complex<double>;

/// Sign of the discriminant 4(|ξ|² + m²) - |ξ|⁴.
enum class Regime { oscillatory, critical, overdamped };

std::string_view to_string(Regime r);

/// Roots of λ² + |ξ|²λ + (|ξ|² + m²) = 0.
struct CharRoots {
  cplx sigma1;
  cplx sigma2;
  Regime regime = Regime::oscillatory;
  double D = 0.0;
};

/// Fourier coefficients (û, û_t) of one mode at time t.
struct ModeState {
  cplx u_hat;
  cplx ut_hat;
  double t = 0.0;
  double xi_mag = 0.0;
};

double discriminant(double xi_mag, double m);

/// Principal-root formulas; the slow overdamped root is taken from Vieta's
/// product so it keeps full relative precision at large |ξ|. The regime is
/// critical when |D| <= 1e-10 (|ξ|² + m² + 1)².
CharRoots char_roots(double xi_mag, double m);

/// Real propagator coefficients of the mode ODE:
///   û(t) = phi·û₁ + psi·û₀,  û_t(t) = dphi·û₁ + dpsi·û₀.
/// Valid for any real t (negative t is used by the difference oracle).
struct Propagator {
  double phi = 0.0;
  double psi = 1.0;
  double dphi = 1.0;
  double dpsi = 0.0;
};

Propagator propagator(double t, double xi_mag, double m);

/// Exact mode solution at t >= 0. Throws ConfigError for t < 0.
ModeState evolve_mode(double t, double xi_mag, double m, cplx u0_hat, cplx u1_hat);

/// |û_tt + (|ξ|² + m²)û + |ξ|²û_t| with û_tt from a fourth-order centred
/// difference of the closed form at spacing h, normalised by
/// (|ξ|² + m² + 1)(|û₀| + |û₁|). Requires t >= 0 and h > 0; the stencil may
/// reach negative times, where the closed form is still the ODE solution.
double ode_residual_oracle(double xi_mag, double m, cplx u0_hat, cplx u1_hat, double t, double h);

/// Independent time-stepping reference: classical RK4 with step doubling,
/// local extrapolation, and error control per unit time at `tol` relative to
/// the state size.
ModeState integrate_mode_rk4(double t, double xi_mag, double m, cplx u0_hat, cplx u1_hat,
                             double tol = 1e-13);

/// Relative distance between two states in the norm
/// ((1 + |ξ|² + m²)|û|² + |û_t|²)^{1/2}.
double relative_state_distance(const ModeState& a, const ModeState& b, double m);

}  // namespace dkg
