#pragma once

#include <functional>
#include <optional>
#include <vector>

namespace dkg {

/// Accuracy and resource limits for the adaptive panel integrator.
struct QuadratureSpec {
  double rel_tol = 1e-10;
  double abs_tol = 1e-15;
  int max_panels = 20000;
  /// Fixed truncation radius for semi-infinite integrals; chosen from the
  /// integrand envelope when unset.
  std::optional<double> truncation_radius;
  /// Minimum number of quadrature nodes per oscillation period when a
  /// phase-rate hint is supplied.
  double oscillation_resolution = 10.0;
};

void validate(const QuadratureSpec& spec);

/// Shape information about an integrand that the integrator cannot infer.
struct IntegrandHints {
  /// Characteristic width of the integrand's main feature near the origin;
  /// the initial panels are refined geometrically towards 0 down to this scale.
  double length_scale = 1.0;
  /// Upper bound on |d(phase)/dσ| in radians per unit σ (0 = not oscillatory).
  double phase_rate = 0.0;
  /// Interior points where the integrand is not smooth or a split is wanted.
  std::vector<double> breakpoints;
  /// Decaying majorant of |f(σ)| used to choose the truncation radius.
  std::function<double(double)> envelope;
};

struct QuadResult {
  double value = 0.0;
  /// Conservative bound on |exact - value|: Gauss/Kronrod differences summed
  /// over panels plus the truncated-tail estimate.
  double error = 0.0;
  int panels = 0;
};

/// Adaptive Gauss–Kronrod (10/21) panel integration of f on [a, b].
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadratureSpec& spec, const IntegrandHints& hints = {});

/// Surface area of the unit sphere in R^n: 2π^{n/2}/Γ(n/2).
double unit_sphere_area(int n);

/// |S^{n-1}| ∫_0^∞ f(σ) σ^{n-1} dσ, i.e. the integral over R^n of a radial
/// function. Requires either spec.truncation_radius or hints.envelope.
QuadResult radial_integral(const std::function<double(double)>& f, int n,
                           const QuadratureSpec& spec, const IntegrandHints& hints);

/// Radius beyond which |S^{n-1}| envelope(σ) σ^{n-1} stays below `threshold`.
double truncation_radius(const std::function<double(double)>& envelope, int n,
                         double threshold);

}  // namespace dkg
