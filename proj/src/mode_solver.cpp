#include "dkg/mode_solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "dkg/errors.hpp"

namespace dkg {

namespace {

// sin(x)/x, switching to its Taylor series where the divided difference of
// the roots is tiny.
double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

}  // namespace

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::oscillatory:
      return "oscillatory";
    case Regime::critical:
      return "critical";
    case Regime::overdamped:
      return "overdamped";
  }
  return "unknown";
}

double discriminant(double xi_mag, double m) {
  const double q = xi_mag * xi_mag;
  return 4.0 * (q + m * m) - q * q;
}

CharRoots char_roots(double xi_mag, double m) {
  const double q = xi_mag * xi_mag;
  const double k = q + m * m;
  CharRoots r;
  r.D = discriminant(xi_mag, m);
  const double scale = (k + 1.0) * (k + 1.0);
  if (std::abs(r.D) <= 1e-10 * scale) {
    r.regime = Regime::critical;
  } else {
    r.regime = r.D > 0.0 ? Regime::oscillatory : Regime::overdamped;
  }
  if (r.D >= 0.0) {
    const double w = 0.5 * std::sqrt(r.D);
    r.sigma1 = {-0.5 * q, w};
    r.sigma2 = {-0.5 * q, -w};
  } else {
    const double fast = -0.5 * (q + std::sqrt(-r.D));
    r.sigma2 = fast;
    r.sigma1 = k / fast;
  }
  return r;
}

Propagator propagator(double t, double xi_mag, double m) {
  const double q = xi_mag * xi_mag;
  const double k = q + m * m;
  const double half = 0.5 * q;
  const double D = 4.0 * k - q * q;

  // With s = e^{-qt/2}·sin(bt)/b (b = √D/2, continued to sinh for D < 0) and
  // c = e^{-qt/2}·cos(bt): phi = s, psi = c + (q/2)s, dphi = c - (q/2)s,
  // dpsi = -k·s.
  double s = 0.0;
  double c = 0.0;
  if (D >= 0.0) {
    const double b = 0.5 * std::sqrt(D);
    const double e = std::exp(-half * t);
    s = e * t * sinc(b * t);
    c = e * std::cos(b * t);
  } else {
    // Factor out the slow root so neither exponential overflows.
    const double kappa = 0.5 * std::sqrt(-D);
    const double slow = -k / (half + kappa);
    const double e = std::exp(slow * t);
    const double decay = std::exp(-2.0 * kappa * t);
    s = e * (-std::expm1(-2.0 * kappa * t)) / (2.0 * kappa);
    c = e * 0.5 * (1.0 + decay);
  }
  return {s, c + half * s, c - half * s, -k * s};
}

ModeState evolve_mode(double t, double xi_mag, double m, cplx u0_hat, cplx u1_hat) {
  if (!(t >= 0.0)) throw ConfigError("evolve_mode: t must be >= 0");
  const Propagator p = propagator(t, xi_mag, m);
  return {p.phi * u1_hat + p.psi * u0_hat, p.dphi * u1_hat + p.dpsi * u0_hat, t, xi_mag};
}

double ode_residual_oracle(double xi_mag, double m, cplx u0_hat, cplx u1_hat, double t,
                           double h) {
  if (!(h > 0.0) || !(t >= 0.0)) throw ConfigError("ode_residual_oracle: need t >= 0 and h > 0");
  const double q = xi_mag * xi_mag;
  const double k = q + m * m;
  const double norm = (k + 1.0) * (std::abs(u0_hat) + std::abs(u1_hat));
  if (norm == 0.0) return 0.0;
  auto u_at = [&](double s) {
    const Propagator p = propagator(s, xi_mag, m);
    return p.phi * u1_hat + p.psi * u0_hat;
  };
  const Propagator p = propagator(t, xi_mag, m);
  const cplx u = p.phi * u1_hat + p.psi * u0_hat;
  const cplx ut = p.dphi * u1_hat + p.dpsi * u0_hat;
  // Fourth-order centred stencil.
  const cplx utt = (-u_at(t + 2.0 * h) + 16.0 * u_at(t + h) - 30.0 * u + 16.0 * u_at(t - h) -
                    u_at(t - 2.0 * h)) /
                   (12.0 * h * h);
  return std::abs(utt + k * u + q * ut) / norm;
}

ModeState integrate_mode_rk4(double t, double xi_mag, double m, cplx u0_hat, cplx u1_hat,
                             double tol) {
  if (!(t >= 0.0)) throw ConfigError("integrate_mode_rk4: t must be >= 0");
  const double q = xi_mag * xi_mag;
  const double k = q + m * m;
  using State = std::array<cplx, 2>;
  auto rhs = [&](const State& y) -> State { return {y[1], -k * y[0] - q * y[1]}; };
  auto step = [&](const State& y, double h) -> State {
    const State k1 = rhs(y);
    const State k2 = rhs({y[0] + 0.5 * h * k1[0], y[1] + 0.5 * h * k1[1]});
    const State k3 = rhs({y[0] + 0.5 * h * k2[0], y[1] + 0.5 * h * k2[1]});
    const State k4 = rhs({y[0] + h * k3[0], y[1] + h * k3[1]});
    return {y[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
            y[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1])};
  };
  auto size = [&](const State& y) {
    return std::sqrt((1.0 + k) * std::norm(y[0]) + std::norm(y[1]));
  };

  State y{u0_hat, u1_hat};
  double now = 0.0;
  const double rate = std::abs(char_roots(xi_mag, m).sigma2) + 1.0;
  double h = std::min(t, 0.05 / rate);
  long steps = 0;
  while (now < t) {
    if (++steps > 50'000'000) throw NumericalError("integrate_mode_rk4: step budget exhausted");
    h = std::min(h, t - now);
    const State full = step(y, h);
    const State halves = step(step(y, 0.5 * h), 0.5 * h);
    const double err = std::sqrt((1.0 + k) * std::norm(halves[0] - full[0]) +
                                 std::norm(halves[1] - full[1])) / 15.0;
    // Never ask for less than rounding allows.
    const double allowed = std::max(tol * h, 64.0 * std::numeric_limits<double>::epsilon()) *
                           std::max(size(y), 1e-300);
    if (err <= allowed || h < 1e-14 * std::max(1.0, t)) {
      y = {halves[0] + (halves[0] - full[0]) / 15.0, halves[1] + (halves[1] - full[1]) / 15.0};
      now = (t - now <= h) ? t : now + h;
    }
    const double ratio = err > 0.0 ? allowed / err : 1e10;
    h *= std::clamp(0.9 * std::pow(ratio, 0.2), 0.2, 4.0);
  }
  return {y[0], y[1], t, xi_mag};
}

double relative_state_distance(const ModeState& a, const ModeState& b, double m) {
  const double w = 1.0 + a.xi_mag * a.xi_mag + m * m;
  const double diff = std::sqrt(w * std::norm(a.u_hat - b.u_hat) + std::norm(a.ut_hat - b.ut_hat));
  const double ref = std::sqrt(w * std::norm(b.u_hat) + std::norm(b.ut_hat));
  if (ref == 0.0) return diff;
  return diff / ref;
}

}  // namespace dkg
