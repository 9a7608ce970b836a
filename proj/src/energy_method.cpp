#include "dkg/energy_method.hpp"

#include <cmath>
#include <limits>

#include "dkg/errors.hpp"

namespace dkg {

namespace {

double energy0(const ModeState& s, double m) {
  const double k = s.xi_mag * s.xi_mag + m * m;
  return 0.5 * std::norm(s.ut_hat) + 0.5 * k * std::norm(s.u_hat);
}

double normalised_gap(double larger, double smaller) {
  const double scale = std::max(std::abs(larger), std::abs(smaller));
  if (scale == 0.0) return 0.0;
  return (larger - smaller) / scale;
}

}  // namespace

double rho(double xi_mag) {
  const double q = xi_mag * xi_mag;
  return q / (1.0 + q);
}

EnergyBreakdown energy_breakdown(const ModeState& state, double m, double beta) {
  if (!(beta > 0.0 && beta < 1.0)) throw ConfigError("beta must lie in (0, 1)");
  const double q = state.xi_mag * state.xi_mag;
  const double k = q + m * m;
  const double r = rho(state.xi_mag);
  const double u2 = std::norm(state.u_hat);
  const double ut2 = std::norm(state.ut_hat);
  const double cross = std::real(state.ut_hat * std::conj(state.u_hat));

  EnergyBreakdown out;
  out.rho = r;
  out.E0 = 0.5 * ut2 + 0.5 * k * u2;
  out.E = out.E0 + beta * r * cross + 0.5 * beta * r * q * u2;
  out.F = q * ut2 + beta * r * k * u2;
  out.R = beta * r * ut2;
  return out;
}

DecayCertificate certificate(double beta) {
  if (!(beta > 0.0 && beta < 1.0)) throw ConfigError("beta must lie in (0, 1)");
  DecayCertificate c;
  c.beta = beta;
  c.M = 1.0 / (2.0 * beta) + beta / 2.0 + 1.5;
  c.alpha = (1.0 - beta) / c.M;
  c.C = (1.0 + 2.0 * beta) / (1.0 - beta);
  return c;
}

DecayMarginReport check_pointwise_decay(const ModelParams& params, const DatumPair& pair,
                                        std::span<const double> t_grid,
                                        std::span<const double> xi_grid,
                                        double certificate_scale) {
  if (t_grid.empty() || xi_grid.empty()) throw ConfigError("decay check grids must be nonempty");
  const DecayCertificate cert = certificate(params.beta);
  const double C = cert.C * certificate_scale;

  DecayMarginReport rep;
  rep.min_log_slack = std::numeric_limits<double>::infinity();
  for (double xi : xi_grid) {
    const cplx u0 = datum_hat(pair.u0, xi);
    const cplx u1 = datum_hat(pair.u1, xi);
    const double e_initial = energy0(ModeState{u0, u1, 0.0, std::abs(xi)}, params.m);
    const double r = rho(xi);
    for (double t : t_grid) {
      ++rep.points;
      const double e = energy0(evolve_mode(t, std::abs(xi), params.m, u0, u1), params.m);
      if (e == 0.0) continue;
      const double bound = C * std::exp(-cert.alpha * r * t) * e_initial;
      const double slack = std::log(bound) - std::log(e);
      if (slack < rep.min_log_slack) {
        rep.min_log_slack = slack;
        rep.worst_t = t;
        rep.worst_xi = xi;
      }
      if (e > bound * (1.0 + 1e-12)) ++rep.violations;
    }
  }
  return rep;
}

double energy_identity_residual(double xi_mag, double m, const DatumPair& pair, double t,
                                double h) {
  if (!(h > 0.0)) throw ConfigError("energy_identity_residual: h must be positive");
  const cplx u0 = datum_hat(pair.u0, xi_mag);
  const cplx u1 = datum_hat(pair.u1, xi_mag);
  auto state_at = [&](double s) {
    const Propagator p = propagator(s, xi_mag, m);
    return ModeState{p.phi * u1 + p.psi * u0, p.dphi * u1 + p.dpsi * u0, s, xi_mag};
  };
  auto e_at = [&](double s) { return energy0(state_at(s), m); };
  const double dE =
      (-e_at(t + 2.0 * h) + 8.0 * e_at(t + h) - 8.0 * e_at(t - h) + e_at(t - 2.0 * h)) / (12.0 * h);
  const ModeState now = state_at(t);
  const double lhs = dE + xi_mag * xi_mag * std::norm(now.ut_hat);
  const double e_initial = energy0(ModeState{u0, u1, 0.0, xi_mag}, m);
  return std::abs(lhs) / (e_initial + 1.0);
}

InequalitySlacks inequality_slacks(const ModeState& state, double m, double beta) {
  const EnergyBreakdown e = energy_breakdown(state, m, beta);
  const DecayCertificate cert = certificate(beta);
  InequalitySlacks s;
  s.dissipation = normalised_gap(beta * e.F, e.R);
  s.coercivity = normalised_gap(cert.M * e.F, e.rho * e.E);
  s.lower_sandwich = normalised_gap(e.E, (1.0 - beta) * e.E0);
  s.upper_sandwich = normalised_gap((1.0 + 2.0 * beta) * e.E0, e.E);
  return s;
}

}  // namespace dkg
