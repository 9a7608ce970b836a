#include "dkg/spectral_norms.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>

#include "dkg/energy_method.hpp"
#include "dkg/errors.hpp"
#include "dkg/mode_solver.hpp"
#include "dkg/profile_analysis.hpp"

namespace dkg {

namespace {

// |datum_hat(σ)| <= scale·e^{-σ²/(4a_max)}.
struct DataEnvelope {
  double s0 = 0.0;
  double s1 = 0.0;
  double a_max = 1.0;
  double a_min = 1.0;
  double reach = 0.0;
};

double transform_scale(const Datum& d) {
  double s = 0.0;
  for (const auto& g : d.terms()) s += std::abs(g.c) * std::pow(std::numbers::pi / g.a, 0.5 * d.n());
  return s;
}

DataEnvelope data_envelope(const DatumPair& pair) {
  DataEnvelope e;
  e.s0 = transform_scale(pair.u0);
  e.s1 = transform_scale(pair.u1);
  double a_max = 0.0;
  double a_min = std::numeric_limits<double>::infinity();
  for (const Datum* d : {&pair.u0, &pair.u1}) {
    for (const auto& g : d->terms()) {
      a_max = std::max(a_max, g.a);
      a_min = std::min(a_min, g.a);
      e.reach = std::max(e.reach, std::abs(g.x0));
    }
  }
  if (a_max > 0.0) {
    e.a_max = a_max;
    e.a_min = a_min;
  }
  return e;
}

// Mode energy bound from the pointwise decay certificate.
double energy_envelope(double sigma, double t, const ModelParams& params,
                       const DataEnvelope& de) {
  const DecayCertificate cert = certificate(params.beta);
  const double k = sigma * sigma + params.m * params.m;
  const double data = std::exp(-sigma * sigma / (2.0 * de.a_max));
  return cert.C * std::exp(-cert.alpha * rho(sigma) * t) * 0.5 *
         (de.s1 * de.s1 + k * de.s0 * de.s0) * data;
}

bool symmetric_average(const DatumPair& pair) {
  return pair.n() == 1 && !(pair.u0.centered() && pair.u1.centered());
}

struct ModeSquares {
  double u2 = 0.0;
  double ut2 = 0.0;
};

// |û|², |û_t|² at radius s; for off-centre 1-D data the average over ±s.
ModeSquares mode_squares(double t, double s, double m, const DatumPair& pair) {
  const Propagator p = propagator(t, s, m);
  auto at = [&](double x) {
    const cplx u0 = datum_hat(pair.u0, x);
    const cplx u1 = datum_hat(pair.u1, x);
    return ModeSquares{std::norm(p.phi * u1 + p.psi * u0), std::norm(p.dphi * u1 + p.dpsi * u0)};
  };
  if (!symmetric_average(pair)) return at(s);
  const ModeSquares a = at(s);
  const ModeSquares b = at(-s);
  return {0.5 * (a.u2 + b.u2), 0.5 * (a.ut2 + b.ut2)};
}

double critical_radius(double m) { return std::sqrt(2.0 + 2.0 * std::sqrt(1.0 + m * m)); }

// Bound on t·|d√D/dσ| over [0, hi], restricted to the oscillatory regime.
double phase_rate(double t, double m, double hi, const DataEnvelope& de) {
  const double top = std::min(hi, 0.9 * critical_radius(m));
  double sup = 0.0;
  constexpr int samples = 256;
  for (int i = 0; i <= samples; ++i) {
    const double s = top * i / samples;
    const double d = discriminant(s, m);
    if (d <= 0.0) continue;
    sup = std::max(sup, std::abs(4.0 * s - 2.0 * s * s * s) / std::sqrt(d));
  }
  if (m == 0.0) sup = std::max(sup, 2.0);
  return t * sup + 2.0 * de.reach;
}

struct Domain {
  double radius = 0.0;
  double tail = 0.0;
  IntegrandHints hints;
};

Domain make_domain(double t, const ModelParams& params, const DataEnvelope& de,
                   const std::function<double(double)>& envelope, const QuadratureSpec& spec) {
  Domain d;
  if (spec.truncation_radius) {
    d.radius = *spec.truncation_radius;
  } else {
    d.radius = truncation_radius(envelope, params.n, spec.abs_tol / 10.0);
    d.tail = unit_sphere_area(params.n) * envelope(d.radius) * std::pow(d.radius, params.n);
  }
  d.hints.length_scale = std::min(1.0 / std::sqrt(1.0 + t), 2.0 * std::sqrt(de.a_min));
  d.hints.phase_rate = phase_rate(t, params.m, d.radius, de);
  const double sc = critical_radius(params.m);
  if (sc < d.radius) d.hints.breakpoints.push_back(sc);
  return d;
}

// area·∫_lo^hi f(σ)σ^{n-1} dσ.
Estimate shell_integral(const std::function<double(double)>& f, int n, double lo, double hi,
                        const QuadratureSpec& spec, const IntegrandHints& hints) {
  if (!(hi > lo)) return {};
  const double area = unit_sphere_area(n);
  QuadratureSpec inner = spec;
  inner.abs_tol = spec.abs_tol / area;
  inner.truncation_radius.reset();
  auto weighted = [&](double s) { return f(s) * std::pow(s, n - 1); };
  const QuadResult r = integrate(weighted, lo, hi, inner, hints);
  return {r.value * area, r.error * area};
}

Estimate sqrt_estimate(Estimate sq) {
  const double v = std::max(sq.value, 0.0);
  const double root = std::sqrt(v);
  const double up = std::sqrt(v + sq.error) - root;
  const double down = root - std::sqrt(std::max(v - sq.error, 0.0));
  return {root, std::max(up, down)};
}

Estimate scaled(Estimate e, double f) { return {e.value * f, e.error * f}; }

void require_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw ConfigError("t must be finite and >= 0");
}

}  // namespace

void validate(const NormSeries& s) {
  const std::size_t n = s.times.size();
  if (s.values.size() != n || s.error_estimates.size() != n) {
    throw ConfigError("NormSeries: times, values and error_estimates differ in length");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(s.times[i] > 0.0)) throw ConfigError("NormSeries: times must be positive");
    if (i > 0 && !(s.times[i] > s.times[i - 1])) {
      throw ConfigError("NormSeries: times must increase strictly");
    }
    if (!(s.values[i] >= 0.0) || !(s.error_estimates[i] >= 0.0)) {
      throw ConfigError("NormSeries: values and errors must be nonnegative");
    }
  }
}

void write_csv(std::ostream& os, const NormSeries& s) {
  validate(s);
  os << "t,value,error\n" << std::setprecision(17);
  for (std::size_t i = 0; i < s.times.size(); ++i) {
    os << s.times[i] << ',' << s.values[i] << ',' << s.error_estimates[i] << '\n';
  }
}

SolutionNorms solution_norms(double t, const ModelParams& params, const DatumPair& pair,
                             const QuadratureSpec& spec) {
  require_time(t);
  validate(spec);
  if (pair.n() != params.n) throw ConfigError("data dimension differs from params.n");
  const double m = params.m;
  const DataEnvelope de = data_envelope(pair);
  auto env = [&](double s) {
    const double e0 = energy_envelope(s, t, params, de);
    const double k = s * s + m * m;
    return e0 * (3.0 + 2.0 / k);
  };
  const Domain dom = make_domain(t, params, de, env, spec);
  const int n = params.n;

  auto part = [&](auto&& pick) {
    Estimate e = shell_integral(
        [&](double s) { return pick(s, mode_squares(t, s, m, pair)); }, n, 0.0, dom.radius, spec,
        dom.hints);
    e.error += dom.tail;
    return scaled(e, std::pow(2.0 * std::numbers::pi, -n));
  };

  const Estimate u2 = part([](double, const ModeSquares& q) { return q.u2; });
  const Estimate g2 = part([](double s, const ModeSquares& q) { return s * s * q.u2; });
  const Estimate ut2 = part([](double, const ModeSquares& q) { return q.ut2; });
  const Estimate en = part([&](double s, const ModeSquares& q) {
    return 0.5 * q.ut2 + 0.5 * (s * s + m * m) * q.u2;
  });
  return {sqrt_estimate(u2), sqrt_estimate(g2), sqrt_estimate(ut2), en};
}

ProfileError profile_error_norm(double t, const ModelParams& params, const DatumPair& pair,
                                const QuadratureSpec& spec) {
  require_time(t);
  validate(spec);
  if (pair.n() != params.n) throw ConfigError("data dimension differs from params.n");
  const ProfileParams pp = profile_params(pair, params.m);
  const double m = params.m;
  const DataEnvelope de = data_envelope(pair);
  const double pmax = std::abs(pp.P1) * std::min(t, 1.0 / m) + std::abs(pp.P0);
  auto env = [&](double s) {
    const double k = s * s + m * m;
    return 2.0 * (2.0 * energy_envelope(s, t, params, de) / k + pmax * pmax * std::exp(-t * s * s));
  };
  Domain dom = make_domain(t, params, de, env, spec);
  const bool sym = symmetric_average(pair);
  auto f = [&](double s) {
    const Propagator p = propagator(t, s, m);
    const double prof = profile_hat(t, s, pp);
    auto at = [&](double x) {
      return std::norm(p.phi * datum_hat(pair.u1, x) + p.psi * datum_hat(pair.u0, x) - prof);
    };
    return sym ? 0.5 * (at(s) + at(-s)) : at(s);
  };
  const double r = dom.radius;
  dom.hints.phase_rate = std::max(dom.hints.phase_rate, 2.0 * t * r / std::sqrt(r * r + m * m));
  ProfileError out;
  const double split = std::min(params.delta0, dom.radius);
  out.low = shell_integral(f, params.n, 0.0, split, spec, dom.hints);
  out.high = shell_integral(f, params.n, split, dom.radius, spec, dom.hints);
  out.high.error += dom.tail;
  out.total = {out.low.value + out.high.value, out.low.error + out.high.error};
  return out;
}

RemainderNorms remainder_norms(double t, const ModelParams& params, const DatumPair& pair,
                               const QuadratureSpec& spec) {
  require_time(t);
  validate(spec);
  if (pair.n() != params.n) throw ConfigError("data dimension differs from params.n");
  if (!(params.m > 0.0)) throw ConfigError("remainder norms require m > 0");
  const DataEnvelope de = data_envelope(pair);
  IntegrandHints hints;
  hints.length_scale = std::min(params.delta0, 1.0 / std::sqrt(1.0 + t));
  hints.phase_rate = phase_rate(t, params.m, params.delta0, de);
  const bool sym = symmetric_average(pair);
  auto norm_of = [&](auto&& pick) {
    auto f = [&](double s) {
      if (!sym) return std::norm(pick(k123_exact(t, s, pair, params)));
      return 0.5 * (std::norm(pick(k123_exact(t, s, pair, params))) +
                    std::norm(pick(k123_exact(t, -s, pair, params))));
    };
    return shell_integral(f, params.n, 0.0, params.delta0, spec, hints);
  };
  RemainderNorms out;
  out.K1 = norm_of([](const LowFrequencyTerms& r) { return r.K1; });
  out.K2 = norm_of([](const LowFrequencyTerms& r) { return r.K2; });
  out.K3 = norm_of([](const LowFrequencyTerms& r) { return r.K3; });
  return out;
}

Estimate high_frequency_mass(double t, const ModelParams& params, const DatumPair& pair,
                             const QuadratureSpec& spec) {
  require_time(t);
  validate(spec);
  if (pair.n() != params.n) throw ConfigError("data dimension differs from params.n");
  const double m = params.m;
  const DataEnvelope de = data_envelope(pair);
  auto env = [&](double s) {
    return 2.0 * energy_envelope(s, t, params, de) / (s * s + m * m);
  };
  const Domain dom = make_domain(t, params, de, env, spec);
  Estimate e = shell_integral([&](double s) { return mode_squares(t, s, m, pair).u2; }, params.n,
                              params.delta0, dom.radius, spec, dom.hints);
  e.error += dom.tail;
  return e;
}

CalibrationResult calibration_integrals(double gamma, double k, int n,
                                    const std::vector<double>& t_grid,
                                    const QuadratureSpec& spec) {
  if (!(gamma > 0.0)) throw ConfigError("gamma must be positive");
  if (!(k >= 0.0)) throw ConfigError("k must be >= 0");
  if (n < 1) throw ConfigError("n must be >= 1");
  if (t_grid.empty()) throw ConfigError("t_grid must be nonempty");
  CalibrationResult out;
  out.sup = -std::numeric_limits<double>::infinity();
  for (double t : t_grid) {
    require_time(t);
    IntegrandHints hints;
    hints.length_scale = std::min(1.0, 1.0 / std::sqrt(gamma * t + 1e-300));
    const Estimate j = shell_integral(
        [&](double s) { return std::exp(-gamma * s * s * t) * std::pow(s, k); }, n, 0.0, 1.0,
        spec, hints);
    const double normalised = j.value * std::pow(1.0 + t, 0.5 * (k + n));
    out.integrals.push_back(j.value);
    out.normalised.push_back(normalised);
    if (normalised > out.sup) {
      out.sup = normalised;
      out.argsup = t;
    }
  }
  return out;
}

}  // namespace dkg
