#include "dkg/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "dkg/errors.hpp"

namespace dkg {

namespace {

void require_massive(double t, double m) {
  if (!(t > 0.0) || !std::isfinite(t)) throw ConfigError("t must be finite and > 0");
  if (!(m > 0.0)) throw ConfigError("m must be > 0");
}

// Phase t√(σ²/t + m²) split as tm + σ²/(√(σ²/t+m²) + m), so the large part
// enters only through precomputed cos(tm), sin(tm).
struct ScaledPhase {
  double t;
  double m;
  double cos_base;
  double sin_base;
  double cos2_base;
  double sin2_base;

  ScaledPhase(double t_, double m_)
      : t(t_), m(m_), cos_base(std::cos(t_ * m_)), sin_base(std::sin(t_ * m_)),
        cos2_base(std::cos(2.0 * t_ * m_)), sin2_base(std::sin(2.0 * t_ * m_)) {}

  double u(double s) const { return std::sqrt(s * s / t + m * m); }
  double delta(double s) const { return s * s / (u(s) + m); }
  double cos1(double s) const {
    const double d = delta(s);
    return cos_base * std::cos(d) - sin_base * std::sin(d);
  }
  double sin1(double s) const {
    const double d = delta(s);
    return sin_base * std::cos(d) + cos_base * std::sin(d);
  }
  double cos2(double s) const {
    const double d = 2.0 * delta(s);
    return cos2_base * std::cos(d) - sin2_base * std::sin(d);
  }
  double sin2(double s) const {
    const double d = 2.0 * delta(s);
    return sin2_base * std::cos(d) + cos2_base * std::sin(d);
  }
};

// ∫₀^R f(σ)σ^{n-1}e^{-σ²}dσ with R from the Gaussian weight and `scale`, an
// upper bound for |f|.
Estimate gaussian_weighted(const std::function<double(double)>& f, int n, double scale,
                           double phase_rate, const QuadratureSpec& spec) {
  validate(spec);
  const double area = unit_sphere_area(n);
  auto env = [&](double s) { return scale * std::exp(-s * s); };
  double radius = 0.0;
  double tail = 0.0;
  if (spec.truncation_radius) {
    radius = *spec.truncation_radius;
  } else {
    // truncation_radius works with area·env·σ^{n-1}; undo the area here.
    radius = truncation_radius(env, n, area * spec.abs_tol / 10.0);
    tail = env(radius) * std::pow(radius, n);
  }
  IntegrandHints hints;
  hints.length_scale = 1.0;
  hints.phase_rate = phase_rate;
  auto g = [&](double s) { return f(s) * std::pow(s, n - 1) * std::exp(-s * s); };
  const QuadResult r = integrate(g, 0.0, radius, spec, hints);
  return {r.value, r.error + tail};
}

double sigma_phase_rate(double m, double factor) {
  // d/dσ of factor·t√(σ²/t+m²) is at most factor·σ/m; σ stays below ~7.
  return factor * 7.0 / m;
}

Estimate times(Estimate e, double f) { return {e.value * f, e.error * std::abs(f)}; }

}  // namespace

GeometryConstants geometry_constants(int n, double m, const QuadratureSpec& spec) {
  if (n < 1) throw ConfigError("n must be >= 1");
  if (!(m >= 0.0)) throw ConfigError("m must be >= 0");
  GeometryConstants g;
  g.omega_n = unit_sphere_area(n);
  g.L_n = gaussian_weighted([](double) { return 1.0; }, n, 1.0, 0.0, spec).value;
  if (m > 0.0) g.K_n = g.L_n / (m * m);
  return g;
}

OscillationIntegrals oscillation_integrals(double t, int n, double m,
                                           const QuadratureSpec& spec) {
  require_massive(t, m);
  if (n < 1) throw ConfigError("n must be >= 1");
  const ScaledPhase ph(t, m);
  const double w = unit_sphere_area(n);
  const double inv_m = 1.0 / m;
  const double rate = sigma_phase_rate(m, 2.0);
  OscillationIntegrals out;
  out.t = t;
  out.scaled_I0 = times(gaussian_weighted(
                            [&](double s) {
                              const double c = ph.cos1(s);
                              return c * c;
                            },
                            n, 1.0, rate, spec),
                        w);
  out.scaled_I1 = times(gaussian_weighted(
                            [&](double s) {
                              const double sn = ph.sin1(s);
                              const double u = ph.u(s);
                              return sn * sn / (u * u);
                            },
                            n, inv_m * inv_m, rate, spec),
                        w);
  out.scaled_I2 = times(gaussian_weighted([&](double s) { return ph.sin2(s) / ph.u(s); }, n,
                                          inv_m, rate, spec),
                        w);
  const double f = std::pow(t, -0.5 * n);
  out.I0 = times(out.scaled_I0, f);
  out.I1 = times(out.scaled_I1, f);
  out.I2 = times(out.scaled_I2, f);
  return out;
}

Estimate profile_norm_squared(double t, int n, const ProfileParams& pp,
                              const QuadratureSpec& spec) {
  require_massive(t, pp.m);
  const double pmax = std::abs(pp.P1) / pp.m + std::abs(pp.P0);
  IntegrandHints hints;
  hints.length_scale = 1.0 / std::sqrt(t);
  hints.envelope = [=](double s) { return pmax * pmax * std::exp(-t * s * s); };
  hints.phase_rate = 2.0 * t;
  QuadratureSpec inner = spec;
  if (!inner.truncation_radius) {
    inner.truncation_radius = truncation_radius(hints.envelope, n, spec.abs_tol / 10.0);
  }
  hints.phase_rate = std::min(2.0 * t, 2.0 * t * *inner.truncation_radius / pp.m);
  const QuadResult r = radial_integral(
      [&](double s) {
        const double p = profile_hat(t, s, pp);
        return p * p;
      },
      n, inner, hints);
  const double r_cut = *inner.truncation_radius;
  const double tail = spec.truncation_radius
                          ? 0.0
                          : unit_sphere_area(n) * hints.envelope(r_cut) * std::pow(r_cut, n);
  return {r.value, r.error + tail};
}

Estimate c1_integral(double t, int n, double m, const QuadratureSpec& spec) {
  require_massive(t, m);
  const ScaledPhase ph(t, m);
  return gaussian_weighted(
      [&](double s) {
        const double u = ph.u(s);
        return ph.cos2(s) / (u * u);
      },
      n, 1.0 / (m * m), sigma_phase_rate(m, 2.0), spec);
}

Estimate a_integral(double t, int n, double m, const QuadratureSpec& spec) {
  require_massive(t, m);
  return gaussian_weighted([&](double s) { return t / (s * s + t * m * m); }, n, 1.0 / (m * m),
                           0.0, spec);
}

Estimate appendix_integral(double t, int n, double m, const QuadratureSpec& spec) {
  require_massive(t, m);
  const ScaledPhase ph(t, m);
  return gaussian_weighted([&](double s) { return ph.cos2(s); }, n, 1.0,
                           sigma_phase_rate(m, 2.0), spec);
}

PeriodAverages period_averages(double t, int n, double m, const QuadratureSpec& spec,
                               int samples) {
  require_massive(t, m);
  if (samples < 4) throw ConfigError("period averages need at least 4 samples");
  const double period = std::numbers::pi / m;
  PeriodAverages out;
  out.t = t;
  for (int j = 0; j < samples; ++j) {
    const double tj = t + period * j / samples;
    const OscillationIntegrals o = oscillation_integrals(tj, n, m, spec);
    out.scaled_I0 += o.scaled_I0.value;
    out.scaled_I1 += o.scaled_I1.value;
    out.scaled_I2 += o.scaled_I2.value;
    out.scaled_abs_I2 += std::abs(o.scaled_I2.value);
  }
  out.scaled_I0 /= samples;
  out.scaled_I1 /= samples;
  out.scaled_I2 /= samples;
  out.scaled_abs_I2 /= samples;
  return out;
}

double predicted_amplitude(int n, double m, const QuadratureSpec& spec) {
  if (!(m > 0.0)) throw ConfigError("m must be > 0");
  // e^{-(1-i/m)σ²} = e^{-σ²}(cos(σ²/m) + i sin(σ²/m)).
  const double rate = sigma_phase_rate(m, 1.0);
  const double re =
      gaussian_weighted([&](double s) { return std::cos(s * s / m); }, n, 1.0, rate, spec).value;
  const double im =
      gaussian_weighted([&](double s) { return std::sin(s * s / m); }, n, 1.0, rate, spec).value;
  return std::hypot(re, im);
}

AppendixProbe appendix_probe(const std::vector<double>& t_grid, int n, double m,
                             const QuadratureSpec& spec) {
  if (t_grid.empty()) throw ConfigError("appendix probe needs a nonempty t grid");
  if (!(m > 0.0)) throw ConfigError("m must be > 0");
  AppendixProbe out;
  out.times = t_grid;
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (i > 0 && !(t_grid[i] > t_grid[i - 1])) throw ConfigError("t grid must increase");
    out.values.push_back(appendix_integral(t_grid[i], n, m, spec).value);
  }
  out.predicted_amplitude = predicted_amplitude(n, m, spec);

  const double t_last = t_grid.back();
  double hi = -std::numeric_limits<double>::infinity();
  double lo = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (t_grid[i] < t_last / 10.0) continue;
    hi = std::max(hi, out.values[i]);
    lo = std::min(lo, out.values[i]);
  }
  out.measured_amplitude = 0.5 * (hi - lo);

  // ∫₀¹ t^{n/2}σ^{n-1}e^{-tσ²}dσ = ∫₀^{√t} u^{n-1}e^{-u²}du.
  const double top = std::sqrt(t_last);
  IntegrandHints hints;
  hints.length_scale = 1.0;
  out.majorant_limit =
      integrate([&](double u) { return std::pow(u, n - 1) * std::exp(-u * u); }, 0.0, top, spec,
                hints)
          .value;
  out.L_n = geometry_constants(n, m, spec).L_n;

  const int ell = n / 2 + 1;
  const double log_fact = std::lgamma(ell + 1.0);
  for (double t : t_grid) {
    if (t < 1.0) continue;
    for (double s = 1.0; s <= 100.0; s *= 1.1) {
      ++out.bound_samples;
      const double lhs = 0.5 * n * std::log(t) + (n - 1) * std::log(s) - t * s * s;
      const double rhs = log_fact + (n - 1 - 2 * ell) * std::log(s);
      if (lhs > rhs + 1e-12) ++out.bound_violations;
    }
  }
  return out;
}

std::string_view to_string(FitMethod m) {
  return m == FitMethod::direct ? "direct" : "bucketed";
}

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw ConfigError("linear fit needs >= 2 points");
  const double count = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= count;
  my /= count;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw ConfigError("linear fit needs distinct abscissae");
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (f.slope * x[i] + f.intercept);
    ss_res += r * r;
  }
  f.rms_residual = std::sqrt(ss_res / count);
  f.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return f;
}

std::vector<Bucket> period_buckets(const NormSeries& series, double period) {
  validate(series);
  if (!(period > 0.0)) throw ConfigError("period must be positive");
  std::vector<Bucket> out;
  const auto& t = series.times;
  const auto& v = series.values;
  std::size_t i = 0;
  while (i < t.size()) {
    const double start = t[i];
    std::size_t j = i;
    while (j < t.size() && t[j] < start + period * (1.0 - 1e-12)) ++j;
    const std::size_t count = j - i;
    if (j == t.size() && count > 1) {
      const double span = t[j - 1] - start;
      const double spacing = span / static_cast<double>(count - 1);
      if (span + spacing < period * (1.0 - 1e-9)) break;
    } else if (j == t.size() && count == 1 && i > 0) {
      // A lone trailing sample covers a full period only on a sparse grid.
      if (t[i] - t[i - 1] < period) break;
    }
    Bucket b;
    b.count = count;
    double log_t = 0.0;
    double log_v = 0.0;
    b.maximum = -std::numeric_limits<double>::infinity();
    b.minimum = std::numeric_limits<double>::infinity();
    for (std::size_t k = i; k < j; ++k) {
      log_t += std::log(t[k]);
      log_v += std::log(v[k]);
      b.maximum = std::max(b.maximum, v[k]);
      if (v[k] < b.minimum) {
        b.minimum = v[k];
        b.t_of_min = t[k];
      }
    }
    b.t_center = std::exp(log_t / static_cast<double>(count));
    b.geometric_mean = std::exp(log_v / static_cast<double>(count));
    out.push_back(b);
    i = j;
  }
  return out;
}

SlopeFit envelope_slope_fit(const NormSeries& series, std::optional<double> period_hint,
                            Aggregate aggregate) {
  validate(series);
  if (series.times.size() < 10) throw ConfigError("slope fit needs at least 10 samples");
  if (series.times.back() < 100.0 * series.times.front()) {
    throw ConfigError("slope fit needs samples spanning at least two decades");
  }
  for (double v : series.values) {
    if (!(v > 0.0)) throw ConfigError("slope fit needs positive values");
  }
  std::vector<double> x;
  std::vector<double> y;
  SlopeFit fit;
  if (period_hint) {
    fit.method = FitMethod::bucketed;
    for (const Bucket& b : period_buckets(series, *period_hint)) {
      x.push_back(std::log(b.t_center));
      switch (aggregate) {
        case Aggregate::geometric_mean:
          y.push_back(std::log(b.geometric_mean));
          break;
        case Aggregate::maximum:
          y.push_back(std::log(b.maximum));
          break;
        case Aggregate::minimum:
          y.push_back(std::log(b.minimum));
          break;
      }
    }
  } else {
    for (std::size_t i = 0; i < series.times.size(); ++i) {
      x.push_back(std::log(series.times[i]));
      y.push_back(std::log(series.values[i]));
    }
  }
  const LinearFit lf = linear_fit(x, y);
  fit.slope = lf.slope;
  fit.intercept = lf.intercept;
  fit.rms_residual = lf.rms_residual;
  fit.t_min = series.times.front();
  fit.t_max = series.times.back();
  fit.points = x.size();
  return fit;
}

std::vector<double> bucketed_time_grid(double t_min, double t_max, int per_decade,
                                       std::optional<double> period, int samples_per_bucket) {
  if (!(t_min > 0.0) || !(t_max > t_min)) throw ConfigError("need 0 < t_min < t_max");
  if (per_decade < 1) throw ConfigError("points_per_decade must be >= 1");
  if (period && (!(*period > 0.0) || samples_per_bucket < 1)) {
    throw ConfigError("bucketed grids need a positive period and >= 1 sample per bucket");
  }
  std::vector<double> out;
  const double decades = std::log10(t_max / t_min);
  const int steps = static_cast<int>(std::floor(decades * per_decade + 1e-9));
  double last_end = 0.0;
  for (int k = 0; k <= steps; ++k) {
    const double start = t_min * std::pow(10.0, static_cast<double>(k) / per_decade);
    if (!period) {
      out.push_back(start);
      continue;
    }
    if (start < last_end) continue;
    for (int j = 0; j < samples_per_bucket; ++j) {
      out.push_back(start + *period * j / samples_per_bucket);
    }
    last_end = start + *period;
  }
  return out;
}

OptimalityReport two_sided_check(const NormSeries& series, int n, double P0, double P1,
                                 double m) {
  if (!(m > 0.0)) throw ConfigError("two-sided check requires m > 0");
  validate(series);
  OptimalityReport rep;
  const GeometryConstants g = geometry_constants(n, m);
  rep.omega_n = g.omega_n;
  rep.L_n = g.L_n;
  rep.K_n = *g.K_n;
  rep.profile_floor_constant = P1 * P1 * rep.K_n * rep.omega_n / 16.0;
  const double period = std::numbers::pi / m;
  if (P0 == 0.0 && P1 == 0.0) {
    rep.skipped = true;
    rep.zero_mean_fit = envelope_slope_fit(series, period);
    return rep;
  }
  rep.liminf_normalized = std::numeric_limits<double>::infinity();
  rep.limsup_normalized = 0.0;
  NormSeries normalised = series;
  for (std::size_t i = 0; i < series.times.size(); ++i) {
    normalised.values[i] = std::pow(series.times[i], 0.25 * n) * series.values[i];
  }
  for (const Bucket& b : period_buckets(normalised, period)) {
    rep.liminf_normalized = std::min(rep.liminf_normalized, b.minimum);
    rep.limsup_normalized = std::max(rep.limsup_normalized, b.maximum);
  }
  if (!std::isfinite(rep.liminf_normalized)) rep.liminf_normalized = 0.0;
  return rep;
}

}  // namespace dkg
