#include "dkg/runner/checks.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "dkg/energy_method.hpp"
#include "dkg/errors.hpp"
#include "dkg/mode_solver.hpp"
#include "dkg/parallel.hpp"
#include "dkg/profile_analysis.hpp"

namespace dkg::runner {

namespace {

using nlohmann::json;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Upper-bound record: passes when measured < tolerance (or <= when inclusive).
CheckRecord upper(std::string_view name, double measured, double tol, std::string expected,
                  bool inclusive = false) {
  CheckRecord r;
  r.name = name;
  r.measured_value = measured;
  r.tolerance = tol;
  r.expected = std::move(expected);
  r.margin = tol - measured;
  const bool ok = inclusive ? measured <= tol : measured < tol;
  r.status = ok ? Status::pass : Status::fail;
  return r;
}

// Lower-bound record: passes when measured > threshold.
CheckRecord lower(std::string_view name, double measured, double threshold,
                  std::string expected) {
  CheckRecord r;
  r.name = name;
  r.measured_value = measured;
  r.tolerance = threshold;
  r.expected = std::move(expected);
  r.margin = measured - threshold;
  r.status = measured > threshold ? Status::pass : Status::fail;
  return r;
}

// |measured - target| <= tol.
CheckRecord band(std::string_view name, double measured, double target, double tol,
                 std::string expected) {
  CheckRecord r;
  r.name = name;
  r.measured_value = measured;
  r.tolerance = tol;
  r.expected = std::move(expected);
  r.margin = tol - std::abs(measured - target);
  r.status = std::abs(measured - target) <= tol ? Status::pass : Status::fail;
  return r;
}

CheckRecord vacuous(std::string_view name, std::string reason) {
  CheckRecord r;
  r.name = name;
  r.status = Status::pass;
  r.expected = "vacuous";
  r.details["vacuous"] = std::move(reason);
  return r;
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

bool is_zero(const DatumPair& p) { return p.u0.is_zero() && p.u1.is_zero(); }

NormSeries make_series(const std::vector<double>& t, const std::vector<double>& v,
                       const std::vector<double>& e, std::string label) {
  NormSeries s;
  s.times = t;
  s.values = v;
  s.error_estimates = e;
  s.label = std::move(label);
  return s;
}

bool all_zero(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
}

std::vector<double> geometric(double lo, double hi, int per_decade) {
  return bucketed_time_grid(lo, hi, per_decade, std::nullopt, 1);
}

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> out;
  for (int i = 0; i < count; ++i) out.push_back(lo + (hi - lo) * i / (count - 1));
  return out;
}

// Frequencies in (0, hi]; for 1-D data both signs.
std::vector<double> signed_grid(double hi, int count, int n) {
  std::vector<double> out;
  for (int i = 1; i <= count; ++i) {
    const double s = hi * i / count;
    out.push_back(s);
    if (n == 1) out.push_back(-s);
  }
  return out;
}

double data_scale(const DatumPair& p, double s) {
  return std::abs(datum_hat(p.u0, s)) + std::abs(datum_hat(p.u1, s));
}

// ---------------------------------------------------------------- mode solver

struct ModeSample {
  double xi;
  double t;
  cplx u0;
  cplx u1;
};

std::vector<ModeSample> mode_samples(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<ModeSample> out;
  const double log_lo = std::log(1e-4);
  const double log_hi = std::log(50.0);
  for (int i = 0; i < count; ++i) {
    ModeSample s;
    s.xi = 10.0 * unit(rng);
    s.t = std::exp(log_lo + (log_hi - log_lo) * unit(rng));
    s.u0 = {unit(rng) - 0.5, unit(rng) - 0.5};
    s.u1 = {unit(rng) - 0.5, unit(rng) - 0.5};
    out.push_back(s);
  }
  return out;
}

CheckRecord check_mode_ode_residual(Workspace& ws) {
  const double m = ws.scenario().params.m;
  double worst = 0.0;
  json at;
  for (const auto& s : mode_samples(ws.seed(), 1000)) {
    const double fast = std::abs(char_roots(s.xi, m).sigma2);
    const double h = 5e-3 / (1.0 + fast);
    const double r = ode_residual_oracle(s.xi, m, s.u0, s.u1, s.t, h);
    if (r > worst) {
      worst = r;
      at = {{"xi", s.xi}, {"t", s.t}};
    }
  }
  CheckRecord rec = upper("mode_ode_residual", worst, 1e-6, "max residual < 1e-06");
  rec.details = {{"samples", 1000}, {"worst_at", at}};
  return rec;
}

CheckRecord check_mode_rk4_agreement(Workspace& ws) {
  const double m = ws.scenario().params.m;
  const auto samples = mode_samples(ws.seed(), 1000);
  const auto dist = parallel_map<double>(
      samples.size(),
      [&](std::size_t i) {
        const auto& s = samples[i];
        return relative_state_distance(evolve_mode(s.t, s.xi, m, s.u0, s.u1),
                                       integrate_mode_rk4(s.t, s.xi, m, s.u0, s.u1), m);
      },
      ws.threads());
  const auto it = std::max_element(dist.begin(), dist.end());
  const auto& s = samples[static_cast<std::size_t>(it - dist.begin())];
  CheckRecord rec =
      upper("mode_rk4_agreement", *it, 1e-8, "max relative state distance < 1e-08");
  rec.details = {{"samples", samples.size()}, {"worst_at", {{"xi", s.xi}, {"t", s.t}}}};
  return rec;
}

// ------------------------------------------------------------- energy method

std::vector<double> energy_times() {
  std::vector<double> t{0.0};
  for (double v : geometric(1e-3, 50.0, 5)) t.push_back(v);
  return t;
}

std::vector<double> energy_xis() { return linspace(0.0, 10.0, 41); }

// States from the scenario data and from three fixed unit data pairs.
template <class F>
void for_each_state(const Scenario& sc, F&& f) {
  const double m = sc.params.m;
  const std::vector<std::pair<cplx, cplx>> unit{{1.0, 0.0}, {0.0, 1.0}, {1.0, cplx(0.0, 1.0)}};
  for (double xi : energy_xis()) {
    std::vector<std::pair<cplx, cplx>> data = unit;
    data.emplace_back(datum_hat(sc.pair.u0, xi), datum_hat(sc.pair.u1, xi));
    for (const auto& [u0, u1] : data) {
      if (u0 == 0.0 && u1 == 0.0) continue;
      for (double t : energy_times()) f(evolve_mode(t, xi, m, u0, u1));
    }
  }
}

CheckRecord check_energy_identity(Workspace& ws) {
  const Scenario& sc = ws.scenario();
  const DatumPair unit(Datum::gaussian(sc.params.n, 1.0, 1.0), Datum::gaussian(sc.params.n, 1.0, 1.0));
  const DatumPair& pair = is_zero(sc.pair) ? unit : sc.pair;
  double worst = 0.0;
  for (double xi : energy_xis()) {
    const double h = 1e-3 / (1.0 + xi * xi);
    for (double t : energy_times()) {
      worst = std::max(worst, energy_identity_residual(xi, sc.params.m, pair, t, h));
    }
  }
  CheckRecord rec = upper("energy_identity", worst, 1e-6,
                          "max |dE0/dt + |xi|^2|u_t|^2| / (E0(0) + 1) < 1e-06");
  rec.details = {{"data", is_zero(sc.pair) ? "unit gaussian (scenario data is zero)" : "scenario"}};
  return rec;
}

template <class Pick>
CheckRecord inequality_check(Workspace& ws, std::string_view name, std::string expected,
                             Pick&& pick) {
  const Scenario& sc = ws.scenario();
  double worst = kInf;
  std::size_t states = 0;
  for_each_state(sc, [&](const ModeState& s) {
    ++states;
    worst = std::min(worst, pick(inequality_slacks(s, sc.params.m, sc.params.beta)));
  });
  CheckRecord rec = lower(name, worst, -1e-12, std::move(expected));
  rec.details = {{"states", states}, {"beta", sc.params.beta}};
  return rec;
}

CheckRecord check_pointwise_decay(Workspace& ws) {
  const Scenario& sc = ws.scenario();
  if (is_zero(sc.pair)) return vacuous("pointwise_decay", "zero data");
  const DecayCertificate cert = certificate(sc.params.beta);
  const auto t = energy_times();
  const auto xi = energy_xis();
  const DecayMarginReport rep =
      dkg::check_pointwise_decay(sc.params, sc.pair, t, xi, sc.debug.certificate_scale);
  CheckRecord r;
  r.name = "pointwise_decay";
  r.measured_value = static_cast<double>(rep.violations);
  r.expected = "E0(t) <= C exp(-alpha rho t) E0(0) at every grid point";
  r.tolerance = 0.0;
  r.status = rep.passed() ? Status::pass : Status::fail;
  if (std::isfinite(rep.min_log_slack)) r.margin = rep.min_log_slack;
  r.details = {{"points", rep.points},
               {"violations", rep.violations},
               {"C", cert.C * sc.debug.certificate_scale},
               {"alpha", cert.alpha},
               {"M", cert.M},
               {"certificate_scale", sc.debug.certificate_scale},
               {"worst_t", rep.worst_t},
               {"worst_xi", rep.worst_xi}};
  return r;
}

CheckRecord check_energy_monotone(Workspace& ws) {
  const Scenario& sc = ws.scenario();
  if (is_zero(sc.pair)) return vacuous("energy_monotone", "zero data");
  std::vector<double> times{0.0};
  for (double v : geometric(1e-2, sc.t_grid.t_max, sc.t_grid.points_per_decade)) {
    times.push_back(v);
  }
  const auto norms = parallel_map<SolutionNorms>(
      times.size(),
      [&](std::size_t i) { return solution_norms(times[i], sc.params, sc.pair, sc.quadrature); },
      ws.threads());
  double worst = -kInf;
  for (std::size_t i = 0; i + 1 < norms.size(); ++i) {
    const auto& a = norms[i].energy;
    const auto& b = norms[i + 1].energy;
    const double excess = (b.value - a.value - a.error - b.error) / norms.front().energy.value;
    worst = std::max(worst, excess);
  }
  CheckRecord rec = upper("energy_monotone", worst, 0.0,
                          "E(t_{i+1}) - E(t_i) <= quadrature error at every step", true);
  rec.details = {{"samples", times.size()}, {"initial_energy", norms.front().energy.value},
                 {"final_energy", norms.back().energy.value}};
  return rec;
}

// ----------------------------------------------------------- data remainders

CheckRecord check_data_remainder_bounds(Workspace& ws) {
  const Scenario& sc = ws.scenario();
  if (is_zero(sc.pair)) return vacuous("data_remainder_bounds", "zero data");
  const FourierRemainderConstants lm = fourier_remainder_constants();
  double worst_a = 0.0;
  double worst_b = 0.0;
  json norms = json::array();
  for (const Datum* d : {&sc.pair.u0, &sc.pair.u1}) {
    if (d->is_zero()) continue;
    const double l11 = moments(*d).l11;
    norms.push_back(l11);
    for (double s : signed_grid(10.0, 200, sc.params.n)) {
      const DataSplit ab = ab_decomposition(*d, s);
      worst_a = std::max(worst_a, std::abs(ab.A) / (lm.L * std::abs(s) * l11));
      worst_b = std::max(worst_b, std::abs(ab.B) / (lm.M * std::abs(s) * l11));
    }
  }
  const double worst = std::max(worst_a, worst_b);
  CheckRecord rec = upper("data_remainder_bounds", worst, 1.0 + 1e-12,
                          "|A| <= L|xi| |u|_{1,1} and |B| <= M|xi| |u|_{1,1}", true);
  rec.details = {{"L", lm.L}, {"M", lm.M}, {"max_ratio_A", worst_a}, {"max_ratio_B", worst_b},
                 {"weighted_l1_norms", norms}};
  return rec;
}

// --------------------------------------------------------- spectral plumbing

CheckRecord check_parseval_t0(Workspace& ws) {
  const Scenario& sc = ws.scenario();
  const SolutionNorms n0 = solution_norms(0.0, sc.params, sc.pair, sc.quadrature);
  const double e0 = l2_norm_closed_form(sc.pair.u0);
  const double e1 = l2_norm_closed_form(sc.pair.u1);
  auto rel = [](double a, double b) {
    const double s = std::max(std::abs(a), std::abs(b));
    return s == 0.0 ? 0.0 : std::abs(a - b) / s;
  };
  const double worst = std::max(rel(n0.l2.value, e0), rel(n0.ut.value, e1));
  CheckRecord rec = upper("parseval_t0", worst, 1e-8,
                          "frequency-space |u0|, |u1| match closed forms to 1e-08 relative");
  rec.details = {{"u0_frequency", n0.l2.value}, {"u0_closed_form", e0},
                 {"u1_frequency", n0.ut.value}, {"u1_closed_form", e1}};
  return rec;
}

CheckRecord check_quadrature_self_consistency(Workspace& ws) {
  const Scenario& sc = ws.scenario();
  QuadratureSpec finer = sc.quadrature;
  finer.rel_tol *= 0.5;
  const std::vector<double> times{1.0, sc.t_grid.t_min,
                                  std::sqrt(sc.t_grid.t_min * sc.t_grid.t_max), sc.t_grid.t_max};
  double worst = 0.0;
  for (double t : times) {
    const SolutionNorms a = solution_norms(t, sc.params, sc.pair, sc.quadrature);
    const SolutionNorms b = solution_norms(t, sc.params, sc.pair, finer);
    for (auto [x, y] : {std::pair{a.l2, b.l2}, std::pair{a.grad, b.grad}, std::pair{a.ut, b.ut},
                        std::pair{a.energy, b.energy}}) {
      const double change = std::abs(x.value - y.value);
      if (change == 0.0) continue;
      worst = std::max(worst, x.error > 0.0 ? change / x.error : kInf);
    }
  }
  CheckRecord rec = upper("quadrature_self_consistency", worst, 1.0,
                          "halving rel_tol moves each norm by less than its error estimate");
  rec.details = {{"times", times}};
  return rec;
}

CheckRecord check_calibration_integral(Workspace& ws) {
  const int n = ws.scenario().params.n;
  std::vector<double> grid{0.0};
  for (double v : geometric(1e-2, 1e4, 10)) grid.push_back(v);
  const CalibrationResult a = calibration_integrals(1.0, 0.0, n, grid);
  const CalibrationResult b = calibration_integrals(0.5, 2.0, n, grid);
  const double worst = std::max(a.sup, b.sup);
  CheckRecord rec = upper("calibration_integral", worst, kInf,
                          "sup_t (1+t)^{(k+n)/2} int_{|xi|<=1} e^{-gamma t|xi|^2}|xi|^k finite");
  rec.margin.reset();
  rec.details = {{"gamma1_k0", {{"sup", a.sup}, {"argsup", a.argsup}}},
                 {"gamma05_k2", {{"sup", b.sup}, {"argsup", b.argsup}}}};
  return rec;
}

// ---------------------------------------------------------- low frequencies

CheckRecord check_low_frequency_identity(Workspace& ws) {
  const Scenario& sc = ws.scenario();
  if (is_zero(sc.pair)) return vacuous("low_frequency_identity", "zero data");
  double worst = 0.0;
  for (double s : signed_grid(sc.params.delta0, 20, sc.params.n)) {
    const double scale = data_scale(sc.pair, s);
    if (scale == 0.0) continue;
    for (double t : linspace(0.0, 100.0, 21)) {
      const cplx exact = evolve_mode(t, std::abs(s), sc.params.m, datum_hat(sc.pair.u0, s),
                                     datum_hat(sc.pair.u1, s))
                             .u_hat;
      const cplx rec = reconstruct_low_frequency(t, s, sc.pair, sc.params);
      worst = std::max(worst, std::abs(rec - exact) / scale);
    }
  }
  CheckRecord rec = upper("low_frequency_identity", worst, 1e-10,
                          "|reconstruction - u_hat| / (|u0_hat| + |u1_hat|) < 1e-10");
  rec.details = {{"delta0", sc.params.delta0}};
  return rec;
}

CheckRecord check_remainder_envelope(Workspace& ws) {
  const Scenario& sc = ws.scenario();
  if (is_zero(sc.pair)) return vacuous("remainder_envelope", "zero data");
  const ProfileParams pp = profile_params(sc.pair, sc.params.m);
  std::vector<double> times{0.0};
  for (double v : geometric(1e-2, sc.t_grid.t_max, 5)) times.push_back(v);
  // Rounding floor on the scale of the data, not of |u_hat|, which cancels
  // for zero-mass data.
  double gross = 0.0;
  for (const Datum* d : {&sc.pair.u0, &sc.pair.u1}) {
    if (!d->is_zero()) gross += moments(*d).l1;
  }
  double worst = 0.0;
  double worst_gap = 0.0;
  std::size_t samples = 0;
  for (double s : signed_grid(sc.params.delta0, 25, sc.params.n)) {
    const RootGap g = root_gap(std::abs(s), sc.params.m);
    worst_gap = std::max(worst_gap, g.gap / g.bound);
    const double floor = 1e-13 * gross;
    for (double t : times) {
      ++samples;
      const double tail = std::abs(tail_remainder(t, s, sc.pair, sc.params));
      const auto env = k4567_bound_envelope(t, std::abs(s), pp, sc.params.delta0);
      const double bound = (env[0] + env[1] + env[2] + env[3]) * (1.0 + 1e-9) + floor;
      worst = std::max(worst, bound > 0.0 ? tail / bound : (tail > 0.0 ? kInf : 0.0));
    }
  }
  const double measured = std::max(worst, worst_gap);
  CheckRecord rec = upper("remainder_envelope", measured, 1.0,
                          "|tail| <= sum of four mean-value envelopes; root gap <= |xi|^4/m",
                          true);
  rec.details = {{"samples", samples}, {"max_tail_over_envelope", worst},
                 {"max_root_gap_over_bound", worst_gap}};
  return rec;
}

// -------------------------------------------------------------- rate checks

double mass_p(const DatumPair& p) { return std::abs(zeroth_moment(p.u0)) + std::abs(zeroth_moment(p.u1)); }

NormSeries l2_series(Workspace& ws) {
  const auto& norms = ws.solution_series();
  std::vector<double> v;
  std::vector<double> e;
  for (const auto& s : norms) {
    v.push_back(s.l2.value);
    e.push_back(s.l2.error);
  }
  return make_series(ws.times(), v, e, "l2");
}

CheckRecord check_decay_envelope(Workspace& ws) {
  const Scenario& sc = ws.scenario();
  if (is_zero(sc.pair)) return vacuous("decay_envelope", "zero data");
  const int n = sc.params.n;
  const auto& norms = ws.solution_series();
  std::vector<double> v;
  double constant = 0.0;
  for (std::size_t i = 0; i < norms.size(); ++i) {
    const double sum = norms[i].l2.value + norms[i].grad.value + norms[i].ut.value;
    v.push_back(sum);
    constant = std::max(constant, std::pow(1.0 + ws.times()[i], 0.25 * n) * sum);
  }
  const NormSeries s = make_series(ws.times(), v, std::vector<double>(v.size(), 0.0), "composite");
  const SlopeFit fit = envelope_slope_fit(s, ws.period(), Aggregate::maximum);
  const double limit = -0.25 * n + 0.05;
  CheckRecord rec = upper("decay_envelope", fit.slope, limit,
                          "slope of max envelope of |u_t|+|u|+|grad u| <= " + fmt(limit) +
                              " with finite C",
                          true);
  if (!std::isfinite(constant)) rec.status = Status::fail;
  rec.details = {{"fit", to_json(fit)}, {"C", constant}};
  return rec;
}

CheckRecord check_l2_rate(Workspace& ws) {
  const Scenario& sc = ws.scenario();
  if (is_zero(sc.pair)) return vacuous("l2_rate", "zero data");
  const int n = sc.params.n;
  const SlopeFit fit = envelope_slope_fit(l2_series(ws), ws.period());
  CheckRecord rec;
  if (mass_p(sc.pair) > 0.0) {
    rec = band("l2_rate", fit.slope, -0.25 * n, 0.05,
               "slope of |u| = " + fmt(-0.25 * n) + " +- 0.05");
  } else {
    const double limit = -0.25 * (n + 2) + 0.05;
    rec = upper("l2_rate", fit.slope, limit, "P0 = P1 = 0: slope of |u| <= " + fmt(limit), true);
  }
  rec.details = {{"fit", to_json(fit)}};
  return rec;
}

json optimality_json(const OptimalityReport& r) {
  json j = {{"skipped", r.skipped},
            {"liminf_normalized", r.liminf_normalized},
            {"limsup_normalized", r.limsup_normalized},
            {"omega_n", r.omega_n},
            {"L_n", r.L_n},
            {"K_n", r.K_n},
            {"profile_floor_constant", r.profile_floor_constant},
            {"averaged_I0", r.averaged_I0},
            {"averaged_I1", r.averaged_I1},
            {"appendix_amplitude", r.appendix_amplitude},
            {"predicted_amplitude", r.predicted_amplitude}};
  if (r.zero_mean_fit) j["zero_mean_fit"] = to_json(*r.zero_mean_fit);
  return j;
}

constexpr double kReferenceTime = 1e3;

CheckRecord check_l2_lower_envelope(Workspace& ws) {
  const Scenario& sc = ws.scenario();
  if (is_zero(sc.pair)) return vacuous("l2_lower_envelope", "zero data");
  const int n = sc.params.n;
  const double m = sc.params.m;
  const double P0 = zeroth_moment(sc.pair.u0);
  const double P1 = zeroth_moment(sc.pair.u1);
  OptimalityReport rep = two_sided_check(l2_series(ws), n, P0, P1, m);
  const PeriodAverages pa = period_averages(kReferenceTime, n, m, sc.quadrature);
  rep.averaged_I0 = pa.scaled_I0;
  rep.averaged_I1 = pa.scaled_I1;
  const AppendixProbe probe = appendix_probe(appendix_probe_grid(m), n, m, sc.quadrature);
  rep.appendix_amplitude = probe.measured_amplitude;
  rep.predicted_amplitude = probe.predicted_amplitude;
  CheckRecord rec;
  if (rep.skipped) {
    rec = vacuous("l2_lower_envelope", "P0 = P1 = 0: no t^{-n/4} lower bound is claimed");
  } else {
    rec = lower("l2_lower_envelope", rep.liminf_normalized, 0.0,
                "min over buckets of t^{n/4}|u| > 0");
  }
  rec.details["optimality"] = optimality_json(rep);
  return rec;
}

CheckRecord check_profile_error_rate(Workspace& ws) {
  const Scenario& sc = ws.scenario();
  const auto& pe = ws.profile_series();
  std::vector<double> v;
  std::vector<double> e;
  for (const auto& p : pe) {
    v.push_back(p.total.value);
    e.push_back(p.total.error);
  }
  if (all_zero(v)) return vacuous("profile_error_rate", "profile error vanishes identically");
  const int n = sc.params.n;
  const SlopeFit fit =
      envelope_slope_fit(make_series(ws.times(), v, e, "profile_err2"), ws.period());
  const double limit = -0.5 * (n + 2) + 0.1;
  CheckRecord rec = upper("profile_error_rate", fit.slope, limit,
                          "slope of squared profile error <= " + fmt(limit), true);
  rec.details = {{"fit", to_json(fit)},
                 {"final_low", pe.back().low.value},
                 {"final_high", pe.back().high.value}};
  return rec;
}

CheckRecord check_high_frequency_tail(Workspace& ws) {
  const Scenario& sc = ws.scenario();
  if (is_zero(sc.pair)) return vacuous("high_frequency_tail", "zero data");
  const int n = sc.params.n;
  const double d2 = sc.params.delta0 * sc.params.delta0;
  const auto times = linspace(0.5 / d2, 10.0 / d2, 39);
  struct Pair {
    double profile_high;
    double mass;
  };
  const auto vals = parallel_map<Pair>(
      times.size(),
      [&](std::size_t i) {
        return Pair{profile_error_norm(times[i], sc.params, sc.pair, sc.quadrature).high.value,
                    high_frequency_mass(times[i], sc.params, sc.pair, sc.quadrature).value};
      },
      ws.threads());
  std::vector<double> logh;
  std::vector<double> logm;
  std::vector<double> logt;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(vals[i].profile_high > 0.0) || !(vals[i].mass > 0.0)) {
      throw NumericalError("high-frequency tail underflowed inside the fit window");
    }
    logh.push_back(std::log(vals[i].profile_high));
    logm.push_back(std::log(vals[i].mass));
    logt.push_back(std::log(times[i]));
  }
  const double omega = -linear_fit(times, logh).slope;
  const double kappa = -linear_fit(times, logm).slope;
  // Log-log slope of the fitted exponential at the end of the window, against
  // the steepest power rate fitted anywhere in the suite.
  const double effective = omega * times.back();
  const double steepest = 0.5 * (n + 4);
  CheckRecord rec = lower("high_frequency_tail", effective, steepest,
                          "fitted rate omega times window end > " + fmt(steepest));
  const DecayCertificate cert = certificate(sc.params.beta);
  rec.details = {{"omega", omega},
                 {"kappa", kappa},
                 {"certificate_rate", cert.alpha * d2 / (1.0 + d2)},
                 {"effective_power", effective},
                 {"local_loglog_slope", linear_fit(std::vector<double>(logt.end() - 5, logt.end()),
                                                   std::vector<double>(logh.end() - 5, logh.end()))
                                            .slope},
                 {"window", {times.front(), times.back()}}};
  return rec;
}

CheckRecord check_remainder_rates(Workspace& ws) {
  const Scenario& sc = ws.scenario();
  if (is_zero(sc.pair)) return vacuous("remainder_rates", "zero data");
  const int n = sc.params.n;
  const auto& times = ws.times();
  const auto norms = parallel_map<RemainderNorms>(
      times.size(),
      [&](std::size_t i) { return remainder_norms(times[i], sc.params, sc.pair, sc.quadrature); },
      ws.threads());
  const double bounds[3] = {-0.5 * (n + 4), -0.5 * (n + 2), -0.5 * (n + 2)};
  const char* names[3] = {"K1", "K2", "K3"};
  double worst = -kInf;
  json parts = json::object();
  for (int j = 0; j < 3; ++j) {
    std::vector<double> v;
    std::vector<double> e;
    for (const auto& r : norms) {
      const Estimate& x = j == 0 ? r.K1 : (j == 1 ? r.K2 : r.K3);
      v.push_back(x.value);
      e.push_back(x.error);
    }
    if (all_zero(v)) {
      parts[names[j]] = {{"vacuous", "vanishes identically"}, {"bound", bounds[j]}};
      continue;
    }
    const SlopeFit fit = envelope_slope_fit(make_series(times, v, e, names[j]), ws.period());
    worst = std::max(worst, fit.slope - bounds[j]);
    parts[names[j]] = {{"fit", to_json(fit)}, {"bound", bounds[j]}};
  }
  if (!std::isfinite(worst)) return vacuous("remainder_rates", "all remainders vanish");
  CheckRecord rec = upper("remainder_rates", worst, 0.1,
                          "each squared remainder slope <= its rate + 0.1", true);
  rec.details = parts;
  return rec;
}

CheckRecord check_zero_mean_rate(Workspace& ws) {
  const Scenario& sc = ws.scenario();
  const int n = sc.params.n;
  const bool own = !is_zero(sc.pair) && mass_p(sc.pair) == 0.0;
  const DatumPair pair = own ? sc.pair : catalog::standard_pair(n, "zero_mean");
  const auto& times = ws.times();
  const auto norms = parallel_map<SolutionNorms>(
      times.size(),
      [&](std::size_t i) { return solution_norms(times[i], sc.params, pair, sc.quadrature); },
      ws.threads());
  std::vector<double> v;
  std::vector<double> e;
  for (const auto& s : norms) {
    v.push_back(s.l2.value);
    e.push_back(s.l2.error);
  }
  const SlopeFit fit = envelope_slope_fit(make_series(times, v, e, "l2"), ws.period());
  const double limit = -0.25 * (n + 2) + 0.05;
  CheckRecord rec = upper("zero_mean_rate", fit.slope, limit,
                          "zero-mass data: slope of |u| <= " + fmt(limit), true);
  rec.details = {{"fit", to_json(fit)}, {"data", own ? "scenario" : "catalog zero_mean"}};
  return rec;
}

CheckRecord check_massless_rate(Workspace& ws) {
  const Scenario& sc = ws.scenario();
  const int n = sc.params.n;
  if (zeroth_moment(sc.pair.u1) == 0.0) {
    return vacuous("massless_rate", "P1 = 0: the massless growth statements need P1 != 0");
  }
  const NormSeries s = l2_series(ws);
  CheckRecord rec;
  if (n == 2) {
    std::vector<double> x;
    std::vector<double> y;
    for (std::size_t i = 0; i < s.times.size(); ++i) {
      x.push_back(std::log(s.times[i]));
      y.push_back(s.values[i] * s.values[i]);
    }
    const LinearFit lf = linear_fit(x, y);
    rec = lower("massless_rate", lf.r_squared, 0.99, "|u|^2 linear in log t with R^2 > 0.99");
    rec.details = {{"slope", lf.slope}, {"intercept", lf.intercept}, {"r_squared", lf.r_squared}};
    return rec;
  }
  const SlopeFit fit = envelope_slope_fit(s, std::nullopt);
  const double target = n == 1 ? 0.5 : -0.25 * (n - 2);
  rec = band("massless_rate", fit.slope, target, 0.05,
             "slope of |u| = " + fmt(target) + " +- 0.05");
  rec.details = {{"fit", to_json(fit)}};
  return rec;
}

// ------------------------------------------------------ oscillation integrals

CheckRecord check_oscillation_integral_limits(Workspace& ws) {
  const Scenario& sc = ws.scenario();
  const int n = sc.params.n;
  const double m = sc.params.m;
  const GeometryConstants g = geometry_constants(n, m, sc.quadrature);
  const PeriodAverages pa = period_averages(kReferenceTime, n, m, sc.quadrature);
  const double target0 = 0.5 * g.omega_n * g.L_n;
  const double target1 = 0.5 * g.omega_n * *g.K_n;
  const double e0 = std::abs(pa.scaled_I0 - target0) / target0;
  const double e1 = std::abs(pa.scaled_I1 - target1) / target1;
  CheckRecord rec = upper("oscillation_integral_limits", std::max(e0, e1), 0.05,
                          "period averages of t^{n/2}I0, t^{n/2}I1 at t = 1000 within 5% of "
                          "|omega_n|L_n/2 and |omega_n|K_n/2",
                          true);
  rec.details = {{"averaged_I0", pa.scaled_I0}, {"target_I0", target0},
                 {"averaged_I1", pa.scaled_I1}, {"target_I1", target1},
                 {"t", kReferenceTime}};
  return rec;
}

CheckRecord check_decomposition_identity(Workspace& ws) {
  const Scenario& sc = ws.scenario();
  const int n = sc.params.n;
  const double m = sc.params.m;
  std::vector<double> times{50.0};
  for (double t : geometric(sc.t_grid.t_min, sc.t_grid.t_max, sc.t_grid.points_per_decade)) {
    times.push_back(t);
  }
  const double w = unit_sphere_area(n);
  const auto resid = parallel_map<double>(
      times.size(),
      [&](std::size_t i) {
        const double t = times[i];
        const OscillationIntegrals o = oscillation_integrals(t, n, m, sc.quadrature);
        const double a = a_integral(t, n, m, sc.quadrature).value;
        const double c = c1_integral(t, n, m, sc.quadrature).value;
        return std::abs(o.scaled_I1.value * 2.0 / w - (a - c));
      },
      ws.threads());
  CheckRecord rec = upper("decomposition_identity", *std::max_element(resid.begin(), resid.end()),
                          1e-8, "|t^{n/2}I1 2/|omega_n| - (A - C1)| < 1e-08");
  rec.details = {{"samples", times.size()}};
  return rec;
}

CheckRecord check_positivity_floor(Workspace& ws) {
  const Scenario& sc = ws.scenario();
  const int n = sc.params.n;
  const double m = sc.params.m;
  const auto& times = ws.times();
  const auto ints = parallel_map<OscillationIntegrals>(
      times.size(),
      [&](std::size_t i) { return oscillation_integrals(times[i], n, m, sc.quadrature); },
      ws.threads());
  double min0 = kInf;
  double min1 = kInf;
  for (const auto& o : ints) {
    min0 = std::min(min0, o.scaled_I0.value);
    min1 = std::min(min1, o.scaled_I1.value);
  }
  const GeometryConstants g = geometry_constants(n, m, sc.quadrature);
  CheckRecord rec = lower("positivity_floor", std::min(min0, min1), 0.0,
                          "min over samples of t^{n/2}I0 and t^{n/2}I1 > 0");
  // The displayed lower constants K_n|omega_n|/8 and L_n|omega_n|/4 are
  // recorded as measurements.
  rec.details = {{"min_scaled_I0", min0},
                 {"min_scaled_I1", min1},
                 {"claimed_floor_I0", g.L_n * g.omega_n / 4.0},
                 {"claimed_floor_I1", *g.K_n * g.omega_n / 8.0},
                 {"ratio_to_claimed_I0", min0 / (g.L_n * g.omega_n / 4.0)},
                 {"ratio_to_claimed_I1", min1 / (*g.K_n * g.omega_n / 8.0)},
                 {"samples", times.size()}};
  return rec;
}

CheckRecord check_cross_term_average(Workspace& ws) {
  const Scenario& sc = ws.scenario();
  const int n = sc.params.n;
  const double m = sc.params.m;
  const GeometryConstants g = geometry_constants(n, m, sc.quadrature);
  const PeriodAverages pa = period_averages(kReferenceTime, n, m, sc.quadrature);
  const double scale = g.omega_n * g.L_n;
  CheckRecord rec = upper("cross_term_average", std::abs(pa.scaled_I2) / scale, 0.1,
                          "|period average of t^{n/2}I2| at t = 1000 < 10% of |omega_n|L_n");
  rec.details = {{"average_signed", pa.scaled_I2},
                 {"average_of_abs", pa.scaled_abs_I2},
                 {"average_of_abs_ratio", pa.scaled_abs_I2 / scale},
                 {"reference", scale}};
  return rec;
}

CheckRecord check_profile_norm_identity(Workspace& ws) {
  const Scenario& sc = ws.scenario();
  const int n = sc.params.n;
  const double m = sc.params.m;
  ProfileParams pp = profile_params(sc.pair, m);
  if (pp.P0 == 0.0 && pp.P1 == 0.0) pp = {1.0, 1.0, m};
  double worst = 0.0;
  for (double t : {1.0, 10.0, 100.0, 1000.0}) {
    const Estimate direct = profile_norm_squared(t, n, pp, sc.quadrature);
    const OscillationIntegrals o = oscillation_integrals(t, n, m, sc.quadrature);
    const double combo =
        pp.P1 * pp.P1 * o.I1.value + pp.P0 * pp.P0 * o.I0.value + pp.P1 * pp.P0 * o.I2.value;
    worst = std::max(worst, std::abs(direct.value - combo) / direct.value);
  }
  CheckRecord rec = upper("profile_norm_identity", worst, 1e-8,
                          "|profile|^2 = P1^2 I1 + P0^2 I0 + P1 P0 I2 to 1e-08 relative");
  rec.details = {{"P0", pp.P0}, {"P1", pp.P1}};
  return rec;
}

CheckRecord check_oscillation_amplitude_probe(Workspace& ws) {
  const Scenario& sc = ws.scenario();
  const int n = sc.params.n;
  const double m = sc.params.m;
  const AppendixProbe p = appendix_probe(appendix_probe_grid(m), n, m, sc.quadrature);
  CheckRecord rec;
  rec.name = "oscillation_amplitude_probe";
  rec.status = Status::measured;
  rec.measured_value = p.measured_amplitude;
  rec.expected = "measured amplitude of I(t) on [1000, 10000] vs stationary-phase prediction";
  rec.details = {{"measured_amplitude", p.measured_amplitude},
                 {"predicted_amplitude", p.predicted_amplitude},
                 {"majorant_limit", p.majorant_limit},
                 {"L_n", p.L_n},
                 {"bound_samples", p.bound_samples},
                 {"bound_violations", p.bound_violations},
                 {"samples", p.times.size()}};
  return rec;
}

using Runner = CheckRecord (*)(Workspace&);

struct Entry {
  CheckInfo info;
  Runner run;
};

CheckRecord run_dissipation(Workspace& ws) {
  return inequality_check(ws, "dissipation_bound", "min slack of beta F - R >= -1e-12",
                          [](const InequalitySlacks& s) { return s.dissipation; });
}
CheckRecord run_coercivity(Workspace& ws) {
  return inequality_check(ws, "energy_coercivity", "min slack of M F - rho E >= -1e-12",
                          [](const InequalitySlacks& s) { return s.coercivity; });
}
CheckRecord run_sandwich(Workspace& ws) {
  return inequality_check(ws, "energy_sandwich",
                          "min slack of (1-beta)E0 <= E <= (1+2beta)E0 >= -1e-12",
                          [](const InequalitySlacks& s) {
                            return std::min(s.lower_sandwich, s.upper_sandwich);
                          });
}

const std::vector<Entry>& entries() {
  using M = MassRequirement;
  static const std::vector<Entry> list = {
      {{"mode_ode_residual", "closed-form mode solution satisfies the mode ODE", M::any, false},
       check_mode_ode_residual},
      {{"mode_rk4_agreement", "closed form agrees with adaptive RK4", M::any, false},
       check_mode_rk4_agreement},
      {{"energy_identity", "dE0/dt = -|xi|^2|u_t|^2", M::any, false}, check_energy_identity},
      {{"dissipation_bound", "R <= beta F", M::any, false}, run_dissipation},
      {{"energy_coercivity", "rho E <= M F", M::any, false}, run_coercivity},
      {{"energy_sandwich", "(1-beta)E0 <= E <= (1+2beta)E0", M::any, false}, run_sandwich},
      {{"pointwise_decay", "E0(t) <= C exp(-alpha rho t) E0(0)", M::any, false},
       check_pointwise_decay},
      {{"energy_monotone", "total energy is non-increasing", M::any, false},
       check_energy_monotone},
      {{"data_remainder_bounds", "|A|, |B| <= const |xi| |u|_{1,1}", M::any, false},
       check_data_remainder_bounds},
      {{"parseval_t0", "frequency-space norms match closed forms at t = 0", M::any, false},
       check_parseval_t0},
      {{"quadrature_self_consistency", "norms stable under tolerance halving", M::any, false},
       check_quadrature_self_consistency},
      {{"calibration_integral", "Gaussian moment calibration integral is bounded", M::any,
        false},
       check_calibration_integral},
      {{"low_frequency_identity", "exact low-frequency reconstruction", M::massive, false},
       check_low_frequency_identity},
      {{"remainder_envelope", "tail bounded by the mean-value envelopes", M::massive, false},
       check_remainder_envelope},
      {{"decay_envelope", "|u_t|+|u|+|grad u| <= C(1+t)^{-n/4}", M::massive, true},
       check_decay_envelope},
      {{"l2_rate", "|u| decays like t^{-n/4}", M::massive, true}, check_l2_rate},
      {{"l2_lower_envelope", "t^{n/4}|u| stays away from zero", M::massive, false},
       check_l2_lower_envelope},
      {{"profile_error_rate", "squared profile error decays like t^{-(n+2)/2}", M::massive,
        true},
       check_profile_error_rate},
      {{"high_frequency_tail", "high-frequency part decays exponentially", M::massive, false},
       check_high_frequency_tail},
      {{"remainder_rates", "squared low-frequency remainder rates", M::massive, true},
       check_remainder_rates},
      {{"zero_mean_rate", "zero-mass data decay like t^{-(n+2)/4}", M::massive, true},
       check_zero_mean_rate},
      {{"oscillation_integral_limits", "period-averaged late-time constants", M::massive,
        false},
       check_oscillation_integral_limits},
      {{"decomposition_identity", "t^{n/2}I1 2/|omega_n| = A - C1", M::massive, false},
       check_decomposition_identity},
      {{"positivity_floor", "t^{n/2}I0, t^{n/2}I1 stay positive", M::massive, false},
       check_positivity_floor},
      {{"cross_term_average", "period-averaged cross term is small", M::massive, false},
       check_cross_term_average},
      {{"profile_norm_identity", "profile norm in terms of I0, I1, I2", M::massive, false},
       check_profile_norm_identity},
      {{"oscillation_amplitude_probe", "measured oscillation amplitude of I(t)", M::massive,
        false},
       check_oscillation_amplitude_probe},
      {{"massless_rate", "massless growth or decay rate", M::massless, true},
       check_massless_rate},
  };
  return list;
}

}  // namespace

std::string_view to_string(Status s) {
  switch (s) {
    case Status::pass:
      return "pass";
    case Status::fail:
      return "fail";
    case Status::measured:
      return "measured";
  }
  return "fail";
}

const std::vector<CheckInfo>& check_catalog() {
  static const std::vector<CheckInfo> infos = [] {
    std::vector<CheckInfo> out;
    for (const auto& e : entries()) out.push_back(e.info);
    return out;
  }();
  return infos;
}

const CheckInfo* find_check(std::string_view name) {
  for (const auto& info : check_catalog()) {
    if (info.name == name) return &info;
  }
  return nullptr;
}

std::vector<std::string> default_checks(const ModelParams& params) {
  std::vector<std::string> out;
  for (const auto& info : check_catalog()) {
    if (info.mass == MassRequirement::massive && !(params.m > 0.0)) continue;
    if (info.mass == MassRequirement::massless && params.m != 0.0) continue;
    out.emplace_back(info.name);
  }
  return out;
}

Workspace::Workspace(const Scenario& sc, int threads, std::uint64_t seed)
    : sc_(sc), threads_(std::max(1, threads)), seed_(seed) {}

std::optional<double> Workspace::period() const {
  if (sc_.params.m > 0.0) return std::numbers::pi / sc_.params.m;
  return std::nullopt;
}

const std::vector<double>& Workspace::times() {
  if (!times_) {
    const TimeGrid& g = sc_.t_grid;
    times_ = bucketed_time_grid(g.t_min, g.t_max, g.points_per_decade, period(),
                                period() ? g.samples_per_period : 1);
  }
  return *times_;
}

void Workspace::compute_solution_series(
    const std::function<void(std::size_t, const std::vector<SolutionNorms>&)>& sink) {
  if (solution_) {
    sink(0, *solution_);
    return;
  }
  const auto& t = times();
  std::vector<SolutionNorms> all;
  const std::size_t chunk = std::max<std::size_t>(16, 4 * static_cast<std::size_t>(threads_));
  for (std::size_t first = 0; first < t.size(); first += chunk) {
    const std::size_t count = std::min(chunk, t.size() - first);
    const auto part = parallel_map<SolutionNorms>(
        count,
        [&](std::size_t i) {
          return solution_norms(t[first + i], sc_.params, sc_.pair, sc_.quadrature);
        },
        threads_);
    sink(first, part);
    all.insert(all.end(), part.begin(), part.end());
  }
  solution_ = std::move(all);
}

const std::vector<SolutionNorms>& Workspace::solution_series() {
  if (!solution_) compute_solution_series([](std::size_t, const std::vector<SolutionNorms>&) {});
  return *solution_;
}

const std::vector<ProfileError>& Workspace::profile_series() {
  if (!profile_) {
    if (!(sc_.params.m > 0.0)) throw ConfigError("profile error requires m > 0");
    const auto& t = times();
    profile_ = parallel_map<ProfileError>(
        t.size(),
        [&](std::size_t i) { return profile_error_norm(t[i], sc_.params, sc_.pair, sc_.quadrature); },
        threads_);
  }
  return *profile_;
}

CheckRecord run_check(std::string_view name, Workspace& ws) {
  for (const auto& e : entries()) {
    if (e.info.name == name) return e.run(ws);
  }
  throw ConfigError("unknown check '" + std::string(name) + "'");
}

std::vector<double> appendix_probe_grid(double m) {
  if (!(m > 0.0)) throw ConfigError("the oscillation probe requires m > 0");
  return bucketed_time_grid(kReferenceTime, 1e4, 10, std::numbers::pi / m, 32);
}

nlohmann::json to_json(const CheckRecord& r) {
  json j = {{"name", r.name},
            {"status", std::string(to_string(r.status))},
            {"measured_value", r.measured_value},
            {"expected", r.expected},
            {"tolerance", r.tolerance},
            {"details", r.details}};
  j["margin"] = r.margin ? json(*r.margin) : json(nullptr);
  return j;
}

nlohmann::json to_json(const SlopeFit& f) {
  return {{"slope", f.slope},         {"intercept", f.intercept}, {"rms_residual", f.rms_residual},
          {"t_min", f.t_min},         {"t_max", f.t_max},         {"method", std::string(to_string(f.method))},
          {"points", f.points}};
}

}  // namespace dkg::runner
