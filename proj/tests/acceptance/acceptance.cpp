// Acceptance suite: one PASS/FAIL line per criterion, tolerances pinned below.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "dkg/asymptotics.hpp"
#include "dkg/energy_method.hpp"
#include "dkg/mode_solver.hpp"
#include "dkg/parallel.hpp"
#include "dkg/profile_analysis.hpp"
#include "dkg/spectral_norms.hpp"

using namespace dkg;

namespace {

// Criterion 1
constexpr int kModeSamples = 1000;
constexpr double kOdeResidualTol = 1e-6;
constexpr double kRk4Tol = 1e-8;
// Criterion 2
constexpr double kReconstructionTol = 1e-10;
// Criterion 3
constexpr double kEnergyIdentityTol = 1e-6;
constexpr double kInequalitySlack = -1e-12;
constexpr double kBeta = 0.1;
// Criteria 4, 10
constexpr double kSlopeTol = 0.05;
// Criteria 5, 6
constexpr double kRateSlack = 0.1;
constexpr double kEnvelopeRel = 1e-9;
constexpr double kEnvelopeFloor = 1e-13;
// Criterion 7
constexpr double kMasslessSlopeTol = 0.05;
constexpr double kMasslessR2 = 0.99;
// Criterion 8
constexpr double kAverageRel = 0.05;
constexpr double kDecompositionTol = 1e-8;
constexpr double kCrossTermFraction = 0.1;
constexpr double kReferenceTime = 1e3;
// Criterion 9
constexpr double kPredictedAmplitude = 0.74522504471454512;
constexpr double kAmplitudeTol = 1e-6;
constexpr double kMajorantRel = 0.01;

// Scenario grid shared by the slope criteria.
constexpr double kTMin = 1e2;
constexpr double kTMax = 1e4;
constexpr int kPerDecade = 10;
constexpr int kPerPeriod = 16;

const double kPi = std::numbers::pi;
const QuadratureSpec kSpec;
const int kThreads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
};

std::vector<double> massive_grid(double m) {
  return bucketed_time_grid(kTMin, kTMax, kPerDecade, kPi / m, kPerPeriod);
}

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> out;
  for (int i = 0; i < count; ++i) out.push_back(lo + (hi - lo) * i / (count - 1));
  return out;
}

NormSeries series(const std::vector<double>& t, const std::function<Estimate(double)>& f,
                  const char* label) {
  const auto v = parallel_map<Estimate>(t.size(), [&](std::size_t i) { return f(t[i]); }, kThreads);
  NormSeries s;
  s.times = t;
  s.label = label;
  for (const auto& e : v) {
    s.values.push_back(e.value);
    s.error_estimates.push_back(e.error);
  }
  return s;
}

NormSeries l2_series(int n, double m, const DatumPair& pair, const std::vector<double>& t) {
  const ModelParams p = validate_params({n, m, kBeta, std::nullopt});
  return series(t, [&](double x) { return solution_norms(x, p, pair, kSpec).l2; }, "l2");
}

// ---------------------------------------------------------------------------

Outcome criterion1() {
  Outcome o;
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double masses[] = {0.0, 0.5, 1.0, 2.0};
  double worst_res = 0.0;
  double worst_rk4 = 0.0;
  int dims[3] = {0, 0, 0};
  for (int i = 0; i < kModeSamples; ++i) {
    // The dimension enters a mode only through |ξ|; it is drawn for coverage.
    const int n = 1 + static_cast<int>(3 * u(rng)) % 3;
    dims[n - 1] += 1;
    const double m = masses[static_cast<int>(4 * u(rng)) % 4];
    const double xi = 10.0 * u(rng);
    const double t = std::exp(std::log(1e-4) + u(rng) * std::log(50.0 / 1e-4));
    const cplx a(u(rng) - 0.5, u(rng) - 0.5);
    const cplx b(u(rng) - 0.5, u(rng) - 0.5);
    const double h = 5e-3 / (1.0 + std::abs(char_roots(xi, m).sigma2));
    worst_res = std::max(worst_res, ode_residual_oracle(xi, m, a, b, t, h));
    worst_rk4 = std::max(worst_rk4, relative_state_distance(evolve_mode(t, xi, m, a, b),
                                                            integrate_mode_rk4(t, xi, m, a, b), m));
  }
  o.pass = worst_res < kOdeResidualTol && worst_rk4 < kRk4Tol;
  o.detail << "max ODE residual " << worst_res << " (< " << kOdeResidualTol << "), max RK4 distance "
           << worst_rk4 << " (< " << kRk4Tol << "), samples per n " << dims[0] << "/" << dims[1] << "/"
           << dims[2];
  return o;
}

Outcome criterion2() {
  Outcome o;
  double worst = 0.0;
  for (const char* name : {"gaussian", "shifted", "zero_mean"}) {
    const DatumPair pair = catalog::standard_pair(1, name);
    const ModelParams p = validate_params({1, 1.0, kBeta, std::nullopt});
    for (int i = 1; i <= 40; ++i) {
      for (double s : {p.delta0 * i / 40, -p.delta0 * i / 40}) {
        const cplx h0 = datum_hat(pair.u0, s);
        const cplx h1 = datum_hat(pair.u1, s);
        const double scale = std::abs(h0) + std::abs(h1);
        for (double t : linspace(0.0, 100.0, 101)) {
          const cplx e = evolve_mode(t, std::abs(s), 1.0, h0, h1).u_hat;
          worst = std::max(worst, std::abs(reconstruct_low_frequency(t, s, pair, p) - e) / scale);
        }
      }
    }
  }
  o.pass = worst < kReconstructionTol;
  o.detail << "max relative mismatch " << worst << " (< " << kReconstructionTol
           << ") over gaussian, shifted, zero_mean";
  return o;
}

Outcome criterion3() {
  Outcome o;
  const auto xi = linspace(0.0, 10.0, 201);
  const auto t = linspace(0.0, 50.0, 201);
  double worst_identity = 0.0;
  double worst_slack = 1e300;
  std::size_t violations = 0;
  double min_log_slack = 1e300;
  for (int n = 1; n <= 3; ++n) {
    for (double m : {0.0, 0.5, 1.0, 2.0}) {
      const ModelParams p = validate_params({n, m, kBeta, std::nullopt});
      for (const auto& np : catalog::standard_pairs(n)) {
        const DatumPair& pair = np.pair;
        if (pair.u0.is_zero() && pair.u1.is_zero()) continue;
        for (double x : xi) {
          for (double tt : linspace(0.0, 50.0, 26)) {
            worst_identity = std::max(
                worst_identity, energy_identity_residual(x, m, pair, tt, 1e-3 / (1.0 + x * x)));
            const ModeState st = evolve_mode(tt, x, m, datum_hat(pair.u0, x), datum_hat(pair.u1, x));
            const InequalitySlacks k = inequality_slacks(st, m, kBeta);
            worst_slack = std::min({worst_slack, k.dissipation, k.coercivity, k.lower_sandwich,
                                    k.upper_sandwich});
          }
        }
        const DecayMarginReport r = check_pointwise_decay(p, pair, t, xi);
        violations += r.violations;
        min_log_slack = std::min(min_log_slack, r.min_log_slack);
      }
    }
  }
  const DecayCertificate c = certificate(kBeta);
  o.pass = worst_identity < kEnergyIdentityTol && worst_slack >= kInequalitySlack && violations == 0;
  o.detail << "identity residual " << worst_identity << " (< " << kEnergyIdentityTol
           << "), min inequality slack " << worst_slack << ", decay violations " << violations
           << " (C = " << c.C << ", alpha = " << c.alpha << ", min log slack " << min_log_slack << ")";
  return o;
}

Outcome criterion4() {
  Outcome o;
  const DatumPair pairs[] = {catalog::standard_pair(1, "gaussian"),
                             catalog::standard_pair(2, "gaussian"),
                             catalog::standard_pair(3, "gaussian")};
  for (int n = 1; n <= 3; ++n) {
    const NormSeries s = l2_series(n, 1.0, pairs[n - 1], massive_grid(1.0));
    const SlopeFit f = envelope_slope_fit(s, kPi);
    const OptimalityReport r =
        two_sided_check(s, n, zeroth_moment(pairs[n - 1].u0), zeroth_moment(pairs[n - 1].u1), 1.0);
    const bool ok = std::abs(f.slope + 0.25 * n) <= kSlopeTol && r.liminf_normalized > 0.0;
    o.pass = o.pass && ok;
    o.detail << "n=" << n << " slope " << f.slope << " (target " << -0.25 * n << " +- " << kSlopeTol
             << "), liminf " << r.liminf_normalized << "; ";
  }
  return o;
}

Outcome criterion5() {
  Outcome o;
  for (int n = 1; n <= 2; ++n) {
    const DatumPair pair = catalog::standard_pair(n, "gaussian");
    const ModelParams p = validate_params({n, 1.0, kBeta, std::nullopt});
    const NormSeries s = series(
        massive_grid(1.0), [&](double t) { return profile_error_norm(t, p, pair, kSpec).total; },
        "profile_err2");
    const SlopeFit f = envelope_slope_fit(s, kPi);
    const double limit = -0.5 * (n + 2) + kRateSlack;

    const double d2 = p.delta0 * p.delta0;
    const auto tw = linspace(0.5 / d2, 10.0 / d2, 39);
    std::vector<double> lh;
    std::vector<double> lm;
    for (double t : tw) {
      lh.push_back(std::log(profile_error_norm(t, p, pair, kSpec).high.value));
      lm.push_back(std::log(high_frequency_mass(t, p, pair, kSpec).value));
    }
    const double omega = -linear_fit(tw, lh).slope;
    const double kappa = -linear_fit(tw, lm).slope;
    const double effective = omega * tw.back();
    const bool ok = f.slope <= limit && omega > 0.0 && effective > 0.5 * (n + 4);
    o.pass = o.pass && ok;
    o.detail << "n=" << n << " slope " << f.slope << " (<= " << limit << "), omega " << omega
             << ", kappa " << kappa << ", effective power " << effective << "; ";
  }
  return o;
}

Outcome criterion6() {
  Outcome o;
  for (int n = 1; n <= 2; ++n) {
    const DatumPair pair = catalog::standard_pair(n, "gaussian");
    const ModelParams p = validate_params({n, 1.0, kBeta, std::nullopt});
    const auto grid = massive_grid(1.0);
    const auto r = parallel_map<RemainderNorms>(
        grid.size(), [&](std::size_t i) { return remainder_norms(grid[i], p, pair, kSpec); }, kThreads);
    const double bounds[3] = {-0.5 * (n + 4), -0.5 * (n + 2), -0.5 * (n + 2)};
    o.detail << "n=" << n;
    for (int j = 0; j < 3; ++j) {
      NormSeries s;
      s.times = grid;
      for (const auto& x : r) {
        const Estimate& e = j == 0 ? x.K1 : (j == 1 ? x.K2 : x.K3);
        s.values.push_back(e.value);
        s.error_estimates.push_back(e.error);
      }
      const SlopeFit f = envelope_slope_fit(s, kPi);
      o.pass = o.pass && f.slope <= bounds[j] + kRateSlack;
      o.detail << " K" << j + 1 << " " << f.slope << " (<= " << bounds[j] + kRateSlack << ")";
    }
    o.detail << "; ";
  }
  const DatumPair pair = catalog::standard_pair(1, "gaussian");
  const ModelParams p = validate_params({1, 1.0, kBeta, std::nullopt});
  const ProfileParams pp = profile_params(pair, 1.0);
  const double gross = moments(pair.u0).l1 + moments(pair.u1).l1;
  double worst = 0.0;
  for (int i = 1; i <= 50; ++i) {
    for (double s : {p.delta0 * i / 50, -p.delta0 * i / 50}) {
      for (double t : bucketed_time_grid(1e-2, kTMax, 10, std::nullopt, 1)) {
        const auto e = k4567_bound_envelope(t, std::abs(s), pp, p.delta0);
        const double bound = (e[0] + e[1] + e[2] + e[3]) * (1 + kEnvelopeRel) + kEnvelopeFloor * gross;
        worst = std::max(worst, std::abs(tail_remainder(t, s, pair, p)) / bound);
      }
    }
  }
  o.pass = o.pass && worst <= 1.0;
  o.detail << "max |tail|/envelope " << worst;
  return o;
}

Outcome criterion7() {
  Outcome o;
  const auto grid = bucketed_time_grid(kTMin, kTMax, kPerDecade, std::nullopt, 1);
  for (int n = 1; n <= 3; ++n) {
    const NormSeries s = l2_series(n, 0.0, catalog::standard_pair(n, "velocity_only"), grid);
    if (n == 2) {
      std::vector<double> x;
      std::vector<double> y;
      for (std::size_t i = 0; i < grid.size(); ++i) {
        x.push_back(std::log(grid[i]));
        y.push_back(s.values[i] * s.values[i]);
      }
      const LinearFit lf = linear_fit(x, y);
      o.pass = o.pass && lf.r_squared > kMasslessR2;
      o.detail << "n=2 R^2 of |u|^2 vs log t " << lf.r_squared << " (> " << kMasslessR2 << "); ";
      continue;
    }
    const double target = n == 1 ? 0.5 : -0.25;
    const SlopeFit f = envelope_slope_fit(s, std::nullopt);
    o.pass = o.pass && std::abs(f.slope - target) <= kMasslessSlopeTol;
    o.detail << "n=" << n << " slope " << f.slope << " (target " << target << " +- "
             << kMasslessSlopeTol << "); ";
  }
  return o;
}

Outcome criterion8() {
  Outcome o;
  const GeometryConstants g = geometry_constants(1, 1.0);
  const PeriodAverages a = period_averages(kReferenceTime, 1, 1.0);
  const double t0 = 0.5 * g.omega_n * g.L_n;
  const double t1 = 0.5 * g.omega_n * *g.K_n;
  const double e0 = std::abs(a.scaled_I0 - t0) / t0;
  const double e1 = std::abs(a.scaled_I1 - t1) / t1;

  const auto grid = massive_grid(1.0);
  const auto ints = parallel_map<OscillationIntegrals>(
      grid.size(), [&](std::size_t i) { return oscillation_integrals(grid[i], 1, 1.0); }, kThreads);
  double min0 = 1e300;
  double min1 = 1e300;
  double worst_id = 0.0;
  for (std::size_t i = 0; i < grid.size(); i += 1) {
    min0 = std::min(min0, ints[i].scaled_I0.value);
    min1 = std::min(min1, ints[i].scaled_I1.value);
  }
  for (std::size_t i = 0; i < grid.size(); i += 7) {
    const double rhs = a_integral(grid[i], 1, 1.0).value - c1_integral(grid[i], 1, 1.0).value;
    worst_id = std::max(worst_id, std::abs(ints[i].scaled_I1.value * 2.0 / g.omega_n - rhs));
  }
  const double cross = std::abs(a.scaled_I2) / (g.omega_n * g.L_n);
  o.pass = e0 <= kAverageRel && e1 <= kAverageRel && min0 > 0.0 && min1 > 0.0 &&
           worst_id < kDecompositionTol && cross < kCrossTermFraction;
  o.detail << "avg t^(1/2)I0 " << a.scaled_I0 << " (target " << t0 << "), avg t^(1/2)I1 "
           << a.scaled_I1 << " (target " << t1 << "), floors " << min0 << ", " << min1
           << ", identity " << worst_id << ", |avg t^(1/2)I2|/(w L) " << cross
           << ", avg |t^(1/2)I2|/(w L) " << a.scaled_abs_I2 / (g.omega_n * g.L_n);
  return o;
}

Outcome criterion9() {
  Outcome o;
  const GeometryConstants g = geometry_constants(1, 1.0);
  const AppendixProbe p = appendix_probe(bucketed_time_grid(1e3, 1e4, 10, kPi, 32), 1, 1.0);
  o.pass = std::abs(p.predicted_amplitude - kPredictedAmplitude) < kAmplitudeTol &&
           std::abs(p.majorant_limit - g.L_n) / g.L_n < kMajorantRel && p.bound_violations == 0 &&
           p.bound_samples > 0;
  o.detail << "measured amplitude " << p.measured_amplitude << ", predicted "
           << p.predicted_amplitude << ", majorant " << p.majorant_limit << " (L1 " << g.L_n
           << "), pointwise bound violations " << p.bound_violations << " of " << p.bound_samples;
  return o;
}

Outcome criterion10() {
  Outcome o;
  for (int n = 1; n <= 3; ++n) {
    const NormSeries s = l2_series(n, 1.0, catalog::standard_pair(n, "zero_mean"), massive_grid(1.0));
    const SlopeFit f = envelope_slope_fit(s, kPi);
    const double limit = -0.25 * (n + 2) + kSlopeTol;
    o.pass = o.pass && f.slope <= limit;
    o.detail << "n=" << n << " slope " << f.slope << " (<= " << limit << "); ";
  }
  return o;
}

}  // namespace

int main() {
  const std::pair<const char*, Outcome (*)()> criteria[] = {
      {"mode solver oracle", criterion1},
      {"low-frequency identity", criterion2},
      {"energy method", criterion3},
      {"L2 decay rate and lower envelope", criterion4},
      {"profile error rate and high-frequency tail", criterion5},
      {"remainder rates and tail envelope", criterion6},
      {"massless contrast", criterion7},
      {"late-time oscillation constants", criterion8},
      {"oscillation amplitude probe", criterion9},
      {"zero-mean data rate", criterion10},
  };
  int failures = 0;
  int index = 1;
  for (const auto& [name, run] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "error: " << e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::string detail = o.detail.str();
    while (!detail.empty() && (detail.back() == ' ' || detail.back() == ';')) detail.pop_back();
    std::printf("%s criterion %d (%s): %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", index, name,
                detail.c_str(), secs);
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
    ++index;
  }
  return failures == 0 ? 0 : 1;
}
