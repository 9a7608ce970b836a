#include "dkg/profile_analysis.hpp"

#include <cmath>
#include <numbers>

#include "dkg/errors.hpp"
#include "dkg/mode_solver.hpp"

namespace dkg {

namespace {

void require_low_frequency(double s, const ModelParams& params) {
  if (!(params.m > 0.0)) throw ConfigError("low-frequency analysis requires m > 0");
  if (std::abs(s) > params.delta0) {
    throw ConfigError("frequency lies outside the low-frequency region |xi| <= delta0");
  }
}

// The factored kernels e^{-tq/2} sin(t√D/2)/√D and e^{-tq/2} cos(t√D/2).
struct SqrtDKernels {
  double sin_over_root = 0.0;
  double cos_part = 0.0;
};

SqrtDKernels sqrt_d_kernels(double t, double xi_mag, double m) {
  const double q = xi_mag * xi_mag;
  const double root = std::sqrt(discriminant(xi_mag, m));
  const double e = std::exp(-0.5 * t * q);
  return {e * std::sin(0.5 * t * root) / root, e * std::cos(0.5 * t * root)};
}

}  // namespace

ProfileParams profile_params(const DatumPair& pair, double m) {
  if (!(m > 0.0)) throw ConfigError("profile requires m > 0");
  return {zeroth_moment(pair.u0), zeroth_moment(pair.u1), m};
}

double profile_hat(double t, double xi_mag, const ProfileParams& pp) {
  const double q = xi_mag * xi_mag;
  const double w = std::sqrt(q + pp.m * pp.m);
  const double e = std::exp(-0.5 * t * q);
  return pp.P1 * e * std::sin(t * w) / w + pp.P0 * e * std::cos(t * w);
}

LowFrequencyTerms k123_exact(double t, double s, const DatumPair& pair,
                             const ModelParams& params) {
  require_low_frequency(s, params);
  const double xi = std::abs(s);
  const SqrtDKernels k = sqrt_d_kernels(t, xi, params.m);
  const double q = xi * xi;
  const DataSplit d0 = ab_decomposition(pair.u0, s);
  const DataSplit d1 = ab_decomposition(pair.u1, s);
  const double p0 = zeroth_moment(pair.u0);
  LowFrequencyTerms out;
  out.K1 = p0 * q * k.sin_over_root;
  out.K2 = cplx(d1.A, -d1.B) * (2.0 * k.sin_over_root);
  out.K3 = cplx(d0.A, -d0.B) * (q * k.sin_over_root + k.cos_part);
  return out;
}

LowFrequencyTerms k123_exact(double t, std::span<const double> xi, const DatumPair& pair,
                             const ModelParams& params) {
  if (static_cast<int>(xi.size()) != pair.n()) throw ConfigError("frequency dimension mismatch");
  if (pair.n() == 1) return k123_exact(t, xi[0], pair, params);
  double s2 = 0.0;
  for (double v : xi) s2 += v * v;
  return k123_exact(t, std::sqrt(s2), pair, params);
}

cplx reconstruct_low_frequency(double t, double s, const DatumPair& pair,
                               const ModelParams& params) {
  require_low_frequency(s, params);
  if (s == 0.0) throw ConfigError("the low-frequency identity excludes xi = 0");
  const SqrtDKernels k = sqrt_d_kernels(t, std::abs(s), params.m);
  const LowFrequencyTerms r = k123_exact(t, s, pair, params);
  const double p0 = zeroth_moment(pair.u0);
  const double p1 = zeroth_moment(pair.u1);
  return 2.0 * p1 * k.sin_over_root + p0 * k.cos_part + r.K1 + r.K2 + r.K3;
}

cplx tail_remainder(double t, double s, const DatumPair& pair, const ModelParams& params) {
  require_low_frequency(s, params);
  const double xi = std::abs(s);
  const ModeState st =
      evolve_mode(t, xi, params.m, datum_hat(pair.u0, s), datum_hat(pair.u1, s));
  const LowFrequencyTerms r = k123_exact(t, s, pair, params);
  const ProfileParams pp = profile_params(pair, params.m);
  return st.u_hat - profile_hat(t, xi, pp) - r.K1 - r.K2 - r.K3;
}

RootGap root_gap(double xi_mag, double m) {
  const double q = xi_mag * xi_mag;
  const double root_d = std::sqrt(discriminant(xi_mag, m));
  const double root_e = std::sqrt(q + m * m);
  // √D - 2√E = -|ξ|⁴/(√D + 2√E), evaluated without cancellation.
  return {q * q / (root_d + 2.0 * root_e), q * q / m};
}

std::array<double, 4> k4567_bound_envelope(double t, double xi_mag, const ProfileParams& pp,
                                           double delta0) {
  const double m = pp.m;
  if (!(m > 0.0)) throw ConfigError("remainder envelopes require m > 0");
  const double margin = 4.0 * m * m - std::pow(delta0, 4);
  if (!(margin > 0.0)) throw ConfigError("remainder envelopes require 4m^2 > delta0^4");
  if (xi_mag < 0.0 || xi_mag > delta0) {
    throw ConfigError("remainder envelopes require 0 <= |xi| <= delta0");
  }
  const double q = xi_mag * xi_mag;
  const double q2 = q * q;
  const double e = std::exp(-0.5 * t * q);
  const double inv_margin = std::pow(margin, -1.5);
  const double p0 = std::abs(pp.P0);
  const double p1 = std::abs(pp.P1);
  return {2.0 * p1 * q2 * e * inv_margin,
          p1 * t * e * q2 / (m * m),
          p1 * t * q2 * e * (q2 / m) * inv_margin,
          0.5 * p0 * t * e * q2 / m};
}

RemainderBreakdown remainder_breakdown(double t, double s, const DatumPair& pair,
                                       const ModelParams& params) {
  RemainderBreakdown out;
  out.k123 = k123_exact(t, s, pair, params);
  out.tail = tail_remainder(t, s, pair, params);
  out.envelope = k4567_bound_envelope(t, std::abs(s), profile_params(pair, params.m), params.delta0);
  return out;
}

FourierRemainderConstants fourier_remainder_constants() {
  // (1 - cos θ)/θ is unimodal on (0, 2π] and below 1/π beyond it.
  auto f = [](double th) { return (1.0 - std::cos(th)) / th; };
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 0.5;
  double hi = std::numbers::pi;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  while (hi - lo > 1e-12) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    }
  }
  return {f(0.5 * (lo + hi)), 1.0};
}

}  // namespace dkg
