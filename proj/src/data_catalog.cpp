#include "dkg/data_catalog.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "dkg/errors.hpp"
#include "dkg/quadrature.hpp"

namespace dkg {

namespace {

double gaussian_mass(int n, const GaussianTerm& g) {
  return g.c * std::pow(std::numbers::pi / g.a, 0.5 * n);
}

double squared_norm(std::span<const double> xi) {
  double s = 0.0;
  for (double v : xi) s += v * v;
  return s;
}

}  // namespace

ModelParams validate_params(const RawModelParams& raw) {
  if (raw.n < 1) throw ConfigError("n: dimension must be >= 1");
  if (!std::isfinite(raw.m) || raw.m < 0.0) throw ConfigError("m: mass must be >= 0");
  if (!(raw.beta > 0.0 && raw.beta < 1.0)) throw ConfigError("beta: must lie in (0, 1)");

  ModelParams p{raw.n, raw.m, raw.beta, 0.5};
  if (raw.delta0) {
    p.delta0 = *raw.delta0;
  } else if (raw.m > 0.0) {
    p.delta0 = std::min(1.0, std::sqrt(2.0 * raw.m)) / 2.0;
  }
  if (!(p.delta0 > 0.0) || !std::isfinite(p.delta0)) {
    throw ConfigError("delta0: cutoff must be positive");
  }
  if (p.m > 0.0) {
    if (std::pow(p.delta0, 4) >= 4.0 * p.m * p.m) {
      std::ostringstream msg;
      msg << "delta0: delta0^4 = " << std::pow(p.delta0, 4) << " must be below 4m^2 = "
          << 4.0 * p.m * p.m;
      throw ConfigError(msg.str());
    }
    if (p.delta0 > 1.0) throw ConfigError("delta0: cutoff must not exceed 1");
  }
  return p;
}

Datum::Datum(int n, std::vector<GaussianTerm> terms) : n_(n), terms_(std::move(terms)) {
  if (n_ < 1) throw ConfigError("datum dimension must be >= 1");
  for (const auto& t : terms_) {
    if (!(t.a > 0.0) || !std::isfinite(t.a)) throw ConfigError("datum term width a must be > 0");
    if (!std::isfinite(t.c) || !std::isfinite(t.x0)) {
      throw ConfigError("datum term fields must be finite");
    }
    if (n_ >= 2 && t.x0 != 0.0) {
      throw ConfigError("datum term x0 must be 0 in dimension >= 2");
    }
  }
}

bool Datum::centered() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.x0 == 0.0; });
}

double Datum::min_exponent() const {
  double a = 1.0;
  for (std::size_t i = 0; i < terms_.size(); ++i) a = i == 0 ? terms_[i].a : std::min(a, terms_[i].a);
  return a;
}

double Datum::max_exponent() const {
  double a = 1.0;
  for (std::size_t i = 0; i < terms_.size(); ++i) a = i == 0 ? terms_[i].a : std::max(a, terms_[i].a);
  return a;
}

double Datum::value(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != n_) throw ConfigError("point dimension mismatch");
  const double rest = squared_norm(x.subspan(1));
  double v = 0.0;
  for (const auto& t : terms_) {
    const double d = x[0] - t.x0;
    v += t.c * std::exp(-t.a * (d * d + rest));
  }
  return v;
}

double Datum::value_1d(double x) const {
  double v = 0.0;
  for (const auto& t : terms_) v += t.c * std::exp(-t.a * (x - t.x0) * (x - t.x0));
  return v;
}

DatumPair::DatumPair(Datum position, Datum velocity)
    : u0(std::move(position)), u1(std::move(velocity)) {
  if (u0.n() != u1.n()) throw ConfigError("u0 and u1 must share the dimension");
}

cplx datum_hat(const Datum& d, std::span<const double> xi) {
  if (static_cast<int>(xi.size()) != d.n()) throw ConfigError("frequency dimension mismatch");
  const double s2 = squared_norm(xi);
  cplx v{0.0, 0.0};
  for (const auto& t : d.terms()) {
    const double amp = gaussian_mass(d.n(), t) * std::exp(-s2 / (4.0 * t.a));
    v += amp * std::polar(1.0, -xi[0] * t.x0);
  }
  return v;
}

cplx datum_hat(const Datum& d, double s) {
  cplx v{0.0, 0.0};
  for (const auto& t : d.terms()) {
    const double amp = gaussian_mass(d.n(), t) * std::exp(-s * s / (4.0 * t.a));
    v += amp * std::polar(1.0, -s * t.x0);
  }
  return v;
}

double zeroth_moment(const Datum& d) {
  double p = 0.0;
  double gross = 0.0;
  for (const auto& t : d.terms()) {
    p += gaussian_mass(d.n(), t);
    gross += std::abs(gaussian_mass(d.n(), t));
  }
  // Cancellation to rounding level means the mass vanishes.
  if (std::abs(p) <= 64.0 * std::numeric_limits<double>::epsilon() * gross) return 0.0;
  return p;
}

DataSplit ab_decomposition(const Datum& d, double s) {
  DataSplit out;
  for (const auto& t : d.terms()) {
    const double mass = gaussian_mass(d.n(), t);
    const double decay = -s * s / (4.0 * t.a);
    const double phase = s * t.x0;
    const double half_sin = std::sin(0.5 * phase);
    // e^{decay}cos(phase) - 1 without cancellation near s = 0.
    out.A += mass * (std::expm1(decay) * std::cos(phase) - 2.0 * half_sin * half_sin);
    out.B += mass * std::exp(decay) * std::sin(phase);
  }
  return out;
}

DataSplit ab_decomposition(const Datum& d, std::span<const double> xi) {
  if (static_cast<int>(xi.size()) != d.n()) throw ConfigError("frequency dimension mismatch");
  if (d.n() == 1) return ab_decomposition(d, xi[0]);
  return ab_decomposition(d, std::sqrt(squared_norm(xi)));
}

double l2_norm_closed_form(const Datum& d) {
  double sum = 0.0;
  for (const auto& p : d.terms()) {
    for (const auto& q : d.terms()) {
      const double a = p.a + q.a;
      const double dx = p.x0 - q.x0;
      sum += p.c * q.c * std::pow(std::numbers::pi / a, 0.5 * d.n()) *
             std::exp(-p.a * q.a * dx * dx / a);
    }
  }
  return std::sqrt(std::max(0.0, sum));
}

DatumMoments moments(const Datum& d, double tol) {
  if (!(tol > 0.0)) throw ConfigError("moments: tol must be positive");
  DatumMoments out;
  out.P = zeroth_moment(d);
  if (d.is_zero()) return out;

  const int n = d.n();
  double reach = 0.0;
  for (const auto& t : d.terms()) reach = std::max(reach, std::abs(t.x0));
  const double radius = reach + std::sqrt(45.0 / d.min_exponent());

  auto gradient = [&](double x) {
    double g = 0.0;
    for (const auto& t : d.terms()) {
      g += -2.0 * t.a * (x - t.x0) * t.c * std::exp(-t.a * (x - t.x0) * (x - t.x0));
    }
    return g;
  };

  QuadratureSpec spec;
  spec.rel_tol = 1e-13;
  spec.abs_tol = tol / 4.0;
  spec.max_panels = 5000;
  IntegrandHints hints;
  hints.length_scale = 1.0 / std::sqrt(d.min_exponent());

  // Integrates g over R (n = 1) or radially over R^n (centred data).
  auto physical = [&](const std::function<double(double)>& g) {
    if (n == 1) {
      IntegrandHints h = hints;
      h.length_scale = 0.0;
      h.breakpoints.push_back(0.0);
      for (const auto& t : d.terms()) h.breakpoints.push_back(t.x0);
      return integrate(g, -radius, radius, spec, h).value;
    }
    QuadratureSpec radial = spec;
    radial.truncation_radius = radius;
    return radial_integral(g, n, radial, hints).value;
  };

  const bool same_sign =
      std::all_of(d.terms().begin(), d.terms().end(), [](const auto& t) { return t.c >= 0.0; }) ||
      std::all_of(d.terms().begin(), d.terms().end(), [](const auto& t) { return t.c <= 0.0; });
  if (same_sign) {
    for (const auto& t : d.terms()) out.l1 += std::abs(gaussian_mass(n, t));
  } else {
    out.l1 = physical([&](double x) { return std::abs(d.value_1d(x)); });
  }
  out.l11 = physical([&](double x) { return (1.0 + std::abs(x)) * std::abs(d.value_1d(x)); });
  const double l2sq = physical([&](double x) {
    const double v = d.value_1d(x);
    return v * v;
  });
  const double grad_sq = physical([&](double x) {
    const double g = gradient(x);
    return g * g;
  });
  out.l2 = std::sqrt(std::max(0.0, l2sq));
  out.h1 = std::sqrt(std::max(0.0, l2sq + grad_sq));
  return out;
}

namespace catalog {

Datum zero_mean_difference(int n, double c1, double a1, double a2) {
  const double c2 = c1 * std::pow(a2 / a1, 0.5 * n);
  return Datum(n, {{c1, a1, 0.0}, {-c2, a2, 0.0}});
}

Datum dipole(double c, double a, double separation) {
  return Datum(1, {{c, a, 0.5 * separation}, {-c, a, -0.5 * separation}});
}

std::vector<NamedPair> standard_pairs(int n) {
  std::vector<NamedPair> out;
  out.push_back({"gaussian", DatumPair(Datum::gaussian(n, 1.0, 1.0), Datum::gaussian(n, 1.0, 1.0))});
  out.push_back({"velocity_only", DatumPair(Datum::zero(n), Datum::gaussian(n, 1.0, 1.0))});
  out.push_back({"zero_mean", DatumPair(zero_mean_difference(n, 1.0, 1.0, 2.0),
                                        zero_mean_difference(n, 1.0, 0.5, 1.5))});
  if (n == 1) {
    out.push_back({"shifted", DatumPair(Datum(1, {{1.0, 1.0, 0.5}}),
                                        Datum(1, {{1.0, 1.0, -0.3}, {0.5, 2.0, -0.8}}))});
    out.push_back({"dipole", DatumPair(dipole(1.0, 1.0, 1.0), dipole(1.0, 0.5, 2.0))});
  }
  return out;
}

DatumPair standard_pair(int n, const std::string& name) {
  for (auto& p : standard_pairs(n)) {
    if (p.name == name) return std::move(p.pair);
  }
  throw ConfigError("unknown catalog pair '" + name + "' for n = " + std::to_string(n));
}

}  // namespace catalog

}  // namespace dkg
