#include "dkg/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "dkg/errors.hpp"

namespace dkg {
namespace {

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 21>;
using Gauss = boost::math::quadrature::gauss<double, 10>;

constexpr int kNodesPerPanel = 21;

struct Panel {
  double a;
  double b;
  double value;
  double error;
  double l1;
};

// Kronrod abscissae alternate between Gauss points (odd indices) and
// Kronrod extensions (even indices, including the centre).
Panel evaluate_panel(const std::function<double(double)>& f, double a, double b) {
  const auto& x = Kronrod::abscissa();
  const auto& wk = Kronrod::weights();
  const auto& wg = Gauss::weights();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  const double f0 = f(mid);
  double kronrod = f0 * wk[0];
  double gauss = 0.0;
  double l1 = std::abs(f0) * wk[0];
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double fp = f(mid + half * x[i]);
    const double fm = f(mid - half * x[i]);
    kronrod += (fp + fm) * wk[i];
    l1 += (std::abs(fp) + std::abs(fm)) * wk[i];
    if (i % 2 == 1) gauss += (fp + fm) * wg[i / 2];
  }
  Panel p{a, b, half * kronrod, half * std::abs(kronrod - gauss), half * l1};
  if (!std::isfinite(p.value) || !std::isfinite(p.error)) {
    std::ostringstream msg;
    msg << "non-finite integrand on [" << a << ", " << b << "]";
    throw NumericalError(msg.str());
  }
  p.error = std::max(p.error, 2.0 * std::numeric_limits<double>::epsilon() * std::abs(p.value));
  return p;
}

std::vector<double> initial_breakpoints(double a, double b, const IntegrandHints& hints) {
  std::vector<double> pts{a, b};
  for (double p : hints.breakpoints) {
    if (p > a && p < b) pts.push_back(p);
  }
  if (hints.length_scale > 0.0) {
    for (double s = hints.length_scale / 64.0; a + s < b; s *= 2.0) pts.push_back(a + s);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

}  // namespace

void validate(const QuadratureSpec& spec) {
  if (!(spec.rel_tol > 0.0) || !(spec.abs_tol > 0.0)) {
    throw ConfigError("quadrature tolerances must be positive");
  }
  if (spec.max_panels < 1) throw ConfigError("quadrature max_panels must be >= 1");
  if (spec.truncation_radius && !(*spec.truncation_radius > 0.0)) {
    throw ConfigError("quadrature truncation_radius must be positive");
  }
  if (!(spec.oscillation_resolution > 0.0)) {
    throw ConfigError("quadrature oscillation_resolution must be positive");
  }
}

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadratureSpec& spec, const IntegrandHints& hints) {
  validate(spec);
  if (!(b > a)) return {};

  const auto pts = initial_breakpoints(a, b, hints);
  double max_width = b - a;
  if (hints.phase_rate > 0.0) {
    const double period = 2.0 * std::numbers::pi / hints.phase_rate;
    max_width = std::min(max_width, period * kNodesPerPanel / spec.oscillation_resolution);
  }

  std::vector<Panel> panels;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double width = pts[i + 1] - pts[i];
    const auto pieces = static_cast<long>(std::ceil(width / max_width));
    if (pieces + static_cast<long>(panels.size()) > spec.max_panels) {
      throw NumericalError("quadrature: oscillation resolution exceeds max_panels");
    }
    for (long k = 0; k < pieces; ++k) {
      const double lo = pts[i] + width * static_cast<double>(k) / static_cast<double>(pieces);
      const double hi = k + 1 == pieces ? pts[i + 1]
                                        : pts[i] + width * static_cast<double>(k + 1) /
                                                       static_cast<double>(pieces);
      panels.push_back(evaluate_panel(f, lo, hi));
    }
  }

  using Entry = std::pair<double, std::size_t>;
  std::priority_queue<Entry> queue;
  double err_sum = 0.0;
  double l1_sum = 0.0;
  for (std::size_t i = 0; i < panels.size(); ++i) {
    queue.emplace(panels[i].error, i);
    err_sum += panels[i].error;
    l1_sum += panels[i].l1;
  }

  auto target = [&] { return std::max(spec.abs_tol, spec.rel_tol * l1_sum); };
  while (err_sum > target() && !queue.empty()) {
    const auto [err, idx] = queue.top();
    queue.pop();
    const Panel p = panels[idx];
    const double mid = 0.5 * (p.a + p.b);
    if (!(mid > p.a && mid < p.b) || static_cast<int>(panels.size()) >= spec.max_panels) {
      break;
    }
    const Panel left = evaluate_panel(f, p.a, mid);
    const Panel right = evaluate_panel(f, mid, p.b);
    err_sum += left.error + right.error - p.error;
    l1_sum += left.l1 + right.l1 - p.l1;
    panels[idx] = left;
    panels.push_back(right);
    queue.emplace(left.error, idx);
    queue.emplace(right.error, panels.size() - 1);
  }

  QuadResult out;
  double l1 = 0.0;
  for (const auto& p : panels) {
    out.value += p.value;
    out.error += p.error;
    l1 += p.l1;
  }
  out.panels = static_cast<int>(panels.size());
  if (out.error > std::max(spec.abs_tol, spec.rel_tol * l1)) {
    std::ostringstream msg;
    msg << "quadrature did not converge on [" << a << ", " << b << "] with " << out.panels
        << " panels (error " << out.error << ")";
    throw NumericalError(msg.str());
  }
  return out;
}

double unit_sphere_area(int n) {
  if (n < 1) throw ConfigError("dimension must be >= 1");
  const double half = 0.5 * n;
  return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

double truncation_radius(const std::function<double(double)>& envelope, int n,
                         double threshold) {
  const double area = unit_sphere_area(n);
  double radius = 1e-4;
  double s = radius;
  for (; s <= 1e6; s *= 1.02) {
    const double v = area * envelope(s) * std::pow(s, n - 1);
    if (v >= threshold) radius = s * 1.02;
  }
  if (radius > 1e6) throw NumericalError("integrand envelope does not decay");
  return radius;
}

QuadResult radial_integral(const std::function<double(double)>& f, int n,
                           const QuadratureSpec& spec, const IntegrandHints& hints) {
  validate(spec);
  const double area = unit_sphere_area(n);
  double radius = 0.0;
  double tail = 0.0;
  if (spec.truncation_radius) {
    radius = *spec.truncation_radius;
  } else {
    if (!hints.envelope) {
      throw ConfigError("radial_integral: no truncation radius and no decaying envelope");
    }
    radius = truncation_radius(hints.envelope, n, spec.abs_tol / 10.0);
    tail = area * hints.envelope(radius) * std::pow(radius, n);
  }
  auto weighted = [&](double s) { return f(s) * std::pow(s, n - 1); };
  QuadratureSpec inner = spec;
  inner.abs_tol = spec.abs_tol / area;
  QuadResult r = integrate(weighted, 0.0, radius, inner, hints);
  r.value *= area;
  r.error = r.error * area + tail;
  return r;
}

}  // namespace dkg
