#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"

#include "dkg/energy_method.hpp"
#include "dkg/errors.hpp"

using namespace dkg;

namespace {

std::vector<double> grid(double lo, double hi, int count) {
  std::vector<double> out;
  for (int i = 0; i < count; ++i) out.push_back(lo + (hi - lo) * i / (count - 1));
  return out;
}

const DatumPair kGaussian(Datum::gaussian(1, 1.0, 1.0), Datum::gaussian(1, 1.0, 1.0));

}  // namespace

TEST_CASE("rho") {
  CHECK(rho(0.0) == 0.0);
  CHECK(rho(1.0) == 0.5);
  CHECK(rho(std::sqrt(3.0)) == doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("energy breakdown by direct substitution") {
  for (double xi : {0.0, 0.7, 3.0}) {
    const EnergyBreakdown e = energy_breakdown({0.0, 1.0, 0.0, xi}, 1.3, 0.1);
    CHECK(e.E0 == doctest::Approx(0.5));
    CHECK(e.R == doctest::Approx(0.1 * rho(xi)));
    CHECK(e.F == doctest::Approx(xi * xi));
  }
  const EnergyBreakdown z = energy_breakdown({cplx(0.4, 1.0), cplx(-2.0, 0.1), 0.0, 0.0}, 1.0, 0.1);
  CHECK(z.E == z.E0);
  const EnergyBreakdown u = energy_breakdown({1.0, 0.0, 0.0, 1.0}, 1.0, 0.1);
  CHECK(u.E0 == doctest::Approx(1.0));
  CHECK(u.F == doctest::Approx(0.1));
}

TEST_CASE("certificate constants") {
  const DecayCertificate a = certificate(0.1);
  CHECK(a.M == doctest::Approx(6.55).epsilon(1e-15));
  CHECK(a.alpha == doctest::Approx(0.9 / 6.55).epsilon(1e-15));
  CHECK(a.alpha == doctest::Approx(0.137405).epsilon(1e-6));
  CHECK(a.C == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  const DecayCertificate b = certificate(0.5);
  CHECK(b.M == doctest::Approx(2.75));
  CHECK(b.alpha == doctest::Approx(0.5 / 2.75));
  CHECK(b.C == doctest::Approx(4.0));
  CHECK(certificate(1.0 - 1e-9).C > 1e8);
  CHECK_THROWS_AS(certificate(1.0), ConfigError);
  CHECK_THROWS_AS(certificate(0.0), ConfigError);
}

TEST_CASE("pointwise decay certificate on exact solutions") {
  const auto t = grid(0.0, 50.0, 101);
  const auto xi = grid(0.0, 10.0, 81);
  const DecayMarginReport r = check_pointwise_decay({1, 1.0, 0.1, 0.5}, kGaussian, t, xi);
  CHECK(r.passed());
  CHECK(r.points == t.size() * xi.size());
  CHECK(r.min_log_slack >= 0.0);

  const DecayMarginReport weak = check_pointwise_decay({1, 1.0, 0.999, 0.5}, kGaussian, t, xi);
  CHECK(weak.passed());

  const DecayMarginReport zero_only =
      check_pointwise_decay({1, 1.0, 0.1, 0.5}, kGaussian, t, std::vector<double>{0.0});
  CHECK(zero_only.passed());
  CHECK(zero_only.min_log_slack == doctest::Approx(std::log(4.0 / 3.0)).epsilon(1e-12));

  const DecayMarginReport broken =
      check_pointwise_decay({1, 1.0, 0.1, 0.5}, kGaussian, t, xi, 0.5);
  CHECK_FALSE(broken.passed());
  CHECK(broken.violations > 0);
}

TEST_CASE("energy identity residual") {
  CHECK(energy_identity_residual(0.0, 1.0, kGaussian, 3.0, 1e-3) < 1e-12);
  CHECK(energy_identity_residual(1.0, 1.0, kGaussian, 2.0, 1e-4) < 1e-6);
  const DatumPair zero(Datum::zero(1), Datum::zero(1));
  CHECK(energy_identity_residual(1.0, 1.0, zero, 2.0, 1e-4) == 0.0);
  for (double xi = 0.0; xi <= 10.0; xi += 0.5) {
    for (double t : {0.0, 0.01, 1.0, 7.0, 40.0}) {
      CHECK(energy_identity_residual(xi, 1.0, kGaussian, t, 1e-3 / (1 + xi * xi)) < 1e-6);
    }
  }
}

TEST_CASE("structural inequalities on random states") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const double xi = 5.0 * (u(rng) + 1.0);
    const double m = 1.0 + u(rng);
    const double beta = 0.5 + 0.49 * u(rng);
    const ModeState s{cplx(u(rng), u(rng)), cplx(u(rng), u(rng)), 0.0, xi};
    const InequalitySlacks k = inequality_slacks(s, m, beta);
    CHECK(k.dissipation >= -1e-12);
    CHECK(k.coercivity >= -1e-12);
    CHECK(k.lower_sandwich >= -1e-12);
    CHECK(k.upper_sandwich >= -1e-12);
  }
}
