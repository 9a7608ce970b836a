#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"

#include "dkg/errors.hpp"
#include "dkg/spectral_norms.hpp"

using namespace dkg;

namespace {

const double kPi = std::numbers::pi;
const QuadratureSpec kSpec;

ModelParams params(int n, double m) { return validate_params({n, m, 0.1, std::nullopt}); }

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("solution norms at t = 0 match the data") {
  const DatumPair g = catalog::standard_pair(1, "gaussian");
  const SolutionNorms s = solution_norms(0.0, params(1, 1.0), g, kSpec);
  CHECK(rel(s.l2.value, 1.1195151349202476) < 1e-10);
  CHECK(rel(s.ut.value, 1.1195151349202476) < 1e-10);
  // ‖∇e^{-x²}‖² = ∫4x²e^{-2x²}dx = (π/2)^{1/2} as well.
  CHECK(rel(s.grad.value, 1.1195151349202476) < 1e-10);
  const DatumPair z(Datum::zero(2), Datum::zero(2));
  const SolutionNorms zn = solution_norms(5.0, params(2, 1.0), z, kSpec);
  CHECK(zn.l2.value == 0.0);
  CHECK(zn.grad.value == 0.0);
  CHECK(zn.ut.value == 0.0);
  CHECK(zn.energy.value == 0.0);
}

TEST_CASE("solution norms against high-precision references") {
  const DatumPair g1 = catalog::standard_pair(1, "gaussian");
  const SolutionNorms a = solution_norms(10.0, params(1, 1.0), g1, kSpec);
  CHECK(rel(a.l2.value, 0.71481565550314502) < 1e-9);
  CHECK(rel(a.grad.value, 0.14079555037628049) < 1e-9);
  CHECK(rel(a.ut.value, 0.22252727299689166) < 1e-9);
  CHECK(std::abs(a.l2.value - 0.71481565550314502) <= a.l2.error + 1e-15);

  const DatumPair g2 = catalog::standard_pair(2, "gaussian");
  const SolutionNorms b = solution_norms(10.0, params(2, 1.0), g2, kSpec);
  CHECK(rel(b.l2.value, 0.35908874524945891) < 1e-9);
  CHECK(rel(b.grad.value, 0.096202826137553612) < 1e-9);
  CHECK(rel(b.ut.value, 0.1744776798275214) < 1e-9);
  CHECK(b.energy.value == doctest::Approx(0.5 * (b.ut.value * b.ut.value + b.grad.value * b.grad.value +
                                                 b.l2.value * b.l2.value))
                              .epsilon(1e-12));

  const SolutionNorms c = solution_norms(100.0, params(1, 0.0), g1, kSpec);
  CHECK(rel(c.l2.value, 12.241960957053587) < 1e-9);
}

TEST_CASE("profile error") {
  const DatumPair g = catalog::standard_pair(1, "gaussian");
  CHECK_THROWS_AS(profile_error_norm(0.0, params(1, 1.0), g, kSpec), NumericalError);
  CHECK_THROWS_AS(profile_error_norm(1.0, params(1, 0.0), g, kSpec), ConfigError);
  const DatumPair v = catalog::standard_pair(1, "velocity_only");
  const ProfileError p0 = profile_error_norm(0.0, params(1, 1.0), v, kSpec);
  CHECK(std::isfinite(p0.total.value));
  // At t = 0 the profile of velocity-only data is 0, so the error is ‖û₀‖² = 0.
  CHECK(p0.total.value == doctest::Approx(0.0));
  const ProfileError p = profile_error_norm(50.0, params(1, 1.0), g, kSpec);
  CHECK(p.total.value == doctest::Approx(p.low.value + p.high.value).epsilon(1e-12));
  const DatumPair z(Datum::zero(1), Datum::zero(1));
  CHECK(profile_error_norm(50.0, params(1, 1.0), z, kSpec).total.value == 0.0);
}

TEST_CASE("remainder norms and high-frequency mass") {
  const DatumPair g = catalog::standard_pair(1, "gaussian");
  const RemainderNorms a = remainder_norms(100.0, params(1, 1.0), g, kSpec);
  const RemainderNorms b = remainder_norms(1000.0, params(1, 1.0), g, kSpec);
  CHECK(a.K1.value > b.K1.value);
  CHECK(a.K3.value > b.K3.value);
  const DatumPair d = catalog::standard_pair(1, "dipole");
  CHECK(remainder_norms(100.0, params(1, 1.0), d, kSpec).K1.value == 0.0);
  double prev = high_frequency_mass(0.0, params(1, 1.0), g, kSpec).value;
  for (double t : {5.0, 10.0, 20.0, 40.0}) {
    const double h = high_frequency_mass(t, params(1, 1.0), g, kSpec).value;
    CHECK(h < prev);
    prev = h;
  }
}

TEST_CASE("calibration integral") {
  const CalibrationResult r = calibration_integrals(1.0, 0.0, 1, {0.0, 100.0});
  CHECK(std::abs(r.integrals[1] - 0.1772453850905516) < 1e-12);
  CHECK(std::abs(r.normalised[1] - 1.7812940745777187) < 1e-11);
  CHECK(r.integrals[0] == doctest::Approx(2.0).epsilon(1e-13));
  const CalibrationResult s = calibration_integrals(1.0, 2.0, 3, {0.0});
  CHECK(s.integrals[0] == doctest::Approx(4 * kPi / 5).epsilon(1e-12));
  CHECK(s.normalised[0] == s.integrals[0]);

  std::vector<double> grid{0.0};
  for (double t = 1e-2; t <= 1e4; t *= 1.25) grid.push_back(t);
  const CalibrationResult k2 = calibration_integrals(0.5, 2.0, 2, grid);
  // (1 + t)^2 ∫e^{-t|ξ|²/2}|ξ|² dξ tends to 4π from above.
  CHECK(std::isfinite(k2.sup));
  CHECK(k2.normalised.back() == doctest::Approx(4 * kPi).epsilon(1e-3));
  CHECK(k2.sup < 2 * 4 * kPi);
}

TEST_CASE("NormSeries validation and CSV") {
  NormSeries s{{1.0, 2.0}, {0.5, 0.25}, {1e-16, 0.0}, "l2"};
  CHECK_NOTHROW(validate(s));
  std::ostringstream os;
  write_csv(os, s);
  CHECK(os.str() == "t,value,error\n1,0.5,9.9999999999999998e-17\n2,0.25,0\n");
  NormSeries bad = s;
  bad.times = {2.0, 1.0};
  CHECK_THROWS_AS(validate(bad), ConfigError);
  bad = s;
  bad.values = {0.5};
  CHECK_THROWS_AS(validate(bad), ConfigError);
  bad = s;
  bad.values = {-1.0, 0.0};
  CHECK_THROWS_AS(validate(bad), ConfigError);
}
