#include <cmath>
#include <numbers>

#include "doctest.h"

#include "dkg/errors.hpp"
#include "dkg/mode_solver.hpp"
#include "dkg/profile_analysis.hpp"

using namespace dkg;

namespace {

const double kSqrtPi = std::sqrt(std::numbers::pi);
const ModelParams kParams{1, 1.0, 0.1, std::sqrt(2.0) / 2};

cplx exact(double t, double s, const DatumPair& p, double m) {
  return evolve_mode(t, std::abs(s), m, datum_hat(p.u0, s), datum_hat(p.u1, s)).u_hat;
}

}  // namespace

TEST_CASE("profile values") {
  const ProfileParams pp{0.4, 1.7, 1.3};
  CHECK(profile_hat(0.0, 0.8, pp) == doctest::Approx(0.4));
  for (double t : {0.5, 3.0, 20.0}) {
    CHECK(profile_hat(t, 0.0, pp) ==
          doctest::Approx(1.7 * std::sin(1.3 * t) / 1.3 + 0.4 * std::cos(1.3 * t)));
  }
  CHECK(std::abs(profile_hat(1.0, 1.0, {0.0, kSqrtPi, 1.0}) - 0.75087344748442937) < 1e-14);
  CHECK_THROWS_AS(profile_params(catalog::standard_pair(1, "gaussian"), 0.0), ConfigError);
}

TEST_CASE("K1, K2, K3 against their defining displays") {
  const DatumPair g = catalog::standard_pair(1, "gaussian");
  const LowFrequencyTerms k = k123_exact(5.0, 0.3, g, kParams);
  CHECK(std::abs(k.K1 - (-0.053500296702769563)) < 1e-14);
  CHECK(std::abs(k.K2 - 0.026451453587245525) < 1e-14);
  CHECK(std::abs(k.K3 - (-0.013986948619672317)) < 1e-14);
  CHECK(std::abs(k123_exact(5.0, 1e-6, g, kParams).K1) < 1e-11);
  CHECK_THROWS_AS(k123_exact(1.0, 0.8, g, kParams), ConfigError);
  CHECK_THROWS_AS(k123_exact(1.0, 0.1, g, {1, 0.0, 0.1, 0.5}), ConfigError);
}

TEST_CASE("low-frequency reconstruction is exact") {
  for (int n = 1; n <= 3; ++n) {
    const ModelParams p{n, 1.0, 0.1, std::sqrt(2.0) / 2};
    for (const auto& np : catalog::standard_pairs(n)) {
      for (double s : {0.5, -0.5, 0.05}) {
        for (double t : {0.0, 1.0, 10.0, 100.0}) {
          const cplx e = exact(t, s, np.pair, 1.0);
          const double scale = std::abs(datum_hat(np.pair.u0, s)) + std::abs(datum_hat(np.pair.u1, s));
          CHECK(std::abs(reconstruct_low_frequency(t, s, np.pair, p) - e) <= 1e-10 * scale);
        }
      }
    }
  }
  const DatumPair zm = catalog::standard_pair(1, "zero_mean");
  const LowFrequencyTerms k = k123_exact(3.0, 0.4, zm, kParams);
  CHECK(std::abs(k.K2 + k.K3 - exact(3.0, 0.4, zm, 1.0)) < 1e-15);
  const DatumPair sh = catalog::standard_pair(1, "shifted");
  CHECK(std::abs(reconstruct_low_frequency(0.0, 0.3, sh, kParams) - datum_hat(sh.u0, 0.3)) < 1e-14);
  CHECK_THROWS_AS(reconstruct_low_frequency(1.0, 0.0, sh, kParams), ConfigError);
}

TEST_CASE("tail remainder and its envelopes") {
  const DatumPair g = catalog::standard_pair(1, "gaussian");
  const ModelParams p{1, 1.0, 0.1, 0.7};
  const ProfileParams pp = profile_params(g, 1.0);
  CHECK(std::abs(tail_remainder(4.0, 1e-4, g, p)) < 1e-12);
  const auto zero = k4567_bound_envelope(10.0, 0.0, pp, 0.7);
  for (double v : zero) CHECK(v == 0.0);

  const auto env = k4567_bound_envelope(10.0, 0.5, pp, 0.7);
  double sum = 0.0;
  for (double v : env) {
    CHECK(v > 0.0);
    sum += v;
  }
  CHECK(std::abs(tail_remainder(10.0, 0.5, g, p)) <= sum);

  for (double s = 0.01; s <= 0.7; s += 0.03) {
    for (double t : {0.0, 0.3, 2.0, 10.0, 100.0, 1000.0}) {
      const auto e = k4567_bound_envelope(t, s, pp, 0.7);
      CHECK(std::abs(tail_remainder(t, s, g, p)) <= (e[0] + e[1] + e[2] + e[3]) * (1 + 1e-9) + 1e-13);
    }
    const RootGap rg = root_gap(s, 1.0);
    CHECK(rg.gap <= rg.bound);
  }

  const RemainderBreakdown b = remainder_breakdown(10.0, 0.5, g, p);
  CHECK(std::abs(b.tail - tail_remainder(10.0, 0.5, g, p)) == 0.0);
}

TEST_CASE("Fourier remainder constants") {
  const FourierRemainderConstants c = fourier_remainder_constants();
  CHECK(std::abs(c.L - 0.72461135377670848) < 1e-9);
  CHECK(c.M == 1.0);
  CHECK(2.0 / std::numbers::pi < c.L);
  for (double th = 0.01; th < 50.0; th += 0.01) CHECK((1 - std::cos(th)) / th <= c.L + 1e-12);
}
