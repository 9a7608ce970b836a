#pragma once

#include <array>
#include <complex>
#include <span>

#include "dkg/data_catalog.hpp"

namespace dkg {

/// Coefficients of the massive asymptotic profile.
struct ProfileParams {
  double P0 = 0.0;
  double P1 = 0.0;
  double m = 1.0;
};

/// P0, P1 from the data; throws ConfigError when m <= 0.
ProfileParams profile_params(const DatumPair& pair, double m);

/// P1 e^{-t|ξ|²/2} sin(t√(|ξ|²+m²))/√(|ξ|²+m²) + P0 e^{-t|ξ|²/2} cos(t√(|ξ|²+m²)).
double profile_hat(double t, double xi_mag, const ProfileParams& pp);

/// Exactly computable low-frequency remainders:
///   K1 = P0 |ξ|² e^{-t|ξ|²/2} sin(t√D/2)/√D
///   K2 = (A1 - iB1) · 2e^{-t|ξ|²/2} sin(t√D/2)/√D
///   K3 = (A0 - iB0) · (|ξ|² e^{-t|ξ|²/2} sin(t√D/2)/√D + e^{-t|ξ|²/2} cos(t√D/2))
struct LowFrequencyTerms {
  cplx K1;
  cplx K2;
  cplx K3;
};

/// Frequency (s, 0, ..., 0) with |s| <= delta0 (s signed for n = 1).
/// Throws ConfigError when |s| > delta0 or m <= 0.
LowFrequencyTerms k123_exact(double t, double s, const DatumPair& pair, const ModelParams& params);
LowFrequencyTerms k123_exact(double t, std::span<const double> xi, const DatumPair& pair,
                             const ModelParams& params);

/// The leading oscillatory terms in √D form plus K1 + K2 + K3. Equal to the
/// exact mode solution û(t, ξ) for 0 < |ξ| <= delta0.
cplx reconstruct_low_frequency(double t, double s, const DatumPair& pair,
                               const ModelParams& params);

/// û - profile - K1 - K2 - K3, from exact quantities only.
cplx tail_remainder(double t, double s, const DatumPair& pair, const ModelParams& params);

/// Worst-case upper bounds for the four mean-value remainder terms whose
/// sum is the tail:
///   [0] 2|P1| |ξ|⁴ e^{-t|ξ|²/2} (4m² - δ₀⁴)^{-3/2}
///   [1] |P1| t e^{-t|ξ|²/2} |ξ|⁴/m²
///   [2] |P1| t |ξ|⁸ e^{-t|ξ|²/2} m^{-1} (4m² - δ₀⁴)^{-3/2}
///   [3] |P0| (t/2) e^{-t|ξ|²/2} |ξ|⁴/m
/// Requires |ξ| <= δ₀ and 4m² > δ₀⁴.
std::array<double, 4> k4567_bound_envelope(double t, double xi_mag, const ProfileParams& pp,
                                           double delta0);

/// |√D - 2√(|ξ|²+m²)| and its bound |ξ|⁴/m, used by the envelopes.
struct RootGap {
  double gap = 0.0;
  double bound = 0.0;
};
RootGap root_gap(double xi_mag, double m);

/// Everything above at one point, for reports.
struct RemainderBreakdown {
  LowFrequencyTerms k123;
  cplx tail;
  std::array<double, 4> envelope{};
};
RemainderBreakdown remainder_breakdown(double t, double s, const DatumPair& pair,
                                       const ModelParams& params);

/// L = sup |1 - cos θ|/|θ| (golden-section search) and M = sup |sin θ|/|θ| = 1,
/// so that |A(ξ)| <= L|ξ|‖u‖_{1,1} and |B(ξ)| <= M|ξ|‖u‖_{1,1}.
struct FourierRemainderConstants {
  double L = 0.0;
  double M = 1.0;
};
FourierRemainderConstants fourier_remainder_constants();

}  // namespace dkg
