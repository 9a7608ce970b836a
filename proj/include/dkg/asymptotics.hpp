#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "dkg/profile_analysis.hpp"
#include "dkg/quadrature.hpp"
#include "dkg/spectral_norms.hpp"

namespace dkg {

struct GeometryConstants {
  double omega_n = 0.0;          ///< |S^{n-1}|
  double L_n = 0.0;              ///< ∫₀^∞ σ^{n-1}e^{-σ²} dσ
  std::optional<double> K_n;     ///< L_n/m², absent for m = 0
};

GeometryConstants geometry_constants(int n, double m, const QuadratureSpec& spec = {});

/// The three oscillation integrals, together with the scaled values
/// t^{n/2}·I_j(t) that carry the late-time constants.
///   I0 = ∫ e^{-t|ξ|²} cos²(t√(|ξ|²+m²)) dξ
///   I1 = ∫ e^{-t|ξ|²} sin²(t√(|ξ|²+m²))/(|ξ|²+m²) dξ
///   I2 = ∫ e^{-t|ξ|²} sin(2t√(|ξ|²+m²))/√(|ξ|²+m²) dξ
struct OscillationIntegrals {
  double t = 0.0;
  Estimate I0;
  Estimate I1;
  Estimate I2;
  Estimate scaled_I0;
  Estimate scaled_I1;
  Estimate scaled_I2;
};

/// Requires t > 0 and m > 0. Evaluated in the variable σ = √t|ξ|.
OscillationIntegrals oscillation_integrals(double t, int n, double m,
                                           const QuadratureSpec& spec = {});

/// ‖profile(t)‖² by direct quadrature in ξ (independent of the I_j).
Estimate profile_norm_squared(double t, int n, const ProfileParams& pp,
                              const QuadratureSpec& spec = {});

/// C₁(t) = ∫σ^{n-1}e^{-σ²} t/(σ²+tm²) cos(2t√(σ²/t+m²)) dσ.
Estimate c1_integral(double t, int n, double m, const QuadratureSpec& spec = {});
/// A(t) = ∫σ^{n-1}e^{-σ²} t/(σ²+tm²) dσ, so that t^{n/2}I1·2/|ω_n| = A - C₁.
Estimate a_integral(double t, int n, double m, const QuadratureSpec& spec = {});
/// I(t) = ∫σ^{n-1}e^{-σ²} cos(2t√(σ²/t+m²)) dσ.
Estimate appendix_integral(double t, int n, double m, const QuadratureSpec& spec = {});

/// Averages of t^{n/2}I_j over one period [t, t + π/m] (periodic trapezoid).
struct PeriodAverages {
  double t = 0.0;
  double scaled_I0 = 0.0;
  double scaled_I1 = 0.0;
  double scaled_I2 = 0.0;      ///< signed average of t^{n/2}I2
  double scaled_abs_I2 = 0.0;  ///< average of t^{n/2}|I2|
};

PeriodAverages period_averages(double t, int n, double m, const QuadratureSpec& spec = {},
                               int samples = 32);

struct AppendixProbe {
  std::vector<double> times;
  std::vector<double> values;        ///< I(t)
  double predicted_amplitude = 0.0;  ///< |∫σ^{n-1}e^{-(1-i/m)σ²}dσ|
  double measured_amplitude = 0.0;   ///< half peak-to-peak over the last decade
  double majorant_limit = 0.0;       ///< ∫₀¹ t^{n/2}σ^{n-1}e^{-tσ²}dσ at the last time
  double L_n = 0.0;
  std::size_t bound_samples = 0;
  std::size_t bound_violations = 0;  ///< of t^{n/2}σ^{n-1}e^{-tσ²} <= ℓ!σ^{-2ℓ+n-1}
};

/// Requires m > 0 and times >= 1 that resolve the period π/m.
AppendixProbe appendix_probe(const std::vector<double>& t_grid, int n, double m,
                             const QuadratureSpec& spec = {});

/// |∫₀^∞ σ^{n-1}e^{-(1-i/m)σ²}dσ| by quadrature of its real and imaginary parts.
double predicted_amplitude(int n, double m, const QuadratureSpec& spec = {});

enum class FitMethod { direct, bucketed };
enum class Aggregate { geometric_mean, maximum, minimum };

std::string_view to_string(FitMethod m);

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms_residual = 0.0;
  double t_min = 0.0;
  double t_max = 0.0;
  FitMethod method = FitMethod::direct;
  std::size_t points = 0;
};

/// Least-squares fit of log(value) against log(t). With a period hint the
/// samples are grouped into one-period buckets (an incomplete trailing bucket
/// is dropped) and each bucket contributes one aggregated point. Throws
/// ConfigError for fewer than 10 samples, less than two decades, or
/// non-positive values.
SlopeFit envelope_slope_fit(const NormSeries& series, std::optional<double> period_hint,
                            Aggregate aggregate = Aggregate::geometric_mean);

/// One-period buckets of a series (used by fits and envelope checks).
struct Bucket {
  double t_center = 0.0;  ///< geometric mean of the bucket's times
  double geometric_mean = 0.0;
  double maximum = 0.0;
  double minimum = 0.0;
  double t_of_min = 0.0;
  std::size_t count = 0;
};

std::vector<Bucket> period_buckets(const NormSeries& series, double period);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double rms_residual = 0.0;
};

/// Ordinary least squares y = slope·x + intercept. Requires >= 2 points with
/// distinct x.
LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

/// Geometric bucket starts between t_min and t_max, each followed by
/// `samples_per_bucket` equally spaced times covering one period. Without a
/// period, a plain geometric grid with `per_decade` points.
std::vector<double> bucketed_time_grid(double t_min, double t_max, int per_decade,
                                       std::optional<double> period, int samples_per_bucket);

struct OptimalityReport {
  bool skipped = false;  ///< P0 = P1 = 0
  double liminf_normalized = 0.0;
  double limsup_normalized = 0.0;
  double omega_n = 0.0;
  double L_n = 0.0;
  double K_n = 0.0;
  /// |P1|²K_n|ω_n|/16: the lower constant for t^{n/2}‖profile‖².
  double profile_floor_constant = 0.0;
  double averaged_I0 = 0.0;
  double averaged_I1 = 0.0;
  double appendix_amplitude = 0.0;
  double predicted_amplitude = 0.0;
  /// When skipped: direct fit of the series, to compare with -(n+2)/4.
  std::optional<SlopeFit> zero_mean_fit;
};

/// Two-sided envelope of t^{n/4}‖u‖ over one-period buckets of the series.
/// Never throws on a vanishing lower envelope; the caller reads liminf.
OptimalityReport two_sided_check(const NormSeries& series, int n, double P0, double P1,
                                 double m);

}  // namespace dkg
