#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "dkg/data_catalog.hpp"
#include "dkg/quadrature.hpp"

namespace dkg {

/// A value together with its quadrature error bound.
struct Estimate {
  double value = 0.0;
  double error = 0.0;
};

/// A time series of one norm.
struct NormSeries {
  std::vector<double> times;
  std::vector<double> values;
  std::vector<double> error_estimates;
  std::string label;
};

/// Throws ConfigError unless lengths agree, times increase strictly and are
/// positive, and values and errors are nonnegative.
void validate(const NormSeries& s);

/// Header `t,value,error`, 17 significant digits.
void write_csv(std::ostream& os, const NormSeries& s);

/// Physical-space norms at one time, via Plancherel with factor (2π)^{-n}.
struct SolutionNorms {
  Estimate l2;      ///< ‖u‖
  Estimate grad;    ///< ‖∇u‖
  Estimate ut;      ///< ‖u_t‖
  Estimate energy;  ///< ½‖u_t‖² + ½‖∇u‖² + ½m²‖u‖²
};

SolutionNorms solution_norms(double t, const ModelParams& params, const DatumPair& pair,
                             const QuadratureSpec& spec);

/// ∫|û - profile|² dξ (frequency space, no Plancherel factor), split at δ₀.
struct ProfileError {
  Estimate total;
  Estimate low;
  Estimate high;
};

/// Requires m > 0. At t = 0 the integral is finite only when P0 = 0;
/// otherwise the envelope does not decay and NumericalError is thrown.
ProfileError profile_error_norm(double t, const ModelParams& params, const DatumPair& pair,
                                const QuadratureSpec& spec);

/// ∫_{|ξ|<=δ₀} |K_j|² dξ for the three exactly computable remainders.
struct RemainderNorms {
  Estimate K1;
  Estimate K2;
  Estimate K3;
};

RemainderNorms remainder_norms(double t, const ModelParams& params, const DatumPair& pair,
                               const QuadratureSpec& spec);

/// ∫_{|ξ|>=δ₀} |û|² dξ: the high-frequency mass of the solution.
Estimate high_frequency_mass(double t, const ModelParams& params, const DatumPair& pair,
                             const QuadratureSpec& spec);

/// Calibration integral J(t) = ∫_{|ξ|<=1} e^{-γ|ξ|²t}|ξ|^k dξ and its
/// normalisation J(t)(1 + t)^{(k+n)/2} on a grid.
struct CalibrationResult {
  std::vector<double> integrals;
  std::vector<double> normalised;
  double sup = 0.0;
  double argsup = 0.0;
};

CalibrationResult calibration_integrals(double gamma, double k, int n,
                                    const std::vector<double>& t_grid,
                                    const QuadratureSpec& spec = {});

}  // namespace dkg
