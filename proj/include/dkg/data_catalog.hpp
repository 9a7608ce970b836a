#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dkg {

using cplx = std::complex<double>;

/// Model parameters as supplied by a caller; delta0 may be left unset.
struct RawModelParams {
  int n = 1;
  double m = 1.0;
  double beta = 0.1;
  std::optional<double> delta0;
};

/// Validated model parameters: dimension, mass, energy parameter, and the
/// low-frequency cutoff separating the profile region from the exponential one.
struct ModelParams {
  int n = 1;
  double m = 1.0;
  double beta = 0.1;
  double delta0 = 0.5;
};

/// Enforces n >= 1, m >= 0, 0 < beta < 1, delta0 > 0 and, for m > 0,
/// delta0^4 < 4m^2 and delta0 <= 1. An unset delta0 becomes min(1, √(2m))/2
/// (0.5 when m = 0). Throws ConfigError naming the offending field.
ModelParams validate_params(const RawModelParams& raw);

/// One term c·exp(-a|x - x0|^2). Shifts are only permitted in one dimension.
struct GaussianTerm {
  double c = 1.0;
  double a = 1.0;
  double x0 = 0.0;
};

/// Initial datum as a finite Gaussian mixture on R^n. No terms = zero datum.
class Datum {
 public:
  Datum(int n, std::vector<GaussianTerm> terms);

  static Datum zero(int n) { return Datum(n, {}); }
  static Datum gaussian(int n, double c, double a, double x0 = 0.0) {
    return Datum(n, {{c, a, x0}});
  }

  int n() const { return n_; }
  const std::vector<GaussianTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// True when every term is centred, so the transform is real and radial.
  bool centered() const;
  /// Smallest exponent a: the slowest decay in physical space.
  double min_exponent() const;
  /// Largest exponent a: the slowest decay e^{-|ξ|²/(4a)} in Fourier space.
  double max_exponent() const;

  /// Physical-space value at a point of R^n.
  double value(std::span<const double> x) const;
  /// Value on a ray for centred data, or at the coordinate x for n = 1.
  double value_1d(double x) const;

 private:
  int n_;
  std::vector<GaussianTerm> terms_;
};

/// Initial position u0 and velocity u1.
struct DatumPair {
  Datum u0;
  Datum u1;

  DatumPair(Datum position, Datum velocity);
  int n() const { return u0.n(); }
};

struct DatumMoments {
  double P = 0.0;    ///< ∫u dx
  double l1 = 0.0;   ///< ∫|u| dx
  double l11 = 0.0;  ///< ∫(1 + |x|)|u| dx
  double l2 = 0.0;   ///< ‖u‖
  double h1 = 0.0;   ///< (‖u‖² + ‖∇u‖²)^{1/2}
};

/// Unnormalized transform ∫e^{-ix·ξ}u(x)dx. Only ξ's first coordinate meets
/// the shift (shifts exist only for n = 1).
cplx datum_hat(const Datum& d, std::span<const double> xi);
/// Transform at the frequency (s, 0, ..., 0); s may be negative.
cplx datum_hat(const Datum& d, double s);

/// Zeroth moment in closed form; exactly 0 when the terms cancel to rounding.
double zeroth_moment(const Datum& d);

/// Moments with absolute quadrature error <= tol. Throws NumericalError on
/// quadrature nonconvergence and ConfigError for tol <= 0.
DatumMoments moments(const Datum& d, double tol = 1e-10);

/// ‖u‖ from the Gaussian product formula (no quadrature).
double l2_norm_closed_form(const Datum& d);

/// A(ξ) = ∫(cos(x·ξ) - 1)u dx and B(ξ) = ∫sin(x·ξ)u dx, so that
/// datum_hat = A - iB + P.
struct DataSplit {
  double A = 0.0;
  double B = 0.0;
};
DataSplit ab_decomposition(const Datum& d, std::span<const double> xi);
DataSplit ab_decomposition(const Datum& d, double s);

namespace catalog {

/// c1·exp(-a1|x|^2) - c2·exp(-a2|x|^2) with c2 chosen so the mass vanishes.
Datum zero_mean_difference(int n, double c1, double a1, double a2);

/// Two opposite Gaussians at ±separation/2 (n = 1): zero mass, nonzero
/// first moment, so B(ξ) = O(|ξ|).
Datum dipole(double c, double a, double separation);

struct NamedPair {
  std::string name;
  DatumPair pair;
};

/// Reference data used across tests and default scenarios:
///   "gaussian"      u0 = u1 = exp(-|x|^2)
///   "velocity_only" u0 = 0, u1 = exp(-|x|^2)
///   "zero_mean"     centred zero-mass differences in both slots
///   "shifted"       off-centre mixtures (n = 1 only)
///   "dipole"        zero-mass dipoles (n = 1 only)
std::vector<NamedPair> standard_pairs(int n);
DatumPair standard_pair(int n, const std::string& name);

}  // namespace catalog

}  // namespace dkg
