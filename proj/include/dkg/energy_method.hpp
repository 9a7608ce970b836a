#pragma once

#include <optional>
#include <span>
#include <vector>

#include "dkg/data_catalog.hpp"
#include "dkg/mode_solver.hpp"

namespace dkg {

/// |ξ|²/(1 + |ξ|²): the frequency-dependent decay rate of the energy method.
double rho(double xi_mag);

/// Pointwise Fourier-space energies of one mode.
struct EnergyBreakdown {
  double E0 = 0.0;  ///< ½|û_t|² + ½(|ξ|² + m²)|û|²
  double E = 0.0;   ///< E0 + βρ Re(û_t conj û) + ½βρ|ξ|²|û|²
  double F = 0.0;   ///< |ξ|²|û_t|² + βρ(|ξ|² + m²)|û|²
  double R = 0.0;   ///< βρ|û_t|²
  double rho = 0.0;
};

EnergyBreakdown energy_breakdown(const ModeState& state, double m, double beta);

/// Explicit constants of the pointwise decay estimate
/// E0(t, ξ) <= C e^{-αρ(ξ)t} E0(0, ξ).
struct DecayCertificate {
  double beta = 0.1;
  double M = 0.0;      ///< 1/(2β) + β/2 + 3/2
  double alpha = 0.0;  ///< (1 - β)/M
  double C = 0.0;      ///< (1 + 2β)/(1 - β)
};

/// Throws ConfigError unless 0 < beta < 1.
DecayCertificate certificate(double beta);

/// Result of checking the certificate on a (t, |ξ|) grid.
struct DecayMarginReport {
  std::size_t points = 0;
  std::size_t violations = 0;
  /// Minimum over points of log(bound) - log(E0(t, ξ)); +inf when every E0 vanishes.
  double min_log_slack = 0.0;
  double worst_t = 0.0;
  double worst_xi = 0.0;
  bool passed() const { return violations == 0; }
};

/// Evaluates E0 from exact mode solutions at every grid point and compares it
/// with C e^{-αρt} E0(0). `certificate_scale` multiplies C (fault injection).
/// Violations are counted, never thrown.
DecayMarginReport check_pointwise_decay(const ModelParams& params, const DatumPair& pair,
                                        std::span<const double> t_grid,
                                        std::span<const double> xi_grid,
                                        double certificate_scale = 1.0);

/// |dE0/dt + |ξ|²|û_t|²| at time t using a fourth-order centred difference of spacing h,
/// normalised by E0(0, ξ) + 1.
double energy_identity_residual(double xi_mag, double m, const DatumPair& pair, double t,
                                double h);

/// Slack of each structural inequality of the method at one state; a negative
/// value means the inequality failed. Each slack is normalised by the size of
/// its right-hand side so that exact equalities read as ~0.
struct InequalitySlacks {
  double dissipation = 0.0;   ///< βF - R
  double coercivity = 0.0;    ///< MF - ρE
  double lower_sandwich = 0.0;  ///< E - (1 - β)E0
  double upper_sandwich = 0.0;  ///< (1 + 2β)E0 - E
};

InequalitySlacks inequality_slacks(const ModeState& state, double m, double beta);

}  // namespace dkg
