#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "dkg/asymptotics.hpp"
#include "dkg/runner/scenario.hpp"
#include "dkg/spectral_norms.hpp"

namespace dkg::runner {

enum class Status { pass, fail, measured };
std::string_view to_string(Status s);

struct CheckRecord {
  std::string name;
  Status status = Status::pass;
  double measured_value = 0.0;
  std::string expected;
  double tolerance = 0.0;
  /// Signed distance from the failure threshold (positive = passing side);
  /// absent for measurements and vacuous passes.
  std::optional<double> margin;
  nlohmann::json details = nlohmann::json::object();
};

enum class MassRequirement { any, massive, massless };

struct CheckInfo {
  std::string_view name;
  std::string_view summary;
  MassRequirement mass = MassRequirement::any;
  /// Fits log-log slopes on the scenario grid, so t_max >= 100 t_min.
  bool slope = false;
};

const std::vector<CheckInfo>& check_catalog();
const CheckInfo* find_check(std::string_view name);
/// Every catalog check applicable to the parameters, in catalog order.
std::vector<std::string> default_checks(const ModelParams& params);

/// Shared state for one suite run: the scenario plus lazily computed series.
class Workspace {
 public:
  Workspace(const Scenario& sc, int threads, std::uint64_t seed);

  const Scenario& scenario() const { return sc_; }
  int threads() const { return threads_; }
  std::uint64_t seed() const { return seed_; }

  /// Sample times of the main series: one-period buckets for m > 0,
  /// a plain geometric grid for m = 0.
  const std::vector<double>& times();
  std::optional<double> period() const;
  /// Solution norms at times(), computed once.
  const std::vector<SolutionNorms>& solution_series();
  /// Profile error at times() (m > 0), computed once.
  const std::vector<ProfileError>& profile_series();

  /// Computes norms at times() in order, calling `sink` after each chunk
  /// so that callers can flush partial output before a failure propagates.
  void compute_solution_series(
      const std::function<void(std::size_t first, const std::vector<SolutionNorms>&)>& sink);

 private:
  Scenario sc_;
  int threads_;
  std::uint64_t seed_;
  std::optional<std::vector<double>> times_;
  std::optional<std::vector<SolutionNorms>> solution_;
  std::optional<std::vector<ProfileError>> profile_;
};

/// Runs one named check. ConfigError for unknown names; numerical failures
/// propagate as NumericalError.
CheckRecord run_check(std::string_view name, Workspace& ws);

/// Sample times of the oscillation-amplitude probe: [1000, 10000] at 32
/// samples per period π/m.
std::vector<double> appendix_probe_grid(double m);

nlohmann::json to_json(const CheckRecord& r);
nlohmann::json to_json(const SlopeFit& f);

}  // namespace dkg::runner
