#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "dkg/data_catalog.hpp"
#include "dkg/quadrature.hpp"

namespace dkg::runner {

struct TimeGrid {
  double t_min = 100.0;
  double t_max = 1.0e4;
  int points_per_decade = 10;
  /// Samples per oscillation period π/m in each bucket (massive runs only).
  int samples_per_period = 16;
};

struct Outputs {
  std::string dir = "out";
  bool svg = false;
};

/// Fault injection for exercising the failure paths of the suite.
struct Debug {
  double certificate_scale = 1.0;
};

struct Scenario {
  ModelParams params;
  DatumPair pair{Datum::zero(1), Datum::zero(1)};
  /// Catalog name when the data came from the catalog, otherwise "custom".
  std::string data_label = "custom";
  TimeGrid t_grid;
  QuadratureSpec quadrature;
  std::vector<std::string> checks;
  Outputs outputs;
  Debug debug;
};

/// Parses and validates a scenario. Unknown keys, wrong types and invalid
/// values raise ConfigError with the dotted path of the offending field.
///
/// {
///   "params":     {"n": 1, "m": 1.0, "beta": 0.1, "delta0": 0.5},
///   "data":       "gaussian",                 // catalog pair, or:
///   "u0": [{"c": 1, "a": 1, "x0": 0}], "u1": [...],
///   "t_grid":     {"t_min": 100, "t_max": 10000, "points_per_decade": 10,
///                  "samples_per_period": 16},
///   "quadrature": {"rel_tol": 1e-10, "abs_tol": 1e-15, "max_panels": 20000,
///                  "truncation_radius": "auto", "oscillation_resolution": 10},
///   "checks":     ["l2_rate", ...],           // default: every applicable check
///   "outputs":    {"dir": "out", "svg": false},
///   "debug":      {"certificate_scale": 1.0}
/// }
Scenario parse_scenario(const nlohmann::json& config);
Scenario load_scenario(const std::filesystem::path& path);

/// Normalised echo of a scenario (defaults filled in); parses back to the
/// same scenario.
nlohmann::json to_json(const Scenario& sc);

}  // namespace dkg::runner
