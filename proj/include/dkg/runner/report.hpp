#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "json.hpp"

#include "dkg/runner/checks.hpp"
#include "dkg/runner/scenario.hpp"

namespace dkg::runner {

inline constexpr const char* kVersion = "1.0.0";

/// Outcome of a suite: one record per requested check.
struct VerificationReport {
  Scenario scenario;
  std::uint64_t seed = 0;
  std::vector<CheckRecord> records;

  /// True when no record has status fail.
  bool passed() const;
};

/// Runs every check of the scenario. Records are ordered by name.
VerificationReport run_suite(Workspace& ws);

/// Report document: version, seed, scenario echo, records, fitted tail rates
/// (omega, kappa), the optimality details and status counts. No timestamps,
/// so identical inputs give identical bytes.
nlohmann::json to_json(const VerificationReport& r);

/// Pretty-printed JSON followed by a newline.
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace dkg::runner
