#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace dkg::runner {

/// Command-line overrides shared by every subcommand.
struct RunOptions {
  std::optional<std::filesystem::path> out_dir;  ///< overrides outputs.dir
  bool svg = false;                              ///< ORed with outputs.svg
  int threads = 1;
  std::uint64_t seed = 0;
};

enum ExitCode : int { kPass = 0, kCheckFailure = 1, kConfigError = 2, kNumericalError = 3 };

/// norms.csv, report.json and plots; always kPass when the run completes.
int simulate(const std::filesystem::path& config, const RunOptions& opt);
/// Same artifacts as simulate; kCheckFailure when a check fails.
int verify(const std::filesystem::path& config, const RunOptions& opt);
/// Runs the scenario and a copy with m = 0; writes norms_massive.csv,
/// norms_massless.csv and comparison.json.
int compare_massless(const std::filesystem::path& config, const RunOptions& opt);
/// appendix.csv and report.json for the oscillation probe; never fails on values.
int probe_appendix(const std::filesystem::path& config, const RunOptions& opt);

/// Runs one subcommand by name, printing errors to `err` and mapping
/// ConfigError and NumericalError to their exit codes.
int run_command(const std::string& command, const std::filesystem::path& config,
                const RunOptions& opt, std::ostream& out, std::ostream& err);

}  // namespace dkg::runner
