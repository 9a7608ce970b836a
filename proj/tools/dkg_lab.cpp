#include <iostream>
#include <string>
#include <thread>

#include "CLI11.hpp"

#include "dkg/runner/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Strongly damped Klein-Gordon verification lab"};
  app.require_subcommand(1);

  std::string config;
  std::string out_dir;
  bool svg = false;
  int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::uint64_t seed = 0;

  const std::pair<const char*, const char*> commands[] = {
      {"simulate", "compute norm series, run the checks, write artifacts (exit 0)"},
      {"verify", "as simulate, exit 1 when a check fails"},
      {"compare-massless", "compare the scenario with its m = 0 copy"},
      {"probe-appendix", "measure the oscillation amplitude of I(t)"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("config", config, "scenario JSON file")->required();
    sub->add_option("--out-dir", out_dir, "output directory (overrides outputs.dir)");
    sub->add_flag("--svg", svg, "write log-log SVG plots");
    sub->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--seed", seed, "seed for randomized checks");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : dkg::runner::kConfigError;
  }

  dkg::runner::RunOptions opt;
  if (!out_dir.empty()) opt.out_dir = out_dir;
  opt.svg = svg;
  opt.threads = threads;
  opt.seed = seed;
  const std::string command = app.get_subcommands().front()->get_name();
  return dkg::runner::run_command(command, config, opt, std::cout, std::cerr);
}
