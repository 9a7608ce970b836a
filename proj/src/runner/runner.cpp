#include "dkg/runner/runner.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "dkg/errors.hpp"
#include "dkg/runner/checks.hpp"
#include "dkg/runner/report.hpp"
#include "dkg/runner/scenario.hpp"
#include "dkg/runner/svg_plot.hpp"

namespace dkg::runner {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::ostream* g_out = &std::cout;

fs::path prepare_dir(const Scenario& sc, const RunOptions& opt) {
  const fs::path dir = opt.out_dir ? *opt.out_dir : fs::path(sc.outputs.dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + dir.string() + "'");
  return dir;
}

bool want_svg(const Scenario& sc, const RunOptions& opt) { return opt.svg || sc.outputs.svg; }

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

/// Writes norms.csv rows; profile columns are empty when absent.
void write_norms_csv(const fs::path& path, const std::vector<double>& t,
                     const std::vector<SolutionNorms>& norms,
                     const std::vector<ProfileError>* profile) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  out << "t,l2,l2_err,grad,grad_err,ut,ut_err,energy,energy_err,profile_err2,profile_err2_err\n";
  for (std::size_t i = 0; i < norms.size(); ++i) {
    const auto& s = norms[i];
    out << num(t[i]) << ',' << num(s.l2.value) << ',' << num(s.l2.error) << ','
        << num(s.grad.value) << ',' << num(s.grad.error) << ',' << num(s.ut.value) << ','
        << num(s.ut.error) << ',' << num(s.energy.value) << ',' << num(s.energy.error) << ',';
    if (profile && i < profile->size()) {
      out << num((*profile)[i].total.value) << ',' << num((*profile)[i].total.error);
    } else {
      out << ',';
    }
    out << '\n';
  }
}

/// Solution series with the CSV rewritten after every chunk, so a numerical
/// failure leaves the rows computed so far on disk.
const std::vector<SolutionNorms>& stream_series(Workspace& ws, const fs::path& csv) {
  std::vector<SolutionNorms> done;
  write_norms_csv(csv, ws.times(), done, nullptr);
  ws.compute_solution_series([&](std::size_t, const std::vector<SolutionNorms>& part) {
    done.insert(done.end(), part.begin(), part.end());
    write_norms_csv(csv, ws.times(), done, nullptr);
  });
  return ws.solution_series();
}

std::vector<double> column(const std::vector<SolutionNorms>& s, Estimate SolutionNorms::*field) {
  std::vector<double> out;
  for (const auto& x : s) out.push_back((x.*field).value);
  return out;
}

void plot_norms(const fs::path& dir, const Scenario& sc, const std::vector<double>& t,
                const std::vector<SolutionNorms>& norms,
                const std::vector<ProfileError>* profile) {
  fs::create_directories(dir / "plots");
  const int n = sc.params.n;
  std::vector<GuideLine> guides;
  if (sc.params.m > 0.0) {
    guides.push_back({"slope -n/4", -0.25 * n});
  } else if (n == 1) {
    guides.push_back({"slope +1/2", 0.5});
  } else if (n >= 3) {
    guides.push_back({"slope -(n-2)/4", -0.25 * (n - 2)});
  }
  write_loglog_svg(dir / "plots" / "norms.svg", "solution norms",
                   {{"|u|", t, column(norms, &SolutionNorms::l2)},
                    {"|grad u|", t, column(norms, &SolutionNorms::grad)},
                    {"|u_t|", t, column(norms, &SolutionNorms::ut)}},
                   guides);
  if (profile) {
    std::vector<double> v;
    for (const auto& p : *profile) v.push_back(p.total.value);
    write_loglog_svg(dir / "plots" / "profile_error.svg", "squared profile error",
                     {{"|u - profile|^2", t, v}}, {{"slope -(n+2)/2", -0.5 * (n + 2)}});
  }
}

int run_scenario(const fs::path& config, const RunOptions& opt, bool strict) {
  const Scenario sc = load_scenario(config);
  const fs::path dir = prepare_dir(sc, opt);
  Workspace ws(sc, opt.threads, opt.seed);
  const auto& norms = stream_series(ws, dir / "norms.csv");
  const std::vector<ProfileError>* profile = nullptr;
  if (sc.params.m > 0.0) profile = &ws.profile_series();
  write_norms_csv(dir / "norms.csv", ws.times(), norms, profile);
  if (want_svg(sc, opt)) plot_norms(dir, sc, ws.times(), norms, profile);

  const VerificationReport rep = run_suite(ws);
  write_json(dir / "report.json", to_json(rep));
  for (const auto& r : rep.records) {
    *g_out << std::left << std::setw(30) << r.name << ' ' << to_string(r.status) << "  "
           << std::setprecision(6) << r.measured_value << '\n';
  }
  *g_out << (rep.passed() ? "all checks passed" : "some checks FAILED") << '\n';
  return strict && !rep.passed() ? kCheckFailure : kPass;
}

}  // namespace

int simulate(const fs::path& config, const RunOptions& opt) {
  return run_scenario(config, opt, false);
}

int verify(const fs::path& config, const RunOptions& opt) {
  return run_scenario(config, opt, true);
}

int compare_massless(const fs::path& config, const RunOptions& opt) {
  const Scenario sc = load_scenario(config);
  if (!(sc.params.m > 0.0)) throw ConfigError("params.m: compare-massless requires m > 0");
  if (sc.t_grid.t_max < 100.0 * sc.t_grid.t_min) {
    throw ConfigError("t_grid: compare-massless fits slopes and needs t_max >= 100 t_min");
  }
  const fs::path dir = prepare_dir(sc, opt);
  Scenario massless = sc;
  massless.params = validate_params({sc.params.n, 0.0, sc.params.beta, sc.params.delta0});

  Workspace wm(sc, opt.threads, opt.seed);
  Workspace w0(massless, opt.threads, opt.seed);
  const auto& nm = stream_series(wm, dir / "norms_massive.csv");
  const auto& n0 = stream_series(w0, dir / "norms_massless.csv");

  const CheckRecord rm = run_check("l2_rate", wm);
  const CheckRecord r0 = run_check("massless_rate", w0);
  const bool passed = rm.status != Status::fail && r0.status != Status::fail;
  json j = {{"version", kVersion},
            {"seed", opt.seed},
            {"scenario", to_json(sc)},
            {"massive", to_json(rm)},
            {"massless", to_json(r0)},
            {"passed", passed}};
  write_json(dir / "comparison.json", j);
  if (want_svg(sc, opt)) {
    fs::create_directories(dir / "plots");
    const int n = sc.params.n;
    std::vector<GuideLine> guides{{"slope -n/4", -0.25 * n}};
    if (n == 1) guides.push_back({"slope +1/2", 0.5});
    if (n >= 3) guides.push_back({"slope -(n-2)/4", -0.25 * (n - 2)});
    write_loglog_svg(dir / "plots" / "compare_massless.svg", "|u|: massive vs massless",
                     {{"m = " + num(sc.params.m), wm.times(), column(nm, &SolutionNorms::l2)},
                      {"m = 0", w0.times(), column(n0, &SolutionNorms::l2)}},
                     guides);
  }
  *g_out << "massive  " << to_string(rm.status) << "  slope " << rm.measured_value << '\n'
         << "massless " << to_string(r0.status) << "  " << r0.measured_value << '\n';
  return passed ? kPass : kCheckFailure;
}

int probe_appendix(const fs::path& config, const RunOptions& opt) {
  Scenario sc = load_scenario(config);
  if (!(sc.params.m > 0.0)) throw ConfigError("params.m: probe-appendix requires m > 0");
  const fs::path dir = prepare_dir(sc, opt);
  const std::vector<double> grid = appendix_probe_grid(sc.params.m);
  const AppendixProbe p = appendix_probe(grid, sc.params.n, sc.params.m, sc.quadrature);
  {
    std::ofstream out(dir / "appendix.csv");
    if (!out) throw ConfigError("cannot write '" + (dir / "appendix.csv").string() + "'");
    out << "t,I\n";
    for (std::size_t i = 0; i < p.times.size(); ++i) {
      out << num(p.times[i]) << ',' << num(p.values[i]) << '\n';
    }
  }
  sc.checks = {"oscillation_amplitude_probe"};
  Workspace ws(sc, opt.threads, opt.seed);
  const VerificationReport rep = run_suite(ws);
  write_json(dir / "report.json", to_json(rep));
  if (want_svg(sc, opt)) {
    fs::create_directories(dir / "plots");
    std::vector<double> mag;
    for (double v : p.values) mag.push_back(std::abs(v));
    write_loglog_svg(dir / "plots" / "appendix.svg", "|I(t)|", {{"|I(t)|", p.times, mag}},
                     {{"slope 0", 0.0}});
  }
  *g_out << "measured amplitude  " << p.measured_amplitude << '\n'
         << "predicted amplitude " << p.predicted_amplitude << '\n'
         << "bound violations    " << p.bound_violations << " of " << p.bound_samples << '\n';
  return kPass;
}

int run_command(const std::string& command, const fs::path& config, const RunOptions& opt,
                std::ostream& out, std::ostream& err) {
  g_out = &out;
  try {
    if (command == "simulate") return simulate(config, opt);
    if (command == "verify") return verify(config, opt);
    if (command == "compare-massless") return compare_massless(config, opt);
    if (command == "probe-appendix") return probe_appendix(config, opt);
    throw ConfigError("unknown command '" + command + "'");
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kNumericalError;
  }
}

}  // namespace dkg::runner
