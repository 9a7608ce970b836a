#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"

#include "dkg/errors.hpp"
#include "dkg/runner/checks.hpp"
#include "dkg/runner/report.hpp"
#include "dkg/runner/runner.hpp"
#include "dkg/runner/scenario.hpp"
#include "dkg/runner/svg_plot.hpp"

using namespace dkg;
using namespace dkg::runner;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string config_error(const json& j) {
  try {
    parse_scenario(j);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("dkg_runner_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

fs::path write_config(const fs::path& dir, const json& j) {
  const fs::path p = dir / "config.json";
  std::ofstream(p) << j.dump();
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("scenario defaults and echo") {
  const Scenario sc = parse_scenario(json::parse(R"({"params": {"n": 1, "m": 1}, "data": "gaussian"})"));
  CHECK(sc.params.delta0 == 0.5);
  CHECK(sc.t_grid.t_min == 100.0);
  CHECK(sc.checks == default_checks(sc.params));
  CHECK(sc.data_label == "gaussian");
  const json echo = to_json(sc);
  const Scenario again = parse_scenario(echo);
  CHECK(to_json(again) == echo);
}

TEST_CASE("scenario schema errors name the field") {
  CHECK(config_error(json::parse(R"({"params": {"n": 1, "m": 1, "beta": 1.5}})")).find("params.beta") == 0);
  CHECK(config_error(json::parse(R"({"params": {"n": 1}, "extra": 1})")).find("extra") == 0);
  CHECK(config_error(json::parse(R"({"params": {"n": 1}, "t_grid": {"tmin": 1}})")).find("t_grid.tmin") == 0);
  CHECK(config_error(json::parse(R"({"params": {"n": 1}, "t_grid": {"points_per_decade": 3}})"))
            .find("t_grid.points_per_decade") == 0);
  CHECK(config_error(json::parse(R"({"params": {"n": 1}, "t_grid": {"t_min": 0}})")).find("t_grid.t_min") == 0);
  CHECK(config_error(json::parse(R"({"params": {"n": 1}, "checks": ["nope"]})")).find("checks[0]") == 0);
  CHECK(config_error(json::parse(R"({"params": {"n": 1}, "checks": ["l2_rate", "l2_rate"]})"))
            .find("checks[1]") == 0);
  CHECK(config_error(json::parse(R"({"params": {"n": 1, "m": 0}, "checks": ["l2_rate"]})"))
            .find("checks[0]") == 0);
  CHECK(config_error(json::parse(R"({"params": {"n": 1, "m": 1}, "checks": ["massless_rate"]})"))
            .find("checks[0]") == 0);
  CHECK(config_error(json::parse(R"({"params": {"n": 1}, "checks": ["l2_rate"], "t_grid": {"t_max": 1000}})"))
            .find("t_grid") == 0);
  CHECK(config_error(json::parse(R"({"params": {"n": 2}, "data": "dipole"})")).find("data") == 0);
  CHECK(config_error(json::parse(R"({"params": {"n": 1}, "data": "gaussian", "u0": []})")).find("data") == 0);
  CHECK(config_error(json::parse(R"({"params": {"n": 1}, "u0": [{"c": 1, "a": -1}]})")).find("u0") == 0);
  CHECK(config_error(json::parse(R"({"params": {"n": 1}, "u0": [{"c": 1}]})")).find("u0[0].a") == 0);
  CHECK(config_error(json::parse(R"({"params": {"n": 1}, "quadrature": {"truncation_radius": "big"}})"))
            .find("quadrature.truncation_radius") == 0);
  CHECK(config_error(json::parse(R"({"params": {"n": 1}, "debug": {"certificate_scale": 0}})"))
            .find("debug.certificate_scale") == 0);
  CHECK(config_error(json::parse(R"({"params": {"n": 1}, "outputs": {"svg": "yes"}})")).find("outputs.svg") == 0);
  CHECK(config_error(json::parse(R"({"data": "gaussian"})")).find("params") == 0);
  CHECK(config_error(json::parse(R"([1, 2])")).find("config") == 0);
}

TEST_CASE("check catalog") {
  std::set<std::string_view> names;
  for (const auto& c : check_catalog()) CHECK(names.insert(c.name).second);
  CHECK(find_check("decay_envelope") != nullptr);
  CHECK(find_check("nope") == nullptr);
  const auto massless = default_checks({1, 0.0, 0.1, 0.5});
  CHECK(std::find(massless.begin(), massless.end(), "massless_rate") != massless.end());
  CHECK(std::find(massless.begin(), massless.end(), "l2_rate") == massless.end());
  const auto massive = default_checks({1, 1.0, 0.1, 0.5});
  CHECK(std::find(massive.begin(), massive.end(), "massless_rate") == massive.end());
  CHECK(massive.size() + 1 == check_catalog().size());
}

TEST_CASE("checks on zero data pass vacuously") {
  const Scenario sc = parse_scenario(json::parse(R"({"params": {"n": 2, "m": 1}})"));
  Workspace ws(sc, 2, 0);
  const VerificationReport r = run_suite(ws);
  CHECK(r.records.size() == sc.checks.size());
  CHECK(r.passed());
  for (const auto& rec : r.records) CHECK(rec.status != Status::fail);
}

TEST_CASE("report assembly") {
  const Scenario sc = parse_scenario(json::parse(
      R"({"params": {"n": 1, "m": 1}, "data": "gaussian",
          "checks": ["pointwise_decay", "energy_sandwich", "oscillation_amplitude_probe"]})"));
  Workspace ws(sc, 1, 3);
  const VerificationReport r = run_suite(ws);
  REQUIRE(r.records.size() == 3);
  CHECK(r.records[0].name == "energy_sandwich");
  CHECK(r.records[1].name == "oscillation_amplitude_probe");
  CHECK(r.records[1].status == Status::measured);
  CHECK(r.records[2].name == "pointwise_decay");
  const json j = to_json(r);
  CHECK(j["version"] == kVersion);
  CHECK(j["seed"] == 3);
  CHECK(j["summary"]["measured"] == 1);
  CHECK(j["summary"]["pass"] == 2);
  CHECK(j["summary"]["passed"] == true);
  CHECK(j["tail_rates"]["omega"].is_null());
  CHECK(j["checks"][1]["margin"].is_null());
  for (const auto& c : j["checks"]) {
    const std::string s = c["status"];
    CHECK((s == "pass" || s == "fail" || s == "measured"));
  }
}

TEST_CASE("svg plot is self-contained and draws only input points") {
  const std::string svg = loglog_svg("t<est>", {{"a", {1.0, 10.0, 100.0, 0.0}, {1.0, 0.1, 0.01, 5.0}}},
                                     {{"slope -1", -1.0}});
  CHECK(svg.find("<svg") == 0);
  CHECK(svg.find("href") == std::string::npos);
  CHECK(svg.find("t&lt;est&gt;") != std::string::npos);
  const auto start = svg.find("points=\"") + 8;
  const std::string pts = svg.substr(start, svg.find('"', start) - start);
  CHECK(std::count(pts.begin(), pts.end(), ',') == 3);
}

TEST_CASE("run_command artifacts, exit codes and determinism") {
  const fs::path dir = scratch("cmd");
  const fs::path cfg = write_config(
      dir, json::parse(R"({"params": {"n": 1, "m": 1}, "data": "gaussian",
                          "t_grid": {"t_min": 100, "t_max": 10000, "points_per_decade": 5,
                                     "samples_per_period": 8}})"));
  std::ostringstream out;
  std::ostringstream err;
  RunOptions a;
  a.out_dir = dir / "a";
  a.svg = true;
  a.threads = 1;
  CHECK(run_command("verify", cfg, a, out, err) == kPass);
  CHECK(fs::exists(dir / "a" / "norms.csv"));
  CHECK(fs::exists(dir / "a" / "report.json"));
  CHECK(fs::exists(dir / "a" / "plots" / "norms.svg"));
  CHECK(fs::exists(dir / "a" / "plots" / "profile_error.svg"));

  RunOptions b = a;
  b.out_dir = dir / "b";
  b.threads = 4;
  b.svg = false;
  CHECK(run_command("simulate", cfg, b, out, err) == kPass);
  CHECK(slurp(dir / "a" / "norms.csv") == slurp(dir / "b" / "norms.csv"));
  CHECK(slurp(dir / "a" / "report.json") == slurp(dir / "b" / "report.json"));

  const std::string csv = slurp(dir / "a" / "norms.csv");
  CHECK(csv.rfind("t,l2,l2_err,grad,grad_err,ut,ut_err,energy,energy_err,profile_err2,profile_err2_err\n", 0) == 0);

  CHECK(run_command("explode", cfg, a, out, err) == kConfigError);
  const fs::path bad = write_config(dir, json::parse(R"({"params": {"n": 1, "m": 1, "beta": 1.5}})"));
  std::ostringstream err2;
  CHECK(run_command("verify", bad, a, out, err2) == kConfigError);
  CHECK(err2.str().find("params.beta") != std::string::npos);
}

TEST_CASE("fault injection fails the decay certificate") {
  const fs::path dir = scratch("fault");
  const fs::path cfg = write_config(
      dir, json::parse(R"({"params": {"n": 1, "m": 1}, "data": "gaussian",
                          "checks": ["pointwise_decay", "energy_identity"],
                          "debug": {"certificate_scale": 0.5}})"));
  std::ostringstream out;
  std::ostringstream err;
  RunOptions o;
  o.out_dir = dir / "out";
  CHECK(run_command("verify", cfg, o, out, err) == kCheckFailure);
  CHECK(run_command("simulate", cfg, o, out, err) == kPass);
  const json rep = json::parse(slurp(dir / "out" / "report.json"));
  CHECK(rep["checks"][1]["name"] == "pointwise_decay");
  CHECK(rep["checks"][1]["status"] == "fail");
  CHECK(rep["checks"][0]["status"] == "pass");
}

TEST_CASE("quadrature failure leaves a partial CSV") {
  const fs::path dir = scratch("numerical");
  const fs::path cfg = write_config(
      dir, json::parse(R"({"params": {"n": 1, "m": 1}, "data": "gaussian", "quadrature": {"max_panels": 2}})"));
  std::ostringstream out;
  std::ostringstream err;
  RunOptions o;
  o.out_dir = dir / "out";
  CHECK(run_command("simulate", cfg, o, out, err) == kNumericalError);
  CHECK(slurp(dir / "out" / "norms.csv").rfind("t,l2", 0) == 0);
}
