#include "dkg/runner/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "dkg/errors.hpp"
#include "dkg/runner/checks.hpp"

namespace dkg::runner {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError(path + ": " + what);
}

void reject_unknown(const json& obj, const std::string& path,
                    std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      fail(path.empty() ? key : path + "." + key, "unknown key");
    }
  }
}

const json& require_object(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  return j;
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

int integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

template <class T, class F>
void optional_field(const json& obj, const char* key, const std::string& path, T& target,
                    F&& convert) {
  if (auto it = obj.find(key); it != obj.end()) target = convert(*it, path + "." + key);
}

std::vector<GaussianTerm> parse_terms(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected a list of {c, a, x0} objects");
  std::vector<GaussianTerm> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    require_object(j[i], p);
    reject_unknown(j[i], p, {"c", "a", "x0"});
    GaussianTerm g;
    if (!j[i].contains("c")) fail(p + ".c", "missing");
    if (!j[i].contains("a")) fail(p + ".a", "missing");
    g.c = number(j[i]["c"], p + ".c");
    g.a = number(j[i]["a"], p + ".a");
    optional_field(j[i], "x0", p, g.x0, number);
    out.push_back(g);
  }
  return out;
}

Datum make_datum(int n, const json& j, const std::string& path) {
  std::vector<GaussianTerm> terms = parse_terms(j, path);
  try {
    return Datum(n, std::move(terms));
  } catch (const ConfigError& e) {
    fail(path, e.what());
  }
}

json terms_json(const Datum& d) {
  json arr = json::array();
  for (const auto& g : d.terms()) arr.push_back({{"c", g.c}, {"a", g.a}, {"x0", g.x0}});
  return arr;
}

}  // namespace

Scenario parse_scenario(const json& config) {
  require_object(config, "config");
  reject_unknown(config, "",
                 {"params", "data", "u0", "u1", "t_grid", "quadrature", "checks", "outputs",
                  "debug"});
  Scenario sc;

  if (!config.contains("params")) fail("params", "missing");
  const json& pj = require_object(config["params"], "params");
  reject_unknown(pj, "params", {"n", "m", "beta", "delta0"});
  RawModelParams raw;
  optional_field(pj, "n", "params", raw.n, integer);
  optional_field(pj, "m", "params", raw.m, number);
  optional_field(pj, "beta", "params", raw.beta, number);
  if (pj.contains("delta0")) raw.delta0 = number(pj["delta0"], "params.delta0");
  try {
    sc.params = validate_params(raw);
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("params.") + e.what());
  }
  const int n = sc.params.n;

  const bool has_catalog = config.contains("data");
  const bool has_terms = config.contains("u0") || config.contains("u1");
  if (has_catalog && has_terms) fail("data", "give either a catalog name or u0/u1, not both");
  if (has_catalog) {
    if (!config["data"].is_string()) fail("data", "expected a catalog pair name");
    const std::string name = config["data"].get<std::string>();
    try {
      sc.pair = catalog::standard_pair(n, name);
    } catch (const ConfigError& e) {
      fail("data", e.what());
    }
    sc.data_label = name;
  } else {
    const Datum u0 = config.contains("u0") ? make_datum(n, config["u0"], "u0") : Datum::zero(n);
    const Datum u1 = config.contains("u1") ? make_datum(n, config["u1"], "u1") : Datum::zero(n);
    sc.pair = DatumPair(u0, u1);
  }

  if (config.contains("t_grid")) {
    const json& tj = require_object(config["t_grid"], "t_grid");
    reject_unknown(tj, "t_grid", {"t_min", "t_max", "points_per_decade", "samples_per_period"});
    optional_field(tj, "t_min", "t_grid", sc.t_grid.t_min, number);
    optional_field(tj, "t_max", "t_grid", sc.t_grid.t_max, number);
    optional_field(tj, "points_per_decade", "t_grid", sc.t_grid.points_per_decade, integer);
    optional_field(tj, "samples_per_period", "t_grid", sc.t_grid.samples_per_period, integer);
  }
  if (!(sc.t_grid.t_min > 0.0)) fail("t_grid.t_min", "must be > 0");
  if (!(sc.t_grid.t_max > sc.t_grid.t_min)) fail("t_grid.t_max", "must exceed t_min");
  if (sc.t_grid.points_per_decade < 4) fail("t_grid.points_per_decade", "must be >= 4");
  if (sc.t_grid.samples_per_period < 4) fail("t_grid.samples_per_period", "must be >= 4");

  if (config.contains("quadrature")) {
    const json& qj = require_object(config["quadrature"], "quadrature");
    reject_unknown(qj, "quadrature",
                   {"rel_tol", "abs_tol", "max_panels", "truncation_radius",
                    "oscillation_resolution"});
    optional_field(qj, "rel_tol", "quadrature", sc.quadrature.rel_tol, number);
    optional_field(qj, "abs_tol", "quadrature", sc.quadrature.abs_tol, number);
    optional_field(qj, "max_panels", "quadrature", sc.quadrature.max_panels, integer);
    optional_field(qj, "oscillation_resolution", "quadrature",
                   sc.quadrature.oscillation_resolution, number);
    if (qj.contains("truncation_radius")) {
      const json& r = qj["truncation_radius"];
      if (r.is_string()) {
        if (r.get<std::string>() != "auto") fail("quadrature.truncation_radius", "expected a number or \"auto\"");
      } else {
        sc.quadrature.truncation_radius = number(r, "quadrature.truncation_radius");
      }
    }
  }
  try {
    validate(sc.quadrature);
  } catch (const ConfigError& e) {
    fail("quadrature", e.what());
  }

  if (config.contains("checks")) {
    const json& cj = config["checks"];
    if (!cj.is_array()) fail("checks", "expected a list of check names");
    std::set<std::string> seen;
    for (std::size_t i = 0; i < cj.size(); ++i) {
      const std::string p = "checks[" + std::to_string(i) + "]";
      if (!cj[i].is_string()) fail(p, "expected a string");
      const std::string name = cj[i].get<std::string>();
      const CheckInfo* info = find_check(name);
      if (!info) fail(p, "unknown check '" + name + "'");
      if (!seen.insert(name).second) fail(p, "duplicate check '" + name + "'");
      if (info->mass == MassRequirement::massive && !(sc.params.m > 0.0)) {
        fail(p, "check '" + name + "' requires m > 0");
      }
      if (info->mass == MassRequirement::massless && sc.params.m != 0.0) {
        fail(p, "check '" + name + "' requires m = 0");
      }
      sc.checks.push_back(name);
    }
  } else {
    sc.checks = default_checks(sc.params);
  }
  for (const auto& name : sc.checks) {
    if (find_check(name)->slope && sc.t_grid.t_max < 100.0 * sc.t_grid.t_min) {
      fail("t_grid", "check '" + name + "' fits slopes and needs t_max >= 100 t_min");
    }
  }

  if (config.contains("outputs")) {
    const json& oj = require_object(config["outputs"], "outputs");
    reject_unknown(oj, "outputs", {"dir", "svg"});
    if (oj.contains("dir")) {
      if (!oj["dir"].is_string()) fail("outputs.dir", "expected a string");
      sc.outputs.dir = oj["dir"].get<std::string>();
    }
    if (oj.contains("svg")) {
      if (!oj["svg"].is_boolean()) fail("outputs.svg", "expected a boolean");
      sc.outputs.svg = oj["svg"].get<bool>();
    }
  }

  if (config.contains("debug")) {
    const json& dj = require_object(config["debug"], "debug");
    reject_unknown(dj, "debug", {"certificate_scale"});
    optional_field(dj, "certificate_scale", "debug", sc.debug.certificate_scale, number);
    if (!(sc.debug.certificate_scale > 0.0)) fail("debug.certificate_scale", "must be > 0");
  }
  return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return parse_scenario(j);
}

json to_json(const Scenario& sc) {
  json j;
  j["params"] = {{"n", sc.params.n},
                 {"m", sc.params.m},
                 {"beta", sc.params.beta},
                 {"delta0", sc.params.delta0}};
  if (sc.data_label == "custom") {
    j["u0"] = terms_json(sc.pair.u0);
    j["u1"] = terms_json(sc.pair.u1);
  } else {
    j["data"] = sc.data_label;
  }
  j["t_grid"] = {{"t_min", sc.t_grid.t_min},
                 {"t_max", sc.t_grid.t_max},
                 {"points_per_decade", sc.t_grid.points_per_decade},
                 {"samples_per_period", sc.t_grid.samples_per_period}};
  json q = {{"rel_tol", sc.quadrature.rel_tol},
            {"abs_tol", sc.quadrature.abs_tol},
            {"max_panels", sc.quadrature.max_panels},
            {"oscillation_resolution", sc.quadrature.oscillation_resolution}};
  if (sc.quadrature.truncation_radius) {
    q["truncation_radius"] = *sc.quadrature.truncation_radius;
  } else {
    q["truncation_radius"] = "auto";
  }
  j["quadrature"] = q;
  j["checks"] = sc.checks;
  j["outputs"] = {{"dir", sc.outputs.dir}, {"svg", sc.outputs.svg}};
  j["debug"] = {{"certificate_scale", sc.debug.certificate_scale}};
  return j;
}

}  // namespace dkg::runner
