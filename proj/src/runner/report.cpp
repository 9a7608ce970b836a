#include "dkg/runner/report.hpp"

#include <algorithm>
#include <fstream>

#include "dkg/errors.hpp"

namespace dkg::runner {

using nlohmann::json;

bool VerificationReport::passed() const {
  return std::none_of(records.begin(), records.end(),
                      [](const CheckRecord& r) { return r.status == Status::fail; });
}

VerificationReport run_suite(Workspace& ws) {
  VerificationReport rep{ws.scenario(), ws.seed(), {}};
  std::vector<std::string> names = ws.scenario().checks;
  std::sort(names.begin(), names.end());
  for (const auto& name : names) rep.records.push_back(run_check(name, ws));
  return rep;
}

json to_json(const VerificationReport& r) {
  json j;
  j["version"] = kVersion;
  j["seed"] = r.seed;
  j["scenario"] = to_json(r.scenario);
  json checks = json::array();
  std::size_t pass = 0;
  std::size_t fail = 0;
  std::size_t measured = 0;
  json tail = {{"omega", nullptr}, {"kappa", nullptr}};
  json optimality = nullptr;
  for (const auto& rec : r.records) {
    checks.push_back(to_json(rec));
    switch (rec.status) {
      case Status::pass:
        ++pass;
        break;
      case Status::fail:
        ++fail;
        break;
      case Status::measured:
        ++measured;
        break;
    }
    if (rec.name == "high_frequency_tail" && rec.details.contains("omega")) {
      tail = {{"omega", rec.details["omega"]}, {"kappa", rec.details["kappa"]}};
    }
    if (rec.name == "l2_lower_envelope" && rec.details.contains("optimality")) {
      optimality = rec.details["optimality"];
    }
  }
  j["checks"] = checks;
  j["tail_rates"] = tail;
  j["optimality"] = optimality;
  j["summary"] = {{"pass", pass}, {"fail", fail}, {"measured", measured},
                  {"passed", r.passed()}};
  return j;
}

void write_json(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  out << j.dump(2) << '\n';
}

}  // namespace dkg::runner
