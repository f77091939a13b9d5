#pragma once

#include <string>

#include "ptshock/model.hpp"

namespace ptshock {

struct CheckResult {
  std::string name;
  double computed = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  bool relative = false;
  bool pass = false;
};

struct ScenarioReport {
  std::string name;
  std::vector<CheckResult> checks;
  bool pass = true;
  std::vector<std::string> artifacts;  // CSV files written, if any
  std::vector<std::string> notes;
};

Json to_json(const ScenarioReport& r);

std::vector<std::string> scenario_names();

struct ScenarioOptions {
  std::string output_dir;  // empty: compute only, write nothing
};

/// Run one named case study end to end (profiles, maps, shock finding,
/// evolution, transforms, charges) and compare against the expected values
/// embedded with each scenario.
ScenarioReport run_scenario(const std::string& name, const ScenarioOptions& opts = {});
std::vector<ScenarioReport> run_all(const ScenarioOptions& opts = {});

// Exact expectations for the transformed-Cauchy eps=3 case, evaluated from
// their closed forms at full double precision.
double cauchy_eps3_t_s1();
double cauchy_eps3_t_s2();
double cauchy_eps3_x_s1();
double cauchy_eps3_x_s2();
double cauchy_eps3_x0_1();
double cauchy_eps3_x0_2();

}  // namespace ptshock
