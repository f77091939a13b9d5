#include "ptshock/model.hpp"

namespace ptshock {

std::string to_string(CatastropheKind k) {
  switch (k) {
    case CatastropheKind::gradient: return "gradient";
    case CatastropheKind::curvature: return "curvature";
    case CatastropheKind::inconclusive: return "inconclusive";
    default: return "unknown";
  }
}

std::string to_string(SystemSide s) {
  return s == SystemSide::undeformed ? "undeformed" : "deformed";
}

Json to_json(const GridSpec& g) {
  return Json{{"x_min", g.x_min}, {"x_max", g.x_max}, {"points", g.points}};
}

Json to_json(const FSpec& f) {
  if (f.is_power()) return Json{{"power", f.power_n()}};
  return Json{{"expression", std::get<ProfileAst>(f.value).to_string()}};
}

Json to_json(const DeformedSystem& s) {
  return Json{{"epsilon", s.epsilon},
              {"f_spec", to_json(s.f)},
              {"phase_m", s.phase_m},
              {"phase_sign", s.phase_sign}};
}

Json to_json(const ShockEvent& e) {
  return Json{{"t_s", e.t_s},
              {"x_s", e.x_s},
              {"x0_seed", to_json(e.x0_seed)},
              {"kind", to_string(e.kind)},
              {"system", to_string(e.side)}};
}

Json to_json(const BranchSet& b) {
  Json nodes = Json::array();
  for (int j = 0; j < int(b.samples.size()); ++j) {
    Json roots = Json::array();
    for (const auto& s : b.samples[j])
      roots.push_back(Json{{"branch_id", s.branch_id}, {"w", to_json(s.w)}});
    nodes.push_back(Json{{"x", b.grid.node(j)}, {"roots", roots}});
  }
  return Json{{"grid", to_json(b.grid)},
              {"t", b.t},
              {"nodes", nodes},
              {"warnings", b.warnings}};
}

Json to_json(const ChargeReport& r) {
  Json samples = Json::array();
  for (const auto& s : r.samples)
    samples.push_back(Json{{"t", s.t},
                           {"kappa", s.kappa},
                           {"value", to_json(s.value)},
                           {"post_shock", s.post_shock}});
  Json drift = Json::array();
  for (const auto& [kappa, d] : r.drift)
    drift.push_back(Json{{"kappa", kappa}, {"drift", d}});
  return Json{{"samples", samples}, {"drift", drift}};
}

GridSpec grid_from_json(const Json& j) {
  return GridSpec(j.at("x_min").get<double>(), j.at("x_max").get<double>(),
                  j.at("points").get<int>());
}

FSpec fspec_from_json(const Json& j) {
  if (j.contains("power")) return FSpec::power(j.at("power").get<long>());
  return FSpec::expression(parse(j.at("expression").get<std::string>()));
}

DeformedSystem system_from_json(const Json& j) {
  return DeformedSystem(j.at("epsilon").get<double>(), fspec_from_json(j.at("f_spec")),
                        j.at("phase_m").get<int>(), j.at("phase_sign").get<int>());
}

ShockEvent shock_event_from_json(const Json& j) {
  ShockEvent e;
  e.t_s = j.at("t_s").get<double>();
  e.x_s = j.at("x_s").get<double>();
  e.x0_seed = complex_from_json(j.at("x0_seed"));
  std::string kind = j.at("kind").get<std::string>();
  e.kind = kind == "gradient"       ? CatastropheKind::gradient
           : kind == "curvature"    ? CatastropheKind::curvature
           : kind == "inconclusive" ? CatastropheKind::inconclusive
                                    : CatastropheKind::unknown;
  e.side = j.at("system").get<std::string>() == "deformed" ? SystemSide::deformed
                                                           : SystemSide::undeformed;
  return e;
}

}  // namespace ptshock
