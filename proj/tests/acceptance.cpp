// Acceptance gate for the whole pipeline: eleven end-to-end criteria, one
// pass/fail line each, nonzero exit when any of them fails. Tolerances are
// pinned here and in the scenario expectations; nothing is auto-relaxed.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "ptshock/characteristics.hpp"
#include "ptshock/charges.hpp"
#include "ptshock/deformation_map.hpp"
#include "ptshock/direct_solver.hpp"
#include "ptshock/model.hpp"
#include "ptshock/scenarios.hpp"
#include "ptshock/shock_finder.hpp"

using namespace ptshock;

namespace {

int failures = 0;

void report(int idx, const std::string& what, bool ok) {
  std::printf("%s  %2d. %s\n", ok ? "PASS" : "FAIL", idx, what.c_str());
  if (!ok) ++failures;
}

const CheckResult* find_check(const ScenarioReport& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return &c;
  return nullptr;
}

bool checks_pass(const ScenarioReport& r, const std::vector<std::string>& names) {
  for (const auto& n : names) {
    const CheckResult* c = find_check(r, n);
    if (!c || !c->pass) return false;
  }
  return true;
}

std::vector<Complex> sample_profile(const ProfileAst& p, const GridSpec& grid) {
  std::vector<Complex> out(grid.points);
  for (int j = 0; j < grid.points; ++j) out[j] = p.eval(Complex(grid.node(j)));
  return out;
}

// criterion 7: forward map of the deformed profile, inverse transform back,
// modulus compared against the generating field
bool round_trip_ok(double eps) {
  ProfileAst u0 = parse("1/(1+x^2)");
  DeformedSystem sys(eps, FSpec::power(1));
  auto jet = mapped_flux_jet(u0, sys);
  // where u_x vanishes the mapped value tends to zero but its jet involves
  // fractional powers of zero; substitute the limit
  auto value_or_zero = [jet](double x, int order) -> Complex {
    try {
      Jet4 j = jet(Complex(x));
      return order == 0 ? j.value() : j.derivative(1);
    } catch (const EvalError&) {
      return Complex(0.0);
    }
  };
  FieldFn w{[value_or_zero](double x) { return value_or_zero(x, 0); },
            [value_or_zero](double x) { return value_or_zero(x, 1); }};
  GridSpec grid(-5.0, 5.0, 1001);
  UField uf = map_u_from_w(w, eps, Complex(0.0), grid);
  double err = 0.0;
  for (int j = 0; j < grid.points; ++j) {
    double x = grid.node(j);
    err = std::max(err, std::abs(std::abs(uf.u[j]) - 1.0 / (1.0 + x * x)));
  }
  return err < 1e-6;
}

}  // namespace

int main() {
  std::setvbuf(stdout, nullptr, _IONBF, 0);
  std::map<std::string, ScenarioReport> rep;
  bool scenario_machinery_ok = true;
  for (const auto& name : scenario_names()) {
    try {
      rep[name] = run_scenario(name);
    } catch (const std::exception& e) {
      std::printf("scenario %s aborted: %s\n", name.c_str(), e.what());
      scenario_machinery_ok = false;
    }
  }
  auto scen = [&](const std::string& n) -> const ScenarioReport& { return rep[n]; };

  // 1. Transformed-Cauchy breaking events: machine-precision agreement with
  //    the closed forms and 1e-4 relative agreement with the quoted values.
  report(1, "transformed-Cauchy breaking times and positions",
         scenario_machinery_ok && rep.count("cauchy_eps3") &&
             checks_pass(scen("cauchy_eps3"),
                         {"event_count", "t_s1_closed_form", "t_s2_closed_form",
                          "x_s1_closed_form", "x_s2_closed_form", "t_s1", "t_s2",
                          "x_s1", "x_s2"}));

  // 2. Breaking-time table across the deformation-strength sweep, 1e-3 rel.
  report(2, "breaking-time table across deformation strengths",
         rep.count("eps_table") && scen("eps_table").pass);

  // 3. Gaussian-derived profile: t_s = 1/4 to 1e-8, x_s = 0 to 1e-6.
  report(3, "gaussian-profile breaking event",
         rep.count("gauss_eps2") && checks_pass(scen("gauss_eps2"), {"t_s", "x_s"}));

  // 4. Odd rational profile: t_s = 1/3 at the origin, slope blow-up.
  report(4, "odd-profile breaking event with slope blow-up",
         rep.count("rational_odd_shock") &&
             checks_pass(scen("rational_odd_shock"),
                         {"t_s", "x_s", "gradient_at_vanishing_integral"}));

  // 5. Complex profile at eps = 3/2: complex breaking roots, mirror pair,
  //    boundary constant, and the post-shock branch crossings, 1e-3.
  report(5, "complex-profile breaking suite at eps = 3/2",
         rep.count("complex_eps32") && scen("complex_eps32").pass);

  // 6. Two-peak profile: all four breaking events, 1e-3 relative.
  report(6, "two-peak profile event table",
         rep.count("multipeak_eps3") && scen("multipeak_eps3").pass);

  // 7. Round trip w -> u -> w at three deformation strengths, 1e-6 sup norm.
  {
    bool ok = true;
    for (double eps : {1.5, 2.0, 3.0}) ok = ok && round_trip_ok(eps);
    report(7, "map round trip at eps = 3/2, 2, 3", ok);
  }

  // 8. Route consistency: breaking data computed on the deformed side equals
  //    the transported undeformed computation to 1e-10.
  {
    bool ok = true;
    try {
      ProfileAst u0 = parse("1/(1+x^2)");
      ProfileAst w0 = parse("-12*x^2/(1+x^2)^5");
      GridSpec window(-6.0, 6.0, 4001);
      auto via_u = deformed_shock_time(u0, DeformedSystem(3.0, FSpec::power(1)), window);
      auto via_w = find_shock_events(w0, FSpec::power(1), window);
      ok = via_u.size() == 2 && via_w.size() == 2;
      for (std::size_t j = 0; ok && j < via_u.size(); ++j)
        ok = std::abs(via_u[j].t_s - via_w[j].t_s) < 1e-10 &&
             std::abs(via_u[j].x_s - via_w[j].x_s) < 1e-10;
    } catch (const std::exception&) {
      ok = false;
    }
    report(8, "deformed and transported breaking computations agree", ok);
  }

  // 9. Direct integrator against the characteristics route: 1e-3 sup norm at
  //    half the breaking time, and at least 8x error reduction under dx/2.
  {
    bool ok = true;
    try {
      ProfileAst u0 = parse("1/(1+x^2)");
      FSpec f = FSpec::power(1);
      GridSpec grid(-8.0, 8.0, 801);
      double t = 0.15;
      SolveResult r = integrate_deformed(sample_profile(u0, grid), grid,
                                         DeformedSystem(3.0, f), t, 2e-4, 0.3118);
      ProfileAst w0 = parse("-12*x^2/(1+x^2)^5");
      MarchedBranch wt(w0, f, t, -30.0, w0.eval(Complex(-30.0)), 30.0, 8001);
      FieldFn wf{[&](double x) { return wt(x); },
                 [&](double x) { return wt.derivative(x); }};
      UField uf = map_u_from_w(wf, 3.0, Complex(0.0), grid);
      double err = 0.0;
      for (int j = 40; j < grid.points - 40; ++j)
        err = std::max(err, std::abs(std::abs(r.u[j]) - std::abs(uf.u[j])));
      ok = !r.aborted && err < 1e-3;

      // spatial order probe on the transport limit, where the marched
      // branch is an independent exact solver
      MarchedBranch ref(u0, f, 0.1, -12.0, u0.eval(Complex(-12.0)), 12.0, 4001);
      auto err_for = [&](int n) {
        GridSpec g(-8.0, 8.0, n);
        SolveResult s = integrate_deformed(sample_profile(u0, g), g,
                                           DeformedSystem(1.0, f), 0.1, 1e-4);
        double e = 0.0;
        for (int j = g.points / 8; j < g.points - g.points / 8; ++j)
          e = std::max(e, std::abs(s.u[j] - ref(g.node(j))));
        return e;
      };
      ok = ok && err_for(401) / err_for(801) >= 8.0;
    } catch (const std::exception&) {
      ok = false;
    }
    report(9, "direct integrator matches the characteristics route", ok);
  }

  // 10. Conservation: integer charges drift below 1e-6 before breaking; after
  //     breaking the folded half-power charge stays within 1e-4 while the
  //     square charge genuinely drifts.
  {
    bool ok = true;
    try {
      ProfileAst w0 = parse("-12*x^2/(1+x^2)^5");
      GridSpec cw(-12.0, 12.0, 2001);
      auto drift = drift_report(w0, FSpec::power(1), {1.0, 2.0}, {0.0, 0.1, 0.2}, cw);
      for (const auto& [kappa, d] : drift.drift) ok = ok && d < 1e-6;
    } catch (const std::exception&) {
      ok = false;
    }
    ok = ok && rep.count("cauchy_eps3") &&
         checks_pass(scen("cauchy_eps3"),
                     {"pre_shock_drift_kappa_1", "pre_shock_drift_kappa_2",
                      "loop_removed", "folded_I_half_drift",
                      "folded_I_two_not_conserved"});
    report(10, "charge conservation before and after breaking", ok);
  }

  // 11. Blow-up classification: curvature for the even profiles and the
  //     two-peak events, gradient for the odd profile and at eps = 1.
  {
    bool ok = true;
    try {
      FSpec f = FSpec::power(1);
      GridSpec window(-4.0, 4.0, 401);
      auto kind_of = [&](const char* expr, double eps) {
        ProfileAst w0 = parse(expr);
        auto ev = find_shock_events(w0, f, window);
        return ev.empty() ? CatastropheKind::inconclusive
                          : classify_catastrophe(w0, f, eps, ev.front());
      };
      ok = kind_of("-12*x^2/(1+x^2)^5", 3.0) == CatastropheKind::curvature &&
           kind_of("-4*x*exp(-2*x^2)", 2.0) == CatastropheKind::curvature &&
           kind_of("-3*x*(1-x^2)^2/(1+x^2)^5", 3.0) == CatastropheKind::gradient &&
           kind_of("1/(1+x^2)", 1.0) == CatastropheKind::gradient;
    } catch (const std::exception&) {
      ok = false;
    }
    ok = ok && rep.count("multipeak_eps3") &&
         checks_pass(scen("multipeak_eps3"),
                     {"event_1_is_curvature", "event_2_is_curvature",
                      "event_3_is_curvature", "event_4_is_curvature"});
    report(11, "blow-up type classification across the catalog", ok);
  }

  std::printf("%s: %d of 11 criteria passed\n", failures == 0 ? "OK" : "FAILED",
              11 - failures);
  return failures == 0 ? 0 : 1;
}
