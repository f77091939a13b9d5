#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ptshock/charges.hpp"
#include "ptshock/characteristics.hpp"
#include "ptshock/deformation_map.hpp"
#include "ptshock/direct_solver.hpp"
#include "ptshock/io.hpp"
#include "ptshock/scenarios.hpp"
#include "ptshock/shock_finder.hpp"

using namespace ptshock;

namespace {

struct CliError {
  int code;
  std::string kind;
  std::string message;
};

struct WindowOpts {
  double x_min = -6.0;
  double x_max = 6.0;
  int points = 4001;

  GridSpec grid() const { return GridSpec(x_min, x_max, points); }
  void attach(CLI::App* cmd) {
    cmd->add_option("--xmin", x_min, "Window lower edge")->capture_default_str();
    cmd->add_option("--xmax", x_max, "Window upper edge")->capture_default_str();
    cmd->add_option("--points", points, "Grid points")->capture_default_str();
  }
};

FSpec make_f(long n, const std::string& f_expr) {
  if (!f_expr.empty()) return FSpec::expression(parse(f_expr));
  return FSpec::power(n);
}

void print_events(const std::vector<ShockEvent>& events, bool as_json) {
  if (as_json) {
    Json arr = Json::array();
    for (const auto& e : events) arr.push_back(to_json(e));
    std::cout << arr.dump(2) << "\n";
    return;
  }
  std::printf("%-14s %-14s %-14s\n", "t_s", "x_s", "x0");
  for (const auto& e : events)
    std::printf("%-14.8g %-14.8g %-14.8g\n", e.t_s, e.x_s, e.x0_seed.real());
}

int cmd_shock_times(const std::string& u0_expr, const std::string& w0_expr,
                    long n, const std::string& f_expr, double eps,
                    const std::vector<double>& eps_list, const WindowOpts& win,
                    bool as_json) {
  if (u0_expr.empty() == w0_expr.empty())
    throw CliError{2, "usage", "provide exactly one of --u0 or --w0"};
  if (!eps_list.empty()) {
    if (u0_expr.empty())
      throw CliError{2, "usage", "--eps-list needs --u0 (deformed side)"};
    ProfileAst u0 = parse(u0_expr);
    std::printf("%-6s %-12s %-12s %-12s %-12s\n", "eps", "t_s1", "t_s2", "x_s1",
                "x_s2");
    for (double e : eps_list) {
      DeformedSystem sys(e, make_f(n, f_expr));
      auto events = deformed_shock_time(u0, sys, win.grid());
      if (events.size() < 2)
        throw CliError{1, "domain",
                       "fewer than two events for eps=" + std::to_string(e)};
      std::printf("%-6g %-12.6g %-12.6g %-12.6g %-12.6g\n", e, events[0].t_s,
                  events[1].t_s, events[0].x_s, events[1].x_s);
    }
    return 0;
  }
  std::vector<ShockEvent> events;
  if (!u0_expr.empty()) {
    DeformedSystem sys(eps, make_f(n, f_expr));
    events = deformed_shock_time(parse(u0_expr), sys, win.grid());
  } else {
    events = find_shock_events(parse(w0_expr), make_f(n, f_expr), win.grid());
  }
  print_events(events, as_json);
  return 0;
}

int cmd_evolve(const std::string& w0_expr, long n, const std::string& f_expr,
               const std::vector<double>& times, const WindowOpts& win,
               const std::string& out_dir) {
  ProfileAst w0 = parse(w0_expr);
  FSpec f = make_f(n, f_expr);
  std::filesystem::create_directories(out_dir);
  for (std::size_t j = 0; j < times.size(); ++j) {
    auto bs = enumerate_branches(w0, f, win.grid(), times[j]);
    std::string path = out_dir + "/branches_" + std::to_string(j) + ".csv";
    write_branchset_csv(path, bs);
    std::cout << path << " (t=" << times[j]
              << ", branches=" << bs.branch_count() << ")\n";
    for (const auto& warn : bs.warnings) std::cerr << "warning: " << warn << "\n";
  }
  return 0;
}

int cmd_transform(const std::string& direction, const std::string& profile_expr,
                  double eps, long n, double bc_re, double bc_im,
                  const WindowOpts& win, const std::string& out_path) {
  ProfileAst profile = parse(profile_expr);
  GridSpec grid = win.grid();
  if (direction == "w-from-u") {
    DeformedSystem sys(eps, FSpec::power(n));
    MappedField w = map_w_from_u(profile, sys, grid);
    std::vector<Complex> zeros(w.x.size());
    write_field_csv(out_path, w.x, w.w, zeros);
  } else if (direction == "u-from-w") {
    FieldFn field{[profile](double x) { return profile.eval(Complex(x)); },
                  [profile](double x) {
                    return profile.eval(Jet2::variable(Complex(x))).derivative(1);
                  }};
    UField u = map_u_from_w(field, eps, Complex(bc_re, bc_im), grid);
    write_field_csv(out_path, u.x, u.u, u.u_x);
    for (const auto& warn : u.warnings) std::cerr << "warning: " << warn << "\n";
  } else {
    throw CliError{2, "usage", "direction must be u-from-w or w-from-u"};
  }
  std::cout << out_path << "\n";
  return 0;
}

int cmd_charges(const std::string& w0_expr, long n, const std::string& f_expr,
                const std::vector<double>& kappas, const std::vector<double>& times,
                const WindowOpts& win, const std::string& out_path, bool as_json) {
  ProfileAst w0 = parse(w0_expr);
  auto report = drift_report(w0, make_f(n, f_expr), kappas, times, win.grid());
  if (as_json) {
    std::cout << to_json(report).dump(2) << "\n";
  } else {
    std::printf("%-10s %-10s %-16s %-16s %s\n", "t", "kappa", "re_I", "im_I",
                "post_shock");
    for (const auto& s : report.samples)
      std::printf("%-10g %-10g %-16.10g %-16.10g %d\n", s.t, s.kappa,
                  s.value.real(), s.value.imag(), s.post_shock ? 1 : 0);
    for (const auto& [kappa, d] : report.drift)
      std::printf("drift kappa=%g: %.3g\n", kappa, d);
  }
  if (!out_path.empty()) write_charges_csv(out_path, report);
  return 0;
}

int cmd_complex_roots(const std::string& w0_expr, long n, const std::string& f_expr,
                      const BoxSpec& box, bool as_json) {
  ProfileAst w0 = parse(w0_expr);
  auto report = complex_shock_roots(w0, make_f(n, f_expr), box);
  for (const auto& warn : report.warnings) std::cerr << "note: " << warn << "\n";
  if (report.real_degenerate) {
    print_events(report.real_events, as_json);
    return 0;
  }
  if (as_json) {
    Json arr = Json::array();
    for (const auto& r : report.roots)
      arr.push_back({{"x0", to_json(r.x0)}, {"t_s", r.t_s}, {"x_s", r.x_s}});
    std::cout << arr.dump(2) << "\n";
    return 0;
  }
  std::printf("%-24s %-12s %-12s\n", "x0", "t_s", "x_s");
  for (const auto& r : report.roots)
    std::printf("%.6g%+.6gi%*s %-12.6g %-12.6g\n", r.x0.real(), r.x0.imag(), 4, "",
                r.t_s, r.x_s);
  return 0;
}

int cmd_scenario(const std::string& name, const std::string& out_dir, bool as_json) {
  ScenarioOptions opts;
  opts.output_dir = out_dir;
  std::vector<ScenarioReport> reports;
  if (name == "all")
    reports = run_all(opts);
  else
    reports.push_back(run_scenario(name, opts));
  bool all_pass = true;
  if (as_json) {
    Json arr = Json::array();
    for (const auto& r : reports) {
      arr.push_back(to_json(r));
      all_pass = all_pass && r.pass;
    }
    std::cout << arr.dump(2) << "\n";
  } else {
    for (const auto& r : reports) {
      std::printf("%s: %s\n", r.name.c_str(), r.pass ? "pass" : "FAIL");
      for (const auto& c : r.checks)
        std::printf("  %-34s %-6s computed=%.10g expected=%.10g tol=%g%s\n",
                    c.name.c_str(), c.pass ? "ok" : "FAIL", c.computed, c.expected,
                    c.tolerance, c.relative ? " (rel)" : "");
      for (const auto& a : r.artifacts) std::printf("  wrote %s\n", a.c_str());
      all_pass = all_pass && r.pass;
    }
  }
  return all_pass ? 0 : 3;
}

void show_config(const WindowOpts& win) {
  std::printf("xmin=%g\nxmax=%g\npoints=%d\n", win.x_min, win.x_max, win.points);
  std::printf("eps=1\nn=1\n");
  std::printf("shock_scan_points=4001\nshock_gradient_tol=1e-12\n");
  std::printf("quadrature_abs_tol=1e-10\ncharge_tail_bound=1e-8\n");
  std::printf("map_tail_bound=1e-10\ncomplex_box=[-3,3]x[-3,3]\n");
  std::printf("complex_seed_lattice=41x41\nnewton_max_iter=60\n");
  std::printf("dedupe_radius=1e-6\nsolver_agreement=1e-5\nblowup_limit=1e6\n");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shock and peak analysis for PT-deformed inviscid Burgers flows"};
  app.set_config("--config", "", "INI config file; explicit flags win");
  bool json_errors = false;
  bool as_json = false;
  bool dump_config = false;
  app.add_flag("--json-errors", json_errors, "Report errors as JSON on stderr");
  app.add_flag("--json", as_json, "Print results as JSON");
  app.add_flag("--show-config", dump_config, "Print all defaults and exit");

  std::string u0_expr, w0_expr, f_expr, profile_expr, direction;
  std::string out_dir = "out", out_path = "field.csv";
  long n = 1;
  double eps = 1.0, bc_re = 0.0, bc_im = 0.0;
  std::vector<double> times, kappas{1.0, 2.0}, eps_list;
  WindowOpts win;
  BoxSpec box;
  std::string scenario_name;

  auto* shock = app.add_subcommand("shock-times", "Predict shock/peak events");
  shock->add_option("--u0", u0_expr, "Deformed-side initial profile");
  shock->add_option("--w0", w0_expr, "Undeformed-side initial profile");
  shock->add_option("--eps", eps, "Deformation parameter")->capture_default_str();
  shock->add_option("--eps-list", eps_list, "Print a table over these eps values");
  shock->add_option("--n", n, "Power-law exponent of f")->capture_default_str();
  shock->add_option("--f-expr", f_expr, "Explicit f(w) expression");
  win.attach(shock);

  auto* evolve = app.add_subcommand("evolve", "Evolve by characteristics");
  evolve->add_option("--w0", w0_expr, "Initial profile")->required();
  evolve->add_option("--times", times, "Output times")->required();
  evolve->add_option("--n", n, "Power-law exponent of f")->capture_default_str();
  evolve->add_option("--f-expr", f_expr, "Explicit f(w) expression");
  evolve->add_option("--out", out_dir, "Output directory")->capture_default_str();
  win.attach(evolve);

  auto* transform = app.add_subcommand("transform", "Apply the deformation map");
  transform->add_option("--direction", direction, "u-from-w or w-from-u")
      ->required();
  transform->add_option("--profile", profile_expr, "Input profile")->required();
  transform->add_option("--eps", eps, "Deformation parameter")->required();
  transform->add_option("--n", n, "Power-law exponent of f")->capture_default_str();
  transform->add_option("--bc-re", bc_re, "Boundary value, real part");
  transform->add_option("--bc-im", bc_im, "Boundary value, imaginary part");
  transform->add_option("--out", out_path, "Output CSV")->capture_default_str();
  win.attach(transform);

  auto* charges_cmd = app.add_subcommand("charges", "Conserved quantities");
  charges_cmd->add_option("--w0", w0_expr, "Initial profile")->required();
  charges_cmd->add_option("--kappas", kappas, "Charge exponents")
      ->capture_default_str();
  charges_cmd->add_option("--times", times, "Sample times")->required();
  charges_cmd->add_option("--n", n, "Power-law exponent of f")
      ->capture_default_str();
  charges_cmd->add_option("--f-expr", f_expr, "Explicit f(w) expression");
  charges_cmd->add_option("--out", out_path, "Also write CSV here");
  win.attach(charges_cmd);

  auto* roots = app.add_subcommand("complex-roots", "Complex shock conditions");
  roots->add_option("--w0", w0_expr, "Initial profile")->required();
  roots->add_option("--n", n, "Power-law exponent of f")->capture_default_str();
  roots->add_option("--f-expr", f_expr, "Explicit f(w) expression");
  roots->add_option("--re-min", box.re_min, "Box")->capture_default_str();
  roots->add_option("--re-max", box.re_max, "Box")->capture_default_str();
  roots->add_option("--im-min", box.im_min, "Box")->capture_default_str();
  roots->add_option("--im-max", box.im_max, "Box")->capture_default_str();

  auto* scenario = app.add_subcommand("scenario", "Run a named case study");
  scenario->add_option("name", scenario_name, "Scenario name or 'all'")->required();
  scenario->add_option("--out", out_dir, "Artifact directory (empty: none)")
      ->capture_default_str();

  app.require_subcommand(0, 1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (dump_config) {
    show_config(win);
    return 0;
  }
  if (app.get_subcommands().empty()) {
    std::cerr << app.help();
    return 2;
  }

  auto fail = [&](int code, const std::string& kind, const std::string& msg) {
    if (json_errors)
      std::cerr << Json{{"error", msg}, {"kind", kind}}.dump() << "\n";
    else
      std::cerr << "error: " << msg << "\n";
    return code;
  };

  try {
    if (shock->parsed())
      return cmd_shock_times(u0_expr, w0_expr, n, f_expr, eps, eps_list, win,
                             as_json);
    if (evolve->parsed())
      return cmd_evolve(w0_expr, n, f_expr, times, win, out_dir);
    if (transform->parsed())
      return cmd_transform(direction, profile_expr, eps, n, bc_re, bc_im, win,
                           out_path);
    if (charges_cmd->parsed())
      return cmd_charges(w0_expr, n, f_expr, kappas, times, win, out_path, as_json);
    if (roots->parsed())
      return cmd_complex_roots(w0_expr, n, f_expr, box, as_json);
    if (scenario->parsed())
      return cmd_scenario(scenario_name, out_dir, as_json);
  } catch (const CliError& e) {
    return fail(e.code, e.kind, e.message);
  } catch (const ParseError& e) {
    return fail(2, "syntax", e.what());
  } catch (const DomainError& e) {
    return fail(1, "domain", e.what());
  } catch (const QuadratureError& e) {
    return fail(1, "quadrature", e.what());
  } catch (const EvalError& e) {
    return fail(1, "evaluation", e.what());
  } catch (const std::exception& e) {
    return fail(1, "internal", e.what());
  }
  return 2;
}
