#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ptshock/deformation_map.hpp"
#include "ptshock/direct_solver.hpp"

using namespace ptshock;

namespace {

std::vector<Complex> sample_profile(const ProfileAst& p, const GridSpec& grid) {
  std::vector<Complex> out(grid.points);
  for (int j = 0; j < grid.points; ++j) out[j] = p.eval(Complex(grid.node(j)));
  return out;
}

}  // namespace

TEST_CASE("zero horizon returns the initial data unchanged") {
  ProfileAst u0 = parse("1/(1+x^2)");
  GridSpec grid(-5.0, 5.0, 201);
  auto init = sample_profile(u0, grid);
  SolveResult r = integrate_deformed(init, grid, DeformedSystem(3.0, FSpec::power(1)),
                                     0.0, 1e-3);
  REQUIRE(r.u.size() == init.size());
  for (std::size_t j = 0; j < init.size(); ++j) CHECK(r.u[j] == init[j]);
  CHECK(r.t_reached == 0.0);
}

TEST_CASE("eps=1 evolution matches the characteristics solution") {
  // at eps=1 the deformed equation is plain transport; the marched branch
  // is an independent solver for the same problem
  ProfileAst u0 = parse("1/(1+x^2)");
  FSpec f = FSpec::power(1);
  GridSpec grid(-8.0, 8.0, 801);
  double t = 0.1;
  SolveResult r = integrate_deformed(sample_profile(u0, grid), grid,
                                     DeformedSystem(1.0, f), t, 2e-4);
  CHECK(!r.aborted);
  MarchedBranch ref(u0, f, t, -12.0, u0.eval(Complex(-12.0)), 12.0, 4001);
  double err = 0.0;
  for (int j = 40; j < grid.points - 40; ++j)
    err = std::max(err, std::abs(r.u[j] - ref(grid.node(j))));
  CHECK(err < 1e-4);
}

TEST_CASE("eps=3 evolution matches the transported map solution") {
  ProfileAst u0 = parse("1/(1+x^2)");
  FSpec f = FSpec::power(1);
  DeformedSystem sys(3.0, f);
  GridSpec grid(-8.0, 8.0, 801);
  double t = 0.15;  // well before the first breaking time 0.3118
  SolveResult r = integrate_deformed(sample_profile(u0, grid), grid, sys, t, 2e-4,
                                     0.31179100959255225);
  CHECK(!r.aborted);

  // reference: evolve w on the undeformed side, then invert the map
  ProfileAst w0 = parse("-12*x^2/(1+x^2)^5");
  MarchedBranch wt(w0, f, t, -30.0, w0.eval(Complex(-30.0)), 30.0, 8001);
  FieldFn wf{[&](double x) { return wt(x); },
             [&](double x) { return wt.derivative(x); }};
  UField uf = map_u_from_w(wf, 3.0, Complex(0.0), grid);

  double err = 0.0;
  for (int j = 40; j < grid.points - 40; ++j) {
    // the inverse map fixes the phase only up to a branch; compare moduli
    err = std::max(err, std::abs(std::abs(r.u[j]) - std::abs(uf.u[j])));
  }
  CHECK(err < 1e-3);
}

TEST_CASE("halving the time step cuts the error by the scheme order") {
  ProfileAst u0 = parse("1/(1+x^2)");
  FSpec f = FSpec::power(1);
  GridSpec grid(-8.0, 8.0, 401);
  double t = 0.1;
  MarchedBranch ref(u0, f, t, -12.0, u0.eval(Complex(-12.0)), 12.0, 4001);
  auto err_for = [&](double dx_scale) {
    GridSpec g(-8.0, 8.0, int(400 * dx_scale) + 1);
    SolveResult r = integrate_deformed(sample_profile(u0, g), g,
                                       DeformedSystem(1.0, f), t, 1e-4);
    double e = 0.0;
    for (int j = g.points / 8; j < g.points - g.points / 8; ++j)
      e = std::max(e, std::abs(r.u[j] - ref(g.node(j))));
    return e;
  };
  double coarse = err_for(1.0);
  double fine = err_for(2.0);
  // 4th-order stencils: halving dx should shrink the error at least 8x
  CHECK(coarse / fine >= 8.0);
}

TEST_CASE("horizons too close to the predicted breaking time are rejected") {
  ProfileAst u0 = parse("1/(1+x^2)");
  GridSpec grid(-5.0, 5.0, 201);
  CHECK_THROWS_AS(integrate_deformed(sample_profile(u0, grid), grid,
                                     DeformedSystem(3.0, FSpec::power(1)), 0.3, 1e-4,
                                     0.3118),
                  DomainError);
}
