#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "ptshock/characteristics.hpp"

using namespace ptshock;

namespace {

std::vector<Complex> real_grid(double a, double b, int n) {
  std::vector<Complex> g;
  for (int j = 0; j < n; ++j) g.push_back(a + (b - a) * j / (n - 1));
  return g;
}

}  // namespace

TEST_CASE("push_forward is the identity at t=0") {
  ProfileAst w0 = parse("1/(1+x^2)");
  auto pts = push_forward(w0, FSpec::power(1), 0.0, real_grid(-2.0, 2.0, 11));
  for (const auto& p : pts) {
    REQUIRE(p.ok);
    CHECK(std::abs(p.x - p.x0) < 1e-15);
    CHECK(std::abs(p.w - w0.eval(p.x0)) < 1e-15);
  }
}

TEST_CASE("linear ramp focuses completely at t=1") {
  ProfileAst w0 = parse("-x");
  auto pts = push_forward(w0, FSpec::power(1), 1.0,
                          {Complex(-1.0), Complex(0.0), Complex(1.0)});
  for (const auto& p : pts) CHECK(std::abs(p.x) < 1e-15);
}

TEST_CASE("pushed curve turns multivalued past the shock") {
  ProfileAst w0 = parse("-12*x^2/(1+x^2)^5");
  auto pts = push_forward(w0, FSpec::power(1), 0.4, real_grid(-1.0, 1.5, 1001));
  bool non_monotone = false;
  for (std::size_t j = 1; j < pts.size(); ++j)
    if (pts[j].x.real() < pts[j - 1].x.real()) non_monotone = true;
  CHECK(non_monotone);
}

TEST_CASE("solve_implicit returns the transported value at t=0") {
  ProfileAst w0 = parse("1/(1+x^2)");
  auto roots = solve_implicit(w0, FSpec::power(1), 0.7, 0.0,
                              default_seeds(w0, FSpec::power(1), 0.7, 0.0,
                                            GridSpec(-3.0, 3.0, 101)));
  REQUIRE(roots.size() == 1);
  CHECK(std::abs(roots[0] - w0.eval(Complex(0.7))) < 1e-10);
}

TEST_CASE("complex profile has several branches after its shock") {
  ProfileAst w0 = parse("exp(i*pi/4)/(1+x^2)");
  FSpec f = FSpec::power(1);
  auto seeds = default_seeds(w0, f, 0.5, 0.55, GridSpec(-3.0, 3.0, 201));
  auto roots = solve_implicit(w0, f, 0.5, 0.55, seeds);
  CHECK(roots.size() >= 2);
  // substitution oracle
  for (const auto& w : roots) {
    Complex residual = w - w0.eval(Complex(0.5) - w * 0.55);
    CHECK(std::abs(residual) < 1e-10);
  }
}

TEST_CASE("round trip: pushed points appear among implicit roots") {
  ProfileAst w0 = parse("-12*x^2/(1+x^2)^5");
  FSpec f = FSpec::power(1);
  double t = 0.4;
  auto pts = push_forward(w0, f, t, real_grid(-1.0, 1.0, 21));
  for (const auto& p : pts) {
    if (!p.ok) continue;
    auto roots = solve_implicit(
        w0, f, p.x.real(), t,
        default_seeds(w0, f, p.x.real(), t, GridSpec(-3.0, 3.0, 101)));
    double best = 1e300;
    for (const auto& r : roots) best = std::min(best, std::abs(r - p.w));
    CHECK(best < 1e-8);
  }
}

TEST_CASE("single branch before the shock, stable ids after") {
  ProfileAst w0 = parse("-12*x^2/(1+x^2)^5");
  FSpec f = FSpec::power(1);

  BranchSet pre = enumerate_branches(w0, f, GridSpec(-2.0, 2.0, 401), 0.1);
  int max_roots = 0;
  for (const auto& node : pre.samples)
    max_roots = std::max(max_roots, int(node.size()));
  CHECK(max_roots == 1);

  BranchSet post = enumerate_branches(w0, f, GridSpec(-2.0, 2.0, 401), 0.4);
  int post_max = 0;
  for (const auto& node : post.samples)
    post_max = std::max(post_max, int(node.size()));
  CHECK(post_max >= 3);
  CHECK(!post.warnings.empty());  // fold points crossed
}

TEST_CASE("branch values vary continuously along the grid") {
  ProfileAst w0 = parse("exp(i*pi/4)/(1+x^2)");
  GridSpec grid(-2.0, 2.0, 801);
  BranchSet bs = enumerate_branches(w0, FSpec::power(1), grid, 0.55);
  // per branch, collect adjacent-node jumps
  double max_w = 0.0;
  for (const auto& node : bs.samples)
    for (const auto& s : node) max_w = std::max(max_w, std::abs(s.w));
  double slope_budget = 10.0 * grid.dx() * 50.0 + 0.05;  // generous w_x bound
  for (int id = 0; id < bs.branch_count(); ++id) {
    Complex prev;
    bool have_prev = false;
    for (int j = 0; j < grid.points; ++j) {
      const BranchSample* here = nullptr;
      for (const auto& s : bs.samples[j])
        if (s.branch_id == id) here = &s;
      if (here && have_prev) CHECK(std::abs(here->w - prev) < slope_budget);
      if (here) {
        prev = here->w;
        have_prev = true;
      } else {
        have_prev = false;
      }
    }
  }
}

TEST_CASE("marched branch matches the implicit solution") {
  ProfileAst w0 = parse("-12*x^2/(1+x^2)^5");
  FSpec f = FSpec::power(1);
  double t = 0.2;  // pre-shock
  Complex seed = w0.eval(Complex(-4.0));
  MarchedBranch branch(w0, f, t, -4.0, seed, 4.0, 2001);
  for (double x : {-3.0, -1.0, 0.0, 0.5, 2.0}) {
    Complex w = branch(x);
    CHECK(std::abs(w - w0.eval(Complex(x) - w * t)) < 1e-10);
    // derivative via the characteristic chain rule vs finite differences
    double h = 1e-6;
    Complex fd = (branch(x + h) - branch(x - h)) / (2.0 * h);
    CHECK(std::abs(branch.derivative(x) - fd) < 1e-5 * (1.0 + std::abs(fd)));
  }
}

TEST_CASE("pre-shock selection returns the unique branch without a jump") {
  ProfileAst w0 = parse("-12*x^2/(1+x^2)^5");
  FSpec f = FSpec::power(1);
  BranchSet bs = enumerate_branches(w0, f, GridSpec(-3.0, 3.0, 401), 0.1);
  PhysicalField field = select_physical_branch(bs, w0, f, BoundaryCondition{});
  CHECK(!field.jump.has_value());
  REQUIRE(field.w.size() == field.x.size());
}

TEST_CASE("real post-shock jump preserves the first charge") {
  ProfileAst w0 = parse("-12*x^2/(1+x^2)^5");
  FSpec f = FSpec::power(1);
  GridSpec grid(-3.0, 3.0, 801);
  BranchSet bs = enumerate_branches(w0, f, grid, 0.35);
  PhysicalField field = select_physical_branch(bs, w0, f, BoundaryCondition{});
  REQUIRE(field.jump.has_value());
  // I_1 of the selection vs the conserved value; integrate each side of the
  // jump separately so the discontinuity does not pollute the quadrature
  double xj = *field.jump;
  MarchedBranch left(w0, f, 0.35, -3.0, w0.eval(Complex(-3.0)), 3.0, 3201);
  MarchedBranch right(w0, f, 0.35, 3.0, w0.eval(Complex(3.0)), -3.0, 3201);
  Complex selected =
      adaptive_simpson([&](double x) { return left(x); }, -3.0, xj, 1e-10) +
      adaptive_simpson([&](double x) { return right(x); }, xj, 3.0, 1e-10);
  Complex conserved = adaptive_simpson(
      [&](double x) { return w0.eval(Complex(x)); }, -3.0, 3.0, 1e-10);
  CHECK(std::abs(selected - conserved) < 1e-4);
  // the selection nodes agree with the two marched branches on their sides
  for (std::size_t j = 0; j < field.x.size(); ++j) {
    Complex ref = field.x[j] < xj ? left(field.x[j]) : right(field.x[j]);
    CHECK(std::abs(field.w[j] - ref) < 1e-8);
  }
}

TEST_CASE("complex post-shock selection reports a conventional jump") {
  ProfileAst w0 = parse("exp(i*pi/4)/(1+x^2)");
  FSpec f = FSpec::power(1);
  GridSpec grid(-3.0, 3.0, 801);
  BranchSet bs = enumerate_branches(w0, f, grid, 0.55);
  PhysicalField field = select_physical_branch(bs, w0, f, BoundaryCondition{});
  REQUIRE(field.jump.has_value());
  CHECK(field.jump_is_convention);
  CHECK(field.re_cross.has_value());
  CHECK(field.im_cross.has_value());
}
