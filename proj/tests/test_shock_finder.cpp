#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ptshock/shock_finder.hpp"

using namespace ptshock;

namespace {

// oracle values for w0 = -12 x^2/(1+x^2)^5, f(w) = w, computed by
// high-precision minimization of -1/c'(x0) in an independent tool
constexpr double kT1 = 0.31179100959255225;
constexpr double kX1 = 0.077026340434186156;
constexpr double kSeed1 = 0.21662124939535135;
constexpr double kT2 = 0.64446626049550557;
constexpr double kX2 = -1.2171161121188549;
constexpr double kSeed2 = -0.76939204778791799;

}  // namespace

TEST_CASE("rational even profile breaks twice at the oracle times") {
  ProfileAst w0 = parse("-12*x^2/(1+x^2)^5");
  auto events = find_shock_events(w0, FSpec::power(1), GridSpec(-6.0, 6.0, 4001));
  REQUIRE(events.size() == 2);
  CHECK(std::abs(events[0].t_s - kT1) < 1e-10);
  CHECK(std::abs(events[0].x_s - kX1) < 1e-9);
  CHECK(std::abs(events[0].x0_seed.real() - kSeed1) < 1e-8);
  CHECK(std::abs(events[1].t_s - kT2) < 1e-10);
  CHECK(std::abs(events[1].x_s - kX2) < 1e-9);
  CHECK(std::abs(events[1].x0_seed.real() - kSeed2) < 1e-8);
}

TEST_CASE("translation shifts the shock position but not its time") {
  ProfileAst w0 = parse("-12*x^2/(1+x^2)^5");
  ProfileAst w0_shift = parse("-12*(x-2)^2/(1+(x-2)^2)^5");
  auto base = find_shock_events(w0, FSpec::power(1), GridSpec(-6.0, 6.0, 4001));
  auto moved = find_shock_events(w0_shift, FSpec::power(1), GridSpec(-4.0, 8.0, 4001));
  REQUIRE(base.size() == moved.size());
  for (std::size_t j = 0; j < base.size(); ++j) {
    CHECK(std::abs(moved[j].t_s - base[j].t_s) < 1e-8);
    CHECK(std::abs(moved[j].x_s - base[j].x_s - 2.0) < 1e-7);
  }
}

TEST_CASE("a profile with everywhere-expanding characteristics never breaks") {
  ProfileAst w0 = parse("x");
  auto events = find_shock_events(w0, FSpec::power(1), GridSpec(-3.0, 3.0, 1001));
  CHECK(events.empty());
}

TEST_CASE("deformed peak time equals the transported breaking time") {
  ProfileAst u0 = parse("1/(1+x^2)");
  DeformedSystem sys(3.0, FSpec::power(1));
  auto deformed = deformed_shock_time(u0, sys, GridSpec(-6.0, 6.0, 4001));
  ProfileAst w0 = parse("-12*x^2/(1+x^2)^5");
  auto direct = find_shock_events(w0, FSpec::power(1), GridSpec(-6.0, 6.0, 4001));
  REQUIRE(deformed.size() == direct.size());
  for (std::size_t j = 0; j < direct.size(); ++j) {
    CHECK(std::abs(deformed[j].t_s - direct[j].t_s) < 1e-10);
    CHECK(std::abs(deformed[j].x_s - direct[j].x_s) < 1e-10);
    CHECK(deformed[j].side == SystemSide::deformed);
  }
  // pointwise catastrophe time agrees with -1/c'(x0) of the mapped flux
  double t_at = deformed_catastrophe_time(u0, sys, kSeed1);
  CHECK(std::abs(t_at - kT1) < 1e-9);
}

TEST_CASE("complex-profile roots satisfy the breaking conditions") {
  ProfileAst w0 = parse("exp(i*pi/4)/(1+x^2)");
  FSpec f = FSpec::power(1);
  ComplexRootReport report = complex_shock_roots(w0, f);
  CHECK(!report.real_degenerate);
  REQUIRE(report.roots.size() >= 2);
  auto flux = [&](const Complex& z) {
    Jet4 j = Jet4::variable(z);
    return ipow(Jet4(std::exp(Complex(0.0, kPi / 4.0))) /
                    (Jet4(1.0) + j * j),
                1);
  };
  for (const auto& r : report.roots) {
    Jet4 c = flux(r.x0);
    Complex cp = c.derivative(1);
    // first condition: c'(x0) is real, so the breaking time is real
    CHECK(std::abs(cp.imag()) < 1e-9 * (1.0 + std::abs(cp)));
    CHECK(std::abs(r.t_s + 1.0 / cp.real()) < 1e-9 * (1.0 + std::abs(r.t_s)));
    // second condition: the breaking position x0 + c t_s is real
    Complex xs = r.x0 + c.value() * r.t_s;
    CHECK(std::abs(xs.imag()) < 1e-8);
    CHECK(std::abs(xs.real() - r.x_s) < 1e-10);
  }
  // the root set is symmetric under (x0, t) -> (-x0, -t)
  for (const auto& r : report.roots) {
    double best = 1e300;
    for (const auto& q : report.roots)
      best = std::min(best, std::abs(q.x0 + r.x0) + std::abs(q.t_s + r.t_s));
    CHECK(best < 1e-6);
  }
}

TEST_CASE("real-on-axis profile degenerates to the real search") {
  ProfileAst w0 = parse("-12*x^2/(1+x^2)^5");
  ComplexRootReport report = complex_shock_roots(w0, FSpec::power(1));
  CHECK(report.real_degenerate);
  REQUIRE(report.real_events.size() == 2);
  CHECK(std::abs(report.real_events[0].t_s - kT1) < 1e-9);
  CHECK(!report.warnings.empty());
}

TEST_CASE("real profile with non-real flux derivative is rejected") {
  // f(w) = w^2 on a signed profile gives complex c'(x0) when the input is
  // already complex; a complex profile under a real search must raise
  ProfileAst w0 = parse("i/(1+x^2)");
  CHECK_THROWS_AS(find_shock_events(w0, FSpec::power(1), GridSpec(-3.0, 3.0, 1001)),
                  DomainError);
}

TEST_CASE("growth sampling separates the two blow-up types") {
  ProfileAst w0 = parse("-12*x^2/(1+x^2)^5");
  FSpec f = FSpec::power(1);
  auto events = find_shock_events(w0, f, GridSpec(-6.0, 6.0, 4001));
  REQUIRE(!events.empty());

  // deformed side at eps=3: the slope stays bounded while the curvature
  // diverges as t -> t_s
  CatastropheSamples s3 = sample_catastrophe(w0, f, 3.0, events[0]);
  REQUIRE(s3.max_ux.size() == 3);
  CHECK(classify_catastrophe(s3, 3.0) == CatastropheKind::curvature);
  double uxx_growth = s3.max_uxx.back() / s3.max_uxx.front();
  double ux_growth = s3.max_ux.back() / s3.max_ux.front();
  CHECK(uxx_growth >= 4.0);
  CHECK(ux_growth < 2.0);

  // the undeformed equation always steepens its slope
  CatastropheSamples s1 = sample_catastrophe(w0, f, 1.0, events[0]);
  CHECK(classify_catastrophe(s1, 1.0) == CatastropheKind::gradient);
}

TEST_CASE("odd profile with a vanishing transform integral blows up in slope") {
  // the running integral of w^(1/(eps-1)) returns to zero at the center of
  // an odd profile, so the deformed slope diverges there even though the
  // curvature channel also grows
  ProfileAst w0 = parse("-3*x*(1-x^2)^2/(1+x^2)^5");
  FSpec f = FSpec::power(1);
  auto events = find_shock_events(w0, f, GridSpec(-4.0, 4.0, 401));
  REQUIRE(!events.empty());
  CatastropheSamples s = sample_catastrophe(w0, f, 3.0, events.front());
  REQUIRE(s.max_ux.size() == 3);
  CHECK(s.max_ux.back() / s.max_ux.front() > 1.5);
  CHECK(classify_catastrophe(s, 3.0) == CatastropheKind::gradient);
}
