#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ptshock/charges.hpp"

using namespace ptshock;

TEST_CASE("first charge of a gaussian matches the closed form") {
  ProfileAst w0 = parse("exp(-x^2)");
  FieldFn field{[&](double x) { return w0.eval(Complex(x)); }, {}};
  Complex v = charge(field, FSpec::power(1), 1.0, ChargeMode::undeformed, 1.0,
                     GridSpec(-6.0, 6.0, 1001));
  CHECK(std::abs(v.real() - std::sqrt(kPi)) < 1e-8);
  CHECK(std::abs(v.imag()) < 1e-12);
}

TEST_CASE("quadratic charge composes the flux before integrating") {
  // f(w) = w^2 turns I_1 into int w^2 dx; for exp(-x^2) that is sqrt(pi/2)
  ProfileAst w0 = parse("exp(-x^2)");
  FieldFn field{[&](double x) { return w0.eval(Complex(x)); }, {}};
  Complex v = charge(field, FSpec::power(2), 1.0, ChargeMode::undeformed, 1.0,
                     GridSpec(-6.0, 6.0, 1001));
  CHECK(std::abs(v.real() - std::sqrt(kPi / 2.0)) < 1e-8);
}

TEST_CASE("fractional charge continues the branch across sign changes") {
  // I_{1/2} of w = -exp(-x^2): integrand i exp(-x^2/2), value i (2 pi)^(1/4) sqrt(2)
  // ... int exp(-x^2/2) dx = sqrt(2 pi)
  ProfileAst w0 = parse("0-exp(-x^2)");
  FieldFn field{[&](double x) { return w0.eval(Complex(x)); }, {}};
  Complex v = charge(field, FSpec::power(1), 0.5, ChargeMode::undeformed, 1.0,
                     GridSpec(-8.0, 8.0, 1001));
  CHECK(std::abs(v - kImag * std::sqrt(2.0 * kPi)) < 1e-7);
}

TEST_CASE("kappa zero reduces to the window length and kappa -1 is rejected") {
  ProfileAst w0 = parse("1/(1+x^2)");
  FieldFn field{[&](double x) { return w0.eval(Complex(x)); }, {}};
  CHECK_THROWS_AS(ChargeSpec(-1.0), DomainError);
  Complex len = charge(field, FSpec::power(1), 0.0, ChargeMode::undeformed, 1.0,
                       GridSpec(-5.0, 5.0, 101));
  CHECK(std::abs(len - Complex(10.0)) < 1e-12);
}

TEST_CASE("deformed and undeformed charges agree across the map") {
  // u0 = 1/(1+x^2) at eps=3 maps to w0 = -12 x^2/(1+x^2)^5; the deformed
  // integrand eps f(u) (i u_x)^(eps-1) is exactly f(w) by construction
  ProfileAst u0 = parse("1/(1+x^2)");
  ProfileAst w0 = parse("-12*x^2/(1+x^2)^5");
  FieldFn uf{[&](double x) { return u0.eval(Complex(x)); },
             [&](double x) { return eval_dual(u0, Complex(x)).derivative; }};
  FieldFn wf{[&](double x) { return w0.eval(Complex(x)); }, {}};
  GridSpec window(-20.0, 20.0, 2001);
  for (double kappa : {1.0, 2.0}) {
    Complex a = charge(uf, FSpec::power(1), kappa, ChargeMode::deformed, 3.0, window);
    Complex b = charge(wf, FSpec::power(1), kappa, ChargeMode::undeformed, 1.0, window);
    CHECK(std::abs(a - b) < 1e-8 * (1.0 + std::abs(b)));
  }
}

TEST_CASE("non-decaying integrand reports a quadrature failure") {
  ProfileAst w0 = parse("1+0*x");
  FieldFn field{[&](double x) { return w0.eval(Complex(x)); }, {}};
  CHECK_THROWS_AS(charge(field, FSpec::power(1), 1.0, ChargeMode::undeformed, 1.0,
                         GridSpec(-5.0, 5.0, 101)),
                  QuadratureError);
}

TEST_CASE("drift vanishes when only the initial time is listed") {
  ProfileAst w0 = parse("-12*x^2/(1+x^2)^5");
  ChargeReport r = drift_report(w0, FSpec::power(1), {1.0, 2.0}, {0.0},
                                GridSpec(-20.0, 20.0, 1001));
  REQUIRE(r.drift.size() == 2);
  for (const auto& [kappa, d] : r.drift) CHECK(d == 0.0);
  for (const auto& s : r.samples) CHECK(!s.post_shock);
}

TEST_CASE("charges stay flat before breaking and are flagged after") {
  ProfileAst w0 = parse("-12*x^2/(1+x^2)^5");
  ChargeReport r = drift_report(w0, FSpec::power(1), {1.0, 2.0}, {0.0, 0.1, 0.25},
                                GridSpec(-25.0, 25.0, 2001));
  for (const auto& [kappa, d] : r.drift) CHECK(d < 1e-6);
  for (const auto& s : r.samples) CHECK(!s.post_shock);

  ChargeReport late = drift_report(w0, FSpec::power(1), {1.0}, {0.0, 0.4},
                                   GridSpec(-25.0, 25.0, 2001));
  bool flagged = false;
  for (const auto& s : late.samples)
    if (s.t > 0.35 && s.post_shock) flagged = true;
  CHECK(flagged);
}
