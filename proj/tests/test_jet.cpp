#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ptshock/jet.hpp"

using namespace ptshock;

namespace {

// f(x) = x^3 exp(2x): derivatives known in closed form
Jet4 sample(const Complex& x) {
  Jet4 j = Jet4::variable(x);
  return j * j * j * exp(Jet4(2.0) * j);
}

}  // namespace

TEST_CASE("jet propagates high-order derivatives of products") {
  double x = 0.7;
  Jet4 j = sample(Complex(x));
  double e = std::exp(2.0 * x);
  double f = x * x * x * e;
  double f1 = (3.0 * x * x + 2.0 * x * x * x) * e;
  double f2 = (6.0 * x + 12.0 * x * x + 4.0 * x * x * x) * e;
  double f3 = (6.0 + 36.0 * x + 36.0 * x * x + 8.0 * x * x * x) * e;
  CHECK(std::abs(j.value() - Complex(f)) < 1e-12 * std::abs(f));
  CHECK(std::abs(j.derivative(1) - Complex(f1)) < 1e-12 * std::abs(f1));
  CHECK(std::abs(j.derivative(2) - Complex(f2)) < 1e-12 * std::abs(f2));
  CHECK(std::abs(j.derivative(3) - Complex(f3)) < 1e-12 * std::abs(f3));
}

TEST_CASE("division recurrence inverts multiplication") {
  Jet4 x = Jet4::variable(Complex(0.3, 0.1));
  Jet4 a = exp(x) + x * x;
  Jet4 b = Jet4(1.0) + x * x;
  Jet4 q = a / b;
  Jet4 back = q * b;
  for (int k = 0; k < 4; ++k)
    CHECK(std::abs(back.c[k] - a.c[k]) < 1e-13);
}

TEST_CASE("log is the inverse of exp coefficientwise") {
  Jet4 x = Jet4::variable(Complex(0.4, -0.2));
  Jet4 a = Jet4(1.5) + x;
  Jet4 r = exp(log(a));
  for (int k = 0; k < 4; ++k)
    CHECK(std::abs(r.c[k] - a.c[k]) < 1e-13);
}

TEST_CASE("integer powers stay regular at zeros") {
  Jet4 x = Jet4::variable(Complex(0.0));
  Jet4 p = ipow(x, 3);
  CHECK(p.c[0] == Complex(0.0));
  CHECK(p.c[1] == Complex(0.0));
  CHECK(p.c[2] == Complex(0.0));
  CHECK(p.c[3] == Complex(1.0));
  // pow with an integer-valued exponent takes the same path
  Jet4 q = pow(x, Jet4(3.0));
  CHECK(q.c[3] == Complex(1.0));
}

TEST_CASE("fractional power uses the principal branch") {
  Jet2 x = Jet2::variable(Complex(-1.0, 0.0));
  Jet2 r = pow(x, Jet2(0.5));
  CHECK(std::abs(r.value() - kImag) < 1e-15);  // sqrt(-1) = +i principal
  CHECK_THROWS_AS(pow(Jet2::variable(Complex(0.0)), Jet2(0.5)), EvalError);
}

TEST_CASE("differentiate shifts coefficients") {
  Jet4 j = sample(Complex(0.7));
  Jet3 d = j.differentiate();
  CHECK(std::abs(d.value() - j.derivative(1)) < 1e-13);
  CHECK(std::abs(d.derivative(1) - j.derivative(2)) < 1e-12);
}

TEST_CASE("scalar pow handles zero base with positive exponent") {
  CHECK(pow(Complex(0.0), Complex(0.5)) == Complex(0.0));
  CHECK_THROWS_AS(pow(Complex(0.0), Complex(-1.5)), EvalError);
  CHECK(ipow(Complex(2.0), 10) == Complex(1024.0));
}
