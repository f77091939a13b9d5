#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace ptshock {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline const Complex kImag{0.0, 1.0};

struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Truncated Taylor series in one variable: c[k] holds f^(k)(x)/k!.
/// Arithmetic on jets propagates derivatives up to order N-1 exactly
/// (machine precision), which is what the profile evaluators rely on.
template <int N>
struct Jet {
  static_assert(N >= 1);
  std::array<Complex, N> c{};

  Jet() = default;
  Jet(const Complex& value) { c[0] = value; }  // NOLINT: implicit by intent
  Jet(double value) { c[0] = value; }          // NOLINT

  static Jet variable(const Complex& value) {
    Jet j;
    j.c[0] = value;
    if constexpr (N > 1) j.c[1] = 1.0;
    return j;
  }

  const Complex& value() const { return c[0]; }
  /// k-th derivative (not the Taylor coefficient).
  Complex derivative(int k) const {
    double fact = 1.0;
    for (int i = 2; i <= k; ++i) fact *= i;
    return c[k] * fact;
  }

  /// Jet of f' with one order less; used when a map needs the spatial
  /// derivative of a profile as a first-class object.
  Jet<N - 1> differentiate() const {
    static_assert(N >= 2);
    Jet<N - 1> d;
    for (int k = 0; k + 1 < N; ++k) d.c[k] = c[k + 1] * double(k + 1);
    return d;
  }

  Jet<N - 1> truncate() const {
    static_assert(N >= 2);
    Jet<N - 1> r;
    for (int k = 0; k + 1 < N; ++k) r.c[k] = c[k];
    return r;
  }

  Jet operator-() const {
    Jet r;
    for (int k = 0; k < N; ++k) r.c[k] = -c[k];
    return r;
  }
  Jet& operator+=(const Jet& o) {
    for (int k = 0; k < N; ++k) c[k] += o.c[k];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    for (int k = 0; k < N; ++k) c[k] -= o.c[k];
    return *this;
  }
  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }

  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r;
    for (int k = 0; k < N; ++k)
      for (int j = 0; j <= k; ++j) r.c[k] += a.c[j] * b.c[k - j];
    return r;
  }

  friend Jet operator/(const Jet& a, const Jet& b) {
    if (b.c[0] == Complex(0.0)) throw EvalError("division by zero");
    Jet r;
    for (int k = 0; k < N; ++k) {
      Complex s = a.c[k];
      for (int j = 0; j < k; ++j) s -= r.c[j] * b.c[k - j];
      r.c[k] = s / b.c[0];
    }
    return r;
  }
};

template <int N>
Jet<N> exp(const Jet<N>& a) {
  Jet<N> r;
  r.c[0] = std::exp(a.c[0]);
  // k r_k = sum_{j=1..k} j a_j r_{k-j}
  for (int k = 1; k < N; ++k) {
    Complex s = 0.0;
    for (int j = 1; j <= k; ++j) s += double(j) * a.c[j] * r.c[k - j];
    r.c[k] = s / double(k);
  }
  return r;
}

template <int N>
Jet<N> log(const Jet<N>& a) {
  if (a.c[0] == Complex(0.0)) throw EvalError("log of zero");
  Jet<N> r;
  r.c[0] = std::log(a.c[0]);  // principal branch
  for (int k = 1; k < N; ++k) {
    Complex s = double(k) * a.c[k];
    for (int j = 1; j < k; ++j) s -= double(j) * r.c[j] * a.c[k - j];
    r.c[k] = s / (double(k) * a.c[0]);
  }
  return r;
}

/// Integer power by repeated multiplication; well defined at zeros.
template <int N>
Jet<N> ipow(const Jet<N>& a, long n) {
  if (n < 0) return Jet<N>(1.0) / ipow(a, -n);
  Jet<N> r(1.0);
  Jet<N> base = a;
  while (n > 0) {
    if (n & 1) r = r * base;
    base = base * base;
    n >>= 1;
  }
  return r;
}

/// Principal-branch power a^b = exp(b log a). Integer exponents fall back
/// to repeated multiplication so zeros stay regular.
template <int N>
Jet<N> pow(const Jet<N>& a, const Jet<N>& b) {
  bool exp_const = true;
  for (int k = 1; k < N; ++k)
    if (b.c[k] != Complex(0.0)) exp_const = false;
  if (exp_const && b.c[0].imag() == 0.0) {
    double br = b.c[0].real();
    if (br == std::floor(br) && std::abs(br) < 1e9) {
      long n = static_cast<long>(br);
      if (n >= 0 || a.c[0] != Complex(0.0)) return ipow(a, n);
      throw EvalError("zero raised to a negative power");
    }
  }
  if (a.c[0] == Complex(0.0)) throw EvalError("zero base with non-integer exponent");
  return exp(b * log(a));
}

// Scalar (complex) counterparts so evaluators can be written generically.
inline Complex ipow(const Complex& a, long n) {
  if (n < 0) {
    if (a == Complex(0.0)) throw EvalError("zero raised to a negative power");
    return 1.0 / ipow(a, -n);
  }
  Complex r = 1.0, base = a;
  while (n > 0) {
    if (n & 1) r *= base;
    base *= base;
    n >>= 1;
  }
  return r;
}

inline Complex pow(const Complex& a, const Complex& b) {
  if (b.imag() == 0.0 && b.real() == std::floor(b.real()) &&
      std::abs(b.real()) < 1e9)
    return ipow(a, static_cast<long>(b.real()));
  if (a == Complex(0.0)) {
    if (b.real() > 0.0) return 0.0;
    throw EvalError("zero base with non-positive exponent");
  }
  return std::exp(b * std::log(a));
}

using Jet2 = Jet<2>;
using Jet3 = Jet<3>;
using Jet4 = Jet<4>;
using Jet5 = Jet<5>;

}  // namespace ptshock
