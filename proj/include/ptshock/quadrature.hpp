#pragma once

#include <functional>
#include <map>
#include <vector>

#include "ptshock/jet.hpp"

namespace ptshock {

struct QuadratureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using RealFunction = std::function<Complex(double)>;

/// Recursive-bisection Simpson with embedded error estimate; the complex
/// integrand is handled as two real integrals sharing evaluations.
Complex adaptive_simpson(const RealFunction& f, double a, double b,
                         double abs_tol = 1e-10, int max_depth = 30);

/// Phase-continued fractional power g(x) = w(x)^p along the real line.
///
/// Values are anchored: each evaluation picks among the branches
/// principal * exp(2 pi i k p) the one closest to a linear prediction from
/// neighbouring anchors, so the continuation survives branch-cut crossings
/// and the sign flips at even-order zeros of w. At odd-order zeros no
/// analytic continuation exists; ties resolve toward the principal branch.
/// Seed in increasing-x order before issuing out-of-order queries.
class BranchedPower {
 public:
  BranchedPower(RealFunction w, double exponent, int max_branch_offset = 16);

  /// Ordered pre-pass establishing the branch structure on [a, b].
  void seed_uniform(double a, double b, int n);
  /// Pre-pass with geometrically spaced points, for decaying tails.
  void seed_geometric(double a, double b, int n);

  Complex operator()(double x);
  /// Same continuation when the caller already holds w(x).
  Complex power_of(double x, const Complex& w_value);

  double exponent() const { return p_; }
  bool ambiguity_flagged() const { return ambiguous_; }

 private:
  RealFunction w_;
  double p_;
  int max_k_;
  bool ambiguous_ = false;
  std::map<double, Complex> anchors_;

  Complex predict(double x) const;
};

/// Prefix integrals of an (already branch-resolved) integrand at the given
/// sorted breakpoints: result[j] = integral from breakpoints[0] to [j].
std::vector<Complex> cumulative_integral(const RealFunction& g,
                                         const std::vector<double>& breakpoints,
                                         double abs_tol = 1e-10);

/// Lower cutoff -L such that the remaining tail of |g| integrated to
/// -infinity is below `tail_bound`, assuming an asymptotic power-law decay
/// estimated from probes. Throws if no admissible cutoff below `limit` exists.
double choose_cutoff(const std::function<double(double)>& abs_g, double from,
                     double tail_bound = 1e-11, double limit = 1e7,
                     bool left_side = true);

}  // namespace ptshock
