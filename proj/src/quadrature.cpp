#include "ptshock/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace ptshock {

namespace {

Complex simpson_step(const RealFunction& f, double a, const Complex& fa, double m,
                     const Complex& fm, double b, const Complex& fb,
                     const Complex& whole, double tol, int depth) {
  double lm = 0.5 * (a + m);
  double rm = 0.5 * (m + b);
  Complex flm = f(lm);
  Complex frm = f(rm);
  Complex left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  Complex right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  Complex delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return simpson_step(f, a, fa, lm, flm, m, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, fm, rm, frm, b, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

Complex adaptive_simpson(const RealFunction& f, double a, double b, double abs_tol,
                         int max_depth) {
  if (a == b) return 0.0;
  double m = 0.5 * (a + b);
  Complex fa = f(a), fm = f(m), fb = f(b);
  Complex whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(f, a, fa, m, fm, b, fb, whole, abs_tol, max_depth);
}

BranchedPower::BranchedPower(RealFunction w, double exponent, int max_branch_offset)
    : w_(std::move(w)), p_(exponent), max_k_(max_branch_offset) {}

Complex BranchedPower::predict(double x) const {
  if (anchors_.empty()) return {0.0, 0.0};
  auto next = anchors_.lower_bound(x);
  if (next == anchors_.begin()) {
    // only anchors to the right: extrapolate from the first two
    auto n2 = std::next(next);
    if (n2 == anchors_.end()) return next->second;
    double h = n2->first - next->first;
    if (h == 0.0) return next->second;
    return next->second + (next->second - n2->second) * ((next->first - x) / h);
  }
  auto prev = std::prev(next);
  if (next == anchors_.end()) {
    if (prev == anchors_.begin()) return prev->second;
    auto p2 = std::prev(prev);
    double h = prev->first - p2->first;
    if (h == 0.0) return prev->second;
    return prev->second + (prev->second - p2->second) * ((x - prev->first) / h);
  }
  double h = next->first - prev->first;
  if (h == 0.0) return prev->second;
  double s = (x - prev->first) / h;
  return prev->second * (1.0 - s) + next->second * s;
}

Complex BranchedPower::power_of(double x, const Complex& wv) {
  Complex g;
  if (wv == Complex(0.0)) {
    if (p_ > 0.0)
      g = 0.0;
    else if (p_ == 0.0)
      g = 1.0;
    else
      throw EvalError("zero field raised to a non-positive power");
  } else {
    Complex principal = std::exp(p_ * std::log(wv));
    Complex target = predict(x);
    Complex best = principal;
    double scale = std::abs(principal) + std::abs(target) + 1e-300;
    double best_d = std::abs(principal - target);
    double tie_tol = 1e-6 * scale;
    for (int a = 1; a <= max_k_; ++a) {
      for (int k : {a, -a}) {
        Complex cand = principal * std::exp(Complex(0.0, 2.0 * kPi * k * p_));
        double d = std::abs(cand - target);
        if (d < best_d - tie_tol) {
          best_d = d;
          best = cand;
        }
      }
    }
    // near-tie at a tiny |w| marks an odd-order zero: convention, not analysis
    if (std::abs(principal) < 1e-12 * (1.0 + std::abs(target))) ambiguous_ = true;
    g = best;
  }
  anchors_[x] = g;
  return g;
}

Complex BranchedPower::operator()(double x) {
  auto it = anchors_.find(x);
  if (it != anchors_.end()) return it->second;
  return power_of(x, w_(x));
}

void BranchedPower::seed_uniform(double a, double b, int n) {
  if (n < 2) n = 2;
  for (int j = 0; j < n; ++j) (*this)(a + (b - a) * j / (n - 1));
}

void BranchedPower::seed_geometric(double a, double b, int n) {
  // points accumulate toward b (the end closer to the window of interest)
  if (n < 2) n = 2;
  double span = b - a;
  for (int j = 0; j < n; ++j) {
    double s = double(j) / (n - 1);
    double frac = 1.0 - (std::pow(1e4, 1.0 - s) - 1.0) / (1e4 - 1.0);
    (*this)(a + span * frac);
  }
}

std::vector<Complex> cumulative_integral(const RealFunction& g,
                                         const std::vector<double>& breakpoints,
                                         double abs_tol) {
  std::vector<Complex> prefix(breakpoints.size());
  Complex acc = 0.0;
  for (std::size_t j = 0; j + 1 < breakpoints.size(); ++j) {
    double a = breakpoints[j];
    double b = breakpoints[j + 1];
    double seg_tol = std::max(abs_tol * (b - a) /
                                  std::max(1.0, breakpoints.back() - breakpoints.front()),
                              1e-16);
    prefix[j] = acc;
    // depth-capped: a jump in the integrand (post-shock fields) would
    // otherwise drive the full binary refinement tree on its segment
    acc += adaptive_simpson(g, a, b, seg_tol, 18);
  }
  if (!breakpoints.empty()) prefix.back() = acc;
  return prefix;
}

double choose_cutoff(const std::function<double(double)>& abs_g, double from,
                     double tail_bound, double limit, bool left_side) {
  double sgn = left_side ? -1.0 : 1.0;
  double base = std::max(std::abs(from), 10.0);
  for (double L = base; L <= limit; L *= 2.0) {
    double g1 = abs_g(sgn * L);
    double g2 = abs_g(sgn * 2.0 * L);
    if (g1 <= 0.0 && g2 <= 0.0) return sgn * L;
    // values so small that even a flat tail out to the search limit stays
    // below the bound; guards against numerical plateaus deep underflow
    if (std::max(g1, g2) * limit < tail_bound) return sgn * 2.0 * L;
    if (g2 <= 0.0 || g1 <= g2) continue;
    double s = std::log(g1 / g2) / std::log(2.0);
    if (s <= 1.0) continue;  // not integrable-looking yet, widen
    double tail = g1 * L / (s - 1.0);
    if (tail < tail_bound) return sgn * L;
  }
  throw QuadratureError("integrand tail does not decay below the requested bound");
}

}  // namespace ptshock
