#include "ptshock/charges.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "ptshock/shock_finder.hpp"

namespace ptshock {

namespace {

// base of the integrand before raising to kappa
RealFunction charge_base(const FieldFn& field, const FSpec& f, ChargeMode mode,
                         double epsilon) {
  if (mode == ChargeMode::undeformed)
    return [field, f](double x) { return f.eval(field.value(x)); };
  if (!field.derivative)
    throw DomainError("deformed charge needs the spatial derivative of u");
  return [field, f, epsilon](double x) {
    Complex u = field.value(x);
    Complex ux = field.derivative(x);
    return epsilon * f.eval(u) * pow(kImag * ux, Complex(epsilon - 1.0));
  };
}

}  // namespace

Complex charge(const FieldFn& field, const FSpec& f, double kappa, ChargeMode mode,
               double epsilon, const GridSpec& window, double tail_bound) {
  ChargeSpec spec(kappa);  // rejects kappa = -1
  RealFunction base = charge_base(field, f, mode, epsilon);
  if (kappa == 0.0) {
    // degenerate but well defined: the window length
    return window.x_max - window.x_min;
  }
  auto abs_h = [&](double x) {
    double b = std::abs(base(x));
    return b == 0.0 ? (kappa > 0.0 ? 0.0 : INFINITY) : std::pow(b, kappa);
  };
  double cut_lo, cut_hi;
  try {
    cut_lo = choose_cutoff(abs_h, window.x_min, tail_bound, 1e7, true);
    cut_hi = choose_cutoff(abs_h, window.x_max, tail_bound, 1e7, false);
  } catch (const QuadratureError&) {
    double measured = std::max(abs_h(window.x_min), abs_h(window.x_max));
    throw QuadratureError("charge integrand does not decay at the window edges "
                          "(|integrand| ~ " +
                          std::to_string(measured) + "); widen the window");
  }

  BranchedPower bp(base, kappa);
  bp.seed_geometric(cut_lo, window.x_min, 512);
  bp.seed_uniform(window.x_min, window.x_max, std::max(2048, 4 * window.points));
  bp.seed_geometric(cut_hi, window.x_max, 512);

  std::vector<double> bps;
  bps.push_back(cut_lo);
  for (int j = 0; j < window.points; ++j) bps.push_back(window.node(j));
  bps.push_back(cut_hi);
  auto g = [&bp](double x) { return bp(x); };
  return cumulative_integral(g, bps, 1e-10).back();
}

ChargeReport drift_report(const ProfileAst& w0, const FSpec& f,
                          const std::vector<double>& kappas,
                          const std::vector<double>& times, const GridSpec& window) {
  double t_shock = INFINITY;
  try {
    auto events = find_shock_events(w0, f, window);
    if (!events.empty()) t_shock = events.front().t_s;
  } catch (const DomainError&) {
    // complex profile: no real shock time to flag against
  }

  ChargeReport out;
  std::vector<Complex> first(kappas.size());
  std::vector<double> worst(kappas.size(), 0.0);
  for (double t : times) {
    FieldFn field;
    std::shared_ptr<MarchedBranch> branch;
    if (t == 0.0) {
      field.value = [w0](double x) { return w0.eval(Complex(x)); };
      field.derivative = [w0](double x) {
        return w0.eval(Jet2::variable(Complex(x))).derivative(1);
      };
    } else {
      Complex seed = w0.eval(Complex(window.x_min));
      branch = std::make_shared<MarchedBranch>(w0, f, t, window.x_min, seed,
                                               window.x_max, 4 * window.points);
      field.value = [branch](double x) { return (*branch)(x); };
      field.derivative = [branch](double x) { return branch->derivative(x); };
    }
    for (std::size_t k = 0; k < kappas.size(); ++k) {
      ChargeSample s;
      s.t = t;
      s.kappa = kappas[k];
      s.value = charge(field, f, kappas[k], ChargeMode::undeformed, 1.0, window);
      s.post_shock = t >= t_shock;  // conservation not guaranteed past t_s
      out.samples.push_back(s);
      if (out.samples.size() <= kappas.size()) first[k] = s.value;
      double denom = std::max(std::abs(first[k]), 1.0);
      worst[k] = std::max(worst[k], std::abs(s.value - first[k]) / denom);
    }
  }
  for (std::size_t k = 0; k < kappas.size(); ++k)
    out.drift.emplace_back(kappas[k], worst[k]);
  return out;
}

}  // namespace ptshock
