#pragma once

#include "ptshock/deformation_map.hpp"
#include "ptshock/model.hpp"

namespace ptshock {

/// Catastrophe time as a function of the characteristic label,
/// t_gc(x0) = -1 / (d f(w0)/dx0); shocks sit at its positive local minima.
struct CatastropheFunction {
  std::function<Jet4(const Complex&)> flux;  // jet of c(x0) = f(w0(x0))
  GridSpec window;

  double t_gc(double x0) const;
};

/// Positive local minima of t_gc over the window, polished to
/// |t_gc'| < 1e-12, sorted by t_s. Non-real flux derivatives are rejected
/// with a hint to apply the reality phase.
std::vector<ShockEvent> find_shock_events(const ProfileAst& w0, const FSpec& f,
                                          const GridSpec& window);

/// Same search driven by a flux jet directly (shared engine).
std::vector<ShockEvent> find_shock_events_from_flux(
    const std::function<Jet4(const Complex&)>& flux, const GridSpec& window,
    SystemSide side);

/// Peak-formation times of the deformed system, computed by mapping u0 to
/// the undeformed side; identical to differentiating eps u0 (i u0')^(eps-1).
std::vector<ShockEvent> deformed_shock_time(const ProfileAst& u0,
                                            const DeformedSystem& system,
                                            const GridSpec& window);

/// Direct evaluation of the deformed catastrophe time at one label.
double deformed_catastrophe_time(const ProfileAst& u0, const DeformedSystem& system,
                                 double x0);

struct BoxSpec {
  double re_min = -3.0, re_max = 3.0;
  double im_min = -3.0, im_max = 3.0;
};

struct ComplexRoot {
  Complex x0;
  double t_s = 0.0;
  double x_s = 0.0;
};

struct ComplexRootReport {
  std::vector<ComplexRoot> roots;
  bool real_degenerate = false;
  std::vector<ShockEvent> real_events;  // filled in the degenerate case
  std::vector<std::string> warnings;
};

/// Solve Im[c'(x0)] = 0 and Im[x0 - c(x0)/c'(x0)] = 0 for complex x0 from a
/// 41x41 seed lattice; t_s = -1/Re c', x_s = Re[x0 - c/c']. A profile that
/// is real on the axis makes the second condition degenerate, in which case
/// the search falls back to the real minimization.
ComplexRootReport complex_shock_roots(const ProfileAst& w0, const FSpec& f,
                                      const BoxSpec& box = {});

/// Growth factors of max|u_x| and max|u_xx| near the event on successively
/// refined approaches to t_s (refinement factor 4 per stage).
struct CatastropheSamples {
  std::vector<double> max_ux;
  std::vector<double> max_uxx;
};

/// Sample the deformed field near (x_s, t_s) at t = t_s (1 - delta) with
/// delta shrinking 4x per stage, grid refined in step.
CatastropheSamples sample_catastrophe(const ProfileAst& w0, const FSpec& f,
                                      double epsilon, const ShockEvent& event,
                                      double delta0 = 0.04, int stages = 3);

/// curvature: u_x stays bounded (overall growth < 2) while u_xx grows at
/// least 4x; gradient: u_x blows up too. Growth is measured between the
/// first and last stage so slow divergences still register.
CatastropheKind classify_catastrophe(const CatastropheSamples& samples,
                                     double epsilon);

/// Convenience wrapper: sample and classify in one call.
CatastropheKind classify_catastrophe(const ProfileAst& w0, const FSpec& f,
                                     double epsilon, const ShockEvent& event);

}  // namespace ptshock
