#pragma once

#include <optional>

#include "ptshock/model.hpp"

namespace ptshock {

struct SolveResult {
  std::vector<double> x;
  std::vector<Complex> u;
  double t_reached = 0.0;
  bool aborted = false;      // blow-up detected before t_end
  int dt_halvings = 0;       // refinements needed for the 1e-5 agreement
  std::string note;
};

/// Method-of-lines integrator for u_t = i f(u) (i u_x)^eps: classical
/// 4th-order time stepping over 4th-order centered differences, one-sided
/// stencils at the edges, edge values clamped to the initial asymptotics.
/// dt is halved until two successive runs agree to 1e-5 in L-infinity.
/// Valid pre-shock only; when a predicted shock time is supplied, t_end
/// must stay below 80% of it.
SolveResult integrate_deformed(const std::vector<Complex>& u0, const GridSpec& grid,
                               const DeformedSystem& system, double t_end, double dt,
                               std::optional<double> predicted_t_s = {});

}  // namespace ptshock
