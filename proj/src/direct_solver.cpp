#include "ptshock/direct_solver.hpp"

#include <algorithm>
#include <cmath>

#include "ptshock/jet.hpp"

namespace ptshock {

namespace {

void spatial_derivative(const std::vector<Complex>& u, double h,
                        std::vector<Complex>& ux) {
  const std::size_t n = u.size();
  ux.resize(n);
  const double inv = 1.0 / (12.0 * h);
  ux[0] = (-25.0 * u[0] + 48.0 * u[1] - 36.0 * u[2] + 16.0 * u[3] - 3.0 * u[4]) * inv;
  ux[1] = (-3.0 * u[0] - 10.0 * u[1] + 18.0 * u[2] - 6.0 * u[3] + u[4]) * inv;
  for (std::size_t j = 2; j + 2 < n; ++j)
    ux[j] = (-u[j + 2] + 8.0 * u[j + 1] - 8.0 * u[j - 1] + u[j - 2]) * inv;
  ux[n - 2] =
      (3.0 * u[n - 1] + 10.0 * u[n - 2] - 18.0 * u[n - 3] + 6.0 * u[n - 4] -
       u[n - 5]) * inv;
  ux[n - 1] = (25.0 * u[n - 1] - 48.0 * u[n - 2] + 36.0 * u[n - 3] -
               16.0 * u[n - 4] + 3.0 * u[n - 5]) * inv;
}

struct StepState {
  std::vector<Complex> u;
  double t = 0.0;
  bool blew_up = false;
};

StepState march(const std::vector<Complex>& u0, const GridSpec& grid,
                const DeformedSystem& system, double t_end, double dt) {
  const std::size_t n = u0.size();
  const double h = grid.dx();
  const Complex left_bc = u0.front();
  const Complex right_bc = u0.back();
  double eps = system.epsilon;
  const FSpec& f = system.f;

  std::vector<Complex> ux(n), k1(n), k2(n), k3(n), k4(n), tmp(n);
  auto rhs = [&](const std::vector<Complex>& u, std::vector<Complex>& out) {
    spatial_derivative(u, h, ux);
    for (std::size_t j = 0; j < n; ++j)
      out[j] = kImag * f.eval(u[j]) * pow(kImag * ux[j], Complex(eps));
    out.front() = 0.0;  // edges pinned to the asymptotic constants
    out.back() = 0.0;
  };
  auto healthy = [&](const std::vector<Complex>& u) {
    for (const auto& v : u) {
      double m = std::abs(v);
      if (!std::isfinite(m) || m > 1e6) return false;
    }
    return true;
  };

  StepState st;
  st.u = u0;
  while (st.t < t_end - 1e-14) {
    double step = std::min(dt, t_end - st.t);
    std::vector<Complex> save = st.u;
    try {
      rhs(st.u, k1);
      for (std::size_t j = 0; j < n; ++j) tmp[j] = st.u[j] + 0.5 * step * k1[j];
      rhs(tmp, k2);
      for (std::size_t j = 0; j < n; ++j) tmp[j] = st.u[j] + 0.5 * step * k2[j];
      rhs(tmp, k3);
      for (std::size_t j = 0; j < n; ++j) tmp[j] = st.u[j] + step * k3[j];
      rhs(tmp, k4);
      for (std::size_t j = 0; j < n; ++j)
        st.u[j] += step / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    } catch (const EvalError&) {
      st.u = save;
      st.blew_up = true;
      return st;
    }
    st.u.front() = left_bc;
    st.u.back() = right_bc;
    if (!healthy(st.u)) {
      st.u = save;
      st.blew_up = true;
      return st;
    }
    st.t += step;
  }
  return st;
}

}  // namespace

SolveResult integrate_deformed(const std::vector<Complex>& u0, const GridSpec& grid,
                               const DeformedSystem& system, double t_end, double dt,
                               std::optional<double> predicted_t_s) {
  if (int(u0.size()) != grid.points)
    throw DomainError("initial field size does not match the grid");
  if (grid.points < 5)
    throw DomainError("solver needs at least 5 grid points");
  if (t_end < 0.0) throw DomainError("t_end must be non-negative");
  if (predicted_t_s && t_end > 0.8 * *predicted_t_s)
    throw DomainError("t_end too close to the predicted shock time; stay below "
                      "80% of it");

  SolveResult out;
  out.x.resize(grid.points);
  for (int j = 0; j < grid.points; ++j) out.x[j] = grid.node(j);
  if (t_end == 0.0) {
    out.u = u0;
    return out;
  }

  StepState coarse = march(u0, grid, system, t_end, dt);
  for (int halvings = 0; halvings < 12; ++halvings) {
    dt *= 0.5;
    StepState fine = march(u0, grid, system, t_end, dt);
    if (coarse.blew_up || fine.blew_up) {
      const StepState& last = fine.blew_up ? fine : coarse;
      out.u = last.u;
      out.t_reached = last.t;
      out.aborted = true;
      out.note = "blow-up detected; returning the last stable field";
      out.dt_halvings = halvings;
      return out;
    }
    double diff = 0.0;
    for (int j = 0; j < grid.points; ++j)
      diff = std::max(diff, std::abs(fine.u[j] - coarse.u[j]));
    if (diff < 1e-5) {
      out.u = fine.u;
      out.t_reached = fine.t;
      out.dt_halvings = halvings;
      return out;
    }
    coarse = fine;
  }
  out.u = coarse.u;
  out.t_reached = coarse.t;
  out.dt_halvings = 12;
  out.note = "time-step refinement hit its limit before the 1e-5 agreement";
  return out;
}

}  // namespace ptshock
