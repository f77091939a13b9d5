#pragma once

#include <functional>

#include "ptshock/characteristics.hpp"
#include "ptshock/model.hpp"
#include "ptshock/quadrature.hpp"

namespace ptshock {

/// A sampled or procedural complex field on the real line, with its
/// spatial derivative when available.
struct FieldFn {
  RealFunction value;
  RealFunction derivative;  // may be empty
};

/// Prefactor of the u-from-w transform,
/// (-i)^(1-1/eps) (eps-1)^(1/eps-1) eps^((eps-2)/eps), principal branches.
Complex map_u_prefactor(double epsilon);
/// Prefactor of the closed-form u_x expression,
/// (-i)^(1-1/eps) (eps-1)^(1/eps) eps^(-2/eps).
Complex map_ux_prefactor(double epsilon);

struct MappedField {
  std::vector<double> x;
  std::vector<Complex> w;
  std::vector<bool> root_ambiguous;  // n-th root flagged at u-zeros
};

/// w = (eps * base(u) * (i u_x)^(eps-1))^(1/n) with principal fractional
/// powers and phase continuity along x; base(u) is u for power-law f and
/// f(u) for the general map.
MappedField map_w_from_u(const ProfileAst& u, const DeformedSystem& system,
                         const GridSpec& grid);

/// Pointwise principal-branch value of the same map (no continuity state).
Complex map_w_value(const ProfileAst& u, const DeformedSystem& system, const Complex& x);

/// Sampled-field variant of map_w_from_u, for round trips through
/// map_u_from_w where u exists only on a grid.
MappedField map_w_from_u_samples(const std::vector<double>& x,
                                 const std::vector<Complex>& u,
                                 const std::vector<Complex>& u_x,
                                 const DeformedSystem& system);

/// Jet of the undeformed flux c(x0) = f(w0(x0)) obtained by mapping u0;
/// root-free because f(w0) equals the radicand of the map.
std::function<Jet4(const Complex&)> mapped_flux_jet(const ProfileAst& u0,
                                                    const DeformedSystem& system);

struct UField {
  std::vector<double> x;
  std::vector<Complex> u;
  std::vector<Complex> u_x;
  std::vector<Complex> u_xx;
  std::vector<Complex> integral;  // F(x) = c0 + int_{-inf}^x w^(1/(eps-1))
  std::vector<Complex> g;         // continued w^(1/(eps-1)) at the nodes
  double cutoff = 0.0;            // lower truncation point actually used
  std::vector<std::string> warnings;
};

/// u(x) = C [c0 + int_{-inf}^x w^(1/(eps-1)) dq]^((eps-1)/eps), lower limit
/// truncated at an automatically chosen cutoff with |tail| < tail_bound.
/// The additive constant c0 realizes u(-inf) = lower_bc.
UField map_u_from_w(const FieldFn& w, double epsilon, Complex lower_bc,
                    const GridSpec& grid, double tail_bound = 1e-10);

/// Right-anchored variant used for jump matching:
/// u(x) = C [K + int_{+inf}^x w^(1/(eps-1)) dq]^((eps-1)/eps), u(+inf) = upper_bc.
UField map_u_from_w_right(const FieldFn& w, double epsilon, Complex upper_bc,
                          const GridSpec& grid, double tail_bound = 1e-10);

struct UDerivs {
  Complex u_x;
  Complex u_xx;
  bool integral_vanishing = false;  // u_x divergence indicator
};

/// Closed-form derivatives from the transform: u_x depends only on w and
/// the running integral; u_xx follows by direct differentiation and picks
/// up the w_x factor that diverges at an undeformed shock.
UDerivs u_derivatives_from_w(const Complex& w, const Complex& w_x, const Complex& g,
                             const Complex& integral, double epsilon);

struct FoldedProfile {
  std::vector<double> s;
  std::vector<double> x;
  std::vector<Complex> x0;  // characteristic labels of the retained samples
  std::vector<Complex> w;
  std::vector<Complex> g;  // phase-continued w^(1/(eps-1)) along the curve
  std::vector<Complex> u_tilde;
  std::vector<Complex> u;
  bool loop_removed = false;
  double s1 = 0.0, s4 = 0.0;  // first eliminated arc-length interval
  double charge_kappa = 0.0;  // 1/(eps-1)
  Complex charge_before{};
  Complex charge_after{};
  std::vector<std::string> warnings;
};

/// Arc-length fold of a post-shock multivalued curve into a single-valued
/// peaked profile; every loop is excised at the self-crossing of the running
/// integral, where the loop contribution to the charge vanishes exactly.
/// Pre-shock input is returned unchanged with an empty loop interval.
FoldedProfile fold_to_peak(const std::vector<PushedPoint>& curve, double epsilon);

struct JumpMatch {
  std::vector<double> x;
  std::vector<Complex> u_hat;    // built from the left-vanishing branch
  std::vector<Complex> u_tilde;  // built from the right branch, bc = k
  double x_re_cross = 0.0;
  double x_im_cross = 0.0;
  bool continuous = false;
};

/// Post-shock matching of the two asymptotic branches on the deformed
/// side; continuous is true iff the Re- and Im-crossings coincide.
JumpMatch match_jump(const BranchSet& branches, const ProfileAst& w0, const FSpec& f,
                     double epsilon, Complex k_right, double t,
                     double crossing_tol = 1e-3);

/// Max interior residual |u_t - i f(u) (i u_x)^eps| by centered differences;
/// sampler(t) must return the field on the grid nodes at time t.
double verify_map_residual(const std::function<std::vector<Complex>(double)>& sampler,
                           const DeformedSystem& system, double t, const GridSpec& grid,
                           double dt_step = 1e-4);

}  // namespace ptshock
