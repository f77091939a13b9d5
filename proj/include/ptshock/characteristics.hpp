#pragma once

#include <optional>

#include "ptshock/model.hpp"
#include "ptshock/quadrature.hpp"

namespace ptshock {

/// One point of the parametric characteristic curve x = x0 + f(w0(x0)) t.
struct PushedPoint {
  Complex x0;
  Complex x;
  Complex w;
  bool ok = true;
  std::string error;
};

std::vector<PushedPoint> push_forward(const ProfileAst& w0, const FSpec& f, double t,
                                      const std::vector<Complex>& x0_grid);

struct ImplicitOptions {
  double root_tol = 1e-10;
  int max_iterations = 60;
  double dedupe_radius = 1e-7;
};

/// Newton roots of w = w_0(x - f(w) t), deduplicated; non-converging seeds
/// are dropped silently, so an empty result means no root was found.
std::vector<Complex> solve_implicit(const ProfileAst& w0, const FSpec& f, double x,
                                    double t, const std::vector<Complex>& seeds,
                                    const ImplicitOptions& opts = {});

/// Seeds from the pushed-forward curve plus a coarse 5x5 complex rectangle
/// over [-2,2]^2.
std::vector<Complex> default_seeds(const ProfileAst& w0, const FSpec& f, double x,
                                   double t, const GridSpec& window);

BranchSet enumerate_branches(const ProfileAst& w0, const FSpec& f, const GridSpec& grid,
                             double t, const ImplicitOptions& opts = {});

/// A single branch of the implicit solution, continued by marching Newton
/// solves from one end of the window; evaluable at arbitrary x.
class MarchedBranch {
 public:
  /// March from x_start (seed w_seed) toward x_end across n nodes.
  MarchedBranch(const ProfileAst& w0, const FSpec& f, double t, double x_start,
                Complex w_seed, double x_end, int n = 4001);

  Complex operator()(double x) const;
  /// w_x along the branch via the characteristic chain rule.
  Complex derivative(double x) const;

  double x_lo() const { return xs_.front(); }
  double x_hi() const { return xs_.back(); }

 private:
  ProfileAst w0_;
  FSpec f_;
  double t_;
  std::vector<double> xs_;
  std::vector<Complex> ws_;

  Complex seed_guess(double x) const;
};

struct BoundaryCondition {
  Complex left = 0.0;
  Complex right = 0.0;
};

/// Piecewise single-valued selection of a multi-branch solution.
struct PhysicalField {
  std::vector<double> x;
  std::vector<Complex> w;
  std::optional<double> jump;      // absent pre-shock
  std::optional<double> re_cross;  // complex case: branch Re/Im crossings
  std::optional<double> im_cross;
  bool jump_is_convention = false;  // true when no continuous matching exists
  std::vector<std::string> warnings;
};

/// Select the branch(es) matching the prescribed asymptotics. Real fields
/// place the jump so the I_1 charge of the selection matches the conserved
/// value (equal-area rule); complex fields use the midpoint of the Re- and
/// Im-crossing abscissas, labeled as a convention.
PhysicalField select_physical_branch(const BranchSet& bs, const ProfileAst& w0,
                                     const FSpec& f, const BoundaryCondition& bc);

}  // namespace ptshock
