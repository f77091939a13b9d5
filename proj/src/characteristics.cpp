#include "ptshock/characteristics.hpp"

#include <algorithm>
#include <cmath>

namespace ptshock {

namespace {

struct ResidualEval {
  Complex value;
  Complex derivative;  // d/dw of the residual
};

// F(w) = w - w0(x - f(w) t)
std::optional<ResidualEval> residual(const ProfileAst& w0, const FSpec& f,
                                     const Complex& x, double t, const Complex& w) {
  try {
    Jet2 wj = Jet2::variable(w);
    Jet2 arg = Jet2(x) - f.eval(wj) * Jet2(t);
    Jet2 F = wj - w0.eval(arg);
    return ResidualEval{F.value(), F.derivative(1)};
  } catch (const EvalError&) {
    return std::nullopt;
  }
}

std::optional<Complex> newton_root(const ProfileAst& w0, const FSpec& f,
                                   const Complex& x, double t, Complex w,
                                   const ImplicitOptions& opts) {
  auto r = residual(w0, f, x, t, w);
  if (!r) return std::nullopt;
  for (int it = 0; it < opts.max_iterations; ++it) {
    if (std::abs(r->value) <= opts.root_tol) return w;
    if (std::abs(r->derivative) < 1e-300) return std::nullopt;
    Complex step = -r->value / r->derivative;
    double damping = 1.0;
    for (int h = 0; h < 25; ++h) {
      Complex w_try = w + damping * step;
      auto r_try = residual(w0, f, x, t, w_try);
      if (r_try && (std::abs(r_try->value) < std::abs(r->value) ||
                    std::abs(r_try->value) <= opts.root_tol)) {
        w = w_try;
        r = r_try;
        break;
      }
      damping *= 0.5;
      if (h == 24) return std::nullopt;
    }
    if (std::abs(w) > 1e8) return std::nullopt;
  }
  if (std::abs(r->value) <= opts.root_tol) return w;
  return std::nullopt;
}

void dedupe_sorted(std::vector<Complex>& roots, double radius) {
  std::sort(roots.begin(), roots.end(), [](const Complex& a, const Complex& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  std::vector<Complex> unique;
  for (const auto& w : roots) {
    bool dup = false;
    for (const auto& u : unique)
      if (std::abs(w - u) <= radius) dup = true;
    if (!dup) unique.push_back(w);
  }
  roots = std::move(unique);
}

}  // namespace

std::vector<PushedPoint> push_forward(const ProfileAst& w0, const FSpec& f, double t,
                                      const std::vector<Complex>& x0_grid) {
  std::vector<PushedPoint> out;
  out.reserve(x0_grid.size());
  for (const Complex& x0 : x0_grid) {
    PushedPoint p;
    p.x0 = x0;
    try {
      p.w = w0.eval(x0);
      p.x = x0 + f.eval(p.w) * t;
    } catch (const EvalError& e) {
      p.ok = false;
      p.error = e.what();
    }
    out.push_back(p);
  }
  return out;
}

std::vector<Complex> default_seeds(const ProfileAst& w0, const FSpec& f, double x,
                                   double t, const GridSpec& window) {
  std::vector<Complex> seeds;
  // pushed-forward curve: characteristics landing near x
  double pad = 5.0 + 5.0 * std::abs(t);
  int n = 241;
  for (int j = 0; j < n; ++j) {
    double x0 = window.x_min - pad + (window.x_max - window.x_min + 2 * pad) * j / (n - 1);
    try {
      Complex w = w0.eval(Complex(x0));
      Complex xx = x0 + f.eval(w) * t;
      if (std::abs(xx - x) < 0.5) seeds.push_back(w);
    } catch (const EvalError&) {
    }
  }
  try {
    seeds.push_back(w0.eval(Complex(x)));
  } catch (const EvalError&) {
  }
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b)
      seeds.emplace_back(-2.0 + a, -2.0 + b);
  return seeds;
}

std::vector<Complex> solve_implicit(const ProfileAst& w0, const FSpec& f, double x,
                                    double t, const std::vector<Complex>& seeds,
                                    const ImplicitOptions& opts) {
  if (t < 0.0) throw DomainError("solve_implicit requires t >= 0");
  std::vector<Complex> roots;
  for (const Complex& s : seeds) {
    auto w = newton_root(w0, f, Complex(x), t, s, opts);
    if (!w) continue;
    auto check = residual(w0, f, Complex(x), t, *w);
    if (check && std::abs(check->value) <= opts.root_tol) roots.push_back(*w);
  }
  dedupe_sorted(roots, opts.dedupe_radius);
  return roots;
}

BranchSet enumerate_branches(const ProfileAst& w0, const FSpec& f, const GridSpec& grid,
                             double t, const ImplicitOptions& opts) {
  BranchSet bs;
  bs.grid = grid;
  bs.t = t;
  bs.samples.resize(grid.points);

  struct Active {
    int id;
    Complex w;
    Complex w_prev;  // for slope estimates
    bool has_prev = false;
  };
  std::vector<Active> active;
  int next_id = 0;
  std::size_t prev_count = 0;
  double dx = grid.dx();

  for (int j = 0; j < grid.points; ++j) {
    double x = grid.node(j);
    std::vector<Complex> seeds = default_seeds(w0, f, x, t, grid);
    for (const auto& a : active) seeds.push_back(a.w);
    std::vector<Complex> roots = solve_implicit(w0, f, x, t, seeds, opts);

    // greedy nearest matching to the branches present at the previous node
    std::vector<int> assignment(roots.size(), -1);
    std::vector<bool> branch_used(active.size(), false);
    for (;;) {
      double best = 1e300;
      int bi = -1, bj = -1;
      for (std::size_t r = 0; r < roots.size(); ++r) {
        if (assignment[r] >= 0) continue;
        for (std::size_t a = 0; a < active.size(); ++a) {
          if (branch_used[a]) continue;
          double d = std::abs(roots[r] - active[a].w);
          double slope = active[a].has_prev
                             ? std::abs(active[a].w - active[a].w_prev) / dx
                             : 0.0;
          double threshold = 10.0 * dx * (slope + 1.0) + 0.05;
          if (d < best && d < threshold) {
            best = d;
            bi = int(r);
            bj = int(a);
          }
        }
      }
      if (bi < 0) break;
      assignment[bi] = active[bj].id;
      branch_used[bj] = true;
      active[bj].w_prev = active[bj].w;
      active[bj].w = roots[bi];
      active[bj].has_prev = true;
    }

    std::vector<Active> next_active;
    for (std::size_t a = 0; a < active.size(); ++a)
      if (branch_used[a]) next_active.push_back(active[a]);
    for (std::size_t r = 0; r < roots.size(); ++r) {
      if (assignment[r] < 0) {
        assignment[r] = next_id++;
        next_active.push_back({assignment[r], roots[r], roots[r], false});
      }
      bs.samples[j].push_back({assignment[r], roots[r]});
    }
    std::sort(bs.samples[j].begin(), bs.samples[j].end(),
              [](const BranchSample& a, const BranchSample& b) {
                return a.branch_id < b.branch_id;
              });
    if (j > 0 && roots.size() != prev_count)
      bs.warnings.push_back("branch count changed from " + std::to_string(prev_count) +
                            " to " + std::to_string(roots.size()) + " near x = " +
                            std::to_string(x) + " (fold point)");
    prev_count = roots.size();
    active = std::move(next_active);
  }
  return bs;
}

MarchedBranch::MarchedBranch(const ProfileAst& w0, const FSpec& f, double t,
                             double x_start, Complex w_seed, double x_end, int n)
    : w0_(w0), f_(f), t_(t) {
  if (n < 2) n = 2;
  std::vector<double> xs(n);
  std::vector<Complex> ws(n);
  Complex w = w_seed;
  ImplicitOptions opts;
  for (int j = 0; j < n; ++j) {
    double x = x_start + (x_end - x_start) * j / (n - 1);
    // linear prediction from the last two accepted values
    Complex guess = w;
    if (j >= 2) guess = 2.0 * ws[j - 1] - ws[j - 2];
    auto root = newton_root(w0_, f_, Complex(x), t_, guess, opts);
    if (!root) root = newton_root(w0_, f_, Complex(x), t_, w, opts);
    if (root) w = *root;
    xs[j] = x;
    ws[j] = w;
  }
  if (x_start <= x_end) {
    xs_ = std::move(xs);
    ws_ = std::move(ws);
  } else {
    xs_.assign(xs.rbegin(), xs.rend());
    ws_.assign(ws.rbegin(), ws.rend());
  }
}

Complex MarchedBranch::seed_guess(double x) const {
  auto it = std::lower_bound(xs_.begin(), xs_.end(), x);
  if (it == xs_.begin()) return ws_.front();
  if (it == xs_.end()) return ws_.back();
  std::size_t hi = it - xs_.begin();
  std::size_t lo = hi - 1;
  double s = (x - xs_[lo]) / (xs_[hi] - xs_[lo]);
  // across a branch jump an interpolated seed sits between roots and Newton
  // picks one at random; stick to the nearer node's branch instead
  double gap = std::abs(ws_[hi] - ws_[lo]);
  double scale = 1.0 + std::min(std::abs(ws_[lo]), std::abs(ws_[hi]));
  if (gap > 0.3 * scale) return s < 0.5 ? ws_[lo] : ws_[hi];
  return ws_[lo] * (1.0 - s) + ws_[hi] * s;
}

Complex MarchedBranch::operator()(double x) const {
  Complex guess = seed_guess(x);
  ImplicitOptions opts;
  // tight tolerance: far in the tails the field is below the default
  // residual bound and a loose solve would accept the stale seed
  opts.root_tol = 1e-13;
  auto root = newton_root(w0_, f_, Complex(x), t_, guess, opts);
  if (!root) {
    opts.root_tol = 1e-10;
    root = newton_root(w0_, f_, Complex(x), t_, guess, opts);
  }
  return root ? *root : guess;
}

Complex MarchedBranch::derivative(double x) const {
  Complex w = (*this)(x);
  Complex x0 = Complex(x) - f_.eval(w) * t_;
  Jet2 cj = f_.eval(w0_.eval(Jet2::variable(x0)));
  Jet2 w0j = w0_.eval(Jet2::variable(x0));
  Complex denom = 1.0 + t_ * cj.derivative(1);
  if (std::abs(denom) < 1e-300) throw EvalError("derivative at a characteristic fold");
  return w0j.derivative(1) / denom;
}

namespace {

struct BranchSpan {
  int id;
  int first_node;
  int last_node;
};

std::vector<BranchSpan> branch_spans(const BranchSet& bs) {
  std::map<int, BranchSpan> spans;
  for (int j = 0; j < int(bs.samples.size()); ++j)
    for (const auto& s : bs.samples[j]) {
      auto it = spans.find(s.branch_id);
      if (it == spans.end())
        spans[s.branch_id] = {s.branch_id, j, j};
      else
        it->second.last_node = j;
    }
  std::vector<BranchSpan> out;
  for (auto& [id, sp] : spans) out.push_back(sp);
  return out;
}

Complex sample_for(const BranchSet& bs, int node, int id, bool& found) {
  for (const auto& s : bs.samples[node])
    if (s.branch_id == id) {
      found = true;
      return s.w;
    }
  found = false;
  return {};
}

double bisect(const std::function<double(double)>& g, double a, double b) {
  double fa = g(a);
  for (int it = 0; it < 200; ++it) {
    double m = 0.5 * (a + b);
    double fm = g(m);
    if (fm == 0.0 || b - a < 1e-12) return m;
    if ((fa < 0.0) != (fm < 0.0))
      b = m;
    else {
      a = m;
      fa = fm;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

PhysicalField select_physical_branch(const BranchSet& bs, const ProfileAst& w0,
                                     const FSpec& f, const BoundaryCondition& bc) {
  PhysicalField out;
  const GridSpec& grid = bs.grid;
  if (bs.samples.empty() || bs.samples.front().empty() || bs.samples.back().empty())
    throw DomainError("branch set has no roots at the window edges");
  out.x.resize(grid.points);
  for (int j = 0; j < grid.points; ++j) out.x[j] = grid.node(j);

  bool w0_real = true;
  for (int j = 0; j <= 8; ++j) {
    double x = grid.x_min + (grid.x_max - grid.x_min) * j / 8.0;
    try {
      if (std::abs(w0.eval(Complex(x)).imag()) > 1e-12) w0_real = false;
    } catch (const EvalError&) {
    }
  }
  bool is_real = w0_real && std::abs(bc.left.imag()) < 1e-12 &&
                 std::abs(bc.right.imag()) < 1e-12;

  if (is_real) {
    // spurious complex-conjugate root pairs are ignored here; the physical
    // field is real, so only near-real roots participate
    auto real_edge = [&](int node, const Complex& target) {
      double bd = 1e300;
      Complex best;
      for (const auto& s : bs.samples[node])
        if (std::abs(s.w.imag()) < 1e-8 && std::abs(s.w - target) < bd) {
          bd = std::abs(s.w - target);
          best = s.w;
        }
      if (bd > 0.3 * (1.0 + std::abs(target)))
        throw DomainError("no branch satisfies the prescribed asymptotic limits");
      return best;
    };
    Complex wl_seed = real_edge(0, bc.left);
    Complex wr_seed = real_edge(grid.points - 1, bc.right);

    // fold interval: nodes carrying more than one near-real root
    int first_multi = -1, last_multi = -1;
    for (int j = 0; j < grid.points; ++j) {
      int count = 0;
      for (const auto& s : bs.samples[j])
        if (std::abs(s.w.imag()) < 1e-8) ++count;
      if (count >= 2) {
        if (first_multi < 0) first_multi = j;
        last_multi = j;
      }
    }

    MarchedBranch left(w0, f, bs.t, grid.x_min, wl_seed, grid.x_max,
                       4 * grid.points);
    if (first_multi < 0) {
      // single-valued: one branch carries both asymptotics
      out.w.resize(grid.points);
      for (int j = 0; j < grid.points; ++j) out.w[j] = left(out.x[j]);
      return out;
    }
    MarchedBranch right(w0, f, bs.t, grid.x_max, wr_seed, grid.x_min,
                        4 * grid.points);
    double xa = grid.node(std::max(first_multi - 1, 0));
    double xb = grid.node(std::min(last_multi + 1, grid.points - 1));

    // place the jump so that I_1 of the selection matches the conserved value
    Complex i1_ref = adaptive_simpson(
        [&](double x) { return f.eval(w0.eval(Complex(x))); }, grid.x_min,
        grid.x_max, 1e-10);
    auto balance = [&](double xj) {
      Complex a = adaptive_simpson([&](double x) { return f.eval(left(x)); },
                                   grid.x_min, xj, 1e-9);
      Complex b = adaptive_simpson([&](double x) { return f.eval(right(x)); }, xj,
                                   grid.x_max, 1e-9);
      return (a + b - i1_ref).real();
    };
    if (balance(xa) * balance(xb) > 0.0)
      out.warnings.push_back(
          "charge balance does not change sign across the fold interval; jump "
          "placement may be off");
    double x_jump = bisect(balance, xa, xb);
    out.jump = x_jump;
    out.w.resize(grid.points);
    for (int j = 0; j < grid.points; ++j)
      out.w[j] = out.x[j] < x_jump ? left(out.x[j]) : right(out.x[j]);
    return out;
  }

  // complex field: pick the branches achieving each prescribed asymptotic
  int left_id = -1, right_id = -1;
  double best_l = 1e300, best_r = 1e300;
  for (const auto& s : bs.samples.front())
    if (std::abs(s.w - bc.left) < best_l) {
      best_l = std::abs(s.w - bc.left);
      left_id = s.branch_id;
    }
  for (const auto& s : bs.samples.back())
    if (std::abs(s.w - bc.right) < best_r) {
      best_r = std::abs(s.w - bc.right);
      right_id = s.branch_id;
    }
  double scale_l = 1.0 + std::abs(bc.left), scale_r = 1.0 + std::abs(bc.right);
  if (best_l > 0.3 * scale_l || best_r > 0.3 * scale_r)
    throw DomainError("no branch satisfies the prescribed asymptotic limits");

  if (left_id == right_id) {
    // pre-shock: unique branch, no jump
    out.w.resize(grid.points);
    for (int j = 0; j < grid.points; ++j) {
      bool found = false;
      out.w[j] = sample_for(bs, j, left_id, found);
      if (!found) {
        out.warnings.push_back("branch missing at x = " + std::to_string(out.x[j]));
        out.w[j] = j > 0 ? out.w[j - 1] : bc.left;
      }
    }
    return out;
  }

  // overlap region where both asymptotic branches exist
  auto spans = branch_spans(bs);
  int l_last = -1, r_first = -1;
  for (const auto& sp : spans) {
    if (sp.id == left_id) l_last = sp.last_node;
    if (sp.id == right_id) r_first = sp.first_node;
  }
  if (l_last < 0 || r_first < 0 || r_first > l_last)
    throw DomainError("asymptotic branches do not overlap; cannot place a jump");
  double xa = grid.node(r_first);
  double xb = grid.node(l_last);

  bool l_found = false, r_found = false;
  Complex wl_seed = sample_for(bs, 0, left_id, l_found);
  Complex wr_seed = sample_for(bs, grid.points - 1, right_id, r_found);
  MarchedBranch left(w0, f, bs.t, grid.x_min, wl_seed, grid.x_max, 4 * grid.points);
  MarchedBranch right(w0, f, bs.t, grid.x_max, wr_seed, grid.x_min, 4 * grid.points);

  // no continuous matching exists for complex fields: report both
  // crossings and place the jump at their midpoint (a convention)
  auto d_re = [&](double x) { return (left(x) - right(x)).real(); };
  auto d_im = [&](double x) { return (left(x) - right(x)).imag(); };
  double xr = bisect(d_re, xa, xb);
  double xi = bisect(d_im, xa, xb);
  out.re_cross = xr;
  out.im_cross = xi;
  out.jump_is_convention = true;
  out.warnings.push_back(
      "complex field: no continuous matching point exists; jump placed at the "
      "midpoint of the Re- and Im-crossing abscissas by convention");
  double x_jump = 0.5 * (xr + xi);

  out.jump = x_jump;
  out.w.resize(grid.points);
  for (int j = 0; j < grid.points; ++j)
    out.w[j] = out.x[j] < x_jump ? left(out.x[j]) : right(out.x[j]);
  return out;
}

}  // namespace ptshock
