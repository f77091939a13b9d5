#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "ptshock/expr.hpp"

namespace ptshock {

struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Flux specification: either f(w) = w^n with integer n >= 1, or an
/// arbitrary expression in w (undeformed side only).
struct FSpec {
  std::variant<long, ProfileAst> value;

  static FSpec power(long n) {
    if (n < 1) throw DomainError("power-law exponent n must be >= 1");
    return FSpec{n};
  }
  static FSpec expression(ProfileAst ast) { return FSpec{std::move(ast)}; }
  static FSpec identity() { return power(1); }

  bool is_power() const { return std::holds_alternative<long>(value); }
  long power_n() const { return std::get<long>(value); }

  template <class T>
  T eval(const T& w) const {
    if (is_power()) return ipow(w, power_n());
    return std::get<ProfileAst>(value).eval(w);
  }
};

/// One undeformed/deformed pair: u_t = i f(u) (i u_x)^eps paired with
/// w_t + f(w) w_x = 0. phase_m and phase_sign select the unit factor
/// i^alpha, alpha = (4m +- 1) n / eps, applied to real base profiles so
/// the deformed side keeps real catastrophe times.
struct DeformedSystem {
  double epsilon = 1.0;
  FSpec f = FSpec::identity();
  int phase_m = 0;
  int phase_sign = +1;

  DeformedSystem() = default;
  DeformedSystem(double eps, FSpec f_spec, int m = 0, int sign = +1)
      : epsilon(eps), f(std::move(f_spec)), phase_m(m), phase_sign(sign) {
    if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
    if (sign != 1 && sign != -1) throw DomainError("phase sign must be +1 or -1");
  }

  double alpha() const {
    if (!f.is_power())
      throw DomainError("reality phase is only defined for power-law f(w)");
    return (4.0 * phase_m + phase_sign) * double(f.power_n()) / epsilon;
  }
};

/// Unit-modulus factor i^alpha multiplying a real base profile.
inline Complex reality_phase(const DeformedSystem& system) {
  return std::exp(kImag * (kPi / 2.0) * system.alpha());
}

struct GridSpec {
  double x_min = -10.0;
  double x_max = 10.0;
  int points = 4001;

  GridSpec() = default;
  GridSpec(double lo, double hi, int n) : x_min(lo), x_max(hi), points(n) {
    if (!(x_min < x_max)) throw DomainError("grid requires x_min < x_max");
    if (points < 3) throw DomainError("grid requires at least 3 points");
  }

  double dx() const { return (x_max - x_min) / (points - 1); }
  double node(int j) const { return x_min + j * dx(); }
};

/// Multi-branch sampled field: at each grid node, the Newton-accepted
/// roots of w = w_0(x - f(w) t) with a branch id stable across nodes.
struct BranchSample {
  int branch_id;
  Complex w;
};

struct BranchSet {
  GridSpec grid;
  double t = 0.0;
  std::vector<std::vector<BranchSample>> samples;  // one list per node
  std::vector<std::string> warnings;

  int branch_count() const {
    int max_id = -1;
    for (const auto& node : samples)
      for (const auto& s : node) max_id = std::max(max_id, s.branch_id);
    return max_id + 1;
  }
};

enum class CatastropheKind { unknown, gradient, curvature, inconclusive };
enum class SystemSide { undeformed, deformed };

struct ShockEvent {
  double t_s = 0.0;
  double x_s = 0.0;
  Complex x0_seed{};
  CatastropheKind kind = CatastropheKind::unknown;
  SystemSide side = SystemSide::undeformed;
};

struct ChargeSpec {
  double kappa;
  explicit ChargeSpec(double k) : kappa(k) {
    if (k == -1.0) throw DomainError("kappa = -1 is excluded");
  }
};

struct ChargeSample {
  double t;
  double kappa;
  Complex value;
  bool post_shock = false;  // conservation not guaranteed past t_s
};

struct ChargeReport {
  std::vector<ChargeSample> samples;
  /// max_t |I(t) - I(0)| / max(|I(0)|, 1), per kappa
  std::vector<std::pair<double, double>> drift;
};

// --- JSON serialization (snake_case keys, complex as [re, im]) ---

using Json = nlohmann::json;

inline Json to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }
inline Complex complex_from_json(const Json& j) {
  return Complex(j.at(0).get<double>(), j.at(1).get<double>());
}

std::string to_string(CatastropheKind k);
std::string to_string(SystemSide s);

Json to_json(const GridSpec& g);
Json to_json(const FSpec& f);
Json to_json(const DeformedSystem& s);
Json to_json(const ShockEvent& e);
Json to_json(const BranchSet& b);
Json to_json(const ChargeReport& r);

GridSpec grid_from_json(const Json& j);
FSpec fspec_from_json(const Json& j);
DeformedSystem system_from_json(const Json& j);
ShockEvent shock_event_from_json(const Json& j);

}  // namespace ptshock
