#pragma once

#include "ptshock/deformation_map.hpp"
#include "ptshock/model.hpp"

namespace ptshock {

enum class ChargeMode { undeformed, deformed };

/// I_kappa = int f(w)^kappa dx (undeformed) or
/// int (eps f(u) (i u_x)^(eps-1))^kappa dx (deformed). Fractional powers of
/// the integrand are phase-continued along x; integration limits extend to
/// automatically chosen cutoffs with |tail| below tail_bound.
Complex charge(const FieldFn& field, const FSpec& f, double kappa, ChargeMode mode,
               double epsilon, const GridSpec& window, double tail_bound = 1e-8);

/// Charges of the characteristics-evolved solution at each (kappa, t).
/// Times past the first shock are still computed but flagged.
ChargeReport drift_report(const ProfileAst& w0, const FSpec& f,
                          const std::vector<double>& kappas,
                          const std::vector<double>& times, const GridSpec& window);

}  // namespace ptshock
