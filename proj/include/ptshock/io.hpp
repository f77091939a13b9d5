#pragma once

#include <string>

#include "ptshock/deformation_map.hpp"
#include "ptshock/model.hpp"

namespace ptshock {

/// Numbers are written with 17 significant digits so files round-trip
/// through double exactly.
std::string format_double(double v);

// columns: x, re_u, im_u, re_ux, im_ux
void write_field_csv(const std::string& path, const std::vector<double>& x,
                     const std::vector<Complex>& u, const std::vector<Complex>& u_x);

// columns: x, branch_id, re_w, im_w (one row per root per node)
void write_branchset_csv(const std::string& path, const BranchSet& bs);

// columns: s, x, re_w, im_w, re_u, im_u
void write_folded_csv(const std::string& path, const FoldedProfile& fp);

// columns: t, kappa, re_I, im_I, post_shock
void write_charges_csv(const std::string& path, const ChargeReport& report);

}  // namespace ptshock
