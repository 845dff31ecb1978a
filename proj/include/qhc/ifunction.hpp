// Degree coefficients of the abelian I-function, the coefficient recursion
// they satisfy, and the h -> 0 limit of the root-system gamma ratio.
#pragma once

#include <optional>

#include "qhc/presentation.hpp"

namespace qhc {

struct IfunCoeff {
  Cocharacter degree;
  RationalFunction value;
};

// Telescoped ratio of the two infinite products at degree d; the table needs H.
IfunCoeff ifun_coeff(const WeightData& w, const Cocharacter& d);

// +1/-1 per XI variable: the sign of theta at its node.
Cocharacter cone_signs(const Quiver& q, const VarTablePtr& ctx);
bool in_cone(const Cocharacter& signs, const Cocharacter& d);

struct QdeResult {
  bool ok = true;
  bool skipped = false;  // d or d - d' outside the cone
  std::optional<MultiPoly> witness;  // difference of the two sides after cancelling shared factors
};

// Cross-multiplied recursion between c_d and c_{d-d'}:
//   prod_{<l,d'> > 0} prod_{m=0}^{<l,d'>-1} (l + <l,d> h - m h) c_d
//     = prod_{<l,d'> < 0} prod_{m=0}^{-<l,d'>-1} (l + <l,d-d'> h - m h) c_{d-d'}.
QdeResult qde_check(const WeightData& w, const Cocharacter& signs, const Cocharacter& d, const Cocharacter& dprime);

// Same identity with the right-hand range m = 1..-<l,d'>, kept for comparison.
QdeResult qde_check_shifted(const WeightData& w, const Cocharacter& signs, const Cocharacter& d,
                            const Cocharacter& dprime);

// prod_{alpha in Phi_+} (-1)^{<alpha,d>}, computed from the gamma ratio at h = 0
// and checked against rho_pairing. The table needs H.
int gamma_ratio_h0(const VarTablePtr& ctx, const BlockStructure& blocks, const Cocharacter& d);

}  // namespace qhc
