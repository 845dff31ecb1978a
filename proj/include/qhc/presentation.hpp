// Quantum cohomology relations of a quiver variety: abelian and Weyl-antisymmetrized
// relations, per-node relations, Chern polynomials and truncated Chern quotients.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qhc/quiver.hpp"

namespace qhc {

struct IdealPresentation {
  VarTablePtr ctx;
  std::vector<MultiPoly> generators;
  // Degrees used, as (gauge node, sign of e_1); insertion bound; equivariant flag.
  std::vector<std::pair<std::string, int>> degrees;
  int p_max = 0;
  bool equivariant = false;
};

// <lambda, d> for a linear form lambda (only XI coefficients pair with d).
int pairing(const MultiPoly& lambda, const Cocharacter& d);

// prod_{<l,d> > 0} l^{<l,d>} - Qt^d prod_{<l,d> < 0} l^{-<l,d>}; needs QTILDE variables.
MultiPoly abelian_relation(const WeightData& w, const Cocharacter& d);

// Antisymmetrization of g * (abelian relation with Qt^d -> (-1)^{<2rho,d>} Q^dbar).
// g is given as per-block exponent vectors.
MultiPoly nonabelian_relation(const WeightData& w, const BlockStructure& blocks, const Cocharacter& d,
                              const std::vector<std::vector<int>>& g);

// Staircase insertion xi_1^p xi_2^{v-2} ... xi_v^0 on node k and rho on the other
// blocks, as per-block exponents.
std::vector<std::vector<int>> staircase(const BlockStructure& blocks, const std::string& k, int p);

// Closed form of the node-k relation at insertion power p. For theta_k < 0 the
// relation is multiplied through by Q^(k) so it stays polynomial.
MultiPoly node_relation(const Quiver& q, const WeightData& w, const std::string& k, int p);

// Smallest insertion bound used when none is given.
int default_p_max(const Quiver& q);

// node_relation for every gauge node and 0 <= p <= p_max, in (k, p) order.
IdealPresentation build_ideal(const Quiver& q, const VarTablePtr& ctx, int p_max, bool equivariant);
IdealPresentation build_ideal_serial(const Quiver& q, const VarTablePtr& ctx, int p_max, bool equivariant);

// u -> 0.
MultiPoly drop_equivariant(const MultiPoly& p);

// c_t of a weight multiset: prod (t + w).
MultiPoly chern_of(const VarTablePtr& ctx, const std::vector<MultiPoly>& ws);
MultiPoly chern_poly(const Quiver& q, const VarTablePtr& ctx, const std::string& id);

// [c_t(U) / c_t(U')]_+.
MultiPoly delta_t(const VarTablePtr& ctx, const std::vector<MultiPoly>& U, const std::vector<MultiPoly>& Uprime);

// Both sides of the exchange identity at node k; for theta_k < 0 both sides
// are multiplied by Q^(k).
std::pair<MultiPoly, MultiPoly> exchange_lhs_rhs(const Quiver& q, const VarTablePtr& ctx, const std::string& k);

// Text listing of a presentation, one generator per line.
std::string format_presentation(const IdealPresentation& I);

}  // namespace qhc
