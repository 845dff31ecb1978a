// The embedding psi of the cluster algebra into quantum cohomology with
// zeta-variables, and ideal-membership checks of its identities.
//
// Contexts here come from make_context(q, {with_t, with_zeta}). Identities
// are always cross-multiplied; c_t and zeta are never inverted except for
// Laurent zeta exponents, which the coset reduction below handles.
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qhc/cluster.hpp"
#include "qhc/groebner.hpp"

namespace qhc {

// num / prod (zeta_i c_t(V_i))^mult.
struct PsiImage {
  MultiPoly num;
  std::vector<std::pair<std::string, int>> den;  // (node id, multiplicity > 0), node label order
};

struct ZetaImage {
  std::string node;   // gauge node k
  int sign = 1;       // (-1)^{v_k^- - v_k}
  MultiPoly monomial; // sign * prod_i zeta_i^{-b_ik}
};

VarTablePtr psi_context(const Quiver& q, bool with_qtilde = false);

std::vector<ZetaImage> zeta_substitution(const Quiver& q, const VarTablePtr& ctx);
// Q^(k) -> its zeta image, for every gauge node.
MultiPoly apply_zeta_substitution(const MultiPoly& p, const std::vector<ZetaImage>& subs);

PsiImage psi_initial(const Quiver& q, const VarTablePtr& ctx, const std::string& id);
PsiImage psi_adjacent(const Quiver& q, const VarTablePtr& ctx, const std::string& k);
MultiPoly psi_denominator(const Quiver& q, const VarTablePtr& ctx, const PsiImage& a);

// x is a Laurent polynomial over quiver_seed(q)'s table.
PsiImage psi_of_laurent(const Quiver& q, const VarTablePtr& ctx, const Seed& s0, const MultiPoly& x);
// k is the 1-based position among the gauge nodes.
PsiImage psi_of_cluster_variable(const Quiver& q, const VarTablePtr& ctx, const MutationPath& path, int k);

struct Membership {
  bool ok = true;
  bool used_saturation = false;
  std::optional<MultiPoly> witness;  // nonzero normal form
  std::string where;                 // t-power / coset of the witness
};

// Membership in the ideal generated by zeta_substitution(I) inside
// Q[xi, u, t, zeta^{+-1}]. Each t-coefficient is split into cosets of the
// lattice spanned by the zeta exponents of the Q-images; each coset is pulled
// back to a Q-Laurent polynomial and tested in I, then in I with Q inverted.
class ZetaIdeal {
 public:
  // `pinned` zeta variables are set to 1 on both sides before the test.
  ZetaIdeal(const Quiver& q, const IdealPresentation& I, const GroebnerBasis& G,
            std::vector<std::string> pinned = {});
  ~ZetaIdeal();
  ZetaIdeal(const ZetaIdeal&) = delete;
  ZetaIdeal& operator=(const ZetaIdeal&) = delete;

  const VarTablePtr& context() const;
  Membership contains(const MultiPoly& p) const;
  // Membership in I itself (no zeta), per t-coefficient, with Q inverted as a fallback.
  Membership contains_q(const MultiPoly& p, bool allow_saturation) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// c_t(V_k)[delta(V^-,V_k) + s Q delta(V^+,V_k)] - prod_{b>0} c_t^b - s Q prod_{b<0} c_t^{-b},
// s = (-1)^{v^- - v}.
MultiPoly unified_exchange(const Quiver& q, const VarTablePtr& ctx, const std::string& k);
Membership verify_exchange_image(const Quiver& q, const std::string& k, const ZetaIdeal& Z);

// psi(x_k x'_k - prod_{b>0} x_i^b - prod_{b<0} x_i^{-b}) and
// prod_{b_ik>0} zeta_i^{b_ik} * zeta_substitution(unified_exchange); the two agree identically.
std::pair<MultiPoly, MultiPoly> exchange_image_link(const Quiver& q, const VarTablePtr& ctx, const std::string& k);

// a == b in the target, by cross-multiplication.
Membership psi_equal(const Quiver& q, const VarTablePtr& ctx, const PsiImage& a, const PsiImage& b,
                     const ZetaIdeal& Z);

struct TypeACheck {
  std::string name;  // "x[kl]", "lemma1[kl]", "lemma2[kl]"
  int k = 0, l = 0;
  std::string path;  // mutation path and index of x[kl], e.g. "1,2:2"
  Membership result;
};

struct TypeAReport {
  bool ok = true;
  std::vector<std::string> chain;
  std::size_t cluster_variables = 0;
  std::vector<TypeACheck> checks;
};

struct TypeAOptions {
  int p_max = -1;  // default_p_max when negative
  bool equivariant = false;
  std::vector<std::string> pinned;  // zeta variables set to 1; empty is the chain's own choice
  bool parallel = true;
  GroebnerBudget budget;
};

TypeAReport verify_type_a(const Quiver& q, const TypeAOptions& opt = {});

// Principal-coefficient quiver: frozen node n+k feeds gauge node k only.
// Compares the zeta-monomial of psi(yhat_k) with the image of (Q^(k))^{-1}.
bool psi_yhat_qfactor(const Quiver& q, const std::string& k);

struct InjectivityWitness {
  bool ok = true;
  std::vector<std::pair<std::string, std::string>> leading;  // node id, leading (t, zeta) monomial
};
InjectivityWitness injectivity_witness(const Quiver& q, const VarTablePtr& ctx);

std::string format_psi(const PsiImage& a);

}  // namespace qhc
