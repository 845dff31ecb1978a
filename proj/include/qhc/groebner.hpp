// Buchberger Groebner bases, normal forms, ideal membership and equality
// after inverting Q-variables.
//
// Membership of a W-symmetric polynomial in the ideal of the invariant ring
// generated by W-symmetric relations is tested in the full polynomial ring:
// if p = sum a_i g_i with g_i, p symmetric, averaging the a_i over W gives a
// symmetric certificate, so the two notions agree.
#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "qhc/presentation.hpp"

namespace qhc {

enum class OrderKind { Grevlex, Lex, Block };

struct MonomialOrder {
  OrderKind kind = OrderKind::Grevlex;
  // Variable names, highest first. Variables not listed follow in table order.
  std::vector<std::string> vars;
  // For Block: sizes of consecutive blocks of the variable order; grevlex inside
  // each block, blocks compared left to right.
  std::vector<std::size_t> block_sizes;
};

struct GroebnerBudget {
  std::size_t max_basis = 20000;
  std::size_t max_steps = 200000000;
};

struct GroebnerStats {
  std::size_t pairs_reduced = 0;
  std::size_t zero_reductions = 0;
  std::size_t reduction_steps = 0;
  std::size_t max_basis_seen = 0;
};

class GroebnerBasis {
 public:
  GroebnerBasis();
  ~GroebnerBasis();
  GroebnerBasis(const GroebnerBasis&);
  GroebnerBasis& operator=(const GroebnerBasis&);
  GroebnerBasis(GroebnerBasis&&) noexcept;
  GroebnerBasis& operator=(GroebnerBasis&&) noexcept;

  const VarTablePtr& context() const;
  const MonomialOrder& order() const;
  // Reduced, monic, sorted by leading monomial (largest first).
  const std::vector<MultiPoly>& basis() const;
  const GroebnerStats& stats() const;
  // Text digest of the generators the basis was computed from.
  const std::string& source() const;
  bool is_unit() const;

  // Full remainder. Variables the ideal does not use are treated as
  // coefficients; negative exponents are only allowed on those.
  MultiPoly normal_form(const MultiPoly& p) const;
  bool contains(const MultiPoly& p) const { return normal_form(p).is_zero(); }

  struct Impl;

 private:
  friend GroebnerBasis buchberger(const VarTablePtr&, const std::vector<MultiPoly>&, const MonomialOrder&,
                                  const GroebnerBudget&, bool);
  std::unique_ptr<Impl> impl_;
};

GroebnerBasis buchberger(const VarTablePtr& ctx, const std::vector<MultiPoly>& generators,
                         const MonomialOrder& order = {}, const GroebnerBudget& budget = {}, bool parallel = true);
GroebnerBasis buchberger(const IdealPresentation& I, const MonomialOrder& order = {},
                         const GroebnerBudget& budget = {}, bool parallel = true);
GroebnerBasis buchberger_serial(const IdealPresentation& I, const MonomialOrder& order = {},
                                const GroebnerBudget& budget = {});

MultiPoly normal_form(const MultiPoly& p, const GroebnerBasis& G);
bool ideal_contains(const IdealPresentation& I, const MultiPoly& p, const MonomialOrder& order = {},
                    const GroebnerBudget& budget = {});

// Table extended by one AUX inverse variable per listed variable, named "inv(<name>)".
VarTablePtr with_inverses(const VarTablePtr& ctx, const std::vector<std::size_t>& vars);

// Generators of I moved to `ext` together with v * inv(v) - 1 for each listed variable.
std::vector<MultiPoly> localized_generators(const IdealPresentation& I, const VarTablePtr& ext,
                                            const std::vector<std::size_t>& vars);

// I and J agree after inverting the listed variables.
bool ideal_equal_laurent(const IdealPresentation& I, const IdealPresentation& J,
                         const std::vector<std::size_t>& laurent_vars, const GroebnerBudget& budget = {});

// Moves p to a table containing all of p's variable names.
MultiPoly transfer(const MultiPoly& p, const VarTablePtr& target);

}  // namespace qhc
