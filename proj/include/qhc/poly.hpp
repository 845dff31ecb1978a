// Sparse exact multivariate (Laurent-capable) polynomials over Q.
//
// A MultiPoly is a list of terms sorted strictly descending in graded
// reverse lexicographic order over its VarTable's canonical order. Zero
// coefficients are never stored; the zero polynomial has no terms.
// Negative exponents are permitted only on variables flagged `laurent`.
#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qhc/vartable.hpp"

namespace qhc {

using Rational = mpq_class;
using Exponents = std::vector<int>;

// Three-way grevlex comparison of two exponent vectors of equal length.
int grevlex_cmp(const Exponents& a, const Exponents& b);

struct Term {
  Exponents exps;
  Rational coeff;
};

class MultiPoly {
 public:
  explicit MultiPoly(VarTablePtr ctx);

  static MultiPoly constant(VarTablePtr ctx, const Rational& c);
  static MultiPoly var(VarTablePtr ctx, std::size_t index, int power = 1);
  static MultiPoly var(VarTablePtr ctx, std::string_view name, int power = 1);
  static MultiPoly monomial(VarTablePtr ctx, Exponents exps, const Rational& c = 1);
  // Sorts, merges equal monomials and prunes zeros.
  static MultiPoly from_terms(VarTablePtr ctx, std::vector<Term> terms);

  const VarTablePtr& context() const { return ctx_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_monomial() const { return terms_.size() == 1; }
  const Term& leading() const;

  // Degree of 0 is the -infinity sentinel, reported as nullopt.
  std::optional<int> total_degree() const;
  std::optional<int> degree_in(std::size_t var) const;
  std::optional<int> min_degree_in(std::size_t var) const;
  bool uses(std::size_t var) const;
  bool has_negative_exponent() const;
  Rational constant_term() const;

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const MultiPoly& o);
  MultiPoly& operator*=(const Rational& c);
  MultiPoly pow(unsigned e) const;

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
  friend MultiPoly operator*(const Rational& c, MultiPoly a) { return a *= c; }

  bool operator==(const MultiPoly& o) const;
  bool operator!=(const MultiPoly& o) const { return !(*this == o); }

  std::string str() const;

 private:
  friend MultiPoly mul_serial(const MultiPoly&, const MultiPoly&);
  friend MultiPoly mul_parallel(const MultiPoly&, const MultiPoly&);
  void check_same(const MultiPoly& o) const;

  VarTablePtr ctx_;
  std::vector<Term> terms_;
};

enum class ArithOp { Add, Sub, Mul };
MultiPoly poly_arith(const MultiPoly& a, const MultiPoly& b, ArithOp op);

// Product kernels. operator* dispatches to the OpenMP one for large inputs.
MultiPoly mul_serial(const MultiPoly& a, const MultiPoly& b);
MultiPoly mul_parallel(const MultiPoly& a, const MultiPoly& b);

// q with a == q*b; throws DivisibilityError otherwise. Handles Laurent
// variables by clearing their minimal exponents before dividing.
MultiPoly exact_divide(const MultiPoly& a, const MultiPoly& b);

// Simultaneous substitution of variables by polynomials of the same table.
// A variable raised to a negative power may only be bound to a monomial, and
// the result must respect the table's Laurent flags.
MultiPoly substitute(const MultiPoly& p, const std::map<std::size_t, MultiPoly>& bindings);

// Evaluates p (over its own table) into `target`: images[i] replaces source
// variable i. Unused variables may have no image.
MultiPoly map_into(const MultiPoly& p, const VarTablePtr& target,
                   const std::vector<std::optional<MultiPoly>>& images);

// Slices by powers of one variable, descending; coefficients are free of it.
std::vector<std::pair<int, MultiPoly>> coefficients_in(const MultiPoly& p, std::size_t var);
// Slices by the table's T variable ((0, p) if the table has none).
std::vector<std::pair<int, MultiPoly>> t_coefficients(const MultiPoly& p);

MultiPoly swap_vars(const MultiPoly& p, std::size_t i, std::size_t j);
// Rescales so the leading coefficient is 1.
MultiPoly monic(const MultiPoly& p);

// Numerator/denominator pair; equality by cross-multiplication.
class RationalFunction {
 public:
  RationalFunction(MultiPoly num, MultiPoly den);
  explicit RationalFunction(MultiPoly num);

  const MultiPoly& num() const { return num_; }
  const MultiPoly& den() const { return den_; }

  RationalFunction& operator*=(const RationalFunction& o);
  friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
  bool operator==(const RationalFunction& o) const;

 private:
  MultiPoly num_;
  MultiPoly den_;
};

// Canonical text: terms in monomial order, `p/q` coefficients, `^n` powers.
std::string format(const MultiPoly& p);
MultiPoly parse_poly(const VarTablePtr& ctx, std::string_view text);

}  // namespace qhc
