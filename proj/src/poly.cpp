#include "qhc/poly.hpp"

#include <omp.h>

#include <algorithm>
#include <climits>

#include "qhc/errors.hpp"

namespace qhc {

namespace {

int degree_of(const Exponents& e) {
  int d = 0;
  for (int x : e) d += x;
  return d;
}

// Sort descending and merge equal monomials, dropping zeros.
void normalize(std::vector<Term>& terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return grevlex_cmp(a.exps, b.exps) > 0; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms.size();) {
    std::size_t j = i + 1;
    Rational c = terms[i].coeff;
    while (j < terms.size() && terms[j].exps == terms[i].exps) c += terms[j++].coeff;
    if (sgn(c) != 0) {
      if (out != i) terms[out].exps = std::move(terms[i].exps);
      terms[out].coeff = std::move(c);
      ++out;
    }
    i = j;
  }
  terms.resize(out);
}

// a + sign*b for two sorted term lists.
std::vector<Term> merge_add(const std::vector<Term>& a, const std::vector<Term>& b, bool negate_b) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int c = i == a.size() ? -1 : j == b.size() ? 1 : grevlex_cmp(a[i].exps, b[j].exps);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back(b[j++]);
      if (negate_b) out.back().coeff = -out.back().coeff;
    } else {
      Rational s = negate_b ? Rational(a[i].coeff - b[j].coeff) : Rational(a[i].coeff + b[j].coeff);
      if (sgn(s) != 0) out.push_back({a[i].exps, std::move(s)});
      ++i;
      ++j;
    }
  }
  return out;
}

void check_laurent(const VarTable& t, const Exponents& e) {
  for (std::size_t v = 0; v < e.size(); ++v)
    if (e[v] < 0 && !t[v].laurent)
      throw LaurentError("negative exponent on non-Laurent variable " + t[v].name);
}

constexpr std::size_t kParallelMulThreshold = 40000;

}  // namespace

int grevlex_cmp(const Exponents& a, const Exponents& b) {
  int da = degree_of(a), db = degree_of(b);
  if (da != db) return da > db ? 1 : -1;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  }
  return 0;
}

MultiPoly::MultiPoly(VarTablePtr ctx) : ctx_(std::move(ctx)) {
  if (!ctx_) throw ContextError("polynomial without a variable table");
}

MultiPoly MultiPoly::constant(VarTablePtr ctx, const Rational& c) {
  MultiPoly p(std::move(ctx));
  if (sgn(c) != 0) p.terms_.push_back({Exponents(p.ctx_->size(), 0), c});
  return p;
}

MultiPoly MultiPoly::var(VarTablePtr ctx, std::size_t index, int power) {
  if (index >= ctx->size()) throw ArgumentError("variable index out of range");
  Exponents e(ctx->size(), 0);
  e[index] = power;
  return monomial(std::move(ctx), std::move(e));
}

MultiPoly MultiPoly::var(VarTablePtr ctx, std::string_view name, int power) {
  std::size_t i = ctx->at(name);
  return var(std::move(ctx), i, power);
}

MultiPoly MultiPoly::monomial(VarTablePtr ctx, Exponents exps, const Rational& c) {
  if (exps.size() != ctx->size()) throw ArgumentError("exponent vector has wrong length");
  check_laurent(*ctx, exps);
  MultiPoly p(std::move(ctx));
  if (sgn(c) != 0) p.terms_.push_back({std::move(exps), c});
  return p;
}

MultiPoly MultiPoly::from_terms(VarTablePtr ctx, std::vector<Term> terms) {
  MultiPoly p(std::move(ctx));
  for (const auto& t : terms) {
    if (t.exps.size() != p.ctx_->size()) throw ArgumentError("exponent vector has wrong length");
    check_laurent(*p.ctx_, t.exps);
  }
  normalize(terms);
  p.terms_ = std::move(terms);
  return p;
}

bool MultiPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  for (int e : terms_[0].exps)
    if (e != 0) return false;
  return true;
}

const Term& MultiPoly::leading() const {
  if (terms_.empty()) throw ArgumentError("leading term of zero");
  return terms_.front();
}

std::optional<int> MultiPoly::total_degree() const {
  if (terms_.empty()) return std::nullopt;
  return degree_of(terms_.front().exps);
}

std::optional<int> MultiPoly::degree_in(std::size_t var) const {
  if (terms_.empty()) return std::nullopt;
  int d = INT_MIN;
  for (const auto& t : terms_) d = std::max(d, t.exps[var]);
  return d;
}

std::optional<int> MultiPoly::min_degree_in(std::size_t var) const {
  if (terms_.empty()) return std::nullopt;
  int d = INT_MAX;
  for (const auto& t : terms_) d = std::min(d, t.exps[var]);
  return d;
}

bool MultiPoly::uses(std::size_t var) const {
  for (const auto& t : terms_)
    if (t.exps[var] != 0) return true;
  return false;
}

bool MultiPoly::has_negative_exponent() const {
  for (const auto& t : terms_)
    for (int e : t.exps)
      if (e < 0) return true;
  return false;
}

Rational MultiPoly::constant_term() const {
  if (!terms_.empty() && degree_of(terms_.back().exps) == 0) {
    bool zero = std::all_of(terms_.back().exps.begin(), terms_.back().exps.end(),
                            [](int e) { return e == 0; });
    if (zero) return terms_.back().coeff;
  }
  // Laurent polynomials can have degree-0 monomials that are not constants.
  for (const auto& t : terms_)
    if (std::all_of(t.exps.begin(), t.exps.end(), [](int e) { return e == 0; })) return t.coeff;
  return 0;
}

void MultiPoly::check_same(const MultiPoly& o) const {
  if (ctx_ != o.ctx_) throw ContextError("polynomials over different variable tables");
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  check_same(o);
  terms_ = merge_add(terms_, o.terms_, false);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  check_same(o);
  terms_ = merge_add(terms_, o.terms_, true);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) { return *this = *this * o; }

MultiPoly& MultiPoly::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
  } else {
    for (auto& t : terms_) t.coeff *= c;
  }
  return *this;
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly result = constant(ctx_, 1);
  MultiPoly base = *this;
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return result;
}

bool MultiPoly::operator==(const MultiPoly& o) const {
  check_same(o);
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].exps != o.terms_[i].exps || terms_[i].coeff != o.terms_[i].coeff) return false;
  return true;
}

std::string MultiPoly::str() const { return format(*this); }

MultiPoly mul_serial(const MultiPoly& a, const MultiPoly& b) {
  a.check_same(b);
  MultiPoly r(a.ctx_);
  if (a.is_zero() || b.is_zero()) return r;
  std::size_t n = a.ctx_->size();
  r.terms_.reserve(a.size() * b.size());
  for (const auto& ta : a.terms_) {
    for (const auto& tb : b.terms_) {
      Exponents e(n);
      for (std::size_t v = 0; v < n; ++v) e[v] = ta.exps[v] + tb.exps[v];
      r.terms_.push_back({std::move(e), ta.coeff * tb.coeff});
    }
  }
  normalize(r.terms_);
  return r;
}

MultiPoly mul_parallel(const MultiPoly& a, const MultiPoly& b) {
  a.check_same(b);
  MultiPoly r(a.ctx_);
  if (a.is_zero() || b.is_zero()) return r;
  const std::size_t n = a.ctx_->size();
  const int nthreads = omp_get_max_threads();
  std::vector<std::vector<Term>> partial(static_cast<std::size_t>(nthreads));
  const long long rows = static_cast<long long>(a.size());
#pragma omp parallel num_threads(nthreads)
  {
    auto& mine = partial[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(static)
    for (long long i = 0; i < rows; ++i) {
      const auto& ta = a.terms_[static_cast<std::size_t>(i)];
      for (const auto& tb : b.terms_) {
        Exponents e(n);
        for (std::size_t v = 0; v < n; ++v) e[v] = ta.exps[v] + tb.exps[v];
        mine.push_back({std::move(e), ta.coeff * tb.coeff});
      }
    }
    normalize(mine);
  }
  // Fixed-order reduction of the per-thread sums.
  for (auto& part : partial) r.terms_ = merge_add(r.terms_, part, false);
  return r;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  if (a.size() * b.size() >= kParallelMulThreshold && omp_get_max_threads() > 1)
    return mul_parallel(a, b);
  return mul_serial(a, b);
}

MultiPoly poly_arith(const MultiPoly& a, const MultiPoly& b, ArithOp op) {
  switch (op) {
    case ArithOp::Add: return a + b;
    case ArithOp::Sub: return a - b;
    case ArithOp::Mul: return a * b;
  }
  throw ArgumentError("unknown arithmetic op");
}

MultiPoly exact_divide(const MultiPoly& a, const MultiPoly& b) {
  if (a.context() != b.context()) throw ContextError("polynomials over different variable tables");
  if (b.is_zero()) throw ArgumentError("division by zero polynomial");
  const auto& ctx = a.context();
  if (a.is_zero()) return a;
  const std::size_t n = ctx->size();

  // Clear Laurent variables to non-negative exponents on both sides.
  Exponents shift_a(n, 0), shift_b(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    if (!(*ctx)[v].laurent) continue;
    shift_a[v] = -*a.min_degree_in(v);
    shift_b[v] = -*b.min_degree_in(v);
  }
  auto shifted = [&](const MultiPoly& p, const Exponents& s) {
    std::vector<Term> ts = p.terms();
    for (auto& t : ts)
      for (std::size_t v = 0; v < n; ++v) t.exps[v] += s[v];
    return MultiPoly::from_terms(ctx, std::move(ts));
  };
  MultiPoly rem = shifted(a, shift_a);
  const MultiPoly den = shifted(b, shift_b);
  const Term& lead = den.leading();

  std::vector<Term> quot;
  while (!rem.is_zero()) {
    const Term& lt = rem.leading();
    Exponents e(n);
    for (std::size_t v = 0; v < n; ++v) {
      e[v] = lt.exps[v] - lead.exps[v];
      if (e[v] < 0) throw DivisibilityError("exact division failed: remainder " + format(rem));
    }
    Rational c = lt.coeff / lead.coeff;
    std::vector<Term> step;
    step.reserve(den.size());
    for (const auto& t : den.terms()) {
      Exponents f(n);
      for (std::size_t v = 0; v < n; ++v) f[v] = t.exps[v] + e[v];
      step.push_back({std::move(f), c * t.coeff});
    }
    quot.push_back({e, c});
    // step is already sorted: multiplication by a monomial preserves order.
    MultiPoly sp = MultiPoly::from_terms(ctx, std::move(step));
    rem -= sp;
  }
  for (auto& t : quot)
    for (std::size_t v = 0; v < n; ++v) t.exps[v] += shift_b[v] - shift_a[v];
  return MultiPoly::from_terms(ctx, std::move(quot));
}

namespace {

// Power of a binding, inverting monomials for negative exponents.
MultiPoly binding_power(const MultiPoly& base, int e, const std::string& var_name) {
  if (e >= 0) return base.pow(static_cast<unsigned>(e));
  if (!base.is_monomial())
    throw LaurentError("negative power of " + var_name + " bound to a non-monomial");
  const Term& t = base.leading();
  Exponents inv(t.exps.size());
  for (std::size_t v = 0; v < inv.size(); ++v) inv[v] = -t.exps[v];
  std::vector<Term> one{{std::move(inv), Rational(1) / t.coeff}};
  MultiPoly m = MultiPoly::from_terms(base.context(), std::move(one));
  return m.pow(static_cast<unsigned>(-e));
}

MultiPoly evaluate(const MultiPoly& p, const VarTablePtr& target,
                   const std::vector<const MultiPoly*>& images, bool keep_unbound) {
  const std::size_t n = p.context()->size();
  std::map<std::pair<std::size_t, int>, MultiPoly> cache;
  MultiPoly sum(target);
  for (const auto& t : p.terms()) {
    MultiPoly term = MultiPoly::constant(target, t.coeff);
    Exponents rest(target->size(), 0);
    for (std::size_t v = 0; v < n; ++v) {
      int e = t.exps[v];
      if (e == 0) continue;
      if (images[v] == nullptr) {
        if (!keep_unbound) throw ArgumentError("no image for variable " + (*p.context())[v].name);
        rest[v] = e;
        continue;
      }
      auto key = std::make_pair(v, e);
      auto it = cache.find(key);
      if (it == cache.end())
        it = cache.emplace(key, binding_power(*images[v], e, (*p.context())[v].name)).first;
      term = term * it->second;
    }
    if (keep_unbound) {
      std::vector<Term> mono{{rest, 1}};
      // Unbound negative exponents are checked by from_terms.
      term = term * MultiPoly::from_terms(target, std::move(mono));
    }
    sum += term;
  }
  return sum;
}

}  // namespace

MultiPoly substitute(const MultiPoly& p, const std::map<std::size_t, MultiPoly>& bindings) {
  const auto& ctx = p.context();
  std::vector<const MultiPoly*> images(ctx->size(), nullptr);
  for (const auto& [v, img] : bindings) {
    if (v >= ctx->size()) throw ArgumentError("binding for unknown variable");
    if (img.context() != ctx) throw ContextError("binding over a different variable table");
    images[v] = &img;
  }
  return evaluate(p, ctx, images, true);
}

MultiPoly map_into(const MultiPoly& p, const VarTablePtr& target,
                   const std::vector<std::optional<MultiPoly>>& images) {
  if (images.size() != p.context()->size()) throw ArgumentError("image list has wrong length");
  std::vector<const MultiPoly*> ptrs(images.size(), nullptr);
  for (std::size_t v = 0; v < images.size(); ++v) {
    if (!images[v]) continue;
    if (images[v]->context() != target) throw ContextError("image over a different variable table");
    ptrs[v] = &*images[v];
  }
  return evaluate(p, target, ptrs, false);
}

std::vector<std::pair<int, MultiPoly>> coefficients_in(const MultiPoly& p, std::size_t var) {
  std::map<int, std::vector<Term>, std::greater<>> slices;
  for (const auto& t : p.terms()) {
    Term s = t;
    s.exps[var] = 0;
    slices[t.exps[var]].push_back(std::move(s));
  }
  std::vector<std::pair<int, MultiPoly>> out;
  for (auto& [power, ts] : slices) out.emplace_back(power, MultiPoly::from_terms(p.context(), std::move(ts)));
  return out;
}

std::vector<std::pair<int, MultiPoly>> t_coefficients(const MultiPoly& p) {
  auto ts = p.context()->of_kind(VarKind::T);
  if (ts.empty()) {
    std::vector<std::pair<int, MultiPoly>> out;
    if (!p.is_zero()) out.emplace_back(0, p);
    return out;
  }
  return coefficients_in(p, ts.front());
}

MultiPoly swap_vars(const MultiPoly& p, std::size_t i, std::size_t j) {
  std::vector<Term> ts = p.terms();
  for (auto& t : ts) std::swap(t.exps[i], t.exps[j]);
  return MultiPoly::from_terms(p.context(), std::move(ts));
}

MultiPoly monic(const MultiPoly& p) {
  if (p.is_zero()) return p;
  Rational inv = Rational(1) / p.leading().coeff;
  return p * inv;
}

RationalFunction::RationalFunction(MultiPoly num, MultiPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw ArgumentError("rational function with zero denominator");
  if (num_.context() != den_.context()) throw ContextError("numerator/denominator tables differ");
}

RationalFunction::RationalFunction(MultiPoly num)
    : num_(num), den_(MultiPoly::constant(num.context(), 1)) {}

RationalFunction& RationalFunction::operator*=(const RationalFunction& o) {
  num_ = num_ * o.num_;
  den_ = den_ * o.den_;
  return *this;
}

bool RationalFunction::operator==(const RationalFunction& o) const {
  return num_ * o.den_ == o.num_ * den_;
}

}  // namespace qhc
