#include "qhc/ifunction.hpp"

#include <algorithm>

#include "qhc/errors.hpp"

namespace qhc {

namespace {

MultiPoly h_var(const VarTablePtr& ctx) {
  auto h = ctx->of_kind(VarKind::H);
  if (h.empty()) throw ArgumentError("I-function coefficients need the h variable");
  return MultiPoly::var(ctx, h.front());
}

Cocharacter minus(const Cocharacter& a, const Cocharacter& b) {
  Cocharacter r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b.at(i);
  return r;
}

// Linear factors of the numerator and denominator of the d-th coefficient.
struct Factors {
  std::vector<MultiPoly> num, den;
};

Factors coeff_factors(const WeightData& w, const Cocharacter& d) {
  MultiPoly h = h_var(w.ctx);
  Factors f;
  for (const auto& l : w.n_weights) {
    int D = pairing(l, d);
    for (int k = 1; k <= D; ++k) f.den.push_back(l + Rational(k) * h);
    for (int k = 0; k <= -D - 1; ++k) f.num.push_back(l - Rational(k) * h);
  }
  return f;
}

MultiPoly product(const VarTablePtr& ctx, const std::vector<MultiPoly>& fs) {
  MultiPoly p = MultiPoly::constant(ctx, 1);
  for (const auto& f : fs) p *= f;
  return p;
}

QdeResult recursion(const WeightData& w, const Cocharacter& signs, const Cocharacter& d, const Cocharacter& dprime,
                    int first_m) {
  QdeResult res;
  Cocharacter e = minus(d, dprime);
  if (!in_cone(signs, d) || !in_cone(signs, e)) {
    res.skipped = true;
    return res;
  }
  const auto& ctx = w.ctx;
  MultiPoly h = h_var(ctx);
  Factors cd = coeff_factors(w, d), ce = coeff_factors(w, e);
  // left * cd.num * ce.den == right * ce.num * cd.den
  std::vector<MultiPoly> lhs = cd.num, rhs = ce.num;
  lhs.insert(lhs.end(), ce.den.begin(), ce.den.end());
  rhs.insert(rhs.end(), cd.den.begin(), cd.den.end());
  for (const auto& l : w.n_weights) {
    int a = pairing(l, dprime);
    if (a > 0) {
      int D = pairing(l, d);
      for (int m = 0; m <= a - 1; ++m) lhs.push_back(l + Rational(D - m) * h);
    } else if (a < 0) {
      int E = pairing(l, e);
      for (int m = first_m; m <= -a - 1 + first_m; ++m) rhs.push_back(l + Rational(E - m) * h);
    }
  }
  // Cancel identical factors, then expand what is left.
  std::vector<MultiPoly> rest;
  for (auto& f : lhs) {
    auto it = std::find(rhs.begin(), rhs.end(), f);
    if (it != rhs.end()) rhs.erase(it);
    else rest.push_back(std::move(f));
  }
  MultiPoly diff = product(ctx, rest) - product(ctx, rhs);
  if (!diff.is_zero()) {
    res.ok = false;
    res.witness = diff;
  }
  return res;
}

}  // namespace

IfunCoeff ifun_coeff(const WeightData& w, const Cocharacter& d) {
  Factors f = coeff_factors(w, d);
  return {d, RationalFunction(product(w.ctx, f.num), product(w.ctx, f.den))};
}

Cocharacter cone_signs(const Quiver& q, const VarTablePtr& ctx) {
  Cocharacter s(ctx->size(), 0);
  for (std::size_t l = 0; l < q.n_gauge(); ++l) {
    const Node& v = q.nodes()[l];
    for (int j = 1; j <= v.dim; ++j) s[ctx->at(xi_name(v.id, j))] = v.theta > 0 ? 1 : -1;
  }
  return s;
}

bool in_cone(const Cocharacter& signs, const Cocharacter& d) {
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] * signs.at(i) < 0) return false;
  return true;
}

QdeResult qde_check(const WeightData& w, const Cocharacter& signs, const Cocharacter& d, const Cocharacter& dprime) {
  return recursion(w, signs, d, dprime, 0);
}

QdeResult qde_check_shifted(const WeightData& w, const Cocharacter& signs, const Cocharacter& d,
                            const Cocharacter& dprime) {
  return recursion(w, signs, d, dprime, 1);
}

int gamma_ratio_h0(const VarTablePtr& ctx, const BlockStructure& blocks, const Cocharacter& d) {
  MultiPoly h = h_var(ctx);
  MultiPoly num = MultiPoly::constant(ctx, 1), den = MultiPoly::constant(ctx, 1);
  for (const auto& b : blocks.blocks) {
    for (std::size_t i = 0; i < b.vars.size(); ++i) {
      for (std::size_t j = 0; j < b.vars.size(); ++j) {
        if (i == j) continue;
        MultiPoly alpha = MultiPoly::var(ctx, b.vars[i]) - MultiPoly::var(ctx, b.vars[j]);
        int a = d.at(b.vars[i]) - d.at(b.vars[j]);
        for (int l = 1; l <= a; ++l) num *= alpha + Rational(l) * h;
        for (int l = 0; l <= -a - 1; ++l) den *= alpha - Rational(l) * h;
      }
    }
  }
  std::size_t hi = ctx->of_kind(VarKind::H).front();
  std::map<std::size_t, MultiPoly> at0{{hi, MultiPoly(ctx)}};
  MultiPoly n0 = substitute(num, at0), d0 = substitute(den, at0);
  MultiPoly ratio = exact_divide(n0, d0);
  int sign;
  if (ratio == MultiPoly::constant(ctx, 1)) sign = 1;
  else if (ratio == MultiPoly::constant(ctx, -1)) sign = -1;
  else throw InternalError("gamma ratio at h = 0 is not a sign: " + format(ratio));
  int expected = rho_pairing(blocks, d) % 2 ? -1 : 1;
  if (sign != expected) throw InternalError("gamma ratio sign disagrees with (-1)^<2rho,d>");
  return sign;
}

}  // namespace qhc
