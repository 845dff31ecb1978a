#include "qhc/symfun.hpp"

#include <omp.h>

#include <algorithm>
#include <numeric>

#include "qhc/errors.hpp"

namespace qhc {

std::size_t BlockStructure::weyl_order() const {
  std::size_t n = 1;
  for (const auto& b : blocks)
    for (std::size_t i = 2; i <= b.vars.size(); ++i) n *= i;
  return n;
}

std::vector<MultiPoly> elementary_all(const VarTablePtr& ctx, const std::vector<MultiPoly>& xs) {
  std::vector<MultiPoly> e(xs.size() + 1, MultiPoly(ctx));
  e[0] = MultiPoly::constant(ctx, 1);
  for (std::size_t k = 0; k < xs.size(); ++k)
    for (std::size_t i = k + 1; i >= 1; --i) e[i] += xs[k] * e[i - 1];
  return e;
}

MultiPoly elementary(const VarTablePtr& ctx, const std::vector<MultiPoly>& xs, int i) {
  if (i < 0) throw ArgumentError("elementary symmetric function of negative degree");
  if (static_cast<std::size_t>(i) > xs.size()) return MultiPoly(ctx);
  if (i == 0) return MultiPoly::constant(ctx, 1);
  return elementary_all(ctx, xs)[static_cast<std::size_t>(i)];
}

MultiPoly complete(const VarTablePtr& ctx, const std::vector<MultiPoly>& xs, int i) {
  if (i < 0) return MultiPoly(ctx);
  if (i == 0) return MultiPoly::constant(ctx, 1);
  if (xs.empty()) return MultiPoly(ctx);
  // h[j] over the first k inputs; h_j(x_1..x_k) = h_j(x_1..x_{k-1}) + x_k h_{j-1}(x_1..x_k).
  std::vector<MultiPoly> h(static_cast<std::size_t>(i) + 1, MultiPoly(ctx));
  h[0] = MultiPoly::constant(ctx, 1);
  for (const auto& x : xs)
    for (std::size_t j = 1; j < h.size(); ++j) h[j] += x * h[j - 1];
  return h.back();
}

MultiPoly vandermonde(const VarTablePtr& ctx, const BlockStructure& blocks) {
  MultiPoly v = MultiPoly::constant(ctx, 1);
  for (const auto& b : blocks.blocks)
    for (std::size_t i = 0; i < b.vars.size(); ++i)
      for (std::size_t j = i + 1; j < b.vars.size(); ++j)
        v = v * (MultiPoly::var(ctx, b.vars[i]) - MultiPoly::var(ctx, b.vars[j]));
  return v;
}

int rho_pairing(const BlockStructure& blocks, const Cocharacter& d) {
  int s = 0;
  for (const auto& b : blocks.blocks)
    for (std::size_t i = 0; i < b.vars.size(); ++i)
      for (std::size_t j = i + 1; j < b.vars.size(); ++j) s += d.at(b.vars[i]) - d.at(b.vars[j]);
  return s;
}

namespace {

struct GroupElement {
  std::vector<std::vector<int>> perms;  // one permutation per block
  int sign = 1;
};

int parity(const std::vector<int>& p) {
  int inv = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inv;
  return inv % 2 ? -1 : 1;
}

std::vector<GroupElement> weyl_group(const BlockStructure& blocks) {
  std::vector<GroupElement> group{GroupElement{}};
  for (const auto& b : blocks.blocks) {
    std::vector<int> p(b.vars.size());
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> perms;
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    std::vector<GroupElement> next;
    next.reserve(group.size() * perms.size());
    for (const auto& g : group) {
      for (const auto& q : perms) {
        GroupElement h = g;
        h.perms.push_back(q);
        h.sign *= parity(q);
        next.push_back(std::move(h));
      }
    }
    group = std::move(next);
  }
  return group;
}

MultiPoly seed_polynomial(const std::vector<std::vector<int>>& exponents, const BlockStructure& blocks,
                          const MultiPoly& prefactor) {
  const auto& ctx = prefactor.context();
  if (exponents.size() != blocks.blocks.size()) throw ArgumentError("one exponent vector per block expected");
  Exponents mono(ctx->size(), 0);
  for (std::size_t b = 0; b < exponents.size(); ++b) {
    const auto& vars = blocks.blocks[b].vars;
    if (exponents[b].size() != vars.size()) throw ArgumentError("exponent vector does not match block size");
    for (std::size_t j = 0; j < vars.size(); ++j) mono[vars[j]] += exponents[b][j];
  }
  return prefactor * MultiPoly::monomial(ctx, std::move(mono));
}

void act(const GroupElement& g, const BlockStructure& blocks, const MultiPoly& f, std::vector<Term>& out) {
  for (const auto& t : f.terms()) {
    Term w{t.exps, g.sign > 0 ? t.coeff : Rational(-t.coeff)};
    for (std::size_t b = 0; b < blocks.blocks.size(); ++b) {
      const auto& vars = blocks.blocks[b].vars;
      const auto& p = g.perms[b];
      for (std::size_t j = 0; j < vars.size(); ++j) w.exps[vars[static_cast<std::size_t>(p[j])]] = t.exps[vars[j]];
    }
    out.push_back(std::move(w));
  }
}

MultiPoly divide_by_vandermonde(MultiPoly alt, const BlockStructure& blocks) {
  const auto& ctx = alt.context();
  try {
    for (const auto& b : blocks.blocks)
      for (std::size_t i = 0; i < b.vars.size(); ++i)
        for (std::size_t j = i + 1; j < b.vars.size(); ++j)
          alt = exact_divide(alt, MultiPoly::var(ctx, b.vars[i]) - MultiPoly::var(ctx, b.vars[j]));
  } catch (const DivisibilityError& e) {
    throw InternalError(std::string("alternating sum not divisible by the Vandermonde: ") + e.what());
  }
  return alt;
}

}  // namespace

MultiPoly antisymmetrize_serial(const std::vector<std::vector<int>>& exponents, const BlockStructure& blocks,
                                const MultiPoly& prefactor) {
  MultiPoly f = seed_polynomial(exponents, blocks, prefactor);
  std::vector<Term> terms;
  for (const auto& g : weyl_group(blocks)) act(g, blocks, f, terms);
  return divide_by_vandermonde(MultiPoly::from_terms(f.context(), std::move(terms)), blocks);
}

MultiPoly antisymmetrize(const std::vector<std::vector<int>>& exponents, const BlockStructure& blocks,
                         const MultiPoly& prefactor) {
  MultiPoly f = seed_polynomial(exponents, blocks, prefactor);
  const auto group = weyl_group(blocks);
  const int nthreads = omp_get_max_threads();
  if (nthreads <= 1 || group.size() * f.size() < 2048) return antisymmetrize_serial(exponents, blocks, prefactor);

  std::vector<MultiPoly> partial(static_cast<std::size_t>(nthreads), MultiPoly(f.context()));
  const long long ng = static_cast<long long>(group.size());
#pragma omp parallel num_threads(nthreads)
  {
    std::vector<Term> terms;
#pragma omp for schedule(static)
    for (long long i = 0; i < ng; ++i) act(group[static_cast<std::size_t>(i)], blocks, f, terms);
    partial[static_cast<std::size_t>(omp_get_thread_num())] = MultiPoly::from_terms(f.context(), std::move(terms));
  }
  MultiPoly alt(f.context());
  for (const auto& p : partial) alt += p;
  return divide_by_vandermonde(std::move(alt), blocks);
}

}  // namespace qhc
