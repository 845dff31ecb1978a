#include "qhc/groebner.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdio>
#include <map>

#include "qhc/errors.hpp"

namespace qhc {

namespace {

struct IMono {
  std::vector<int> e;
  int deg = 0;
  std::uint64_t mask = 0;  // bit i set when e[i % 64] > 0
};

struct ITerm {
  IMono m;
  Rational c;
};

using IPoly = std::vector<ITerm>;

void finish(IMono& m) {
  m.deg = 0;
  m.mask = 0;
  for (std::size_t i = 0; i < m.e.size(); ++i) {
    m.deg += m.e[i];
    if (m.e[i] > 0) m.mask |= std::uint64_t{1} << (i % 64);
  }
}

bool divides(const IMono& a, const IMono& b) {
  if (a.deg > b.deg || (a.mask & ~b.mask)) return false;
  for (std::size_t i = 0; i < a.e.size(); ++i)
    if (a.e[i] > b.e[i]) return false;
  return true;
}

IMono quotient(const IMono& a, const IMono& b) {
  IMono q;
  q.e.resize(a.e.size());
  for (std::size_t i = 0; i < a.e.size(); ++i) q.e[i] = a.e[i] - b.e[i];
  finish(q);
  return q;
}

IMono product(const IMono& a, const IMono& b) {
  IMono q;
  q.e.resize(a.e.size());
  for (std::size_t i = 0; i < a.e.size(); ++i) q.e[i] = a.e[i] + b.e[i];
  q.deg = a.deg + b.deg;
  q.mask = a.mask | b.mask;
  return q;
}

IMono lcm(const IMono& a, const IMono& b) {
  IMono q;
  q.e.resize(a.e.size());
  for (std::size_t i = 0; i < a.e.size(); ++i) q.e[i] = std::max(a.e[i], b.e[i]);
  finish(q);
  return q;
}

bool coprime(const IMono& a, const IMono& b) {
  if ((a.mask & b.mask) == 0) return true;
  for (std::size_t i = 0; i < a.e.size(); ++i)
    if (a.e[i] > 0 && b.e[i] > 0) return false;
  return true;
}

struct Order {
  OrderKind kind = OrderKind::Grevlex;
  std::vector<std::pair<std::size_t, std::size_t>> blocks;  // [begin, end)

  static int grevlex_range(const IMono& a, const IMono& b, std::size_t lo, std::size_t hi) {
    int da = 0, db = 0;
    for (std::size_t i = lo; i < hi; ++i) {
      da += a.e[i];
      db += b.e[i];
    }
    if (da != db) return da > db ? 1 : -1;
    for (std::size_t i = hi; i-- > lo;)
      if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
    return 0;
  }

  int cmp(const IMono& a, const IMono& b) const {
    switch (kind) {
      case OrderKind::Grevlex:
        if (a.deg != b.deg) return a.deg > b.deg ? 1 : -1;
        for (std::size_t i = a.e.size(); i-- > 0;)
          if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
        return 0;
      case OrderKind::Lex:
        for (std::size_t i = 0; i < a.e.size(); ++i)
          if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? 1 : -1;
        return 0;
      case OrderKind::Block:
        for (const auto& [lo, hi] : blocks)
          if (int c = grevlex_range(a, b, lo, hi)) return c;
        return 0;
    }
    return 0;
  }
};

void sort_poly(IPoly& p, const Order& ord) {
  std::sort(p.begin(), p.end(), [&](const ITerm& x, const ITerm& y) { return ord.cmp(x.m, y.m) > 0; });
}

void make_monic(IPoly& p) {
  if (p.empty() || p[0].c == 1) return;
  Rational inv = 1 / p[0].c;
  for (auto& t : p) t.c *= inv;
}

// p[start:] - c * mono * g[1:]; the leading terms are known to cancel.
IPoly sub_mul(const IPoly& p, std::size_t start, const Rational& c, const IMono& mono, const IPoly& g,
              const Order& ord) {
  IPoly out;
  out.reserve(p.size() - start + g.size());
  std::size_t i = start;
  for (std::size_t j = 1; j < g.size(); ++j) {
    IMono m = product(g[j].m, mono);
    int cmp = -1;
    while (i < p.size() && (cmp = ord.cmp(p[i].m, m)) > 0) out.push_back(p[i++]);
    if (i < p.size() && cmp == 0) {
      Rational s = p[i].c - c * g[j].c;
      if (sgn(s) != 0) out.push_back({std::move(m), std::move(s)});
      ++i;
    } else {
      out.push_back({std::move(m), Rational(-c * g[j].c)});
    }
  }
  while (i < p.size()) out.push_back(p[i++]);
  return out;
}

struct StepCounter {
  std::atomic<std::size_t> steps{0};
  std::size_t max_steps = 0;
  std::atomic<bool> over{false};
};

const IPoly* find_reducer(const std::vector<const IPoly*>& G, const IMono& m) {
  for (const IPoly* g : G)
    if (divides((*g)[0].m, m)) return g;
  return nullptr;
}

// Full reduction (leading and tail terms). Reducers must be monic.
IPoly reduce_full(IPoly p, const std::vector<const IPoly*>& G, const Order& ord, StepCounter& sc) {
  IPoly r;
  std::size_t start = 0;
  while (start < p.size()) {
    const IPoly* g = find_reducer(G, p[start].m);
    if (!g) {
      r.push_back(std::move(p[start]));
      ++start;
      continue;
    }
    IMono q = quotient(p[start].m, (*g)[0].m);
    Rational c = p[start].c;
    p = sub_mul(p, start + 1, c, q, *g, ord);
    start = 0;
    if (sc.steps.fetch_add(1, std::memory_order_relaxed) + 1 > sc.max_steps) {
      sc.over = true;
      return {};
    }
  }
  return r;
}

IPoly spoly(const IPoly& f, const IPoly& g, const Order& ord) {
  IMono l = lcm(f[0].m, g[0].m);
  IMono a = quotient(l, f[0].m), b = quotient(l, g[0].m);
  IPoly fa;
  fa.reserve(f.size());
  for (std::size_t i = 1; i < f.size(); ++i) fa.push_back({product(f[i].m, a), f[i].c});
  // fa - b*g[1:] (monic inputs)
  return sub_mul(fa, 0, Rational(1), b, g, ord);
}

struct Pair {
  std::size_t i, j;
  IMono lcm;
};

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

struct GroebnerBasis::Impl {
  VarTablePtr ctx;
  MonomialOrder order;
  std::vector<MultiPoly> basis;
  GroebnerStats stats;
  std::string source;
  bool unit = false;

  std::vector<std::size_t> ring_vars;  // ring index -> table index
  std::vector<int> table_to_ring;
  Order ord;
  std::vector<IPoly> ibasis;

  IPoly to_ring(const std::vector<Term>& terms) const {
    IPoly p;
    p.reserve(terms.size());
    for (const auto& t : terms) {
      IMono m;
      m.e.resize(ring_vars.size());
      for (std::size_t r = 0; r < ring_vars.size(); ++r) m.e[r] = t.exps[ring_vars[r]];
      finish(m);
      p.push_back({std::move(m), t.coeff});
    }
    sort_poly(p, ord);
    return p;
  }

  MultiPoly from_ring(const IPoly& p, const Exponents& extra) const {
    std::vector<Term> ts;
    ts.reserve(p.size());
    for (const auto& t : p) {
      Exponents e = extra;
      for (std::size_t r = 0; r < ring_vars.size(); ++r) e[ring_vars[r]] += t.m.e[r];
      ts.push_back({std::move(e), t.c});
    }
    return MultiPoly::from_terms(ctx, std::move(ts));
  }
};

GroebnerBasis::GroebnerBasis() : impl_(std::make_unique<Impl>()) {}
GroebnerBasis::~GroebnerBasis() = default;
GroebnerBasis::GroebnerBasis(const GroebnerBasis& o) : impl_(std::make_unique<Impl>(*o.impl_)) {}
GroebnerBasis& GroebnerBasis::operator=(const GroebnerBasis& o) {
  impl_ = std::make_unique<Impl>(*o.impl_);
  return *this;
}
GroebnerBasis::GroebnerBasis(GroebnerBasis&&) noexcept = default;
GroebnerBasis& GroebnerBasis::operator=(GroebnerBasis&&) noexcept = default;

const VarTablePtr& GroebnerBasis::context() const { return impl_->ctx; }
const MonomialOrder& GroebnerBasis::order() const { return impl_->order; }
const std::vector<MultiPoly>& GroebnerBasis::basis() const { return impl_->basis; }
const GroebnerStats& GroebnerBasis::stats() const { return impl_->stats; }
const std::string& GroebnerBasis::source() const { return impl_->source; }
bool GroebnerBasis::is_unit() const { return impl_->unit; }

MultiPoly GroebnerBasis::normal_form(const MultiPoly& p) const {
  const Impl& im = *impl_;
  if (p.context() != im.ctx) throw ContextError("normal form over a different variable table");
  if (p.is_zero() || im.unit) return MultiPoly(im.ctx);

  // Group terms by their monomial in the variables outside the ring.
  std::map<Exponents, std::vector<Term>> groups;
  for (const auto& t : p.terms()) {
    Exponents extra = t.exps;
    for (std::size_t tv : im.ring_vars) {
      if (t.exps[tv] < 0)
        throw ArgumentError("normal form of a Laurent polynomial in " + (*im.ctx)[tv].name);
      extra[tv] = 0;
    }
    groups[extra].push_back(t);
  }
  std::vector<const IPoly*> G;
  for (const auto& g : im.ibasis) G.push_back(&g);
  StepCounter sc;
  sc.max_steps = SIZE_MAX;
  std::vector<Term> out;
  for (auto& [extra, ts] : groups) {
    IPoly r = reduce_full(im.to_ring(ts), G, im.ord, sc);
    MultiPoly part = im.from_ring(r, extra);
    for (const auto& t : part.terms()) out.push_back(t);
  }
  return MultiPoly::from_terms(im.ctx, std::move(out));
}

GroebnerBasis buchberger(const VarTablePtr& ctx, const std::vector<MultiPoly>& generators,
                         const MonomialOrder& order, const GroebnerBudget& budget, bool parallel) {
  GroebnerBasis result;
  GroebnerBasis::Impl& im = *result.impl_;
  im.ctx = ctx;
  im.order = order;

  std::string digest;
  std::vector<char> used(ctx->size(), 0);
  for (const auto& g : generators) {
    if (g.context() != ctx) throw ContextError("generator over a different variable table");
    if (g.has_negative_exponent()) throw ArgumentError("Groebner generators must be polynomials: " + format(g));
    for (std::size_t v = 0; v < ctx->size(); ++v)
      if (!used[v] && g.uses(v)) used[v] = 1;
    digest += format(g);
    digest += ';';
  }
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(fnv1a(digest)));
  im.source = std::to_string(generators.size()) + " generators, fnv1a " + hex;

  // Ring variables: listed ones first (if used), then remaining used ones in table order.
  std::vector<char> placed(ctx->size(), 0);
  for (const auto& name : order.vars) {
    std::size_t v = ctx->at(name);
    if (used[v] && !placed[v]) {
      im.ring_vars.push_back(v);
      placed[v] = 1;
    }
  }
  for (std::size_t v = 0; v < ctx->size(); ++v)
    if (used[v] && !placed[v]) im.ring_vars.push_back(v);
  im.table_to_ring.assign(ctx->size(), -1);
  for (std::size_t r = 0; r < im.ring_vars.size(); ++r) im.table_to_ring[im.ring_vars[r]] = static_cast<int>(r);

  im.ord.kind = order.kind;
  if (order.kind == OrderKind::Block) {
    std::size_t lo = 0;
    for (std::size_t s : order.block_sizes) {
      // Block sizes refer to the listed variables; unused ones shrink their block.
      std::size_t cnt = 0;
      for (std::size_t k = lo; k < lo + s && k < order.vars.size(); ++k)
        if (used[ctx->at(order.vars[k])]) ++cnt;
      std::size_t begin = im.ord.blocks.empty() ? 0 : im.ord.blocks.back().second;
      im.ord.blocks.emplace_back(begin, begin + cnt);
      lo += s;
    }
    std::size_t end = im.ord.blocks.empty() ? 0 : im.ord.blocks.back().second;
    if (end < im.ring_vars.size()) im.ord.blocks.emplace_back(end, im.ring_vars.size());
  }
  const Order& ord = im.ord;

  StepCounter sc;
  sc.max_steps = budget.max_steps;
  auto check_budget = [&](std::size_t basis_size) {
    im.stats.reduction_steps = sc.steps.load();
    im.stats.max_basis_seen = std::max(im.stats.max_basis_seen, basis_size);
    if (sc.over)
      throw BudgetExceeded("Groebner reduction-step budget of " + std::to_string(budget.max_steps) +
                           " exceeded (basis size " + std::to_string(basis_size) + ", pairs reduced " +
                           std::to_string(im.stats.pairs_reduced) + ")");
    if (basis_size > budget.max_basis)
      throw BudgetExceeded("Groebner basis-size budget of " + std::to_string(budget.max_basis) +
                           " exceeded (steps " + std::to_string(sc.steps.load()) + ")");
  };

  std::vector<IPoly> polys;
  std::vector<char> active;
  std::vector<Pair> B;
  bool unit = false;

  auto active_list = [&]() {
    std::vector<const IPoly*> G;
    for (std::size_t i = 0; i < polys.size(); ++i)
      if (active[i]) G.push_back(&polys[i]);
    return G;
  };

  // Gebauer-Moeller update with a new element h.
  auto update = [&](IPoly h) {
    const std::size_t hi = polys.size();
    const IMono& lh = h[0].m;
    if (lh.deg == 0) unit = true;
    std::vector<Pair> C;
    for (std::size_t i = 0; i < hi; ++i)
      if (active[i]) C.push_back({i, hi, lcm(polys[i][0].m, lh)});
    std::vector<Pair> D;
    for (std::size_t a = 0; a < C.size(); ++a) {
      const Pair& p = C[a];
      bool keep = coprime(polys[p.i][0].m, lh);
      if (!keep) {
        keep = true;
        for (std::size_t b = a + 1; b < C.size() && keep; ++b)
          if (divides(C[b].lcm, p.lcm)) keep = false;
        for (const auto& q : D)
          if (keep && divides(q.lcm, p.lcm)) keep = false;
      }
      if (keep) D.push_back(p);
    }
    std::vector<Pair> E;
    for (auto& p : D)
      if (!coprime(polys[p.i][0].m, lh)) E.push_back(std::move(p));
    std::vector<Pair> Bn;
    for (auto& p : B) {
      bool drop = divides(lh, p.lcm) && lcm(polys[p.i][0].m, lh).e != p.lcm.e &&
                  lcm(polys[p.j][0].m, lh).e != p.lcm.e;
      if (!drop) Bn.push_back(std::move(p));
    }
    for (auto& p : E) Bn.push_back(std::move(p));
    B = std::move(Bn);
    for (std::size_t i = 0; i < hi; ++i)
      if (active[i] && divides(lh, polys[i][0].m)) active[i] = 0;
    polys.push_back(std::move(h));
    active.push_back(1);
  };

  // Seed with the (reduced, monic) generators in input order.
  for (const auto& g : generators) {
    if (g.is_zero() || unit) continue;
    IPoly p = reduce_full(im.to_ring(g.terms()), active_list(), ord, sc);
    check_budget(polys.size());
    if (p.empty()) continue;
    make_monic(p);
    update(std::move(p));
  }

  while (!B.empty() && !unit) {
    int dmin = B[0].lcm.deg;
    for (const auto& p : B) dmin = std::min(dmin, p.lcm.deg);
    std::vector<Pair> batch, rest;
    for (auto& p : B) (p.lcm.deg == dmin ? batch : rest).push_back(std::move(p));
    B = std::move(rest);
    std::sort(batch.begin(), batch.end(),
              [](const Pair& a, const Pair& b) { return std::tie(a.i, a.j) < std::tie(b.i, b.j); });

    const auto G = active_list();
    std::vector<IPoly> red(batch.size());
    const long long nb = static_cast<long long>(batch.size());
    if (parallel && nb > 1 && omp_get_max_threads() > 1) {
#pragma omp parallel for schedule(dynamic)
      for (long long b = 0; b < nb; ++b) {
        const Pair& p = batch[static_cast<std::size_t>(b)];
        if (!sc.over) red[static_cast<std::size_t>(b)] = reduce_full(spoly(polys[p.i], polys[p.j], ord), G, ord, sc);
      }
    } else {
      for (long long b = 0; b < nb && !sc.over; ++b) {
        const Pair& p = batch[static_cast<std::size_t>(b)];
        red[static_cast<std::size_t>(b)] = reduce_full(spoly(polys[p.i], polys[p.j], ord), G, ord, sc);
      }
    }
    im.stats.pairs_reduced += batch.size();
    check_budget(polys.size());

    for (auto& h : red) {
      if (h.empty()) {
        ++im.stats.zero_reductions;
        continue;
      }
      h = reduce_full(std::move(h), active_list(), ord, sc);
      check_budget(polys.size());
      if (h.empty()) {
        ++im.stats.zero_reductions;
        continue;
      }
      make_monic(h);
      update(std::move(h));
      check_budget(polys.size());
      if (unit) break;
    }
  }

  // Reduced basis.
  std::vector<IPoly> final;
  if (unit) {
    IMono one;
    one.e.assign(im.ring_vars.size(), 0);
    final.push_back({{one, Rational(1)}});
    im.unit = true;
  } else {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < polys.size(); ++i)
      if (active[i]) idx.push_back(i);
    for (std::size_t a : idx) {
      std::vector<const IPoly*> others;
      for (std::size_t b : idx)
        if (b != a) others.push_back(&polys[b]);
      IPoly tail(polys[a].begin() + 1, polys[a].end());
      IPoly r = reduce_full(std::move(tail), others, ord, sc);
      IPoly g;
      g.push_back(polys[a][0]);
      for (auto& t : r) g.push_back(std::move(t));
      final.push_back(std::move(g));
    }
    check_budget(polys.size());
    std::sort(final.begin(), final.end(), [&](const IPoly& x, const IPoly& y) { return ord.cmp(x[0].m, y[0].m) > 0; });
  }
  im.stats.reduction_steps = sc.steps.load();
  Exponents zero(ctx->size(), 0);
  for (const auto& g : final) im.basis.push_back(im.from_ring(g, zero));
  im.ibasis = std::move(final);
  return result;
}

GroebnerBasis buchberger(const IdealPresentation& I, const MonomialOrder& order, const GroebnerBudget& budget,
                         bool parallel) {
  return buchberger(I.ctx, I.generators, order, budget, parallel);
}

GroebnerBasis buchberger_serial(const IdealPresentation& I, const MonomialOrder& order, const GroebnerBudget& budget) {
  return buchberger(I.ctx, I.generators, order, budget, false);
}

MultiPoly normal_form(const MultiPoly& p, const GroebnerBasis& G) { return G.normal_form(p); }

bool ideal_contains(const IdealPresentation& I, const MultiPoly& p, const MonomialOrder& order,
                    const GroebnerBudget& budget) {
  return buchberger(I, order, budget).contains(p);
}

VarTablePtr with_inverses(const VarTablePtr& ctx, const std::vector<std::size_t>& vars) {
  std::vector<Variable> extra;
  int i = 0;
  for (std::size_t v : vars) extra.push_back({VarKind::Aux, 0, i++, false, "inv(" + (*ctx)[v].name + ")"});
  return ctx->extended(std::move(extra));
}

MultiPoly transfer(const MultiPoly& p, const VarTablePtr& target) {
  if (p.context() == target) return p;
  const VarTable& src = *p.context();
  for (std::size_t v = 0; v < src.size(); ++v)
    if (p.uses(v) && !target->find(src[v].name))
      throw ContextError("variable " + src[v].name + " missing from target table");
  std::vector<Term> ts;
  for (const auto& term : p.terms()) {
    Exponents e(target->size(), 0);
    for (std::size_t v = 0; v < src.size(); ++v)
      if (term.exps[v]) e[target->at(src[v].name)] = term.exps[v];
    ts.push_back({std::move(e), term.coeff});
  }
  return MultiPoly::from_terms(target, std::move(ts));
}

std::vector<MultiPoly> localized_generators(const IdealPresentation& I, const VarTablePtr& ext,
                                            const std::vector<std::size_t>& vars) {
  std::vector<MultiPoly> gens;
  for (const auto& g : I.generators) gens.push_back(transfer(g, ext));
  for (std::size_t v : vars) {
    const std::string& name = (*I.ctx)[v].name;
    gens.push_back(MultiPoly::var(ext, name) * MultiPoly::var(ext, "inv(" + name + ")") - MultiPoly::constant(ext, 1));
  }
  return gens;
}

bool ideal_equal_laurent(const IdealPresentation& I, const IdealPresentation& J,
                         const std::vector<std::size_t>& laurent_vars, const GroebnerBudget& budget) {
  if (I.ctx != J.ctx) throw ContextError("ideals over different variable tables");
  VarTablePtr ext = with_inverses(I.ctx, laurent_vars);
  GroebnerBasis gi = buchberger(ext, localized_generators(I, ext, laurent_vars), {}, budget);
  GroebnerBasis gj = buchberger(ext, localized_generators(J, ext, laurent_vars), {}, budget);
  for (const auto& g : J.generators)
    if (!gi.contains(transfer(g, ext))) return false;
  for (const auto& g : I.generators)
    if (!gj.contains(transfer(g, ext))) return false;
  return true;
}

}  // namespace qhc
