#include "qhc/presentation.hpp"

#include <omp.h>

#include <sstream>

#include "qhc/errors.hpp"

namespace qhc {

int pairing(const MultiPoly& lambda, const Cocharacter& d) {
  const auto& ctx = *lambda.context();
  Rational s = 0;
  for (const auto& t : lambda.terms()) {
    int deg = 0;
    std::size_t var = 0;
    for (std::size_t v = 0; v < t.exps.size(); ++v) {
      if (t.exps[v] == 0) continue;
      deg += t.exps[v];
      var = v;
    }
    if (deg != 1) {
      if (deg == 0) continue;
      throw ArgumentError("pairing needs a linear form, got " + format(lambda));
    }
    if (ctx[var].kind == VarKind::Xi) s += t.coeff * d.at(var);
  }
  if (s.get_den() != 1) throw ArgumentError("non-integral pairing");
  return static_cast<int>(s.get_num().get_si());
}

namespace {

// prod over weights of l^{<l,d>} split by sign of the pairing.
std::pair<MultiPoly, MultiPoly> split_products(const WeightData& w, const Cocharacter& d) {
  MultiPoly pos = MultiPoly::constant(w.ctx, 1), neg = MultiPoly::constant(w.ctx, 1);
  for (const auto& l : w.n_weights) {
    int a = pairing(l, d);
    if (a > 0) pos *= l.pow(static_cast<unsigned>(a));
    if (a < 0) neg *= l.pow(static_cast<unsigned>(-a));
  }
  return {pos, neg};
}

bool is_zero_cochar(const Cocharacter& d) {
  for (int x : d)
    if (x) return false;
  return true;
}

}  // namespace

MultiPoly abelian_relation(const WeightData& w, const Cocharacter& d) {
  const auto& ctx = w.ctx;
  if (is_zero_cochar(d)) return MultiPoly(ctx);
  auto [pos, neg] = split_products(w, d);
  Exponents qt(ctx->size(), 0);
  for (std::size_t v = 0; v < ctx->size(); ++v) {
    if (!d[v]) continue;
    const Variable& x = (*ctx)[v];
    if (x.kind != VarKind::Xi) throw ArgumentError("cocharacter must live on XI variables");
    std::string name = x.name;
    name.replace(0, 2, "Qt");
    qt[ctx->at(name)] = d[v];
  }
  return pos - MultiPoly::monomial(ctx, std::move(qt)) * neg;
}

MultiPoly nonabelian_relation(const WeightData& w, const BlockStructure& blocks, const Cocharacter& d,
                              const std::vector<std::vector<int>>& g) {
  const auto& ctx = w.ctx;
  if (is_zero_cochar(d)) return MultiPoly(ctx);
  auto [pos, neg] = split_products(w, d);
  Exponents qbar(ctx->size(), 0);
  for (const auto& b : blocks.blocks) {
    int s = 0;
    for (std::size_t v : b.vars) s += d.at(v);
    if (s) qbar[ctx->at(q_name(b.node))] = s;
  }
  int sign = rho_pairing(blocks, d) % 2 ? -1 : 1;
  MultiPoly rel = pos - MultiPoly::monomial(ctx, std::move(qbar), sign) * neg;
  return antisymmetrize(g, blocks, rel);
}

std::vector<std::vector<int>> staircase(const BlockStructure& blocks, const std::string& k, int p) {
  std::vector<std::vector<int>> g;
  bool found = false;
  for (const auto& b : blocks.blocks) {
    // Other blocks carry rho, which the division by the Vandermonde cancels.
    const int v = static_cast<int>(b.vars.size());
    std::vector<int> e(b.vars.size(), 0);
    for (int j = 0; j < v; ++j) e[static_cast<std::size_t>(j)] = v - 1 - j;
    if (b.node == k) {
      found = true;
      e[0] = p;
    }
    g.push_back(std::move(e));
  }
  if (!found) throw ArgumentError("no block for node '" + k + "'");
  return g;
}

MultiPoly node_relation(const Quiver& q, const WeightData& w, const std::string& k, int p) {
  if (p < 0) throw ArgumentError("insertion power must be non-negative");
  const auto& ctx = w.ctx;
  const Node& node = q.node(k);
  if (node.kind != NodeKind::Gauge) throw ArgumentError("node relations live on gauge nodes");
  const NodeWeights& nw = w.at(k);
  const int v = node.dim;
  const int vm = static_cast<int>(nw.vminus.size()), vp = static_cast<int>(nw.vplus.size());
  std::vector<MultiPoly> xi = roots(q, ctx, k);
  auto em = elementary_all(ctx, nw.vminus), ep = elementary_all(ctx, nw.vplus);

  // h_j(xi) for the needed range, cached.
  std::vector<MultiPoly> h;
  auto hget = [&](int j) -> MultiPoly {
    if (j < 0) return MultiPoly(ctx);
    while (static_cast<int>(h.size()) <= j) h.push_back(complete(ctx, xi, static_cast<int>(h.size())));
    return h[static_cast<std::size_t>(j)];
  };

  MultiPoly L(ctx), R(ctx);
  for (int m = 0; m <= vm; ++m) {
    MultiPoly term = em[static_cast<std::size_t>(vm - m)] * hget(m + p - v + 1);
    if ((vm - m) % 2) L -= term;
    else L += term;
  }
  for (int m = 0; m <= vp; ++m) {
    MultiPoly term = ep[static_cast<std::size_t>(vp - m)] * hget(m + p - v + 1);
    if (m % 2) R -= term;
    else R += term;
  }
  MultiPoly Q = MultiPoly::var(ctx, q_name(k));
  const bool odd = (v - 1) % 2;
  if (node.theta > 0) return odd ? L + Q * R : L - Q * R;
  return odd ? -L - Q * R : L - Q * R;
}

int default_p_max(const Quiver& q) {
  int m = 0;
  for (const auto& v : q.nodes())
    if (v.kind == NodeKind::Gauge) m = std::max(m, v.dim);
  return m + 2;
}

MultiPoly drop_equivariant(const MultiPoly& p) {
  std::map<std::size_t, MultiPoly> zero;
  for (std::size_t v : p.context()->of_kind(VarKind::U))
    if (p.uses(v)) zero.emplace(v, MultiPoly(p.context()));
  if (zero.empty()) return p;
  return substitute(p, zero);
}

namespace {

IdealPresentation make_ideal(const Quiver& q, const VarTablePtr& ctx, int p_max, bool equivariant, bool parallel) {
  if (p_max < 0) throw ArgumentError("p_max must be non-negative");
  IdealPresentation I;
  I.ctx = ctx;
  I.p_max = p_max;
  I.equivariant = equivariant;
  WeightData w = weights(q, ctx);
  std::vector<std::string> gauge;
  for (std::size_t l = 0; l < q.n_gauge(); ++l) {
    gauge.push_back(q.nodes()[l].id);
    I.degrees.emplace_back(q.nodes()[l].id, q.nodes()[l].theta > 0 ? 1 : -1);
  }
  const std::size_t per = static_cast<std::size_t>(p_max) + 1;
  const long long total = static_cast<long long>(gauge.size() * per);
  std::vector<MultiPoly> gens(static_cast<std::size_t>(total), MultiPoly(ctx));
  auto build = [&](long long i) {
    const auto& k = gauge[static_cast<std::size_t>(i) / per];
    int p = static_cast<int>(static_cast<std::size_t>(i) % per);
    MultiPoly r = node_relation(q, w, k, p);
    gens[static_cast<std::size_t>(i)] = equivariant ? r : drop_equivariant(r);
  };
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < total; ++i) build(i);
  } else {
    for (long long i = 0; i < total; ++i) build(i);
  }
  I.generators = std::move(gens);
  return I;
}

}  // namespace

IdealPresentation build_ideal(const Quiver& q, const VarTablePtr& ctx, int p_max, bool equivariant) {
  return make_ideal(q, ctx, p_max, equivariant, omp_get_max_threads() > 1);
}

IdealPresentation build_ideal_serial(const Quiver& q, const VarTablePtr& ctx, int p_max, bool equivariant) {
  return make_ideal(q, ctx, p_max, equivariant, false);
}

MultiPoly chern_of(const VarTablePtr& ctx, const std::vector<MultiPoly>& ws) {
  MultiPoly t = MultiPoly::var(ctx, "t");
  MultiPoly c = MultiPoly::constant(ctx, 1);
  for (const auto& w : ws) c *= t + w;
  return c;
}

MultiPoly chern_poly(const Quiver& q, const VarTablePtr& ctx, const std::string& id) {
  return chern_of(ctx, roots(q, ctx, id));
}

MultiPoly delta_t(const VarTablePtr& ctx, const std::vector<MultiPoly>& U, const std::vector<MultiPoly>& Uprime) {
  const int r = static_cast<int>(U.size()), s = static_cast<int>(Uprime.size());
  if (r < s) return MultiPoly(ctx);
  auto e = elementary_all(ctx, U);
  std::vector<MultiPoly> h;
  for (int j = 0; j <= r - s; ++j) h.push_back(complete(ctx, Uprime, j));
  MultiPoly out(ctx);
  for (int p = 0; p <= r - s; ++p) {
    MultiPoly inner(ctx);
    for (int m = 0; m <= p && m <= r; ++m) {
      MultiPoly term = e[static_cast<std::size_t>(m)] * h[static_cast<std::size_t>(p - m)];
      if (m % 2) inner -= term;
      else inner += term;
    }
    inner *= MultiPoly::var(ctx, "t", r - s - p);
    if (p % 2) out -= inner;
    else out += inner;
  }
  return out;
}

std::pair<MultiPoly, MultiPoly> exchange_lhs_rhs(const Quiver& q, const VarTablePtr& ctx, const std::string& k) {
  const Node& node = q.node(k);
  if (node.kind != NodeKind::Gauge) throw ArgumentError("exchange relations live on gauge nodes");
  WeightData w = weights(q, ctx);
  const NodeWeights& nw = w.at(k);
  std::vector<MultiPoly> V = roots(q, ctx, k);
  MultiPoly cV = chern_of(ctx, V);
  MultiPoly minus = chern_of(ctx, nw.vminus) - delta_t(ctx, nw.vminus, V) * cV;
  MultiPoly plus = chern_of(ctx, nw.vplus) - delta_t(ctx, nw.vplus, V) * cV;
  MultiPoly Q = MultiPoly::var(ctx, q_name(k));
  const int vm = static_cast<int>(nw.vminus.size());
  const bool odd = (vm - node.dim + 1) % 2 != 0;
  if (node.theta > 0) return {minus, odd ? -(Q * plus) : Q * plus};
  return {odd ? -minus : minus, Q * plus};
}

std::string format_presentation(const IdealPresentation& I) {
  std::ostringstream out;
  for (const auto& g : I.generators) out << format(g) << '\n';
  return out.str();
}

}  // namespace qhc
