#include "qhc/psi.hpp"

#include <omp.h>

#include <algorithm>
#include <exception>
#include <functional>
#include <map>
#include <mutex>

#include "qhc/errors.hpp"

namespace qhc {

VarTablePtr psi_context(const Quiver& q, bool with_qtilde) {
  ContextOptions opt;
  opt.with_t = true;
  opt.with_zeta = true;
  opt.with_qtilde = with_qtilde;
  return make_context(q, opt);
}

namespace {

int sign_of(int e) { return e % 2 ? -1 : 1; }

MultiPoly zeta(const VarTablePtr& ctx, const std::string& id, int power = 1) {
  return MultiPoly::var(ctx, zeta_name(id), power);
}

// Column of the exchange matrix at gauge node k, keyed by node label.
std::vector<int> b_column(const Quiver& q, const std::string& k) {
  IntMatrix Bt = b_matrix(q).Btilde;
  std::size_t c = q.label(k);
  std::vector<int> col;
  for (const auto& row : Bt) col.push_back(row[c]);
  return col;
}

int exchange_sign(const Quiver& q, const VarTablePtr& ctx, const std::string& k) {
  int vm = static_cast<int>(weights(q, ctx).at(k).vminus.size());
  return sign_of(vm - q.node(k).dim);
}

MultiPoly psi_x(const Quiver& q, const VarTablePtr& ctx, const std::string& id) {
  return zeta(ctx, id) * chern_poly(q, ctx, id);
}

}  // namespace

std::vector<ZetaImage> zeta_substitution(const Quiver& q, const VarTablePtr& ctx) {
  std::vector<ZetaImage> out;
  for (std::size_t l = 0; l < q.n_gauge(); ++l) {
    const std::string& k = q.nodes()[l].id;
    std::vector<int> col = b_column(q, k);
    int s = exchange_sign(q, ctx, k);
    MultiPoly m = MultiPoly::constant(ctx, s);
    for (std::size_t i = 0; i < col.size(); ++i)
      if (col[i]) m *= zeta(ctx, q.nodes()[i].id, -col[i]);
    out.push_back({k, s, m});
  }
  return out;
}

MultiPoly apply_zeta_substitution(const MultiPoly& p, const std::vector<ZetaImage>& subs) {
  std::map<std::size_t, MultiPoly> b;
  for (const auto& z : subs) {
    std::size_t v = p.context()->at(q_name(z.node));
    if (p.uses(v)) b.emplace(v, z.monomial);
  }
  return b.empty() ? p : substitute(p, b);
}

PsiImage psi_initial(const Quiver& q, const VarTablePtr& ctx, const std::string& id) {
  return {psi_x(q, ctx, id), {}};
}

PsiImage psi_adjacent(const Quiver& q, const VarTablePtr& ctx, const std::string& k) {
  if (!q.is_gauge(k)) throw ArgumentError("adjacent cluster variables live on gauge nodes");
  WeightData wd = weights(q, ctx);
  const NodeWeights& nw = wd.at(k);
  std::vector<MultiPoly> V = roots(q, ctx, k);
  std::vector<int> col = b_column(q, k);
  MultiPoly zp = MultiPoly::constant(ctx, 1), zn = MultiPoly::constant(ctx, 1);
  for (std::size_t i = 0; i < col.size(); ++i) {
    if (col[i] > 0) zp *= zeta(ctx, q.nodes()[i].id, col[i]);
    if (col[i] < 0) zn *= zeta(ctx, q.nodes()[i].id, -col[i]);
  }
  MultiPoly inner = zp * delta_t(ctx, nw.vminus, V) + zn * delta_t(ctx, nw.vplus, V);
  return {chern_of(ctx, V) * inner, {{k, 1}}};
}

MultiPoly psi_denominator(const Quiver& q, const VarTablePtr& ctx, const PsiImage& a) {
  MultiPoly d = MultiPoly::constant(ctx, 1);
  for (const auto& [id, m] : a.den) d *= psi_x(q, ctx, id).pow(static_cast<unsigned>(m));
  return d;
}

PsiImage psi_of_laurent(const Quiver& q, const VarTablePtr& ctx, const Seed& s0, const MultiPoly& x) {
  PsiImage out{MultiPoly(ctx), {}};
  Exponents shift(s0.ctx->size(), 0);
  std::vector<std::optional<MultiPoly>> images(s0.ctx->size());
  for (std::size_t l = 0; l < q.nodes().size(); ++l) {
    const std::string& id = q.nodes()[l].id;
    std::size_t v = s0.ctx->at("x[" + id + "]");
    images[v] = psi_x(q, ctx, id);
    auto lo = x.min_degree_in(v);
    if (lo && *lo < 0) {
      shift[v] = -*lo;
      out.den.emplace_back(id, -*lo);
    }
  }
  MultiPoly N = x * MultiPoly::monomial(s0.ctx, shift);
  out.num = map_into(N, ctx, images);
  return out;
}

PsiImage psi_of_cluster_variable(const Quiver& q, const VarTablePtr& ctx, const MutationPath& path, int k) {
  Seed s0 = quiver_seed(q);
  if (k < 1 || static_cast<std::size_t>(k) > s0.n) throw ArgumentError("cluster index out of range");
  Seed s = mutate_path(s0, path);
  return psi_of_laurent(q, ctx, s0, s.cluster[static_cast<std::size_t>(k - 1)]);
}

// ---------------------------------------------------------------------------

struct ZetaIdeal::Impl {
  VarTablePtr ctx;
  IdealPresentation I;
  GroebnerBasis G;
  std::vector<std::size_t> zvars;  // free zeta variables
  std::vector<std::size_t> pinned;
  std::vector<std::size_t> qvars;  // Q^(k), gauge order
  std::vector<int> signs;
  std::vector<std::vector<int>> cols;  // exponent of Q_k's image on zvars

  mutable std::once_flag sat_once;
  mutable VarTablePtr ext;
  mutable std::unique_ptr<GroebnerBasis> sat;

  const GroebnerBasis& saturated() const {
    std::call_once(sat_once, [this] {
      ext = with_inverses(ctx, qvars);
      sat = std::make_unique<GroebnerBasis>(buchberger(ext, localized_generators(I, ext, qvars)));
    });
    return *sat;
  }

  // Integer n with sum_k n_k cols[k] == e, if any.
  std::optional<std::vector<int>> solve(const std::vector<int>& e) const {
    const std::size_t rows = zvars.size(), n = cols.size();
    std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(n + 1));
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < n; ++c) a[r][c] = cols[c][r];
      a[r][n] = e[r];
    }
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < rows; ++c) {
      std::size_t p = r;
      while (p < rows && a[p][c] == 0) ++p;
      if (p == rows) continue;
      std::swap(a[p], a[r]);
      Rational piv = a[r][c];
      for (std::size_t j = c; j <= n; ++j) a[r][j] /= piv;
      for (std::size_t i = 0; i < rows; ++i) {
        if (i == r || a[i][c] == 0) continue;
        Rational f = a[i][c];
        for (std::size_t j = c; j <= n; ++j) a[i][j] -= f * a[r][j];
      }
      pivots.push_back(c);
      ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
      if (a[i][n] != 0) return std::nullopt;
    std::vector<int> sol(n, 0);
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      const Rational& x = a[i][n];
      if (x.get_den() != 1) return std::nullopt;
      sol[pivots[i]] = static_cast<int>(x.get_num().get_si());
    }
    return sol;
  }

  MultiPoly prepare(MultiPoly p) const {
    if (!I.equivariant) p = drop_equivariant(p);
    if (!pinned.empty()) {
      std::map<std::size_t, MultiPoly> one;
      for (std::size_t v : pinned)
        if (p.uses(v)) one.emplace(v, MultiPoly::constant(ctx, 1));
      if (!one.empty()) p = substitute(p, one);
    }
    return p;
  }

  MultiPoly clear_q(const MultiPoly& p) const {
    Exponents e(ctx->size(), 0);
    bool any = false;
    for (std::size_t v : qvars) {
      auto lo = p.min_degree_in(v);
      if (lo && *lo < 0) {
        e[v] = -*lo;
        any = true;
      }
    }
    return any ? p * MultiPoly::monomial(ctx, e) : p;
  }

  Membership test(const MultiPoly& piece, bool allow_saturation, const std::string& where) const {
    Membership m;
    MultiPoly c = clear_q(piece);
    MultiPoly r = G.normal_form(c);
    if (r.is_zero()) return m;
    if (allow_saturation) {
      const GroebnerBasis& S = saturated();
      if (S.normal_form(transfer(c, ext)).is_zero()) {
        m.used_saturation = true;
        return m;
      }
    }
    m.ok = false;
    m.witness = r;
    m.where = where;
    return m;
  }
};

ZetaIdeal::ZetaIdeal(const Quiver& q, const IdealPresentation& I, const GroebnerBasis& G,
                     std::vector<std::string> pinned)
    : impl_(std::make_unique<Impl>()) {
  Impl& im = *impl_;
  im.ctx = I.ctx;
  im.I = I;
  im.G = G;
  if (G.context() != I.ctx) throw ContextError("Groebner basis over a different table than the ideal");
  for (const auto& id : pinned) im.pinned.push_back(im.ctx->at(zeta_name(id)));
  for (std::size_t v : im.ctx->of_kind(VarKind::Zeta))
    if (std::find(im.pinned.begin(), im.pinned.end(), v) == im.pinned.end()) im.zvars.push_back(v);
  for (const auto& z : zeta_substitution(q, im.ctx)) {
    im.qvars.push_back(im.ctx->at(q_name(z.node)));
    im.signs.push_back(z.sign);
    const Term& t = z.monomial.leading();
    std::vector<int> col;
    for (std::size_t v : im.zvars) col.push_back(t.exps[v]);
    im.cols.push_back(col);
  }
  // Cosets are only well defined when the Q-images are independent.
  for (std::size_t k = 0; k < im.cols.size(); ++k) {
    std::vector<int> e = im.cols[k];
    auto s = im.solve(e);
    std::vector<int> unit(im.cols.size(), 0);
    unit[k] = 1;
    if (!s || *s != unit)
      throw ArgumentError("zeta images of the Kaehler parameters are not independent; coset reduction unavailable");
  }
}

ZetaIdeal::~ZetaIdeal() = default;

const VarTablePtr& ZetaIdeal::context() const { return impl_->ctx; }

Membership ZetaIdeal::contains(const MultiPoly& p0) const {
  const Impl& im = *impl_;
  MultiPoly p = im.prepare(p0);
  // Clear negative zeta powers with one global monomial.
  Exponents lift(im.ctx->size(), 0);
  for (std::size_t v : im.zvars) {
    auto lo = p.min_degree_in(v);
    if (lo && *lo < 0) lift[v] = -*lo;
  }
  p *= MultiPoly::monomial(im.ctx, lift);

  for (const auto& [tp, coeff] : t_coefficients(p)) {
    std::vector<std::vector<int>> reps;
    std::vector<std::vector<Term>> pieces;
    for (const auto& t : coeff.terms()) {
      std::vector<int> a;
      for (std::size_t v : im.zvars) a.push_back(t.exps[v]);
      Term nt{t.exps, t.coeff};
      for (std::size_t v : im.zvars) nt.exps[v] = 0;
      std::size_t c = 0;
      std::optional<std::vector<int>> sol;
      for (; c < reps.size(); ++c) {
        std::vector<int> diff(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) diff[i] = a[i] - reps[c][i];
        sol = im.solve(diff);
        if (sol) break;
      }
      if (c == reps.size()) {
        reps.push_back(a);
        pieces.emplace_back();
        sol = std::vector<int>(im.cols.size(), 0);
      }
      // zeta^{a - rep} = prod (s_k Q_k)^{n_k}
      for (std::size_t k = 0; k < sol->size(); ++k) {
        int nk = (*sol)[k];
        nt.exps[im.qvars[k]] += nk;
        if (im.signs[k] < 0 && nk % 2) nt.coeff = -nt.coeff;
      }
      pieces[c].push_back(std::move(nt));
    }
    for (std::size_t c = 0; c < pieces.size(); ++c) {
      MultiPoly piece = MultiPoly::from_terms(im.ctx, std::move(pieces[c]));
      if (piece.is_zero()) continue;
      std::string where = "t^" + std::to_string(tp) + ", zeta coset of " + format(MultiPoly::monomial(im.ctx, [&] {
                            Exponents e(im.ctx->size(), 0);
                            for (std::size_t i = 0; i < im.zvars.size(); ++i) e[im.zvars[i]] = reps[c][i];
                            return e;
                          }()));
      Membership m = im.test(piece, true, where);
      if (!m.ok) return m;
    }
  }
  return {};
}

Membership ZetaIdeal::contains_q(const MultiPoly& p0, bool allow_saturation) const {
  const Impl& im = *impl_;
  MultiPoly p = im.prepare(p0);
  for (std::size_t v : im.ctx->of_kind(VarKind::Zeta))
    if (p.uses(v)) throw ArgumentError("polynomial still contains zeta variables");
  Membership out;
  for (const auto& [tp, coeff] : t_coefficients(p)) {
    Membership m = im.test(coeff, allow_saturation, "t^" + std::to_string(tp));
    if (!m.ok) return m;
    out.used_saturation = out.used_saturation || m.used_saturation;
  }
  return out;
}

// ---------------------------------------------------------------------------

MultiPoly unified_exchange(const Quiver& q, const VarTablePtr& ctx, const std::string& k) {
  if (!q.is_gauge(k)) throw ArgumentError("exchange relations live on gauge nodes");
  WeightData wd = weights(q, ctx);
  const NodeWeights& nw = wd.at(k);
  std::vector<MultiPoly> V = roots(q, ctx, k);
  std::vector<int> col = b_column(q, k);
  MultiPoly sQ = Rational(exchange_sign(q, ctx, k)) * MultiPoly::var(ctx, q_name(k));
  MultiPoly pos = MultiPoly::constant(ctx, 1), neg = MultiPoly::constant(ctx, 1);
  for (std::size_t i = 0; i < col.size(); ++i) {
    MultiPoly c = chern_poly(q, ctx, q.nodes()[i].id);
    if (col[i] > 0) pos *= c.pow(static_cast<unsigned>(col[i]));
    if (col[i] < 0) neg *= c.pow(static_cast<unsigned>(-col[i]));
  }
  MultiPoly cV = chern_of(ctx, V);
  return cV * (delta_t(ctx, nw.vminus, V) + sQ * delta_t(ctx, nw.vplus, V)) - pos - sQ * neg;
}

Membership verify_exchange_image(const Quiver& q, const std::string& k, const ZetaIdeal& Z) {
  return Z.contains_q(unified_exchange(q, Z.context(), k), false);
}

std::pair<MultiPoly, MultiPoly> exchange_image_link(const Quiver& q, const VarTablePtr& ctx, const std::string& k) {
  PsiImage xk = psi_initial(q, ctx, k), xk_adj = psi_adjacent(q, ctx, k);
  MultiPoly prod = exact_divide(xk.num * xk_adj.num, psi_denominator(q, ctx, xk_adj));
  std::vector<int> col = b_column(q, k);
  MultiPoly pos = MultiPoly::constant(ctx, 1), neg = MultiPoly::constant(ctx, 1), M = MultiPoly::constant(ctx, 1);
  for (std::size_t i = 0; i < col.size(); ++i) {
    const std::string& id = q.nodes()[i].id;
    MultiPoly x = psi_x(q, ctx, id);
    if (col[i] > 0) {
      pos *= x.pow(static_cast<unsigned>(col[i]));
      M *= zeta(ctx, id, col[i]);
    }
    if (col[i] < 0) neg *= x.pow(static_cast<unsigned>(-col[i]));
  }
  MultiPoly image = prod - pos - neg;
  MultiPoly transported = M * apply_zeta_substitution(unified_exchange(q, ctx, k), zeta_substitution(q, ctx));
  return {image, transported};
}

Membership psi_equal(const Quiver& q, const VarTablePtr& ctx, const PsiImage& a, const PsiImage& b,
                     const ZetaIdeal& Z) {
  return Z.contains(a.num * psi_denominator(q, ctx, b) - b.num * psi_denominator(q, ctx, a));
}

// ---------------------------------------------------------------------------

TypeAReport verify_type_a(const Quiver& q, const TypeAOptions& opt) {
  ValidationReport vr = validate(q);
  if (!vr.type_a) throw ArgumentError("quiver is not a type A chain satisfying the dimension conditions");
  TypeAReport rep;
  rep.chain = vr.chain;
  const int n = static_cast<int>(q.n_gauge());
  VarTablePtr ctx = psi_context(q);
  int pmax = opt.p_max < 0 ? default_p_max(q) : opt.p_max;
  IdealPresentation I = build_ideal(q, ctx, pmax, opt.equivariant);
  GroebnerBasis G = buchberger(I, {}, opt.budget, opt.parallel);
  ZetaIdeal Z(q, I, G, opt.pinned);

  auto V = [&](int k) { return k > n ? std::vector<MultiPoly>{} : roots(q, ctx, vr.chain[static_cast<std::size_t>(k)]); };
  auto c = [&](int k) { return chern_of(ctx, V(k)); };
  auto delta = [&](int k, int l) { return delta_t(ctx, V(k), V(l)); };
  auto dim = [&](int k) { return k > n ? 0 : q.node(vr.chain[static_cast<std::size_t>(k)]).dim; };
  auto sQ = [&](int l) {
    return Rational(sign_of(dim(l - 1) - dim(l))) * MultiPoly::var(ctx, q_name(vr.chain[static_cast<std::size_t>(l)]));
  };

  // Identify x[kl] by its denominator vector: the indicator of chain positions k+1..l.
  Seed s0 = quiver_seed(q);
  EnumerationOptions eo;
  eo.max_depth = n * (n + 3) / 2 + 2;
  eo.parallel = opt.parallel;
  ClusterEnumeration en = cluster_variables(s0, eo);
  rep.cluster_variables = en.variables.size();
  std::vector<int> pos_of(static_cast<std::size_t>(n), -1);  // gauge label -> chain position
  for (int k = 1; k <= n; ++k) pos_of[q.label(vr.chain[static_cast<std::size_t>(k)])] = k;
  std::map<std::pair<int, int>, const ClusterVariableRecord*> xkl;
  for (const auto& r : en.variables) {
    std::vector<int> d(static_cast<std::size_t>(n) + 2, 0);
    for (std::size_t i = 0; i < s0.n; ++i) d[static_cast<std::size_t>(pos_of[i])] = -r.value.min_degree_in(s0.initial[i]).value();
    int lo = n + 1, hi = 0;
    bool binary = true;
    for (int p = 1; p <= n; ++p) {
      if (d[static_cast<std::size_t>(p)] < 0 || d[static_cast<std::size_t>(p)] > 1) binary = false;
      if (d[static_cast<std::size_t>(p)] == 1) lo = std::min(lo, p), hi = std::max(hi, p);
    }
    if (!binary || hi == 0) continue;
    bool contiguous = true;
    for (int p = lo; p <= hi; ++p) contiguous = contiguous && d[static_cast<std::size_t>(p)] == 1;
    if (contiguous) xkl[{lo - 1, hi}] = &r;
  }

  struct Job {
    TypeACheck check;
    std::function<Membership()> run;
  };
  std::vector<Job> jobs;
  for (int k = 0; k <= n; ++k) {
    for (int l = k; l <= n; ++l) {
      std::string tag = std::to_string(k) + std::to_string(l);
      if (k == l) {
        jobs.push_back({{"x[" + tag + "]", k, l, "", {}}, [&, k] {
                          Membership m;
                          if (delta(k, k) != MultiPoly::constant(ctx, 1)) {
                            m.ok = false;
                            m.witness = delta(k, k);
                          }
                          return m;
                        }});
        continue;
      }
      auto it = xkl.find({k, l});
      if (it == xkl.end()) {
        Membership m;
        m.ok = false;
        m.where = "cluster variable with denominator vector alpha_" + tag + " not found";
        jobs.push_back({{"x[" + tag + "]", k, l, "", {}}, [m] { return m; }});
        continue;
      }
      const ClusterVariableRecord* rec = it->second;
      std::string path = format_path(rec->path) + ":" + std::to_string(rec->index);
      jobs.push_back({{"x[" + tag + "]", k, l, path, {}}, [&, k, l, rec] {
                        PsiImage a = psi_of_laurent(q, ctx, s0, rec->value);
                        const std::string& zk = vr.chain[static_cast<std::size_t>(k)];
                        const std::string& zl = vr.chain[static_cast<std::size_t>(l)];
                        PsiImage b{zeta(ctx, zk) * zeta(ctx, zl, -1) * delta(k, l), {}};
                        return psi_equal(q, ctx, a, b, Z);
                      }});
    }
  }
  for (int k = 1; k <= n; ++k) {
    for (int l = k; l <= n; ++l) {
      std::string tag = std::to_string(k) + std::to_string(l);
      jobs.push_back({{"lemma1[" + tag + "]", k, l, "", {}}, [&, k, l] {
                        MultiPoly d = c(l) * delta(k - 1, l) - c(k - 1) - sQ(l) * delta(k - 1, l - 1) * c(l + 1);
                        return Z.contains_q(d, false);
                      }});
      jobs.push_back({{"lemma2[" + tag + "]", k, l, "", {}}, [&, k, l] {
                        MultiPoly d = delta(k - 1, l) * delta(l, l + 1) - delta(k - 1, l + 1) - sQ(l) * delta(k - 1, l - 1);
                        return Z.contains_q(d, false);
                      }});
    }
  }

  std::exception_ptr err;
  const long long total = static_cast<long long>(jobs.size());
  auto work = [&](long long i) {
    try {
      jobs[static_cast<std::size_t>(i)].check.result = jobs[static_cast<std::size_t>(i)].run();
    } catch (...) {
#pragma omp critical(qhc_psi_err)
      if (!err) err = std::current_exception();
    }
  };
  if (opt.parallel && omp_get_max_threads() > 1) {
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < total; ++i) work(i);
  } else {
    for (long long i = 0; i < total; ++i) work(i);
  }
  if (err) std::rethrow_exception(err);
  for (auto& j : jobs) {
    rep.ok = rep.ok && j.check.result.ok;
    rep.checks.push_back(std::move(j.check));
  }
  return rep;
}

bool psi_yhat_qfactor(const Quiver& q, const std::string& k) {
  const std::size_t n = q.n_gauge();
  IntMatrix Bt = b_matrix(q).Btilde;
  if (q.n_frozen() != n) throw ArgumentError("principal coefficients need one frozen node per gauge node");
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      if (Bt[n + j][i] != (i == j ? 1 : 0))
        throw ArgumentError("frozen rows of the exchange matrix are not the identity");
  const std::size_t kk = q.label(k);
  if (kk >= n) throw ArgumentError("psi(yhat_k) needs a gauge node");

  VarTablePtr ctx = psi_context(q);
  Seed s0 = quiver_seed(q);
  Exponents e(s0.ctx->size(), 0);
  e[s0.frozen[kk]] = 1;
  for (std::size_t i = 0; i < n; ++i) e[s0.initial[i]] += Bt[i][kk];
  PsiImage img = psi_of_laurent(q, ctx, s0, MultiPoly::monomial(s0.ctx, e));

  // zeta part: common zeta exponent of the numerator minus that of the denominator.
  std::vector<std::size_t> zv = ctx->of_kind(VarKind::Zeta);
  std::optional<std::vector<int>> num_z;
  for (const auto& t : img.num.terms()) {
    std::vector<int> z;
    for (std::size_t v : zv) z.push_back(t.exps[v]);
    if (!num_z) num_z = z;
    else if (*num_z != z) return false;
  }
  if (!num_z) return false;
  for (const auto& [id, m] : img.den) {
    std::size_t v = ctx->at(zeta_name(id));
    std::size_t pos = static_cast<std::size_t>(std::find(zv.begin(), zv.end(), v) - zv.begin());
    (*num_z)[pos] -= m;
  }

  const ZetaImage* zk = nullptr;
  auto subs = zeta_substitution(q, ctx);
  for (const auto& z : subs)
    if (z.node == k) zk = &z;
  const Term& t = zk->monomial.leading();
  std::vector<int> inv;
  for (std::size_t v : zv) inv.push_back(-t.exps[v]);
  // Sign of (Q^(k))^{-1}'s image against the parity rule evaluated directly.
  int sign = t.coeff > 0 ? 1 : -1;
  int expected = sign_of(static_cast<int>(weights(q, ctx).at(k).vminus.size()) - q.node(k).dim);
  return *num_z == inv && sign == zk->sign && sign == expected;
}

InjectivityWitness injectivity_witness(const Quiver& q, const VarTablePtr& ctx) {
  InjectivityWitness w;
  std::vector<std::string> seen;
  for (const auto& node : q.nodes()) {
    MultiPoly p = psi_initial(q, ctx, node.id).num;
    auto tc = t_coefficients(p);
    MultiPoly z = zeta(ctx, node.id);
    bool ok = !tc.empty() && tc.front().first == node.dim && tc.front().second == z;
    std::string lead = format(z * MultiPoly::var(ctx, "t", node.dim));
    if (std::find(seen.begin(), seen.end(), lead) != seen.end()) ok = false;
    seen.push_back(lead);
    w.ok = w.ok && ok;
    w.leading.emplace_back(node.id, lead);
  }
  return w;
}

std::string format_psi(const PsiImage& a) {
  std::string s = "(" + format(a.num) + ")";
  for (const auto& [id, m] : a.den) {
    s += " / (zeta[" + id + "]*c_t(V[" + id + "]))";
    if (m != 1) s += "^" + std::to_string(m);
  }
  return s;
}

}  // namespace qhc
