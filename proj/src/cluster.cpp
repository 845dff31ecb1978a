#include "qhc/cluster.hpp"

#include <omp.h>

#include <algorithm>
#include <exception>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "qhc/errors.hpp"

namespace qhc {

TropMonomial operator*(const TropMonomial& a, const TropMonomial& b) {
  TropMonomial r{a.exps};
  for (std::size_t i = 0; i < r.exps.size(); ++i) r.exps[i] += b.exps.at(i);
  return r;
}

TropMonomial oplus(const TropMonomial& a, const TropMonomial& b) {
  TropMonomial r{a.exps};
  for (std::size_t i = 0; i < r.exps.size(); ++i) r.exps[i] = std::min(r.exps[i], b.exps.at(i));
  return r;
}

TropMonomial TropMonomial::inverse() const { return pow(-1); }

TropMonomial TropMonomial::pow(int e) const {
  TropMonomial r{exps};
  for (int& x : r.exps) x *= e;
  return r;
}

bool Seed::operator==(const Seed& o) const {
  if (n != o.n || Btilde != o.Btilde || !(coeffs == o.coeffs)) return false;
  for (std::size_t i = 0; i < n; ++i)
    if (cluster[i] != o.cluster[i]) return false;
  return true;
}

namespace {

std::vector<TropMonomial> coeffs_from_matrix(const IntMatrix& Bt, std::size_t n) {
  std::vector<TropMonomial> ys(n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = n; i < Bt.size(); ++i) ys[k].exps.push_back(Bt[i][k]);
  return ys;
}

Seed seed_over(VarTablePtr ctx, const IntMatrix& Bt, std::size_t n, const std::vector<std::string>& mutable_names,
               const std::vector<std::string>& frozen_names) {
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (Bt.at(i).at(j) != -Bt.at(j).at(i)) throw ArgumentError("principal part of the exchange matrix is not skew-symmetric");
  Seed s;
  s.ctx = ctx;
  s.n = n;
  s.Btilde = Bt;
  for (const auto& name : mutable_names) {
    s.initial.push_back(ctx->at(name));
    s.cluster.push_back(MultiPoly::var(ctx, name));
  }
  for (const auto& name : frozen_names) s.frozen.push_back(ctx->at(name));
  s.coeffs = coeffs_from_matrix(Bt, n);
  return s;
}

}  // namespace

Seed quiver_seed(const Quiver& q) {
  std::vector<Variable> vars;
  std::vector<std::string> mut, fro;
  for (std::size_t l = 0; l < q.nodes().size(); ++l) {
    const Node& v = q.nodes()[l];
    bool gauge = v.kind == NodeKind::Gauge;
    std::string name = "x[" + v.id + "]";
    vars.push_back({VarKind::X, static_cast<int>(l) + 1, 0, gauge, name});
    (gauge ? mut : fro).push_back(name);
  }
  return seed_over(VarTable::make(std::move(vars)), b_matrix(q).Btilde, q.n_gauge(), mut, fro);
}

Seed matrix_seed(const IntMatrix& Btilde, std::size_t n) {
  std::vector<Variable> vars;
  std::vector<std::string> mut, fro;
  for (std::size_t i = 0; i < Btilde.size(); ++i) {
    std::string name = "x[" + std::to_string(i + 1) + "]";
    vars.push_back({VarKind::X, static_cast<int>(i) + 1, 0, i < n, name});
    (i < n ? mut : fro).push_back(name);
  }
  return seed_over(VarTable::make(std::move(vars)), Btilde, n, mut, fro);
}

Seed principal_seed(const IntMatrix& B) {
  const std::size_t n = B.size();
  IntMatrix Bt = B;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<int> row(n, 0);
    row[i] = 1;
    Bt.push_back(row);
  }
  std::vector<Variable> vars;
  std::vector<std::string> mut, fro;
  for (std::size_t i = 0; i < n; ++i) {
    std::string x = "x[" + std::to_string(i + 1) + "]", y = "y[" + std::to_string(i + 1) + "]";
    vars.push_back({VarKind::X, static_cast<int>(i) + 1, 0, true, x});
    vars.push_back({VarKind::Y, static_cast<int>(i) + 1, 0, false, y});
    mut.push_back(x);
    fro.push_back(y);
  }
  return seed_over(VarTable::make(std::move(vars)), Bt, n, mut, fro);
}

IntMatrix mutate_matrix(const IntMatrix& Bt, std::size_t n, int k) {
  if (k < 1 || static_cast<std::size_t>(k) > n) throw ArgumentError("mutation direction out of range");
  const std::size_t c = static_cast<std::size_t>(k - 1);
  IntMatrix out = Bt;
  for (std::size_t i = 0; i < Bt.size(); ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == c || j == c) {
        out[i][j] = -Bt[i][j];
      } else {
        int bik = Bt[i][c], bkj = Bt[c][j];
        if (bik > 0 && bkj > 0) out[i][j] = Bt[i][j] + bik * bkj;
        else if (bik < 0 && bkj < 0) out[i][j] = Bt[i][j] - bik * bkj;
      }
    }
  }
  return out;
}

Seed mutate(const Seed& s, int k) {
  if (k < 1 || static_cast<std::size_t>(k) > s.n) throw ArgumentError("mutation direction out of range");
  const std::size_t c = static_cast<std::size_t>(k - 1);
  Seed r = s;
  r.Btilde = mutate_matrix(s.Btilde, s.n, k);

  const TropMonomial& yk = s.coeffs[c];
  TropMonomial one{std::vector<int>(yk.exps.size(), 0)};
  for (std::size_t j = 0; j < s.n; ++j) {
    if (j == c) {
      r.coeffs[j] = yk.inverse();
      continue;
    }
    int bkj = s.Btilde[c][j];
    if (bkj > 0) r.coeffs[j] = s.coeffs[j] * oplus(one, yk.inverse()).pow(-bkj);
    else if (bkj < 0) r.coeffs[j] = s.coeffs[j] * oplus(yk, one).pow(-bkj);
  }
  if (!(r.coeffs == coeffs_from_matrix(r.Btilde, r.n)))
    throw InternalError("coefficient mutation disagrees with the frozen rows of the exchange matrix");

  MultiPoly pos = MultiPoly::constant(s.ctx, 1), neg = MultiPoly::constant(s.ctx, 1);
  for (std::size_t i = 0; i < s.Btilde.size(); ++i) {
    int b = s.Btilde[i][c];
    if (b == 0) continue;
    MultiPoly xi = i < s.n ? s.cluster[i] : MultiPoly::var(s.ctx, s.frozen[i - s.n]);
    if (b > 0) pos *= xi.pow(static_cast<unsigned>(b));
    else neg *= xi.pow(static_cast<unsigned>(-b));
  }
  try {
    r.cluster[c] = exact_divide(pos + neg, s.cluster[c]);
  } catch (const DivisibilityError& e) {
    throw LaurentError(std::string("exchange quotient is not a Laurent polynomial: ") + e.what());
  }
  if (!is_strong_laurent(r, r.cluster[c]))
    throw LaurentError("cluster variable " + format(r.cluster[c]) + " violates the strong Laurent property");
  return r;
}

Seed mutate_path(const Seed& s, const MutationPath& path) {
  Seed r = s;
  for (int k : path) r = mutate(r, k);
  return r;
}

bool is_strong_laurent(const Seed& s, const MultiPoly& x) {
  std::vector<char> mut(s.ctx->size(), 0);
  for (std::size_t v : s.initial) mut[v] = 1;
  for (const auto& t : x.terms())
    for (std::size_t v = 0; v < t.exps.size(); ++v)
      if (t.exps[v] < 0 && !mut[v]) return false;
  return true;
}

namespace {

std::string seed_key(const Seed& s) {
  std::vector<std::string> xs;
  for (const auto& x : s.cluster) xs.push_back(format(x));
  std::sort(xs.begin(), xs.end());
  std::string key;
  for (const auto& x : xs) key += x + "|";
  return key;
}

struct Visit {
  Seed seed;
  MutationPath path;
};

void require_principal(const Seed& s) {
  bool ok = s.m() == s.n;
  for (std::size_t j = 0; ok && j < s.n; ++j)
    for (std::size_t i = 0; i < s.n; ++i) ok = ok && s.Btilde[s.n + j][i] == (i == j ? 1 : 0);
  if (!ok) throw ArgumentError("seed does not have principal coefficients");
}

}  // namespace

ClusterEnumeration cluster_variables(const Seed& s0, const EnumerationOptions& opt) {
  if (opt.max_depth < 0) throw ArgumentError("max_depth must be nonnegative");
  ClusterEnumeration out;
  std::set<std::string> seen{seed_key(s0)};
  std::map<std::string, ClusterVariableRecord> vars;
  std::vector<Visit> frontier{{s0, {}}};
  const std::size_t n = s0.n;

  for (int depth = 0;; ++depth) {
    out.depth_reached = depth;
    out.seeds += frontier.size();
    if (out.seeds > opt.max_seeds)
      throw BudgetExceeded("cluster enumeration exceeded " + std::to_string(opt.max_seeds) + " seeds at depth " +
                           std::to_string(depth));
    for (const auto& v : frontier) {
      for (std::size_t k = 0; k < n; ++k) {
        const MultiPoly& x = v.seed.cluster[k];
        if (!is_strong_laurent(v.seed, x)) out.laurent_ok = false;
        std::string key = format(x);
        if (!vars.count(key)) vars.emplace(key, ClusterVariableRecord{x, v.path, static_cast<int>(k) + 1});
      }
    }
    const bool expand = depth < opt.max_depth;
    if (!expand && !opt.check_involution) break;

    // Mutations of the frontier are independent; dedup happens in order afterwards.
    const long long jobs = static_cast<long long>(frontier.size() * n);
    std::vector<std::optional<Seed>> next(static_cast<std::size_t>(jobs));
    std::vector<char> invol(static_cast<std::size_t>(jobs), 1);
    std::exception_ptr err;
    auto job = [&](long long i) {
      const Visit& v = frontier[static_cast<std::size_t>(i) / n];
      int k = static_cast<int>(static_cast<std::size_t>(i) % n) + 1;
      try {
        Seed m = mutate(v.seed, k);
        if (opt.check_involution && !(mutate(m, k) == v.seed)) invol[static_cast<std::size_t>(i)] = 0;
        if (expand) next[static_cast<std::size_t>(i)] = std::move(m);
      } catch (...) {
#pragma omp critical(qhc_cluster_err)
        if (!err) err = std::current_exception();
      }
    };
    if (opt.parallel && omp_get_max_threads() > 1) {
#pragma omp parallel for schedule(dynamic)
      for (long long i = 0; i < jobs; ++i) job(i);
    } else {
      for (long long i = 0; i < jobs; ++i) job(i);
    }
    if (err) std::rethrow_exception(err);
    for (char c : invol)
      if (!c) out.involution_ok = false;
    if (!expand) break;

    std::vector<Visit> fresh;
    for (long long i = 0; i < jobs; ++i) {
      auto& m = next[static_cast<std::size_t>(i)];
      std::string key = seed_key(*m);
      if (!seen.insert(key).second) continue;
      MutationPath p = frontier[static_cast<std::size_t>(i) / n].path;
      p.push_back(static_cast<int>(static_cast<std::size_t>(i) % n) + 1);
      fresh.push_back({std::move(*m), std::move(p)});
    }
    if (fresh.empty()) break;
    frontier = std::move(fresh);
  }
  for (auto& [key, rec] : vars) out.variables.push_back(std::move(rec));
  return out;
}

std::vector<int> g_degree(const Seed& s0, const MultiPoly& x) {
  const std::size_t n = s0.n;
  if (s0.m() != n) throw ArgumentError("g-vectors need principal coefficients");
  std::optional<std::vector<int>> deg;
  for (const auto& t : x.terms()) {
    std::vector<int> d(n, 0);
    for (std::size_t i = 0; i < n; ++i) d[i] += t.exps[s0.initial[i]];
    for (std::size_t j = 0; j < n; ++j) {
      int e = t.exps[s0.frozen[j]];
      for (std::size_t i = 0; i < n; ++i) d[i] -= e * s0.Btilde[i][j];
    }
    if (!deg) deg = d;
    else if (*deg != d) throw InternalError("cluster variable " + format(x) + " is not homogeneous");
  }
  if (!deg) throw InternalError("zero cluster variable");
  return *deg;
}

FG f_polynomial_and_g_vector(const Seed& s0, const MutationPath& path, int k) {
  require_principal(s0);
  if (k < 1 || static_cast<std::size_t>(k) > s0.n) throw ArgumentError("cluster index out of range");
  MultiPoly x = mutate_path(s0, path).cluster[static_cast<std::size_t>(k - 1)];
  std::map<std::size_t, MultiPoly> ones;
  for (std::size_t v : s0.initial) ones.emplace(v, MultiPoly::constant(s0.ctx, 1));
  MultiPoly F = substitute(x, ones);
  if (F.constant_term() != 1) throw InternalError("F-polynomial " + format(F) + " has constant term != 1");
  return {F, g_degree(s0, x)};
}

bool separation_check(const Seed& s0, const MutationPath& path, int k) {
  MultiPoly x = mutate_path(s0, path).cluster[static_cast<std::size_t>(k - 1)];
  FG fg = f_polynomial_and_g_vector(s0, path, k);
  const auto& ctx = s0.ctx;
  const std::size_t n = s0.n;

  std::map<std::size_t, MultiPoly> yhat;
  for (std::size_t j = 0; j < n; ++j) {
    Exponents e(ctx->size(), 0);
    e[s0.frozen[j]] = 1;
    for (std::size_t i = 0; i < n; ++i) e[s0.initial[i]] += s0.Btilde[i][j];
    yhat.emplace(s0.frozen[j], MultiPoly::monomial(ctx, std::move(e)));
  }
  MultiPoly Fhat = substitute(fg.F, yhat);

  // Tropical evaluation of F at y: componentwise minimum of its y-exponents.
  Exponents trop(ctx->size(), 0);
  bool first = true;
  for (const auto& t : fg.F.terms()) {
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t v = s0.frozen[j];
      trop[v] = first ? t.exps[v] : std::min(trop[v], t.exps[v]);
    }
    first = false;
  }
  Exponents xg(ctx->size(), 0);
  for (std::size_t i = 0; i < n; ++i) xg[s0.initial[i]] = fg.g[i];
  return x * MultiPoly::monomial(ctx, trop) == Fhat * MultiPoly::monomial(ctx, xg);
}

std::string format_path(const MutationPath& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
  return s;
}

MutationPath parse_path(const std::string& text) {
  MutationPath p;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int k = 0;
    try {
      k = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || k < 1) throw InputError("bad mutation path '" + text + "'");
    p.push_back(k);
  }
  return p;
}

}  // namespace qhc
