// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <set>

#include "qhc/errors.hpp"
#include "qhc/ifunction.hpp"
#include "qhc/psi.hpp"

using namespace qhc;

namespace {

std::string data(const std::string& name) { return std::string(QHC_DATA_DIR) + "/" + name; }

struct Outcome {
  bool ok = true;
  std::string detail;
};

Outcome ac1() {
  auto ctx = VarTable::make({{VarKind::T, 0, 0, false, "t"}});
  std::mt19937 rng(1);
  std::uniform_int_distribution<int> size(0, 5), w(-3, 3);
  std::size_t t = ctx->at("t");
  for (int it = 0; it < 200; ++it) {
    int r = size(rng);
    int s = std::uniform_int_distribution<int>(0, r)(rng);
    std::vector<MultiPoly> U, Up;
    for (int i = 0; i < r; ++i) U.push_back(MultiPoly::constant(ctx, w(rng)));
    for (int i = 0; i < s; ++i) Up.push_back(MultiPoly::constant(ctx, w(rng)));
    MultiPoly rem = chern_of(ctx, U) - delta_t(ctx, U, Up) * chern_of(ctx, Up);
    if (!rem.is_zero() && *rem.degree_in(t) >= s) return {false, "remainder degree too high at sample " + std::to_string(it)};
  }
  return {true, "200 samples"};
}

Outcome ac2() {
  int checked = 0;
  for (int v = 1; v <= 4; ++v) {
    std::vector<Node> nodes{{"0", NodeKind::Frozen, v + 1, 0}, {"1", NodeKind::Gauge, v, 1}};
    Quiver q(nodes, {{"0", "1", 1}});
    auto ctx = make_context(q, {});
    BlockStructure b = blocks_of(q, ctx);
    std::vector<MultiPoly> xi = roots(q, ctx, "1");
    for (int mp = 0; mp <= 6; ++mp) {
      MultiPoly lhs = antisymmetrize(staircase(b, "1", mp), b, MultiPoly::constant(ctx, 1));
      if (lhs != complete(ctx, xi, mp - v + 1))
        return {false, "v=" + std::to_string(v) + " m+p=" + std::to_string(mp)};
      ++checked;
    }
  }
  return {true, std::to_string(checked) + " cases"};
}

Outcome ac3() {
  Quiver q = Quiver::load(data("gr24.json"));
  auto ctx = make_context(q, {});
  GroebnerBasis G = buchberger(build_ideal(q, ctx, 3, false));
  MultiPoly r = G.normal_form(complete(ctx, roots(q, ctx, "1"), 4) + MultiPoly::var(ctx, "Q[1]"));
  if (!r.is_zero()) return {false, "normal form " + format(r)};
  return {true, "normal form 0"};
}

Outcome ac4() {
  Quiver q = Quiver::load(data("fl234.json"));
  auto ctx = make_context(q, {});
  GroebnerBasis G = buchberger(build_ideal(q, ctx, default_p_max(q), false));
  int coeffs = 0;
  for (const char* k : {"1", "2"}) {
    auto [lhs, rhs] = exchange_lhs_rhs(q, ctx, k);
    for (const auto& [p, c] : t_coefficients(drop_equivariant(lhs - rhs))) {
      if (!G.contains(c)) return {false, std::string("node ") + k + " t^" + std::to_string(p)};
      ++coeffs;
    }
    // The Q-term is essential: the identity without it must fail.
    bool any_out = false;
    for (const auto& [p, c] : t_coefficients(drop_equivariant(lhs))) any_out = any_out || !G.contains(c);
    if (!any_out) return {false, std::string("node ") + k + " holds without its Q-term"};
  }
  return {true, std::to_string(coeffs) + " t-coefficients in the ideal"};
}

Outcome ac5() {
  Seed s = matrix_seed({{0, 1}, {-1, 0}}, 2);
  EnumerationOptions o;
  o.max_depth = 6;
  ClusterEnumeration en = cluster_variables(s, o);
  if (en.variables.size() != 5) return {false, std::to_string(en.variables.size()) + " variables"};
  std::set<std::string> got, want;
  for (const auto& v : en.variables) {
    got.insert(format(v.value));
    if (!is_strong_laurent(s, v.value)) return {false, "not Laurent: " + format(v.value)};
  }
  for (const char* t : {"x[1]", "x[2]", "(1+x[2])*x[1]^-1", "(1+x[1]+x[2])*x[1]^-1*x[2]^-1", "(1+x[1])*x[2]^-1"})
    want.insert(format(parse_poly(s.ctx, t)));
  if (got != want) return {false, "values differ from the pentagon"};
  return {true, "5 variables"};
}

Outcome ac6() {
  Quiver q = Quiver::load(data("a3_frozen.json"));
  Seed s = quiver_seed(q);
  EnumerationOptions o;
  o.max_depth = 6;
  o.check_involution = true;
  ClusterEnumeration en = cluster_variables(s, o);
  if (!en.laurent_ok || !en.involution_ok) return {false, "Laurent or involution check failed"};
  for (const auto& v : en.variables)
    if (!is_strong_laurent(s, v.value)) return {false, "not strongly Laurent: " + format(v.value)};
  return {true, std::to_string(en.variables.size()) + " variables, " + std::to_string(en.seeds) + " seeds"};
}

Outcome ac7() {
  TypeAReport r = verify_type_a(Quiver::load(data("fl234.json")));
  int x = 0, lemma = 0;
  for (const auto& c : r.checks) {
    if (!c.result.ok) return {false, c.name + " " + c.result.where};
    (c.name[0] == 'x' ? x : lemma)++;
  }
  if (x != 6 || lemma != 6) return {false, "expected 6 closed forms and 6 lemma identities"};
  return {r.ok, std::to_string(x) + " closed forms, " + std::to_string(lemma) + " lemma identities"};
}

Outcome ac8() {
  int checked = 0;
  for (const char* f : {"p2.json", "gr24.json"}) {
    Quiver q = Quiver::load(data(f));
    ContextOptions co;
    co.with_h = true;
    auto ctx = make_context(q, co);
    WeightData w = weights(q, ctx);
    Cocharacter signs = cone_signs(q, ctx);
    std::vector<std::size_t> xi = ctx->of_kind(VarKind::Xi);
    std::vector<int> c(xi.size(), 0);
    while (true) {
      Cocharacter d(ctx->size(), 0);
      for (std::size_t i = 0; i < xi.size(); ++i) d[xi[i]] = c[i] * signs[xi[i]];
      for (std::size_t j = 0; j < xi.size(); ++j) {
        Cocharacter dp(ctx->size(), 0);
        dp[xi[j]] = signs[xi[j]];
        QdeResult r = qde_check(w, signs, d, dp);
        if (r.skipped) continue;
        if (!r.ok) return {false, std::string(f) + " recursion fails"};
        ++checked;
      }
      std::size_t i = 0;
      while (i < xi.size() && ++c[i] > 3) c[i++] = 0;
      if (i == xi.size()) break;
    }
  }
  return {true, std::to_string(checked) + " recursions"};
}

Outcome ac9() {
  Quiver plus = Quiver::load(data("vgit_312.json"));
  Quiver minus = plus.with_theta({{"1", -plus.node("1").theta}});
  auto ctx = make_context(plus, {});
  IdealPresentation I = build_ideal(plus, ctx, default_p_max(plus), false);
  IdealPresentation J = build_ideal(minus, ctx, default_p_max(minus), false);
  bool eq = ideal_equal_laurent(I, J, ctx->of_kind(VarKind::Q));
  return {eq, eq ? "equal with Q inverted" : "ideals differ"};
}

Outcome ac10() {
  IntMatrix B{{0, 1}, {-1, 0}};
  Seed s = principal_seed(B);
  EnumerationOptions o;
  o.max_depth = 5;
  ClusterEnumeration en = cluster_variables(s, o);
  for (const auto& v : en.variables) {
    FG fg = f_polynomial_and_g_vector(s, v.path, v.index);
    if (g_degree(s, v.value) != fg.g) return {false, "g-vector mismatch at " + format_path(v.path)};
    if (fg.F.constant_term() != 1) return {false, "F constant term at " + format_path(v.path)};
    if (!separation_check(s, v.path, v.index)) return {false, "separation at " + format_path(v.path)};
  }
  if (!psi_yhat_qfactor(Quiver::load(data("rank1_principal.json")), "1")) return {false, "psi(yhat) factor"};
  return {true, std::to_string(en.variables.size()) + " variables"};
}

}  // namespace

int main() {
  struct Criterion {
    const char* id;
    double limit_s;  // 0: time is a target, not a requirement
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> all{
      {"AC-1", 1, ac1},  {"AC-2", 5, ac2},   {"AC-3", 10, ac3}, {"AC-4", 0, ac4}, {"AC-5", 1, ac5},
      {"AC-6", 30, ac6}, {"AC-7", 0, ac7},   {"AC-8", 30, ac8}, {"AC-9", 30, ac9}, {"AC-10", 10, ac10},
  };
  int failed = 0;
  for (const auto& c : all) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.ok && c.limit_s > 0 && secs > c.limit_s) {
      o.ok = false;
      o.detail += ", over the time limit";
    }
    if (!o.ok) ++failed;
    std::printf("%s %s (%.3f s) %s\n", c.id, o.ok ? "PASS" : "FAIL", secs, o.detail.c_str());
  }
  return failed ? 1 : 0;
}
