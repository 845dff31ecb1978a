#include <doctest.h>

#include "qhc/errors.hpp"
#include "support.hpp"

using namespace qhc;

namespace {

struct Setup {
  VarTablePtr ctx;
  WeightData w;
  Cocharacter signs;
  std::vector<std::size_t> xi;
};

Setup setup(const Quiver& q) {
  ContextOptions o;
  o.with_h = true;
  Setup s;
  s.ctx = make_context(q, o);
  s.w = weights(q, s.ctx);
  s.signs = cone_signs(q, s.ctx);
  s.xi = s.ctx->of_kind(VarKind::Xi);
  return s;
}

// Runs the recursion over the box [0, bound]^r (times the cone signs) for every coordinate d'.
std::pair<int, int> box(const Setup& s, int bound, bool shifted) {
  int checked = 0, failed = 0;
  const std::size_t r = s.xi.size();
  std::vector<int> c(r, 0);
  while (true) {
    Cocharacter d(s.ctx->size(), 0);
    for (std::size_t i = 0; i < r; ++i) d[s.xi[i]] = c[i] * s.signs[s.xi[i]];
    for (std::size_t j = 0; j < r; ++j) {
      Cocharacter dp(s.ctx->size(), 0);
      dp[s.xi[j]] = s.signs[s.xi[j]];
      QdeResult res = shifted ? qde_check_shifted(s.w, s.signs, d, dp) : qde_check(s.w, s.signs, d, dp);
      if (res.skipped) continue;
      ++checked;
      if (!res.ok) ++failed;
    }
    std::size_t i = 0;
    while (i < r && ++c[i] > bound) c[i++] = 0;
    if (i == r) break;
  }
  return {checked, failed};
}

}  // namespace

TEST_CASE("I-function coefficients of projective space") {
  Setup s = setup(Quiver::load(qt::data("p2.json")));
  Cocharacter d(s.ctx->size(), 0);
  d[s.xi[0]] = 2;
  IfunCoeff c = ifun_coeff(s.w, d);
  MultiPoly den = MultiPoly::constant(s.ctx, 1);
  for (int i = 1; i <= 3; ++i)
    for (int k = 1; k <= 2; ++k)
      den *= parse_poly(s.ctx, "xi[1][1] - u[0][" + std::to_string(i) + "] + " + std::to_string(k) + "*h");
  CHECK(c.value == RationalFunction(MultiPoly::constant(s.ctx, 1), den));
  CHECK(ifun_coeff(s.w, Cocharacter(s.ctx->size(), 0)).value == RationalFunction(MultiPoly::constant(s.ctx, 1)));
  Quiver p = Quiver::load(qt::data("p2.json"));
  CHECK_THROWS_AS(ifun_coeff(weights(p, make_context(p, {})), d), ArgumentError);
}

TEST_CASE("recursion on projective space") {
  Setup s = setup(Quiver::load(qt::data("p2.json")));
  auto [checked, failed] = box(s, 3, false);
  CHECK(checked == 3);
  CHECK(failed == 0);
}

TEST_CASE("recursion on the abelianization of Gr(2,4)") {
  Setup s = setup(Quiver::load(qt::data("gr24.json")));
  auto [checked, failed] = box(s, 3, false);
  CHECK(checked == 2 * 16 - 8);
  CHECK(failed == 0);
}

TEST_CASE("recursion with negative weights") {
  // Total space of O(-1) over P^1: weights xi - u1, xi - u2 and -xi.
  Setup s = setup(Quiver::load(qt::data("p2.json")));
  WeightData w = s.w;
  w.n_weights.pop_back();
  w.n_weights.push_back(-MultiPoly::var(s.ctx, s.xi[0]));
  Setup t = s;
  t.w = w;
  auto [checked, failed] = box(t, 3, false);
  CHECK(checked == 3);
  CHECK(failed == 0);
  // The range m = 1..-<l,d'> misses the factor at m = 0 whenever some weight pairs negatively.
  auto [c2, f2] = box(t, 3, true);
  CHECK(f2 == c2);

  Setup fl = setup(Quiver::load(qt::data("fl234.json")));
  auto [c3, f3] = box(fl, 1, false);
  CHECK(c3 > 0);
  CHECK(f3 == 0);
  CHECK(box(fl, 1, true).second > 0);
  // Without negative pairings both ranges agree.
  CHECK(box(s, 2, true).second == 0);
}

TEST_CASE("degrees outside the cone are skipped") {
  Setup s = setup(Quiver::load(qt::data("vgit_312.json")).with_theta({{"1", -1}}));
  Cocharacter d(s.ctx->size(), 0), dp(s.ctx->size(), 0);
  d[s.xi[0]] = 1;
  dp[s.xi[0]] = 1;
  CHECK(qde_check(s.w, s.signs, d, dp).skipped);
  d[s.xi[0]] = -2;
  dp[s.xi[0]] = -1;
  QdeResult r = qde_check(s.w, s.signs, d, dp);
  CHECK(!r.skipped);
  CHECK(r.ok);
}

TEST_CASE("gamma ratio at h = 0") {
  Quiver q = qt::chain(5, {3, 2});
  ContextOptions o;
  o.with_h = true;
  auto ctx = make_context(q, o);
  BlockStructure b = blocks_of(q, ctx);
  Cocharacter d(ctx->size(), 0);
  CHECK(gamma_ratio_h0(ctx, b, d) == 1);
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> e(-3, 3);
  for (int it = 0; it < 20; ++it) {
    for (const auto& blk : b.blocks)
      for (std::size_t v : blk.vars) d[v] = e(rng);
    int expected = rho_pairing(b, d) % 2 ? -1 : 1;
    CHECK(gamma_ratio_h0(ctx, b, d) == expected);
  }
}
