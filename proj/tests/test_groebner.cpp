#include <doctest.h>

#include "qhc/errors.hpp"
#include "support.hpp"

using namespace qhc;

namespace {

MultiPoly P(const VarTablePtr& c, const char* s) { return parse_poly(c, s); }

}  // namespace

TEST_CASE("small reduced bases") {
  auto c = VarTable::aux({"x", "y", "z"});
  GroebnerBasis G = buchberger(c, {P(c, "x*y - 1"), P(c, "y^2 - 1")});
  CHECK(G.basis() == std::vector<MultiPoly>{P(c, "y^2 - 1"), P(c, "x - y")});
  CHECK(G.contains(P(c, "x^2 - 1")));
  CHECK(!G.contains(P(c, "x + 1")));
  CHECK(G.normal_form(P(c, "x^3")) == P(c, "y"));
  // z is not in the ideal's ring and acts as a coefficient.
  CHECK(G.normal_form(P(c, "z*x - z*y")).is_zero());
  CHECK(G.normal_form(P(c, "z*x")) == P(c, "z*y"));

  GroebnerBasis U = buchberger(c, {P(c, "x"), P(c, "x - 1")});
  CHECK(U.is_unit());
  CHECK(U.contains(P(c, "y^7 + 3")));

  GroebnerBasis Z = buchberger(c, {});
  CHECK(Z.basis().empty());
  CHECK(Z.normal_form(P(c, "x + y")) == P(c, "x + y"));
}

TEST_CASE("coefficient variables may be Laurent") {
  auto c = VarTable::make({{VarKind::Xi, 1, 1, false, "x"}, {VarKind::Q, 1, 0, true, "Q"}});
  GroebnerBasis G = buchberger(c, {P(c, "x^2 - 1")});
  CHECK(G.normal_form(P(c, "Q^-1*x^3")) == P(c, "Q^-1*x"));
  GroebnerBasis H = buchberger(c, {P(c, "x^2 - Q")});
  CHECK_THROWS_AS(H.normal_form(P(c, "Q^-1")), ArgumentError);
  CHECK_THROWS_AS(buchberger(c, {P(c, "x - Q^-1")}), ArgumentError);
}

TEST_CASE("block order eliminates") {
  auto c = VarTable::aux({"x", "y", "z"});
  MonomialOrder o;
  o.kind = OrderKind::Block;
  o.vars = {"x", "y", "z"};
  o.block_sizes = {1, 2};
  GroebnerBasis G = buchberger(c, {P(c, "x - y^2"), P(c, "x - z")}, o);
  bool found = false;
  for (const auto& g : G.basis())
    if (!g.uses(c->at("x"))) {
      CHECK(g == P(c, "y^2 - z"));
      found = true;
    }
  CHECK(found);
}

TEST_CASE("random ideals: membership, orders, serial and parallel") {
  auto c = VarTable::aux({"x", "y", "z"});
  std::mt19937 rng(99);
  MonomialOrder lex;
  lex.kind = OrderKind::Lex;
  for (int it = 0; it < 12; ++it) {
    std::vector<MultiPoly> gens{qt::random_poly(c, rng, 3, 2, -3, 3), qt::random_poly(c, rng, 3, 2, -3, 3)};
    GroebnerBasis G = buchberger(c, gens, {}, {}, true);
    GroebnerBasis S = buchberger(c, gens, {}, {}, false);
    CHECK(G.basis() == S.basis());
    GroebnerBasis L = buchberger(c, gens, lex);
    MultiPoly a = qt::random_poly(c, rng, 3, 2), b = qt::random_poly(c, rng, 3, 2);
    MultiPoly m = a * gens[0] + b * gens[1];
    CHECK(G.contains(m));
    CHECK(L.contains(m));
    for (const auto& g : L.basis()) CHECK(G.contains(g));
    for (const auto& g : G.basis()) CHECK(L.contains(g));
    // Reduced bases: no leading monomial divides a term of another element.
    const auto& B = G.basis();
    for (std::size_t i = 0; i < B.size(); ++i) {
      CHECK(B[i].leading().coeff == 1);
      for (std::size_t j = 0; j < B.size(); ++j) {
        if (j == i) continue;
        const Exponents& lm = B[j].leading().exps;
        for (const auto& t : B[i].terms()) {
          bool div = true;
          for (std::size_t v = 0; v < lm.size(); ++v) div = div && lm[v] <= t.exps[v];
          CHECK(!div);
        }
      }
    }
    if (!G.is_unit()) CHECK(!G.contains(m + MultiPoly::constant(c, 1)));
  }
}

TEST_CASE("budgets are reported") {
  Quiver q = Quiver::load(qt::data("fl234.json"));
  auto c = make_context(q, {});
  std::vector<MultiPoly> gens = build_ideal(q, c, default_p_max(q), false).generators;
  GroebnerBudget tiny;
  tiny.max_steps = 5;
  CHECK_THROWS_AS(buchberger(c, gens, {}, tiny), BudgetExceeded);
  GroebnerBudget narrow;
  narrow.max_basis = 3;
  CHECK_THROWS_AS(buchberger(c, gens, {}, narrow), BudgetExceeded);
  CHECK_NOTHROW(buchberger(c, gens));
}

TEST_CASE("equality after inverting Q") {
  auto c = VarTable::make({{VarKind::Xi, 1, 1, false, "x"}, {VarKind::Q, 1, 0, true, "Q"}});
  IdealPresentation I{c, {P(c, "Q*x")}}, J{c, {P(c, "x")}}, K{c, {P(c, "x - 1")}};
  std::vector<std::size_t> qv{c->at("Q")};
  CHECK(ideal_equal_laurent(I, J, qv));
  CHECK(!buchberger(I).contains(P(c, "x")));
  CHECK(!ideal_equal_laurent(I, K, qv));
  CHECK(ideal_equal_laurent(J, J, {}));
}

TEST_CASE("Gr(2,4) ideal") {
  Quiver q = Quiver::load(qt::data("gr24.json"));
  auto ctx = make_context(q, {});
  GroebnerBasis G = buchberger(build_ideal(q, ctx, 3, false));
  auto xi = roots(q, ctx, "1");
  MultiPoly Q = MultiPoly::var(ctx, "Q[1]");
  CHECK(G.contains(complete(ctx, xi, 4) + Q));
  CHECK(G.contains(complete(ctx, xi, 3)));
  CHECK(!G.contains(complete(ctx, xi, 4) - Q));
  CHECK(!G.contains(complete(ctx, xi, 2)));
  CHECK(!G.is_unit());
}

TEST_CASE("the default insertion bound is sufficient") {
  for (const char* f : {"gr24.json", "fl234.json", "p2.json"}) {
    Quiver q = Quiver::load(qt::data(f));
    auto ctx = make_context(q, {});
    int p = default_p_max(q);
    GroebnerBasis G = buchberger(build_ideal(q, ctx, p, false));
    WeightData w = weights(q, ctx);
    for (std::size_t l = 0; l < q.n_gauge(); ++l)
      for (int extra = 1; extra <= 3; ++extra)
        CHECK(G.contains(drop_equivariant(node_relation(q, w, q.nodes()[l].id, p + extra))));
  }
}

TEST_CASE("serial and parallel Buchberger agree on a flag variety") {
  Quiver q = Quiver::load(qt::data("fl234.json"));
  auto ctx = make_context(q, {});
  IdealPresentation I = build_ideal(q, ctx, default_p_max(q), false);
  GroebnerBasis a = buchberger(I), b = buchberger_serial(I);
  CHECK(a.basis() == b.basis());
  CHECK(a.source() == b.source());
}
