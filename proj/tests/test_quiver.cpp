#include <doctest.h>

#include "qhc/errors.hpp"
#include "support.hpp"

using namespace qhc;

TEST_CASE("Gr(2,4) validation") {
  Quiver q = Quiver::load(qt::data("gr24.json"));
  ValidationReport r = validate(q);
  CHECK(r.acyclic);
  CHECK(r.dims_feasible);
  CHECK(r.quiver_flag);
  REQUIRE(r.feasibility.size() == 1);
  CHECK(r.feasibility[0].v_minus == 4);
  CHECK(r.feasibility[0].v_plus == 0);
}

TEST_CASE("Fl(2,3,4) chain is type A") {
  Quiver q = Quiver::load(qt::data("fl234.json"));
  ValidationReport r = validate(q);
  CHECK(r.type_a);
  CHECK(r.chain == std::vector<std::string>{"0", "1", "2"});
  // (v0, v1, v2) = (4, 3, 1) breaks v0 - v1 < v2 - v3.
  CHECK(!validate(qt::chain(4, {3, 1})).type_a);
  // A3 with dims 4 > 3 > 2 > 1 fails 4 - 3 < 1 - 0.
  CHECK(!validate(Quiver::load(qt::data("a3_frozen.json"))).type_a);
}

TEST_CASE("structural errors") {
  using N = Node;
  CHECK_THROWS_AS(Quiver({N{"1", NodeKind::Gauge, 2, 1}, N{"2", NodeKind::Gauge, 1, 1}},
                         {{"1", "2", 1}, {"2", "1", 1}}),
                  QuiverError);
  CHECK_THROWS_AS(Quiver({N{"1", NodeKind::Gauge, 2, 1}}, {{"1", "1", 1}}), QuiverError);
  CHECK_THROWS_AS(Quiver({N{"1", NodeKind::Gauge, 0, 1}}, {}), QuiverError);
  CHECK_THROWS_AS(Quiver({N{"1", NodeKind::Gauge, 1, 0}}, {}), QuiverError);
  CHECK_THROWS_AS(Quiver({N{"1", NodeKind::Frozen, 1, 1}}, {}), QuiverError);
  CHECK_THROWS_AS(Quiver({N{"1", NodeKind::Gauge, 1, 1}, N{"1", NodeKind::Gauge, 1, 1}}, {}), QuiverError);
  CHECK_THROWS_AS(Quiver({N{"1", NodeKind::Gauge, 1, 1}}, {{"1", "9", 1}}), QuiverError);
}

TEST_CASE("malformed JSON reports a position") {
  try {
    Quiver::from_json("{\"nodes\": [ {\"id\": \"1\",, } ]}");
    FAIL("no error");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("byte") != std::string::npos);
  }
  CHECK_THROWS_AS(Quiver::from_json("{\"edges\": []}"), InputError);
  CHECK_THROWS_AS(Quiver::load(qt::data("missing.json")), InputError);
}

TEST_CASE("JSON round trip and numeric-aware ids") {
  Quiver q = Quiver::from_json(
      R"({"nodes":[{"id":"10","kind":"gauge","dim":1,"theta":1},{"id":"2","kind":"gauge","dim":1,"theta":1},)"
      R"({"id":"0","kind":"frozen","dim":3}],"edges":[{"src":"0","dst":"2"},{"src":"2","dst":"10","count":2}]})");
  CHECK(q.nodes()[0].id == "2");
  CHECK(q.nodes()[1].id == "10");
  Quiver r = Quiver::from_json(q.to_json());
  CHECK(r.to_json() == q.to_json());
  BMatrices b = b_matrix(q);
  CHECK(b.B == IntMatrix{{0, 2}, {-2, 0}});
  CHECK(b.Btilde[2] == std::vector<int>{1, 0});
}

TEST_CASE("exchange matrices") {
  Quiver a2 = Quiver::load(qt::data("a2.json"));
  BMatrices b = b_matrix(a2);
  CHECK(b.B == IntMatrix{{0, 1}, {-1, 0}});
  CHECK(b.Btilde == b.B);
  Quiver gr = Quiver::load(qt::data("gr24.json"));
  CHECK(b_matrix(gr).Btilde == IntMatrix{{0}, {1}});
  Quiver lone({{"1", NodeKind::Gauge, 1, 1}, {"2", NodeKind::Gauge, 1, 1}}, {});
  CHECK(b_matrix(lone).B == IntMatrix{{0, 0}, {0, 0}});

  Quiver fl = Quiver::load(qt::data("fl234.json"));
  BMatrices f = b_matrix(fl);
  for (std::size_t i = 0; i < f.B.size(); ++i)
    for (std::size_t j = 0; j < f.B.size(); ++j) CHECK(f.B[i][j] == -f.B[j][i]);
}

TEST_CASE("weights") {
  Quiver q({{"0", NodeKind::Frozen, 2, 0}, {"1", NodeKind::Gauge, 1, 1}}, {{"0", "1", 1}});
  auto ctx = make_context(q, {});
  WeightData w = weights(q, ctx);
  REQUIRE(w.n_weights.size() == 2);
  CHECK(w.n_weights[0] == parse_poly(ctx, "xi[1][1] - u[0][1]"));
  CHECK(w.n_weights[1] == parse_poly(ctx, "xi[1][1] - u[0][2]"));
  CHECK(w.at("1").vminus.size() == 2);
  CHECK(w.at("1").vplus.empty());

  Quiver g({{"1", NodeKind::Gauge, 1, 1}, {"2", NodeKind::Gauge, 2, 1}}, {{"1", "2", 1}});
  auto gc = make_context(g, {});
  WeightData gw = weights(g, gc);
  CHECK(gw.n_weights.size() == 2);
  CHECK(gw.n_weights[0] == parse_poly(gc, "xi[2][1] - xi[1][1]"));

  Quiver none({{"1", NodeKind::Gauge, 1, 1}}, {});
  CHECK(weights(none, make_context(none, {})).n_weights.empty());
}

TEST_CASE("weight sums match v^- - v^+") {
  for (const char* f : {"gr24.json", "fl234.json", "a3_frozen.json", "vgit_312.json"}) {
    Quiver q = Quiver::load(qt::data(f));
    auto ctx = make_context(q, {});
    WeightData w = weights(q, ctx);
    std::size_t total = 0;
    for (const auto& e : q.edges()) total += static_cast<std::size_t>(e.count * q.node(e.src).dim * q.node(e.dst).dim);
    CHECK(w.n_weights.size() == total);
    for (std::size_t l = 0; l < q.n_gauge(); ++l) {
      const std::string& id = q.nodes()[l].id;
      Cocharacter d = unit_cocharacter(q, ctx, id);
      int s = 0;
      for (const auto& lam : w.n_weights) s += pairing(lam, d);
      CHECK(s == q.v_minus(id) - q.v_plus(id));
    }
  }
}

TEST_CASE("feasibility follows the sign of theta") {
  Quiver q = Quiver::load(qt::data("vgit_312.json"));
  CHECK(validate(q).dims_feasible);
  CHECK(validate(q.with_theta({{"1", -1}})).dims_feasible);
  Quiver r = Quiver::load(qt::data("rank1_principal.json"));
  CHECK(!validate(r).dims_feasible);
}
