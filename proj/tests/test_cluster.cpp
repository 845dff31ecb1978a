#include <doctest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "qhc/errors.hpp"
#include "support.hpp"

using namespace qhc;

namespace {

const IntMatrix kA2{{0, 1}, {-1, 0}};
const IntMatrix kA3{{0, 1, 0}, {-1, 0, 1}, {0, -1, 0}};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("tropical semifield") {
  TropMonomial a{{1, -2}}, b{{0, 3}};
  CHECK((a * b).exps == std::vector<int>{1, 1});
  CHECK(oplus(a, b).exps == std::vector<int>{0, -2});
  CHECK(a.inverse().exps == std::vector<int>{-1, 2});
  CHECK(a.pow(2).exps == std::vector<int>{2, -4});
}

TEST_CASE("matrix mutation") {
  CHECK(mutate_matrix(kA2, 2, 1) == IntMatrix{{0, -1}, {1, 0}});
  IntMatrix p{{0, 1}, {-1, 0}, {1, 0}, {0, 1}};
  CHECK(mutate_matrix(p, 2, 1) == IntMatrix{{0, -1}, {1, 0}, {-1, 1}, {0, 1}});
  CHECK(mutate_matrix(mutate_matrix(p, 2, 2), 2, 2) == p);
}

TEST_CASE("A2 pentagon") {
  Seed s = matrix_seed(kA2, 2);
  auto P = [&](const char* t) { return parse_poly(s.ctx, t); };
  Seed a = mutate(s, 1);
  CHECK(a.cluster[0] == P("x[1]^-1*x[2] + x[1]^-1"));
  ClusterEnumeration en = cluster_variables(s, {});
  REQUIRE(en.variables.size() == 5);
  std::set<std::string> got;
  for (const auto& v : en.variables) got.insert(format(v.value));
  std::set<std::string> want{format(P("x[1]")), format(P("x[2]")), format(P("(1+x[2])*x[1]^-1")),
                             format(P("(1+x[1])*x[2]^-1")), format(P("(1+x[1]+x[2])*x[1]^-1*x[2]^-1"))};
  CHECK(got == want);
  CHECK(en.seeds == 5);
  CHECK(en.laurent_ok);
  // Period five along alternating mutations, up to the swap of positions.
  Seed p5 = mutate_path(s, {1, 2, 1, 2, 1});
  CHECK(p5.cluster[0] == s.cluster[1]);
  CHECK(p5.cluster[1] == s.cluster[0]);
  Seed p10 = mutate_path(s, {1, 2, 1, 2, 1, 2, 1, 2, 1, 2});
  CHECK(p10 == s);
}

TEST_CASE("small enumerations") {
  Seed a1 = matrix_seed({{0}}, 1);
  CHECK(cluster_variables(a1, {}).variables.size() == 2);
  EnumerationOptions zero;
  zero.max_depth = 0;
  ClusterEnumeration e0 = cluster_variables(matrix_seed(kA2, 2), zero);
  CHECK(e0.variables.size() == 2);
  CHECK(e0.seeds == 1);
  EnumerationOptions cap;
  cap.max_seeds = 3;
  CHECK_THROWS_AS(cluster_variables(matrix_seed(kA2, 2), cap), BudgetExceeded);
  CHECK_THROWS_AS(mutate(matrix_seed(kA2, 2), 3), ArgumentError);
  EnumerationOptions neg;
  neg.max_depth = -1;
  CHECK_THROWS_AS(cluster_variables(matrix_seed(kA2, 2), neg), ArgumentError);
}

TEST_CASE("A3 with a frozen vertex: strong Laurent and involutions") {
  Quiver q = Quiver::load(qt::data("a3_frozen.json"));
  Seed s = quiver_seed(q);
  EnumerationOptions o;
  o.check_involution = true;
  ClusterEnumeration en = cluster_variables(s, o);
  CHECK(en.variables.size() == 9);
  CHECK(en.seeds == 14);
  CHECK(en.laurent_ok);
  CHECK(en.involution_ok);
  for (const auto& v : en.variables) CHECK(is_strong_laurent(s, v.value));
  // Frozen variables are not Laurent in the seed's table.
  CHECK_THROWS_AS(MultiPoly::var(s.ctx, s.frozen[0], -1), LaurentError);
  EnumerationOptions serial = o;
  serial.parallel = false;
  ClusterEnumeration es = cluster_variables(s, serial);
  REQUIRE(es.variables.size() == en.variables.size());
  for (std::size_t i = 0; i < es.variables.size(); ++i) {
    CHECK(es.variables[i].value == en.variables[i].value);
    CHECK(es.variables[i].path == en.variables[i].path);
  }
}

TEST_CASE("involution on random paths") {
  Seed s = principal_seed(kA3);
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> dir(1, 3);
  for (int it = 0; it < 20; ++it) {
    MutationPath p;
    for (int i = 0; i < 5; ++i) p.push_back(dir(rng));
    Seed t = mutate_path(s, p);
    int k = dir(rng);
    CHECK(mutate(mutate(t, k), k) == t);
  }
}

TEST_CASE("principal coefficients: F-polynomials and g-vectors") {
  Seed s = principal_seed(kA2);
  auto P = [&](const char* t) { return parse_poly(s.ctx, t); };
  FG i1 = f_polynomial_and_g_vector(s, {}, 1);
  CHECK(i1.F == P("1"));
  CHECK(i1.g == std::vector<int>{1, 0});
  FG a = f_polynomial_and_g_vector(s, {1}, 1);
  CHECK(a.F == P("1 + y[1]"));
  CHECK(a.g == std::vector<int>{-1, 1});
  // Hand computation: x_2 after mutating at 1 then 2 is (y1 y2 x1 + y1 + x2)/(x1 x2).
  FG b = f_polynomial_and_g_vector(s, {1, 2}, 2);
  CHECK(mutate_path(s, {1, 2}).cluster[1] == P("(y[1]*y[2]*x[1] + y[1] + x[2])*x[1]^-1*x[2]^-1"));
  CHECK(b.F == P("1 + y[1] + y[1]*y[2]"));
  CHECK(b.g == std::vector<int>{-1, 0});
  FG c = f_polynomial_and_g_vector(s, {2}, 2);
  CHECK(c.F == P("1 + y[2]"));
  CHECK(c.g == std::vector<int>{0, -1});
  CHECK_THROWS_AS(f_polynomial_and_g_vector(matrix_seed(kA2, 2), {1}, 1), ArgumentError);
}

TEST_CASE("A2 principal-coefficient golden") {
  Seed s = principal_seed(kA2);
  EnumerationOptions o;
  o.max_depth = 5;
  ClusterEnumeration en = cluster_variables(s, o);
  std::ostringstream out;
  for (const auto& v : en.variables) {
    FG fg = f_polynomial_and_g_vector(s, v.path, v.index);
    CHECK(fg.F.constant_term() == 1);
    CHECK(g_degree(s, v.value) == fg.g);
    CHECK(separation_check(s, v.path, v.index));
    out << format_path(v.path) << ":" << v.index << " F=" << format(fg.F) << " g=";
    for (std::size_t i = 0; i < fg.g.size(); ++i) out << (i ? "," : "") << fg.g[i];
    out << "\n";
  }
  CHECK(en.variables.size() == 5);
  CHECK(out.str() == slurp(qt::golden("a2_principal_fg.txt")));
}

TEST_CASE("separation on random A3 paths") {
  Seed s = principal_seed(kA3);
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> dir(1, 3), len(0, 5);
  CHECK(separation_check(s, {}, 1));
  for (int it = 0; it < 25; ++it) {
    MutationPath p;
    int L = len(rng);
    for (int i = 0; i < L; ++i) p.push_back(dir(rng));
    for (int k = 1; k <= 3; ++k) {
      CHECK(separation_check(s, p, k));
      CHECK(f_polynomial_and_g_vector(s, p, k).F.constant_term() == 1);
    }
  }
}

TEST_CASE("inhomogeneous elements are rejected") {
  Seed s = principal_seed(kA2);
  MultiPoly x = MultiPoly::var(s.ctx, s.initial[0]) + MultiPoly::var(s.ctx, s.initial[1]);
  CHECK_THROWS_AS(g_degree(s, x), InternalError);
}

TEST_CASE("paths") {
  CHECK(parse_path("1,2,1") == MutationPath{1, 2, 1});
  CHECK(parse_path("") == MutationPath{});
  CHECK(format_path({2, 1}) == "2,1");
  CHECK_THROWS_AS(parse_path("1,,2"), InputError);
  CHECK_THROWS_AS(parse_path("0"), InputError);
  CHECK_THROWS_AS(parse_path("a"), InputError);
}

TEST_CASE("quiver seeds") {
  Quiver q = Quiver::load(qt::data("gr24.json"));
  Seed s = quiver_seed(q);
  CHECK(s.n == 1);
  CHECK(s.m() == 1);
  Seed t = mutate(s, 1);
  CHECK(t.cluster[0] == parse_poly(s.ctx, "(x[0] + 1)*x[1]^-1"));
  CHECK(is_strong_laurent(s, t.cluster[0]));
}
