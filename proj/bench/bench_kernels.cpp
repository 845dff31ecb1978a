// Serial reference vs OpenMP kernel timings.
#include <benchmark/benchmark.h>

#include <random>

#include "qhc/groebner.hpp"

using namespace qhc;

namespace {

MultiPoly random_poly(const VarTablePtr& ctx, std::mt19937& rng, int terms, int maxdeg) {
  std::uniform_int_distribution<int> e(0, maxdeg), c(-9, 9);
  std::vector<Term> ts;
  for (int i = 0; i < terms; ++i) {
    Exponents x(ctx->size());
    for (auto& v : x) v = e(rng);
    ts.push_back({x, c(rng)});
  }
  return MultiPoly::from_terms(ctx, ts);
}

Quiver flag(int v0, std::vector<int> dims) {
  std::vector<Node> nodes{{"0", NodeKind::Frozen, v0, 0}};
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    nodes.push_back({std::to_string(i + 1), NodeKind::Gauge, dims[i], 1});
    edges.push_back({std::to_string(i), std::to_string(i + 1), 1});
  }
  return Quiver(nodes, edges);
}

void BM_mul(benchmark::State& st, bool parallel) {
  auto ctx = VarTable::aux({"a", "b", "c", "d", "e"});
  std::mt19937 rng(7);
  MultiPoly p = random_poly(ctx, rng, static_cast<int>(st.range(0)), 6);
  MultiPoly q = random_poly(ctx, rng, static_cast<int>(st.range(0)), 6);
  for (auto _ : st) benchmark::DoNotOptimize(parallel ? mul_parallel(p, q) : mul_serial(p, q));
}

void BM_antisym(benchmark::State& st, bool parallel) {
  Quiver q = flag(6, {static_cast<int>(st.range(0))});
  auto ctx = make_context(q, {});
  BlockStructure b = blocks_of(q, ctx);
  std::vector<std::vector<int>> ex = staircase(b, "1", 4);
  MultiPoly pre = MultiPoly::constant(ctx, 1);
  for (auto _ : st)
    benchmark::DoNotOptimize(parallel ? antisymmetrize(ex, b, pre) : antisymmetrize_serial(ex, b, pre));
}

void BM_build_ideal(benchmark::State& st, bool parallel) {
  Quiver q = flag(5, {4, 3, 2});
  auto ctx = make_context(q, {});
  for (auto _ : st)
    benchmark::DoNotOptimize(parallel ? build_ideal(q, ctx, 6, true) : build_ideal_serial(q, ctx, 6, true));
}

void BM_buchberger(benchmark::State& st, bool parallel) {
  Quiver q = flag(4, {3, 2});
  auto ctx = make_context(q, {});
  IdealPresentation I = build_ideal_serial(q, ctx, default_p_max(q), false);
  for (auto _ : st) benchmark::DoNotOptimize(parallel ? buchberger(I) : buchberger_serial(I));
}

}  // namespace

BENCHMARK_CAPTURE(BM_mul, serial, false)->Arg(200)->Arg(600);
BENCHMARK_CAPTURE(BM_mul, parallel, true)->Arg(200)->Arg(600);
BENCHMARK_CAPTURE(BM_antisym, serial, false)->Arg(4)->Arg(5);
BENCHMARK_CAPTURE(BM_antisym, parallel, true)->Arg(4)->Arg(5);
BENCHMARK_CAPTURE(BM_build_ideal, serial, false);
BENCHMARK_CAPTURE(BM_build_ideal, parallel, true);
BENCHMARK_CAPTURE(BM_buchberger, serial, false);
BENCHMARK_CAPTURE(BM_buchberger, parallel, true);

BENCHMARK_MAIN();
