#include <benchmark/benchmark.h>

#include "liesym/buckpi.hpp"
#include "liesym/detsys.hpp"
#include "liesym/jet.hpp"
#include "liesym/parse.hpp"

using namespace liesym;

namespace {

const Problem& heat_problem() {
  static const Problem p = parse_problem(R"(indep x t
dep u
unknown xi(x,t,u)
unknown tau(x,t,u)
unknown phi(x,t,u)
system heat: u_t = u_xx
vf galilei: xi[x] = 2*t; phi[u] = -x*u
vf rot: xi[x] = -u; phi[u] = x
)");
  return p;
}

void BM_Normalize(benchmark::State& state) {
  const Context& c = heat_problem().context;
  Expr e = parse_expr("(x + t*u + 1)^4 - (x + t*u)^4 + x/(x + u) - 1/(1 + u/x)", c);
  for (auto _ : state) benchmark::DoNotOptimize(normalize(e));
}
BENCHMARK(BM_Normalize);

void BM_ProlongRotation(benchmark::State& state) {
  const Problem& p = heat_problem();
  const VectorField& v = p.vfield("rot");
  int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(prolong(v, n, p.context));
}
BENCHMARK(BM_ProlongRotation)->DenseRange(1, 3);

void BM_ProlongRecursive(benchmark::State& state) {
  const Problem& p = heat_problem();
  const VectorField& v = p.vfield("rot");
  int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(prolong_recursive(v, n, p.context));
}
BENCHMARK(BM_ProlongRecursive)->DenseRange(1, 3);

void BM_HeatCheckSymmetry(benchmark::State& state) {
  const Problem& p = heat_problem();
  for (auto _ : state)
    benchmark::DoNotOptimize(check_symmetry(p.vfield("galilei"), p.system("heat"), p.context));
}
BENCHMARK(BM_HeatCheckSymmetry);

void BM_HeatDetermining(benchmark::State& state) {
  const Problem& p = heat_problem();
  for (auto _ : state) benchmark::DoNotOptimize(determining_equations(p.system("heat"), p.context));
}
BENCHMARK(BM_HeatDetermining)->Unit(benchmark::kMillisecond);

void BM_HeatSolve(benchmark::State& state) {
  const Problem& p = heat_problem();
  DeterminingSystem ds = determining_equations(p.system("heat"), p.context);
  Ansatz a{static_cast<int>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(solve_determining(ds, a, p.context));
}
BENCHMARK(BM_HeatSolve)->DenseRange(2, 3)->Unit(benchmark::kMillisecond);

void BM_PiBasis(benchmark::State& state) {
  DimensionalModel m = read_dimension_csv(
      ",E,t,rho0,P0,R\nL,2,0,-3,-1,1\nM,1,0,1,1,0\nT,-2,1,0,-2,0\n");
  for (auto _ : state) benchmark::DoNotOptimize(pi_basis(m));
}
BENCHMARK(BM_PiBasis);

}  // namespace

BENCHMARK_MAIN();
