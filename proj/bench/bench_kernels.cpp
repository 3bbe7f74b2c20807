// Serial reference vs OpenMP kernels. Build type Release; results on a 1-core box will
// show only the scheduling overhead.
#include <benchmark/benchmark.h>

#include "topoconn/constructions.hpp"
#include "topoconn/embed3d.hpp"
#include "topoconn/solver.hpp"

using namespace topoconn;

namespace {

const char* kCoTriple = "co(r1) & co(r2) & co(r3) & co(r1 + r2 + r3) & !co(r1 + r2) & !co(r1 + r3)";

// exhaustive: the co-triple formula has no 2-quasi-saw model
void BM_SolveReference(benchmark::State& st) {
  auto f = parse(kCoTriple);
  for (auto _ : st) benchmark::DoNotOptimize(solve_reference(f, SpaceClass::QS2, 3).sat);
}
BENCHMARK(BM_SolveReference)->Unit(benchmark::kMillisecond);

void BM_Solve(benchmark::State& st) {
  auto f = parse(kCoTriple);
  SolveOptions opt;
  opt.jobs = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(solve(f, SpaceClass::QS2, 3, opt).sat);
}
BENCHMARK(BM_Solve)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

void BM_SolvePhiK(benchmark::State& st) {
  auto f = generate({FamilyKind::PhiK, 3});
  SolveOptions opt;
  opt.jobs = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(solve(f, SpaceClass::ConnQS, default_bound(*f), opt).sat);
}
BENCHMARK(BM_SolvePhiK)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

Scene g6_scene(int stage) {
  Graph g;
  for (int i = 1; i <= 6; ++i) g.vertices.push_back("X" + std::to_string(i));
  for (auto [a, b] : std::vector<std::pair<int, int>>{
           {1, 2}, {2, 3}, {1, 3}, {3, 4}, {2, 5}, {1, 5}, {1, 4}, {3, 6}, {4, 5}, {1, 6}, {4, 6}, {5, 6}})
    g.edges.insert({"X" + std::to_string(a), "X" + std::to_string(b)});
  QsInterpretation m{std::make_shared<const QuasiSaw>(neighbourhood_to_quasisaw(g)), {}};
  return embed(normalize_z0(m), stage);
}

// arg 0: serial loop, arg 1: OpenMP
void BM_OverlappingPairs(benchmark::State& st) {
  static const Scene s = g6_scene(20);
  bool par = st.range(0) != 0;
  for (auto _ : st) benchmark::DoNotOptimize(overlapping_pairs(s, par).size());
  st.counters["solids"] = static_cast<double>(s.balls.size() + s.rods.size());
}
BENCHMARK(BM_OverlappingPairs)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
