#include <benchmark/benchmark.h>

#include "quillen/dgl.hpp"
#include "quillen/lie_basis.hpp"
#include "quillen/lie_expr.hpp"

namespace {

quillen::GeneratorSet three_generators() {
  quillen::GeneratorSet g;
  g.add("x", 1);
  g.add("y", 2);
  g.add("z", 3);
  return g;
}

void BM_LieBasis(benchmark::State& state) {
  const auto g = three_generators();
  const int degree = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(quillen::lie_basis(g, degree));
}
BENCHMARK(BM_LieBasis)->DenseRange(4, 10, 2);

void BM_Bracket(benchmark::State& state) {
  const auto g = three_generators();
  const auto a = quillen::expand(quillen::parse_lie("[[x,y],[x,z]] + 2*[z,[y,y]]", g), g.degrees());
  const auto b = quillen::expand(quillen::parse_lie("[x,[x,[y,z]]]", g), g.degrees());
  for (auto _ : state) benchmark::DoNotOptimize(quillen::bracket(a, b, g.degrees()));
}
BENCHMARK(BM_Bracket);

void BM_Homology(benchmark::State& state) {
  quillen::Dgl l("CP2");
  l.add_generator("x", 1);
  const auto& g = l.generators();
  l.add_generator("y", 3, quillen::expand(quillen::parse_lie("[x,x]", g), l.degrees()));
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(quillen::homology_dims(l, n));
}
BENCHMARK(BM_Homology)->Arg(6)->Arg(9);

}  // namespace
