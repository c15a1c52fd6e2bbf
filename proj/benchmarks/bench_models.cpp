#include <memory>

#include <benchmark/benchmark.h>

#include "quillen/lie_expr.hpp"
#include "quillen/secat.hpp"

namespace {

quillen::DglPtr cp2() {
  quillen::Dgl l("CP2");
  l.add_generator("x", 1);
  l.add_generator("y", 3, quillen::expand(quillen::parse_lie("[x,x]", l.generators()), l.degrees()));
  return std::make_shared<const quillen::Dgl>(std::move(l));
}

quillen::DglPtr sphere(int degree) {
  quillen::Dgl l("S");
  l.add_generator("w", degree);
  return std::make_shared<const quillen::Dgl>(std::move(l));
}

void BM_BinaryProduct(benchmark::State& state) {
  const auto a = cp2();
  const auto b = sphere(2);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(quillen::binary_product(a, b, n));
}
BENCHMARK(BM_BinaryProduct)->Arg(8)->Arg(10);

void BM_PowerModel(benchmark::State& state) {
  const auto l = cp2();
  const int copies = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(quillen::power_model(l, copies, 8));
}
BENCHMARK(BM_PowerModel)->DenseRange(2, 3);

void BM_FindAlpha(benchmark::State& state) {
  const auto l = cp2();
  const quillen::SecatProblem p{quillen::make_map_model(*l, {false, false}), static_cast<int>(state.range(0)), 8, {}};
  for (auto _ : state) benchmark::DoNotOptimize(quillen::find_alpha(p));
}
BENCHMARK(BM_FindAlpha)->Arg(1)->Arg(2)->Arg(3);

void BM_TcSphere(benchmark::State& state) {
  const auto l = sphere(1);
  for (auto _ : state) benchmark::DoNotOptimize(quillen::tc(l, 2, 8));
}
BENCHMARK(BM_TcSphere);

}  // namespace

BENCHMARK_MAIN();
