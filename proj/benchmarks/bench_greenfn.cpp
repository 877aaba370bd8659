#include <benchmark/benchmark.h>

#include "greenfn/pipeline.hpp"
#include "greenfn/render.hpp"

using namespace greenfn;

namespace {

const std::string kData = GREENFN_BENCH_DATA_DIR;

void BM_PolyMultiply(benchmark::State& state) {
  RationalPoly a = RationalPoly::cyclotomic(12) * RationalPoly::cyclotomic(8), b = RationalPoly::cyclotomic(6);
  for (int i = 0; i < state.range(0); ++i) a *= RationalPoly::cyclotomic(3) + RationalPoly(i);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_PolyMultiply)->Arg(4)->Arg(16);

void BM_CharacterTableD4(benchmark::State& state) {
  for (auto _ : state) {
    auto W = CoxeterGroup::build({{1, 2, 3, 2}, {2, 1, 3, 2}, {3, 3, 1, 3}, {2, 2, 3, 1}});
    benchmark::DoNotOptimize(W->group().char_table().size());
  }
}
BENCHMARK(BM_CharacterTableD4)->Unit(benchmark::kMillisecond);

void BM_LusztigShojiTorus(benchmark::State& state) {
  auto G = load_group(kData, "spin8");
  for (auto _ : state) benchmark::DoNotOptimize(lusztig_shoji(G->catalog, G->blocks[0], 0, G->dim));
}
BENCHMARK(BM_LusztigShojiTorus)->Unit(benchmark::kMillisecond);

void BM_Spin8Table(benchmark::State& state) {
  auto G = load_group(kData, "spin8");
  for (auto _ : state) benchmark::DoNotOptimize(green_table(*G));
}
BENCHMARK(BM_Spin8Table)->Unit(benchmark::kMillisecond);

void BM_FullPipeline(benchmark::State& state) {
  for (auto _ : state) {
    Run r = run_pipeline(kData);
    benchmark::DoNotOptimize(render_ascii(text_table(r.display_table("split"))));
  }
}
BENCHMARK(BM_FullPipeline)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
