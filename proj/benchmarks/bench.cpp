#include <benchmark/benchmark.h>

#include "support/corpus.hpp"

using namespace lcah;
using namespace lcah::corpus;

namespace {

void BM_SmithNormalForm(benchmark::State &state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  RandomSource rng(1);
  std::vector<IntMatrix> ms;
  for (int i = 0; i < 64; ++i)
    ms.push_back(rng.int_matrix(n, n, 20));
  std::size_t i = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(smith_normal_form(ms[i++ % ms.size()]));
}
BENCHMARK(BM_SmithNormalForm)->Arg(2)->Arg(4)->Arg(6)->Arg(10);

void BM_Kernel(benchmark::State &state) {
  Symbols s;
  RandomSource rng(2, &s.table);
  RandomBounds b;
  b.max_rank = static_cast<std::size_t>(state.range(0));
  std::vector<ElcaMorphism> fs;
  for (int i = 0; i < 64; ++i)
    fs.push_back(rng.morphism(rng.group(b), rng.group(b), b));
  std::size_t i = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(kernel(fs[i++ % fs.size()]));
}
BENCHMARK(BM_Kernel)->Arg(1)->Arg(2)->Arg(3);

void BM_ClosureOfRotation(benchmark::State &state) {
  Symbols s;
  RandomSource rng(3, &s.table);
  std::vector<ElcaMorphism> fs;
  for (int i = 0; i < 64; ++i)
    fs.push_back(rotation(rng, s));
  std::size_t i = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(closure_of_image(fs[i++ % fs.size()]));
}
BENCHMARK(BM_ClosureOfRotation);

void BM_NormalizeDc(benchmark::State &state) {
  Symbols s;
  RandomSource rng(4, &s.table);
  std::vector<HeartObject> os;
  for (int i = 0; i < 64; ++i)
    os.push_back(ghost_object(rng));
  std::size_t i = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(normalize_dc(os[i++ % os.size()]));
}
BENCHMARK(BM_NormalizeDc);

void BM_ThetaRoundTrip(benchmark::State &state) {
  Symbols s;
  RandomSource rng(5, &s.table);
  std::vector<HeartObject> os;
  for (int i = 0; i < 64; ++i)
    os.push_back(dc_ghost(rng));
  std::size_t i = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(theta_round_trip(os[i++ % os.size()]));
}
BENCHMARK(BM_ThetaRoundTrip);

} // namespace

BENCHMARK_MAIN();
