#include <benchmark/benchmark.h>

#include "ddestab/sweep.hpp"
#include "ddestab/verify.hpp"

using namespace ddestab;

namespace {

Exec exec_of(const benchmark::State& st) { return st.range(0) == 0 ? Exec::Serial : Exec::Parallel; }

void BM_VerifyLemma(benchmark::State& st, const char* id) {
  const Exec ex = exec_of(st);
  for (auto _ : st) {
    LemmaReport rep = verify_lemma(id, static_cast<int>(st.range(1)), ex);
    benchmark::DoNotOptimize(rep.min_margin);
  }
  st.SetLabel(ex == Exec::Serial ? "serial" : "parallel threads=" + std::to_string(max_threads()));
}

void BM_Fig2Raster(benchmark::State& st) {
  const Exec ex = exec_of(st);
  for (auto _ : st) {
    auto cells = fig2_raster(static_cast<int>(st.range(1)), ex);
    benchmark::DoNotOptimize(cells.data());
  }
  st.SetLabel(ex == Exec::Serial ? "serial" : "parallel threads=" + std::to_string(max_threads()));
}

}  // namespace

BENCHMARK_CAPTURE(BM_VerifyLemma, leform1, "leform1")->ArgsProduct({{0, 1}, {64, 128}})->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_VerifyLemma, funcrr2, "funcrr2")->ArgsProduct({{0, 1}, {64, 128}})->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_VerifyLemma, gsslemma_schwarz, "gsslemma_schwarz")
    ->ArgsProduct({{0, 1}, {64}})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Fig2Raster)->ArgsProduct({{0, 1}, {256, 512}})->Unit(benchmark::kMillisecond);

int main(int argc, char** argv) {
  configure_threads_from_env();
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
