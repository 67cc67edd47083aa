#include <benchmark/benchmark.h>

#include "nchad/classify.hpp"
#include "nchad/magic.hpp"
#include "nchad/moments.hpp"

using namespace nchad;

namespace {

NCMatrix deformedInstance() {
  const AlgebraShape shape({2});
  NCMatrix q(shape, 2, 2);
  q.set(0, 0, randomUnitary(shape, 1));
  q.set(0, 1, AlgElem::identity(shape));
  q.set(1, 0, AlgElem::identity(shape));
  q.set(1, 1, randomUnitary(shape, 2));
  return ditaDeform(fourier(2, shape), fourier(2, shape), q, 1e-9);
}

void BM_VerifyHadamard(benchmark::State& state) {
  const NCMatrix f = fourier(static_cast<int>(state.range(0)), AlgebraShape::scalar());
  for (auto _ : state) {
    benchmark::DoNotOptimize(verifyHadamard(f, 1e-9));
  }
}
BENCHMARK(BM_VerifyHadamard)->Arg(4)->Arg(8);

void BM_VerifyHadamardDeformed(benchmark::State& state) {
  const NCMatrix m = deformedInstance();
  for (auto _ : state) {
    benchmark::DoNotOptimize(verifyHadamard(m, 1e-9));
  }
}
BENCHMARK(BM_VerifyHadamardDeformed);

void BM_BuildMagic(benchmark::State& state) {
  const NCMatrix m = deformedInstance();
  for (auto _ : state) {
    benchmark::DoNotOptimize(magicFromFormula(m));
  }
}
BENCHMARK(BM_BuildMagic);

void BM_MomentMatrix(benchmark::State& state) {
  const MagicUnitary p = buildMagic(fourier(4, AlgebraShape::scalar()), 1e-10);
  const int degree = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(buildMomentMatrix(p, degree));
  }
}
BENCHMARK(BM_MomentMatrix)->Arg(2)->Arg(3);

void BM_EstimateMoments(benchmark::State& state) {
  const MagicUnitary p = buildMagic(fourier(3, AlgebraShape::scalar()), 1e-10);
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimateMoments(p, 3));
  }
}
BENCHMARK(BM_EstimateMoments);

void BM_SearchRestart(benchmark::State& state) {
  SearchConfig cfg;
  cfg.n = 2;
  cfg.shape = AlgebraShape({2});
  cfg.restarts = 1;
  cfg.maxIters = 50;
  cfg.seed = 5;
  cfg.threads = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(searchHadamard(cfg));
  }
}
BENCHMARK(BM_SearchRestart);

}  // namespace

BENCHMARK_MAIN();
