#include <benchmark/benchmark.h>

#include "zsfast/zsfast.hpp"

using namespace zsfast;

namespace {

SignalGrid sech_grid(long long n, int nu) {
  return sample_function([](double t) { return cplx(1.0 / std::cosh(t)); }, -16, 16, n, nu);
}

const char* kNames[] = {"im", "rk4", "ia2"};

void BM_Tree(benchmark::State& st) {
  Scheme s = make_scheme(kNames[st.range(1)]);
  SignalGrid g = sech_grid(st.range(0), 2);
  for (auto _ : st) benchmark::DoNotOptimize(compute_scattering(g, s));
  st.SetComplexityN(st.range(0));
  st.SetLabel(s.id);
}

void BM_Serial(benchmark::State& st) {
  Scheme s = make_scheme(kNames[st.range(1)]);
  SignalGrid g = sech_grid(st.range(0), 2);
  for (auto _ : st) benchmark::DoNotOptimize(compute_scattering(g, s, {true}));
  st.SetComplexityN(st.range(0));
  st.SetLabel(s.id);
}

// Tree product on one thread, to separate algorithmic gain from threading.
void BM_TreeOneThread(benchmark::State& st) {
  Scheme s = make_scheme(kNames[st.range(1)]);
  SignalGrid g = sech_grid(st.range(0), 2);
  const int full = max_threads();
  set_threads(1);
  for (auto _ : st) benchmark::DoNotOptimize(compute_scattering(g, s));
  set_threads(full);
  st.SetComplexityN(st.range(0));
  st.SetLabel(s.id);
}

void BM_Eigenvalues(benchmark::State& st) {
  SignalGrid g = sample_function([](double t) { return cplx(2.0 / std::cosh(t)); }, -16, 16, st.range(0), 2);
  Scheme s = make_scheme("rk4");
  ScatteringPoly sp = compute_scattering(g, s);
  for (auto _ : st) benchmark::DoNotOptimize(find_eigenvalues(g, s, sp));
}

void sizes(benchmark::internal::Benchmark* b, long long hi) {
  for (int k = 0; k < 3; ++k)
    for (long long n = 1 << 10; n <= hi; n *= 4) b->Args({n, k});
}

}  // namespace

BENCHMARK(BM_Tree)->Apply([](auto* b) { sizes(b, 1 << 16); })->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TreeOneThread)->Apply([](auto* b) { sizes(b, 1 << 16); })->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Serial)->Apply([](auto* b) { sizes(b, 1 << 12); })->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Eigenvalues)->Arg(1024)->Arg(8192)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
