#include <benchmark/benchmark.h>

#include "specbisect/analysis/generators.hpp"
#include "specbisect/deflate/deflate.hpp"
#include "specbisect/eigh/eigh.hpp"
#include "specbisect/fparith/field.hpp"
#include "specbisect/primitives/mm.hpp"
#include "specbisect/primitives/qr.hpp"
#include "specbisect/sign/sign.hpp"

using namespace specbisect;

namespace {

template <class F>
Matrix<typename F::real> gue_matrix(const F& f, std::size_t n, std::uint64_t seed) {
  RngState rng{seed, 0};
  return from_complex_double(f, n, n, analysis::gue(n, rng), true);
}

void report(benchmark::State& state, const fp::FlopCounter& c) {
  state.counters["flops"] =
      benchmark::Counter(static_cast<double>(c.real_ops), benchmark::Counter::kAvgIterations);
  state.counters["flop_rate"] =
      benchmark::Counter(static_cast<double>(c.real_ops), benchmark::Counter::kIsRate);
}

template <int T>
void BM_mm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  fp::PrecisionConfig cfg(T);
  fp::FlopCounter c;
  fp::with_field(cfg, &c, [&](const auto& f) {
    auto a = gue_matrix(f, n, 1), b = gue_matrix(f, n, 2);
    c.reset();
    for (auto _ : state) benchmark::DoNotOptimize(mm(f, a, b));
  });
  report(state, c);
}
BENCHMARK(BM_mm<53>)->RangeMultiplier(2)->Range(8, 128);
BENCHMARK(BM_mm<113>)->RangeMultiplier(2)->Range(8, 32);

void BM_qr(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  fp::PrecisionConfig cfg(53);
  fp::FlopCounter c;
  fp::HwField f(cfg, &c);
  auto a = gue_matrix(f, n, 3);
  c.reset();
  for (auto _ : state) benchmark::DoNotOptimize(qr(f, a));
  report(state, c);
}
BENCHMARK(BM_qr)->RangeMultiplier(2)->Range(8, 128);

void BM_sign(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  fp::PrecisionConfig cfg(53);
  fp::FlopCounter c;
  fp::HwField f(cfg, &c);
  RngState rng{4, 0};
  auto spec = analysis::random_pm_spectrum(n, 0.2, 1.0, rng);
  auto a = from_complex_double(f, n, n, analysis::hermitian_with_spectrum(spec, rng), true);
  SignParams p{1e-8, f.to_double(estimate_b(f, a)), 5};
  c.reset();
  for (auto _ : state) benchmark::DoNotOptimize(sign_matrix(f, a, p, ErrorModel::frozen(), false));
  report(state, c);
}
BENCHMARK(BM_sign)->RangeMultiplier(2)->Range(8, 64);

void BM_deflate(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  fp::PrecisionConfig cfg(53);
  fp::FlopCounter c;
  fp::HwField f(cfg, &c);
  Matrix<double> p(n, n);
  for (std::size_t i = 0; i < n / 2; ++i) p(i, i).re = 1;
  p.hermitian = true;
  c.reset();
  for (auto _ : state) benchmark::DoNotOptimize(deflate(f, p, n / 2, RngState{5, 0}));
  report(state, c);
}
BENCHMARK(BM_deflate)->RangeMultiplier(2)->Range(8, 128);

void BM_eigh(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  fp::PrecisionConfig cfg(53);
  fp::FlopCounter c;
  fp::HwField f(cfg, &c);
  auto a = gue_matrix(f, n, 6);
  c.reset();
  for (auto _ : state) benchmark::DoNotOptimize(eigh(f, a, 1e-6, 0.25, RngState{7, 0}));
  report(state, c);
}
BENCHMARK(BM_eigh)->RangeMultiplier(2)->Range(8, 64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
