#include <benchmark/benchmark.h>

#include <cmath>

#include "kgsharp/extremizers.hpp"
#include "kgsharp/functionals.hpp"
#include "kgsharp/hyperboloid.hpp"
#include "kgsharp/library.hpp"
#include "kgsharp/quadrature.hpp"

using namespace kgsharp;

static void BM_Integrate1dSqrtEndpoint(benchmark::State& state) {
  quad::QuadratureConfig cfg;
  quad::EndpointBehavior ends;
  ends.left_exponent = -0.5;
  for (auto _ : state) {
    auto r = quad::integrate_1d([](double x) { return std::cos(x) / std::sqrt(x); }, 0.0, 3.0, cfg, ends);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_Integrate1dSqrtEndpoint);

static void BM_DeltaPairing(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const Mass s(1.0);
  RadialProfile inv{[s](double r) { return 1.0 / phi(s, r); }, 1.0, "1/phi"};
  DeltaPairing P{Dimension(d), s, SheetSigns::plus_plus(), inv, inv, {}};
  quad::QuadratureConfig cfg;
  for (auto _ : state) {
    auto r = delta_pairing_eval(P, {1.3, 4.0}, cfg);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_DeltaPairing)->Arg(2)->Arg(3)->Arg(5);

static void BM_BilinearRhs(benchmark::State& state) {
  const auto lib = profile_library();
  quad::QuadratureConfig cfg;
  cfg.rel_tol = 1e-8;
  for (auto _ : state) {
    auto r = bilinear_rhs(Dimension(5), Mass(1.0), lib[0], lib[1], cfg);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_BilinearRhs)->Unit(benchmark::kMillisecond);

static void BM_BilinearLhs(benchmark::State& state) {
  const auto lib = profile_library();
  quad::QuadratureConfig cfg;
  cfg.rel_tol = 1e-6;
  for (auto _ : state) {
    auto r = bilinear_lhs(Dimension(5), Mass(1.0), lib[0], lib[1], SheetSigns::plus_plus(), cfg);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_BilinearLhs)->Unit(benchmark::kMillisecond);

static void BM_QuotientClosed(benchmark::State& state) {
  quad::QuadratureConfig cfg;
  const double a = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) {
    auto q = quotient_closed({a, Mass(1.0), Dimension(5)}, cfg);
    benchmark::DoNotOptimize(q.value);
  }
}
BENCHMARK(BM_QuotientClosed)->Arg(1)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
