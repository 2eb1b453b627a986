#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "fpeit/boundary_solver.hpp"
#include "fpeit/formal_powers.hpp"
#include "fpeit/verification.hpp"

namespace {

using fpeit::Complex;

const fpeit::GeneratingSequence& sinusoidal_sequence() {
  static const auto seq = fpeit::build_sequence(fpeit::sinusoidal_case(fpeit::kPi).sigma);
  return seq;
}

// Full table for the default sizes; the range arguments are N and S.
void BM_BuildTable(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const int S = static_cast<int>(state.range(1));
  const fpeit::RadialMesh mesh(35, S);
  fpeit::PowerOptions opts;
  opts.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(fpeit::build_table(sinusoidal_sequence(), mesh, N, opts));
  state.SetItemsProcessed(state.iterations() * 35 * 2 * (N + 1));
}
BENCHMARK(BM_BuildTable)->Args({10, 200})->Args({17, 400})->Args({30, 400})->Unit(benchmark::kMillisecond);

void BM_OrthonormalizeAndFit(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const int P = 2 * N + 1;
  const auto table = fpeit::build_table(sinusoidal_sequence(), fpeit::RadialMesh(P, 200), N);
  const auto system = fpeit::assemble_system(table);
  std::vector<double> data;
  for (double th : system.angles) data.push_back(std::cos(3.0 * th) + 0.2 * std::sin(th));
  for (auto _ : state) {
    const auto basis = fpeit::orthonormalize(system);
    benchmark::DoNotOptimize(fpeit::fit(basis, system.weights, data));
  }
}
BENCHMARK(BM_OrthonormalizeAndFit)->Arg(17)->Arg(30)->Arg(60)->Unit(benchmark::kMicrosecond);

void BM_FgIntegral(benchmark::State& state) {
  const auto S = static_cast<std::size_t>(state.range(0));
  std::vector<double> t(S + 1), p(S + 1);
  std::vector<Complex> W(S + 1);
  for (std::size_t s = 0; s <= S; ++s) {
    t[s] = static_cast<double>(s) / static_cast<double>(S);
    p[s] = 1.0 + 0.5 * t[s];
    W[s] = std::polar(1.0, 3.0 * t[s]);
  }
  const fpeit::Ray ray{0.0, std::polar(1.0, 0.4), t};
  const auto pair = fpeit::pair_from_p(p);
  const auto rule = state.range(1) ? fpeit::Quadrature::hermite : fpeit::Quadrature::trapezoid;
  for (auto _ : state) benchmark::DoNotOptimize(fpeit::fg_integral(W, pair, ray, rule));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(S));
}
BENCHMARK(BM_FgIntegral)->ArgsProduct({{400, 4000}, {0, 1}});

}  // namespace
BENCHMARK_MAIN();
