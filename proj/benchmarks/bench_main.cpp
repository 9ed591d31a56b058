#include <benchmark/benchmark.h>

#include "demres/morse.hpp"

using namespace demres;

namespace {

RationalPoly mono(std::initializer_list<int> e, const Rational& c = 1) {
  return RationalPoly::monomial(Exponents(e), c);
}

void BM_CauchyMulSeries(benchmark::State& state) {
  const int w = static_cast<int>(state.range(0));
  const Window window = Window::cube(2, -w, w);
  const auto a = expand_rational({mono({0, 1}) - mono({1, 0}), mono({0, 1}) - mono({1, 0}, 2)},
                                 Window::cube(2, -2 * w, 2 * w));
  const auto b = expand_rational({mono({0, 0}), mono({0, 0}) - mono({1, -1}, 3)},
                                 Window::cube(2, -2 * w, 2 * w));
  for (auto _ : state) benchmark::DoNotOptimize(cauchy_mul(a, b, window));
}
BENCHMARK(BM_CauchyMulSeries)->Arg(4)->Arg(8)->Arg(16);

void BM_ResidueExpansion(benchmark::State& state) {
  const auto cfg = TowerConfig::make(static_cast<int>(state.range(0)), 3, 2);
  const Window w = default_residue_window(cfg);
  for (auto _ : state) {
    benchmark::DoNotOptimize(expand_rational_product(residue_phi_rational(cfg), w));
  }
}
BENCHMARK(BM_ResidueExpansion)->Arg(2)->Arg(3);

void BM_PhiProduct(benchmark::State& state) {
  const auto cfg = TowerConfig::make(static_cast<int>(state.range(0)), 3, 2);
  for (auto _ : state) benchmark::DoNotOptimize(phi_i_product(cfg.kappa, cfg));
}
BENCHMARK(BM_PhiProduct)->Arg(2)->Arg(3);

template <Pipeline P>
void BM_Morse(benchmark::State& state) {
  const int kappa = static_cast<int>(state.range(0));
  const auto geom = chern_of_geometry(GeometryKind::HypersurfaceTangent, 2, 5);
  const auto cfg = TowerConfig::for_geometry(geom, kappa);
  std::vector<int> a(static_cast<std::size_t>(kappa), 1);
  for (int i = kappa - 2; i >= 0; --i) a[static_cast<std::size_t>(i)] = 3 * a[static_cast<std::size_t>(i) + 1];
  const WeightVector w{a, 1};
  for (auto _ : state) benchmark::DoNotOptimize(morse_number(geom, cfg, w, P).value);
}
BENCHMARK(BM_Morse<Pipeline::Residue>)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Morse<Pipeline::Stepwise>)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Morse<Pipeline::PhiForm>)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
