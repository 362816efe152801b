// Copyright 2026 The qtwist Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#include <benchmark/benchmark.h>

#include <random>

#include "qtwist/lfunc.hpp"
#include "qtwist/moments.hpp"

namespace {

using namespace qtw;

const Field& F5() {
  static const Field F(5);
  return F;
}

void BM_SymbolKernel(benchmark::State& st) {
  const SymbolKernel K(F5());
  std::mt19937_64 rng(1);
  const int d = static_cast<int>(st.range(0));
  std::vector<SmallPoly> fs, hs;
  for (int i = 0; i < 256; ++i) {
    fs.push_back(SmallPoly::from(monic_from_index(F5(), d, rng() % F5().power(d))));
    hs.push_back(SmallPoly::from(monic_from_index(F5(), d + 1, rng() % F5().power(d + 1))));
  }
  std::size_t i = 0;
  for (auto _ : st) {
    benchmark::DoNotOptimize(K(fs[i & 255], hs[(i * 7) & 255]));
    ++i;
  }
}
BENCHMARK(BM_SymbolKernel)->Arg(3)->Arg(7);

void BM_SieveBuild(benchmark::State& st) {
  for (auto _ : st) {
    const MonicSieve S(F5(), static_cast<int>(st.range(0)));
    benchmark::DoNotOptimize(S.size());
  }
  st.SetLabel("deg <= " + std::to_string(st.range(0)));
}
BENCHMARK(BM_SieveBuild)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_TwistCharacter(benchmark::State& st) {
  const int g = static_cast<int>(st.range(0));
  static const MonicSieve S(F5(), 8);
  const SymbolKernel K(F5());
  const auto fam = enumerate_family(F5(), g, parse_poly(F5(), "t^3+3"));
  const int upto = (1 + 2 * (2 * g + 1)) / 2;
  std::vector<std::int8_t> chi;
  std::size_t i = 0;
  for (auto _ : st) {
    S.twist_character(K, SmallPoly::from(fam[i++ % fam.size()]), upto, chi);
    benchmark::DoNotOptimize(chi.data());
  }
}
BENCHMARK(BM_TwistCharacter)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMicrosecond);

void BM_LPolynomial(benchmark::State& st) {
  static const CurveModel E = parse_curve(F5(), "y^2=x^3+(t)*x+(1)");
  static const LContext ctx(E, std::make_shared<const MonicSieve>(F5(), 7));
  static const Calibration cal = calibrate_degree(ctx, 1);
  const auto fam = enumerate_family(F5(), 1, E.delta);
  std::size_t i = 0;
  for (auto _ : st) benchmark::DoNotOptimize(compute_l_polynomial(ctx, cal, fam[i++ % fam.size()]));
}
BENCHMARK(BM_LPolynomial)->Unit(benchmark::kMicrosecond);

void BM_FirstMoment(benchmark::State& st) {
  static const Workspace W(F5(), {parse_curve(F5(), "y^2=x^3+(t)*x+(1)")}, 6);
  MomentOptions opt;
  opt.g = static_cast<int>(st.range(0));
  opt.cutoff_B = 6;
  for (auto _ : st) benchmark::DoNotOptimize(run_moment(W, opt).exact);
}
BENCHMARK(BM_FirstMoment)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
