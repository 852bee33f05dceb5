// Microbenchmarks for the hot paths: Gram assembly, the subspace
// discrimination pipeline, the photon-number oracle, keystream expansion,
// the MAP decision rule, and a full simulated session.

#include <benchmark/benchmark.h>

#include <array>
#include <vector>

#include "qsc/fock_oracle.hpp"
#include "qsc/helstrom.hpp"
#include "qsc/keystream.hpp"
#include "qsc/protocol_sim.hpp"

namespace {

void BM_Gram(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const qsc::Constellation cons =
      qsc::constellation(m, 10.0, qsc::EncodingKind::Phase);
  for (auto _ : state) {
    qsc::Mat g = qsc::gram(cons);
    benchmark::DoNotOptimize(g.data());
  }
  state.SetComplexityN(2 * m);
}
BENCHMARK(BM_Gram)->Arg(16)->Arg(64)->Arg(256)->Unit(benchmark::kMicrosecond);

void BM_SubspaceEmbed(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const qsc::Constellation cons =
      qsc::constellation(m, 10.0, qsc::EncodingKind::Phase);
  const qsc::Mat g = qsc::gram(cons);
  for (auto _ : state) {
    qsc::SubspaceBasis basis = qsc::embed(g, 1e-12);
    benchmark::DoNotOptimize(basis.coeffs.data());
  }
}
BENCHMARK(BM_SubspaceEmbed)
    ->Arg(16)
    ->Arg(64)
    ->Arg(256)
    ->Unit(benchmark::kMillisecond);

void BM_EveError(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) {
    qsc::DiscriminationResult r =
        qsc::eve_error(m, 10.0, qsc::EncodingKind::Phase);
    benchmark::DoNotOptimize(r.pe);
  }
}
BENCHMARK(BM_EveError)
    ->Arg(16)
    ->Arg(64)
    ->Arg(256)
    ->Unit(benchmark::kMillisecond);

void BM_Oracle(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) {
    qsc::OracleResult r =
        qsc::oracle_min_error(m, 1.0, qsc::EncodingKind::Phase, {}, 1e-12);
    benchmark::DoNotOptimize(r.discrimination.pe);
  }
}
BENCHMARK(BM_Oracle)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_ExpandKey(benchmark::State& state) {
  const qsc::LfsrState lfsr =
      qsc::make_lfsr(16, std::array{16, 14, 13, 11}, 0xACE1);
  for (auto _ : state) {
    std::vector<int> keys = qsc::expand_key(lfsr, 10000, 16);
    benchmark::DoNotOptimize(keys.data());
  }
}
BENCHMARK(BM_ExpandKey)->Unit(benchmark::kMicrosecond);

void BM_EveMapDecide(benchmark::State& state) {
  const qsc::Constellation cons =
      qsc::constellation(64, 1.0, qsc::EncodingKind::Phase);
  const qsc::ComplexAmplitude z1{0.6, 0.1};
  const qsc::ComplexAmplitude z2{0.7, -0.2};
  for (auto _ : state) {
    int bit = qsc::eve_map_decide(z1, z2, cons, qsc::Priors{});
    benchmark::DoNotOptimize(bit);
  }
}
BENCHMARK(BM_EveMapDecide)->Unit(benchmark::kMicrosecond);

void BM_RunSession(benchmark::State& state) {
  qsc::SimConfig config;
  config.m = 8;
  config.nbar = 1.0;
  config.bits = 10000;
  config.seed = 1;
  config.lfsr = qsc::make_lfsr(16, std::array{16, 14, 13, 11}, 0xACE1);
  for (auto _ : state) {
    qsc::SimReport report = qsc::run_session(config);
    benchmark::DoNotOptimize(report.eve_ber);
  }
  state.SetItemsProcessed(state.iterations() * config.bits);
}
BENCHMARK(BM_RunSession)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
