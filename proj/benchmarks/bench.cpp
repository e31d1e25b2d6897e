// Micro benchmarks for the hot certification and experiment paths.
#include <benchmark/benchmark.h>

#include "afss/manifest.hpp"
#include "afss/verify.hpp"

using namespace afss;

namespace {

void BM_rank_64(benchmark::State& state) {
  Rng rng(1);
  BitMatrix m = BitMatrix::random(64, 64, rng);
  for (auto _ : state) benchmark::DoNotOptimize(m.rank());
}
BENCHMARK(BM_rank_64);

void BM_solve_random(benchmark::State& state) {
  Rng rng(2);
  AffineMap f = AffineMap::random(32, 16, rng);
  BitString y = f.apply(rng.bits(32));
  for (auto _ : state) benchmark::DoNotOptimize(solve(f, y));
}
BENCHMARK(BM_solve_random);

void BM_enumerate_subspaces_6_4(benchmark::State& state) {
  for (auto _ : state) {
    std::uint64_t count = 0;
    enumerate_affine_subspaces(6, 4, [&](const AffineSubspace& s) { count += s.dim(); });
    benchmark::DoNotOptimize(count);
  }
}
BENCHMARK(BM_enumerate_subspaces_6_4);

void BM_certify_seeded_toeplitz(benchmark::State& state) {
  for (auto _ : state) {
    auto ext = LinearSeededExtractor::toeplitz(6, 2);
    Budget b = Budget::with(std::uint64_t(1) << 30);
    certify_seeded(ext, 4, b);
    benchmark::DoNotOptimize(ext.cert.eps);
  }
}
BENCHMARK(BM_certify_seeded_toeplitz);

void BM_certify_seeded_nm_ip(benchmark::State& state) {
  auto e = SeededNmExtractor::ip_field(6, 2, 6);
  for (auto _ : state) {
    Budget b = Budget::with(std::uint64_t(1) << 30);
    benchmark::DoNotOptimize(certify_seeded_nm(e, 5, b));
  }
}
BENCHMARK(BM_certify_seeded_nm_ip);

void BM_amd_detection_max(benchmark::State& state) {
  AmdCode amd(4, 1);
  BitString msg = BitString::from_u64(0x9, 4);
  for (auto _ : state) {
    Budget b = Budget::with(std::uint64_t(1) << 24);
    benchmark::DoNotOptimize(amd_tamper_detection_max(amd, msg, b));
  }
}
BENCHMARK(BM_amd_detection_max);

void BM_tamper_experiment_bit(benchmark::State& state) {
  Budget made = Budget::with(std::uint64_t(1) << 30);
  SchemeInstance inst =
      SchemeInstance::make(SchemeKind::BitNM, {0, 2, 3, 12, 2, 0, 6, 2}, 16, made);
  auto sigma = TamperStrategy::constant_bit(BitTamper::uniform(12, BitTamper::Flip), "flip");
  std::vector<int> R = {0, 1};
  BitString secret = BitString::from_u64(2, 2);
  for (auto _ : state) {
    Budget b = Budget::with(std::uint64_t(1) << 24);
    benchmark::DoNotOptimize(
        tamper_experiment(inst, secret, AdversaryProgram::empty(), sigma, R, b));
  }
}
BENCHMARK(BM_tamper_experiment_bit);

void BM_fit_simulator_lp(benchmark::State& state) {
  std::map<BitString, FiniteDistribution> tampers;
  tampers[BitString::from_string("0")] = FiniteDistribution::point(BitString::from_string("0"));
  tampers[BitString::from_string("1")] = FiniteDistribution::uniform_bits(1);
  for (auto _ : state) benchmark::DoNotOptimize(fit_simulator(tampers).eps_star);
}
BENCHMARK(BM_fit_simulator_lp);

}  // namespace

BENCHMARK_MAIN();
