#include <benchmark/benchmark.h>

#include "secacc/analytics.hpp"
#include "secacc/crypto.hpp"
#include "secacc/setup.hpp"
#include "secacc/sim.hpp"
#include "secacc/trace.hpp"

namespace {

using namespace secacc;
using drivers::Placement;
using drivers::Workload;

const Setup& setup() {
  static const Setup s = default_setup();
  return s;
}

void BM_Simulate(benchmark::State& state, Workload w, Placement pl) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    auto r = sim::simulate(w, n, pl, setup().soc, setup().templates);
    benchmark::DoNotOptimize(r.total_cycles);
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * n));
}
BENCHMARK_CAPTURE(BM_Simulate, sha256_ram, Workload::Sha256, Placement::SystemRam)->Arg(64)->Arg(4096);
BENCHMARK_CAPTURE(BM_Simulate, hmac_rot, Workload::Hmac, Placement::RotScratchpad)->Arg(4096);
BENCHMARK_CAPTURE(BM_Simulate, aes_ram, Workload::Aes256Cbc, Placement::SystemRam)->Arg(64)->Arg(4096);
BENCHMARK_CAPTURE(BM_Simulate, rsa1024_ram, Workload::Rsa1024, Placement::SystemRam)->Arg(128);

void BM_TraceRoundTrip(benchmark::State& state) {
  const auto r = sim::simulate(Workload::Sha256, 4096, Placement::SystemRam, setup().soc, setup().templates, true);
  const auto doc = sim::self_trace(r);
  const auto annotations = sim::self_annotations();
  for (auto _ : state) {
    const auto lines = trace::parse_trace(doc);
    auto rep = trace::attribute(trace::annotate(lines, annotations, setup().soc.address_map));
    benchmark::DoNotOptimize(rep.total_cycles);
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * doc.size()));
}
BENCHMARK(BM_TraceRoundTrip);

void BM_PeakBound(benchmark::State& state) {
  const auto& spec = setup().soc.accelerator("aes");
  for (auto _ : state) {
    auto b = analytics::peak_bound(analytics::access_budget(spec, Placement::SystemRam), setup().soc.latency,
                                   spec.block_size);
    benchmark::DoNotOptimize(b.cycles_per_byte);
  }
}
BENCHMARK(BM_PeakBound);

void BM_Sha256(benchmark::State& state) {
  const auto msg = sim::default_input(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(crypto::sha256(msg));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * msg.size()));
}
BENCHMARK(BM_Sha256)->Arg(4096);

void BM_Aes256Cbc(benchmark::State& state) {
  const auto msg = sim::default_input(static_cast<std::uint64_t>(state.range(0)));
  const crypto::AesKeyIv k{};
  for (auto _ : state) benchmark::DoNotOptimize(crypto::aes256_cbc_encrypt(k, msg));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * msg.size()));
}
BENCHMARK(BM_Aes256Cbc)->Arg(4096);

}  // namespace
BENCHMARK_MAIN();
