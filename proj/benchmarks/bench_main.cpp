#include <benchmark/benchmark.h>

#include <map>

#include "medforge/branch.hpp"
#include "medforge/construction.hpp"
#include "medforge/cover.hpp"
#include "medforge/hf.hpp"
#include "medforge/ramsey.hpp"
#include "medforge/suite.hpp"
#include "medforge/text.hpp"

namespace {

using namespace medforge;
using namespace medforge::construction;
using namespace medforge::cover;
using namespace medforge::suite;

const char* kPatched =
    "patch(f1(table(default={})); w=branchoff(table(default={}),3,1,0); table(default={}))";

void BM_AckRoundTrip(benchmark::State& state) {
  const auto limit = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    for (unsigned n = 0; n < limit; ++n) benchmark::DoNotOptimize(ack_code(ack_decode(BigInt(n))));
  }
  state.SetItemsProcessed(state.iterations() * limit);
}
BENCHMARK(BM_AckRoundTrip)->Arg(256)->Arg(4096);

void BM_BranchBits(benchmark::State& state) {
  const StreamFun f = parse_stream(kPatched);
  const auto bits = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(branch_bits(f, bits));
}
BENCHMARK(BM_BranchBits)->Arg(64)->Arg(1024);

void BM_RecoverF(benchmark::State& state) {
  const StreamFun g = parse_stream(kPatched);
  const auto horizon = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(recover_f(g, horizon));
}
BENCHMARK(BM_RecoverF)->DenseRange(4, 8, 2);

void BM_TowerCover(benchmark::State& state) {
  const StreamFun f = parse_stream("f1(table(default={}))");
  const auto horizon = static_cast<std::size_t>(state.range(0));
  const std::map<BinStr, HfSet> region = ball_region(f, 1, horizon);
  for (auto _ : state) benchmark::DoNotOptimize(tower_cover_decide(region, 2));
}
BENCHMARK(BM_TowerCover)->DenseRange(4, 8, 2);

void BM_Homogeneous(benchmark::State& state) {
  const auto r = ramsey::parse_coloring("minparity");
  const auto count = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ramsey::homogeneous_prefix(*r, count));
}
BENCHMARK(BM_Homogeneous)->Arg(16)->Arg(128);

void BM_SuiteCheck(benchmark::State& state) {
  SuiteOptions opts;
  opts.horizon = 6;
  for (auto _ : state) benchmark::DoNotOptimize(run_check("branch-injectivity", opts));
}
BENCHMARK(BM_SuiteCheck)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
