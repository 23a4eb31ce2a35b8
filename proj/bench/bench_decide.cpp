// OpenMP decide_bounded against the serial reference enumerator.

#include <benchmark/benchmark.h>

#include "covtypes/parser.hpp"
#include "covtypes/typing.hpp"
#include "covtypes/vc.hpp"

using namespace covtypes;

namespace {

// forall x in [-W, W]. forall v. (v == x + 1 || v == x) ==> exists y. ... : a
// three-level VC shaped like the checker's cover obligations.
VC workload() {
  Context ctx{over_binding("x", parse_rtype("{int | true}")),
              cover_binding("y", parse_rtype("[int | v == x || v == x + 1]"))};
  return sub_base(ctx, parse_rtype("[int | v == y || v == y - 1]"), parse_rtype("[int | v == x || v == x + 1]"));
}

void BM_Parallel(benchmark::State& st) {
  const VC vc = workload();
  for (auto _ : st) benchmark::DoNotOptimize(decide_bounded(vc, st.range(0)));
}

void BM_Reference(benchmark::State& st) {
  const VC vc = workload();
  for (auto _ : st) benchmark::DoNotOptimize(decide_bounded_reference(vc, st.range(0)));
}

}  // namespace

BENCHMARK(BM_Parallel)->Arg(16)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Reference)->Arg(16)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
