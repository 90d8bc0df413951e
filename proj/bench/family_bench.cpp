// Serial against OpenMP gamma comparison over the noncusp test family.

#include <benchmark/benchmark.h>

#include "tamegamma/scenarios.hpp"

using namespace tame;

namespace {

struct Workload {
  WeilRep a, b;
  TestFamily family;

  Workload() {
    AmbientPtr amb = scenario_ambient(5, {make_field(5, 1, 3, 0)}, 2);
    FieldPtr e = embed(amb, make_field(5, 1, 3, 0));
    FieldPtr f = base_field(amb);
    MultChar chi(e, RootOfUnity::one(), 1, e->uniformizer_inverse());
    MultChar chp(e, RootOfUnity(1, 3), 1, e->uniformizer_inverse());
    a.add(chi).add(MultChar::trivial(f)).add(chi.dual());
    b.add(chp).add(MultChar::trivial(f)).add(chp.dual());
    FamilyBounds bounds;
    bounds.max_dim = 2;
    bounds.max_depth = 1;
    bounds.max_order = 12;
    bounds.unif_roots = 4;
    family = build_test_family(amb, bounds);
  }
};

const Workload& workload() {
  static const Workload w;
  return w;
}

void BM_GammaEquivSerial(benchmark::State& state) {
  const auto& w = workload();
  for (auto _ : state) benchmark::DoNotOptimize(gamma_equiv_level_serial(w.a, w.b, 2, w.family));
  state.counters["twists"] = static_cast<double>(w.family.members.size());
}

void BM_GammaEquivParallel(benchmark::State& state) {
  const auto& w = workload();
  for (auto _ : state) benchmark::DoNotOptimize(gamma_equiv_level(w.a, w.b, 2, w.family));
  state.counters["twists"] = static_cast<double>(w.family.members.size());
}

}  // namespace

BENCHMARK(BM_GammaEquivSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GammaEquivParallel)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
