#include <benchmark/benchmark.h>

#include "nij/catalog.hpp"
#include "nij/oracle.hpp"
#include "nij/verify.hpp"

using namespace nij;

namespace {

const Catalog& cat() { return Catalog::builtin(); }

FFAlgebra reduced(const std::string& id, std::uint64_t p) {
  const auto& a = cat().algebra(id).table;
  ModContext ctx = ModContext::for_prime(p);
  return FFAlgebra::reduce(a, ctx, default_algebra_values(a, cat().families_on(id), ctx));
}

void BM_EnumerateDim2(benchmark::State& state) {
  FFAlgebra b6 = reduced("B6", static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_nijenhuis_ff(b6, 1));
}
BENCHMARK(BM_EnumerateDim2)->Arg(5)->Arg(7)->Arg(13)->Unit(benchmark::kMillisecond);

void BM_EnumerateDim3(benchmark::State& state) {
  FFAlgebra a = reduced(state.range(0) == 0 ? "C1" : "D9", 5);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_nijenhuis_ff(a, 1));
}
BENCHMARK(BM_EnumerateDim3)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_ValidateFamilies(benchmark::State& state) {
  for (auto _ : state) {
    for (const auto& f : cat().families())
      benchmark::DoNotOptimize(validate_family(cat().algebra(f.algebra).table, f, FamilyKind::nijenhuis()));
  }
}
BENCHMARK(BM_ValidateFamilies)->Unit(benchmark::kMillisecond);

void BM_Coverage(benchmark::State& state) {
  const auto& a = cat().algebra("D3").table;
  ModContext f5 = ModContext::for_prime(5);
  for (auto _ : state)
    benchmark::DoNotOptimize(family_coverage(a, cat().families_on("D3"), f5, FamilyKind::nijenhuis(), std::nullopt, 1));
}
BENCHMARK(BM_Coverage)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
