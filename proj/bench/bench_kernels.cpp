// Serial reference against the OpenMP kernels on the hot loops:
// transform, row profiles, and a full family regularity check.

#include <benchmark/benchmark.h>

#include "summa/corpus.hpp"
#include "summa/kernels.hpp"
#include "summa/regularity.hpp"
#include "summa/selection.hpp"
#include "summa/transform.hpp"

namespace {

using namespace summa;

const Scalar kTol = Scalar::ratio(1, 1024);

Exec exec_of(const benchmark::State& state) { return state.range(1) ? Exec::Parallel : Exec::Serial; }

void BM_TransformEuler(benchmark::State& state) {
  auto a = matrices::euler();
  auto x = VectorSequence::scalar_periodic("p3", {Scalar(1), Scalar(2), Scalar(3)});
  std::size_t N = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(transform(a, x, N, kTol, exec_of(state)));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_RowProfilesCesaro(benchmark::State& state) {
  auto a = matrices::cesaro();
  std::vector<SetDescriptor> sets = {SetDescriptor::finite({0}), SetDescriptor::progression(2, 1)};
  std::size_t N = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::row_profiles(a, N, sets, kTol, exec_of(state)));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_RegularFamily(benchmark::State& state) {
  MatrixFamily f({matrices::cesaro(), matrices::euler(), matrices::identity()});
  IdealSpec fin = IdealSpec::fin();
  HorizonParams h;
  h.N = static_cast<std::size_t>(state.range(0));
  TargetOperator t{OperatorEntry::scalar(Scalar(1))};
  for (auto _ : state) benchmark::DoNotOptimize(check_regular_family(f, fin, fin, t, h, {}, exec_of(state)));
}

void BM_UniformLimsup(benchmark::State& state) {
  auto fams = corpus::scalar_families();
  const MatrixFamily& f = fams[7].family;  // three delayed cesaro means
  HorizonParams h;
  h.N = static_cast<std::size_t>(state.range(0));
  auto x = corpus::alternating();
  for (auto _ : state)
    benchmark::DoNotOptimize(
        verify_uniform_limsup_identity(f, x, IdealSpec::fin(), h, EnumParams{2, 3, 4096}, exec_of(state)));
}

}  // namespace

BENCHMARK(BM_TransformEuler)->ArgsProduct({{128, 512}, {0, 1}})->ArgNames({"N", "omp"})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RowProfilesCesaro)->ArgsProduct({{256, 1024}, {0, 1}})->ArgNames({"N", "omp"})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RegularFamily)->ArgsProduct({{256}, {0, 1}})->ArgNames({"N", "omp"})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_UniformLimsup)->ArgsProduct({{256}, {0, 1}})->ArgNames({"N", "omp"})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
