#include "locsym/catalog.hpp"
#include "locsym/derivation.hpp"
#include "locsym/exp_bridge.hpp"
#include "locsym/local_automorphism.hpp"
#include "locsym/local_derivation.hpp"

#include <benchmark/benchmark.h>

using namespace locsym;

namespace {

CMatrix locder_sample(std::uint64_t seed) {
  Rng rng(seed);
  const auto t = *catalog_template("pi3", TemplateKind::kLocalDerivation);
  Assignment p;
  for (const auto& name : t.params()) p[name] = rng.unit_rational(16);
  return to_complex(t.instantiate<Rational>(p));
}

void BM_MatrixExp(benchmark::State& state) {
  const CMatrix a = locder_sample(1);
  for (auto _ : state) benchmark::DoNotOptimize(matrix_exp(a));
}
BENCHMARK(BM_MatrixExp);

void BM_MatrixLog(benchmark::State& state) {
  const CMatrix b = matrix_exp(locder_sample(2));
  for (auto _ : state) benchmark::DoNotOptimize(matrix_log(b));
}
BENCHMARK(BM_MatrixLog);

void BM_StructuredLog(benchmark::State& state) {
  const CMatrix b = matrix_exp(locder_sample(3));
  for (auto _ : state) benchmark::DoNotOptimize(structured_log_pi3(b));
}
BENCHMARK(BM_StructuredLog);

// exact path (state.range(0) == 0) versus a point that forces roots
void BM_Feasibility(benchmark::State& state) {
  const LocAutPattern p = *locaut_pattern("pi2");
  Rng rng(4);
  const QMatrix b = random_pattern_member(p, rng, +1, 50);
  const QVector x = state.range(0) == 0 ? QVector{3, -1, 2, 5, 7} : QVector{0, 2, -1, 0, 3};
  for (auto _ : state) benchmark::DoNotOptimize(locaut_feasible_at(pi2(), b, x));
}
BENCHMARK(BM_Feasibility)->Arg(0)->Arg(1);

void BM_FindWitness(benchmark::State& state) {
  QMatrix b = QMatrix::identity(5);
  b(1, 1) = 2;
  for (auto _ : state) benchmark::DoNotOptimize(find_witness(pi3(), b));
}
BENCHMARK(BM_FindWitness);

void BM_DerivationAlgebra(benchmark::State& state) {
  const Algebra a = state.range(0) == 2 ? pi2() : pi3();
  for (auto _ : state) benchmark::DoNotOptimize(derivation_algebra(a));
}
BENCHMARK(BM_DerivationAlgebra)->Arg(2)->Arg(3);

void BM_LocalDerivationSpace(benchmark::State& state) {
  const Algebra a = pi2();
  const DerivationSpace der = derivation_algebra(a);
  const auto mode = state.range(0) == 0 ? LocalMode::kExact : LocalMode::kProbabilistic;
  for (auto _ : state) benchmark::DoNotOptimize(local_derivation_space(a, der, mode, 7, 200));
}
BENCHMARK(BM_LocalDerivationSpace)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_PointwiseChecker(benchmark::State& state) {
  const DerivationSpace der = derivation_algebra(pi2());
  const QVector x{1, 2, -3, 4, 5};
  const QMatrix w = QMatrix::unit(5, 1, 1) + QMatrix::unit(5, 4, 4);
  const PointwiseChecker c(der, x);
  for (auto _ : state) benchmark::DoNotOptimize(c.admits(w));
}
BENCHMARK(BM_PointwiseChecker);

}  // namespace

BENCHMARK_MAIN();
