#include <benchmark/benchmark.h>

#include "cga/conformal.hpp"
#include "cga/little_group.hpp"
#include "cga/multivector.hpp"
#include "cga/prng.hpp"
#include "cga/so21_rep.hpp"

using namespace cga;

namespace {

std::vector<Multivector> random_multivectors(const SignaturePtr& sig, int count) {
  SplitMix64 rng(4242);
  std::vector<Multivector> out;
  int slots = 1 << sig->dim();
  for (int i = 0; i < count; ++i) {
    Multivector mv(sig);
    for (int t = 0, n = rng.next_int(2, 6); t < n; ++t)
      mv += Multivector::basis_blade(sig, static_cast<BladeMask>(rng.next_int(0, slots - 1)),
                                     rng.next_range(-2.0, 2.0));
    out.push_back(std::move(mv));
  }
  return out;
}

void GeometricProduct(benchmark::State& state) {
  SignaturePtr sig = make_signature(
      Signature::diagonal(static_cast<int>(state.range(0)), static_cast<int>(state.range(1))));
  auto mvs = random_multivectors(sig, 64);
  size_t i = 0;
  for (auto _ : state) {
    Multivector r = geometric_product(mvs[i % 64], mvs[(i + 1) % 64]);
    benchmark::DoNotOptimize(r);
    ++i;
  }
}
BENCHMARK(GeometricProduct)->Args({3, 1})->Args({4, 2});

void EmbedProject(benchmark::State& state) {
  ConformalModel m = ConformalModel::from_alias("E2");
  SplitMix64 rng(99);
  for (auto _ : state) {
    TargetPoint x = {rng.next_range(-5.0, 5.0), rng.next_range(-5.0, 5.0)};
    TargetPoint back = m.project_point(m.embed_point(x));
    benchmark::DoNotOptimize(back);
  }
}
BENCHMARK(EmbedProject);

void CircleThrough(benchmark::State& state) {
  ConformalModel m = ConformalModel::from_alias("E2");
  SplitMix64 rng(7);
  for (auto _ : state) {
    RoundBlade s = m.circle_through({rng.next_range(-3.0, 3.0), rng.next_range(-3.0, 3.0)},
                                    {rng.next_range(-3.0, 3.0), rng.next_range(-3.0, 3.0)},
                                    {rng.next_range(-3.0, 3.0), rng.next_range(-3.0, 3.0)});
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(CircleThrough);

void StabilizerSolve(benchmark::State& state) {
  ConformalModel m = state.range(0) == 0 ? ConformalModel::from_alias("E2")
                                         : ConformalModel::from_alias("M31");
  LieAlgebraPresentation full = isometry_algebra(m.model_sig());
  for (auto _ : state) {
    StabilizerResult stab = stabilizer_of(m.infinity(), full);
    benchmark::DoNotOptimize(stab);
  }
}
BENCHMARK(StabilizerSolve)->Arg(0)->Arg(1);

void IsometryAlgebraBuild(benchmark::State& state) {
  SignaturePtr sig = make_signature(Signature::diagonal(4, 2));
  for (auto _ : state) {
    LieAlgebraPresentation alg = isometry_algebra(sig);
    benchmark::DoNotOptimize(alg);
  }
}
BENCHMARK(IsometryAlgebraBuild);

void BuildRepAndCheck(benchmark::State& state) {
  RepLabel label = RepLabel::principal(1.0, 0.0);
  int width = static_cast<int>(state.range(0));
  for (auto _ : state) {
    TruncatedRep rep = build_rep(label, width);
    CommutatorReport report = check_commutators(rep);
    benchmark::DoNotOptimize(report);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BuildRepAndCheck)->Range(8, 128)->Complexity();

}  // namespace

BENCHMARK_MAIN();
