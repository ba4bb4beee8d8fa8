#include <benchmark/benchmark.h>

#include <random>

#include "cellhelly/complex.hpp"
#include "cellhelly/coxeter.hpp"
#include "cellhelly/garside.hpp"

using namespace cellhelly;

namespace {

DefiningGraph fixture(const char* name) {
  return DefiningGraph::from_file(std::string(CELLHELLY_FIXTURES) + "/" + name);
}

std::vector<Letter> random_word(const GarsideStructure& gs, std::size_t length, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> atom(0, static_cast<int>(gs.atoms().size()) - 1);
  std::bernoulli_distribution inv(0.3);
  std::vector<Letter> w(length);
  for (auto& l : w) l = {atom(rng), inv(rng)};
  return w;
}

void BM_NormalForm(benchmark::State& state) {
  const auto gs = GarsideStructure::from_spherical(CoxeterGroup::enumerate(fixture("b3.json"), 10000));
  const auto word = random_word(gs, static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(gs.normal_form(word));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_NormalForm)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

void BM_PrefixMeet(benchmark::State& state) {
  const auto gs = GarsideStructure::from_spherical(CoxeterGroup::enumerate(fixture("b3.json"), 10000));
  const auto x = gs.normal_form(random_word(gs, 64, 2));
  const auto y = gs.normal_form(random_word(gs, 64, 3));
  for (auto _ : state) benchmark::DoNotOptimize(gs.meet_p(x, y));
}
BENCHMARK(BM_PrefixMeet);

void BM_WeakMeet(benchmark::State& state) {
  const auto w = CoxeterGroup::enumerate(fixture("b3.json"), 10000);
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(w.order()) - 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(w.weak_meet(CoxElt{pick(rng)}, CoxElt{pick(rng)}, Side::right));
  }
}
BENCHMARK(BM_WeakMeet);

void BM_BallBuild(benchmark::State& state) {
  const auto fc = FCGraph::certify(fixture("a2.json"));
  const auto oracle = make_oracle(fc);
  const int radius = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto ball = CayleyBall::build(fc, *oracle, radius);
    benchmark::DoNotOptimize(CellComplex::build(fc, ball).cells().size());
  }
}
BENCHMARK(BM_BallBuild)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

void BM_Verify(benchmark::State& state) {
  const auto fc = FCGraph::certify(fixture("a2.json"));
  const auto oracle = make_oracle(fc);
  const auto ball = CayleyBall::build(fc, *oracle, 6);
  const auto cx = CellComplex::build(fc, ball);
  VerifyOptions o;
  o.margin = 3;
  for (auto _ : state) benchmark::DoNotOptimize(cell_helly_verify(fc, ball, cx, o).pass());
}
BENCHMARK(BM_Verify)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
