#include <benchmark/benchmark.h>

#include <cstdint>

#include "mitplan/cost.hpp"
#include "mitplan/model.hpp"
#include "mitplan/moea.hpp"
#include "mitplan/oracle.hpp"
#include "mitplan/rng.hpp"
#include "mitplan/transport.hpp"

namespace {

// Deterministic synthetic network: enough slack that every allocation is
// coverable, tight enough that most of them need transport.
mitplan::Scenario make_scenario(std::size_t factories, std::size_t materials,
                                std::int64_t order) {
  mitplan::Scenario s;
  s.order = order;
  mitplan::SeededRng rng(7);
  for (std::size_t k = 0; k < materials; ++k) {
    s.materials.push_back({"k" + std::to_string(k + 1),
                           static_cast<double>(rng.uniform_int(1, 3))});
  }
  for (std::size_t i = 0; i < factories; ++i) {
    mitplan::Factory f;
    f.id = "f" + std::to_string(i + 1);
    f.unit_production_cost = static_cast<double>(rng.uniform_int(2, 9));
    for (std::size_t k = 0; k < materials; ++k) {
      const double per_factory_demand =
          s.materials[k].per_unit * static_cast<double>(order) /
          static_cast<double>(factories);
      f.inventory.push_back(per_factory_demand +
                            static_cast<double>(rng.uniform_int(0, order / 2 + 1)));
    }
    s.factories.push_back(std::move(f));
  }
  s.fleet = {8.0, 1000, 4.0};
  mitplan::validate_scenario(s);
  return s;
}

mitplan::Allocation skewed_allocation(const mitplan::Scenario& s) {
  mitplan::Allocation a;
  a.quantities.assign(s.factory_count(), 0);
  a.quantities[0] = s.order;
  return a;
}

void BM_GreedyPlan(benchmark::State& state) {
  const auto s = make_scenario(state.range(0), 4, 100);
  const auto a = skewed_allocation(s);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mitplan::greedy_plan(s, a));
  }
}

void BM_Evaluate(benchmark::State& state) {
  const auto s = make_scenario(state.range(0), 4, 100);
  const auto a = skewed_allocation(s);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mitplan::evaluate(s, a));
  }
}

void BM_Optimize(benchmark::State& state) {
  const auto s = make_scenario(4, 3, 60);
  mitplan::MoeaParams params;
  params.population_size = 32;
  params.generations = state.range(0);
  params.seed = 42;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mitplan::optimize(s, params));
  }
}

void BM_BruteForce(benchmark::State& state) {
  const auto s = make_scenario(3, 3, state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(mitplan::brute_force(s));
  }
}

}  // namespace

BENCHMARK(BM_GreedyPlan)->Arg(4)->Arg(16)->Arg(64);
BENCHMARK(BM_Evaluate)->Arg(4)->Arg(16)->Arg(64);
BENCHMARK(BM_Optimize)->Arg(20)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BruteForce)->Arg(40)->Arg(120)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
