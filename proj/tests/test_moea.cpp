#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "mitplan/errors.hpp"
#include "mitplan/moea.hpp"
#include "mitplan/oracle.hpp"
#include "support/builders.hpp"
#include "support/generators.hpp"

using namespace mitplan;
using testsupport::alloc;

namespace {

Individual point(double pc, double tc, bool feasible = true, double violation = 0.0) {
  Individual ind;
  ind.production = pc;
  ind.transport = tc;
  ind.feasible = feasible;
  ind.violation = violation;
  return ind;
}

// Objectives of every composition of the reference order, via a plain loop
// rather than the optimizer's own machinery.
std::vector<std::pair<double, double>> reference_points() {
  const Scenario s = testsupport::reference_instance();
  std::vector<std::pair<double, double>> points;
  for (std::int64_t y1 = 0; y1 <= s.order; ++y1) {
    const Evaluation ev = evaluate(s, alloc({y1, s.order - y1}));
    if (ev.fleet_ok) points.emplace_back(ev.cost.production, ev.cost.transport);
  }
  return points;
}

}  // namespace

TEST_SUITE("moea") {
  TEST_CASE("constraint domination") {
    CHECK(dominates(point(22, 4), point(25, 4)));
    CHECK_FALSE(dominates(point(25, 4), point(22, 4)));

    // a trade-off pair dominates in neither direction
    CHECK_FALSE(dominates(point(22, 4), point(20, 8)));
    CHECK_FALSE(dominates(point(20, 8), point(22, 4)));

    // identical objectives never dominate
    CHECK_FALSE(dominates(point(22, 4), point(22, 4)));

    // feasibility first, then violation magnitude
    CHECK(dominates(point(30, 10, true), point(5, 0, false, 1)));
    CHECK_FALSE(dominates(point(5, 0, false, 1), point(30, 10, true)));
    CHECK(dominates(point(9, 9, false, 1), point(1, 1, false, 3)));
    CHECK_FALSE(dominates(point(9, 9, false, 2), point(1, 1, false, 2)));
  }

  TEST_CASE("non-dominated sorting partitions by domination depth") {
    std::vector<Individual> same = {point(5, 5), point(5, 5), point(5, 5)};
    auto fronts = non_dominated_sort(same);
    CHECK(fronts.size() == 1);
    for (const Individual& ind : same) CHECK(ind.rank == 0);

    std::vector<Individual> chain = {point(3, 3), point(1, 1), point(2, 2)};
    fronts = non_dominated_sort(chain);
    REQUIRE(fronts.size() == 3);
    CHECK(chain[1].rank == 0);
    CHECK(chain[2].rank == 1);
    CHECK(chain[0].rank == 2);

    // boundary points of a front get infinite crowding
    std::vector<Individual> spread = {point(1, 9), point(5, 5), point(9, 1)};
    non_dominated_sort(spread);
    CHECK(std::isinf(spread[0].crowding));
    CHECK(std::isinf(spread[2].crowding));
    CHECK(spread[1].crowding == doctest::Approx(2.0));
  }

  TEST_CASE("rank zero of the reference instance matches the enumerated front") {
    const Scenario s = testsupport::reference_instance();
    std::vector<Individual> pop;
    for (std::int64_t y1 = 0; y1 <= s.order; ++y1) {
      const Allocation a = alloc({y1, s.order - y1});
      const Evaluation ev = evaluate(s, a);
      Individual ind;
      ind.allocation = a;
      ind.production = ev.cost.production;
      ind.transport = ev.cost.transport;
      ind.feasible = ev.fleet_ok;
      pop.push_back(ind);
    }
    non_dominated_sort(pop);

    std::set<std::pair<double, double>> rank0;
    for (const Individual& ind : pop) {
      if (ind.rank == 0) rank0.insert({ind.production, ind.transport});
    }
    const auto expected = testsupport::reference_front(reference_points());
    CHECK(rank0 == std::set<std::pair<double, double>>(expected.begin(), expected.end()));
    CHECK(rank0 == std::set<std::pair<double, double>>{{20, 8}, {22, 4}, {27, 0}});
  }

  TEST_CASE("initial population is valid, seeded, and degenerate-safe") {
    const MoeaParams params{.population_size = 16, .seed = 42};

    const Scenario zero = testsupport::make_scenario(0, {1}, {2, 3}, {{3}, {8}}, 5, 10, 4);
    SeededRng rng_zero(params.seed);
    for (const Individual& ind : init_population(zero, params, rng_zero)) {
      CHECK(ind.allocation == alloc({0, 0}));
    }

    const Scenario solo = testsupport::make_scenario(7, {1}, {2}, {{9}}, 5, 10, 4);
    SeededRng rng_solo(params.seed);
    for (const Individual& ind : init_population(solo, params, rng_solo)) {
      CHECK(ind.allocation == alloc({7}));
    }

    const Scenario s = testsupport::reference_instance();
    SeededRng rng_a(42);
    SeededRng rng_b(42);
    const auto pop_a = init_population(s, params, rng_a);
    const auto pop_b = init_population(s, params, rng_b);
    REQUIRE(pop_a.size() == params.population_size);
    for (std::size_t i = 0; i < pop_a.size(); ++i) {
      CHECK(pop_a[i].allocation == pop_b[i].allocation);
      CHECK_NOTHROW(validate_allocation(s, pop_a[i].allocation));
    }
  }

  TEST_CASE("initial compositions are close to uniform") {
    const Scenario s = testsupport::make_scenario(2, {1}, {1, 1}, {{9}, {9}}, 5, 10, 1);
    const MoeaParams params{.population_size = 3000, .seed = 7};
    SeededRng rng(params.seed);
    std::map<std::vector<std::int64_t>, int> counts;
    for (const Individual& ind : init_population(s, params, rng)) {
      counts[ind.allocation.quantities] += 1;
    }
    REQUIRE(counts.size() == 3);  // (0,2), (1,1), (2,0)
    for (const auto& [split, count] : counts) {
      CHECK(count > 800);
      CHECK(count < 1200);
    }
  }

  TEST_CASE("variation always emits valid allocations") {
    SeededRng scenario_rng(61);
    for (int trial = 0; trial < 20; ++trial) {
      const Scenario s = testsupport::random_scenario(
          scenario_rng, {.max_factories = 4, .max_order = 30, .force_feasible = true});
      const MoeaParams params{.population_size = 20, .seed = 9};
      SeededRng rng(params.seed);
      std::vector<Individual> pop = init_population(s, params, rng);
      non_dominated_sort(pop);
      for (int round = 0; round < 5; ++round) {
        const std::vector<Allocation> offspring = select_and_vary(s, pop, params, rng);
        REQUIRE(offspring.size() == params.population_size);
        for (const Allocation& child : offspring) {
          CHECK_NOTHROW(validate_allocation(s, child));
        }
      }
    }
  }

  TEST_CASE("mutation cannot move units when there are none") {
    const Scenario zero = testsupport::make_scenario(0, {1}, {2, 3}, {{3}, {8}}, 5, 10, 4);
    const MoeaParams params{.population_size = 8, .mutation_prob = 1.0, .seed = 4};
    SeededRng rng(params.seed);
    std::vector<Individual> pop = init_population(zero, params, rng);
    non_dominated_sort(pop);
    for (const Allocation& child : select_and_vary(zero, pop, params, rng)) {
      CHECK(child == alloc({0, 0}));
    }
  }

  TEST_CASE("optimize solves the reference instance") {
    const Scenario s = testsupport::reference_instance();
    const MoeaParams params{.seed = 42};
    const ParetoResult result = optimize(s, params);

    REQUIRE(result.best_scalarized.has_value());
    CHECK(result.best_scalarized->total() == 26.0);
    CHECK(result.best_scalarized->allocation == alloc({8, 2}));

    std::set<std::pair<double, double>> objectives;
    for (const Individual& ind : result.front) {
      objectives.insert({ind.production, ind.transport});
    }
    CHECK(objectives == std::set<std::pair<double, double>>{{27, 0}, {22, 4}, {20, 8}});
  }

  TEST_CASE("zero order collapses to a single free solution") {
    const Scenario zero = testsupport::make_scenario(0, {1}, {2, 3}, {{3}, {8}}, 5, 10, 4);
    const ParetoResult result = optimize(zero, MoeaParams{.seed = 1});
    REQUIRE(result.front.size() == 1);
    CHECK(result.front[0].production == 0.0);
    CHECK(result.front[0].transport == 0.0);
    REQUIRE(result.best_scalarized.has_value());
    CHECK(result.best_scalarized->total() == 0.0);
  }

  TEST_CASE("runs are deterministic, including across thread counts") {
    const Scenario s = testsupport::reference_instance();
    const MoeaParams params{.population_size = 32, .generations = 40, .seed = 77};
    const ParetoResult one = optimize(s, params, 1);
    const ParetoResult two = optimize(s, params, 2);
    const ParetoResult again = optimize(s, params, 1);

    const auto same = [](const ParetoResult& a, const ParetoResult& b) {
      if (a.history != b.history) return false;
      if (a.front.size() != b.front.size()) return false;
      for (std::size_t i = 0; i < a.front.size(); ++i) {
        if (a.front[i].allocation != b.front[i].allocation) return false;
        if (a.front[i].production != b.front[i].production) return false;
        if (a.front[i].transport != b.front[i].transport) return false;
      }
      if (a.best_scalarized.has_value() != b.best_scalarized.has_value()) return false;
      return !a.best_scalarized ||
             a.best_scalarized->allocation == b.best_scalarized->allocation;
    };
    CHECK(same(one, two));
    CHECK(same(one, again));
  }

  TEST_CASE("history never worsens under elitism") {
    const Scenario s = testsupport::reference_instance();
    const MoeaParams params{.population_size = 16, .generations = 60, .seed = 3};
    const ParetoResult result = optimize(s, params);
    REQUIRE(result.history.size() == params.generations + 1);
    for (std::size_t i = 1; i < result.history.size(); ++i) {
      CHECK(result.history[i] <= result.history[i - 1]);
    }
  }

  TEST_CASE("front members never dominate each other and never beat the best") {
    SeededRng rng(62);
    for (int trial = 0; trial < 6; ++trial) {
      const Scenario s = testsupport::random_scenario(
          rng, {.max_factories = 3, .max_order = 12, .force_feasible = true});
      const MoeaParams params{.population_size = 24, .generations = 40,
                              .seed = static_cast<std::uint64_t>(trial)};
      const ParetoResult result = optimize(s, params);
      for (const Individual& a : result.front) {
        CHECK(a.feasible);
        if (result.best_scalarized) {
          CHECK(a.total() >= result.best_scalarized->total());
        }
        for (const Individual& b : result.front) {
          CHECK_FALSE(dominates(a, b));
        }
      }
    }
  }

  TEST_CASE("optimizer rejects uncoverable scenarios and bad parameters") {
    const Scenario bad = testsupport::make_scenario(10, {1}, {1, 1}, {{3}, {6}}, 5, 9, 4);
    CHECK_THROWS_AS(optimize(bad, MoeaParams{}), InfeasibleError);

    const Scenario s = testsupport::reference_instance();
    CHECK_THROWS_AS(optimize(s, MoeaParams{.population_size = 7}), ValidationError);
    CHECK_THROWS_AS(optimize(s, MoeaParams{.population_size = 2}), ValidationError);
    CHECK_THROWS_AS(optimize(s, MoeaParams{.crossover_prob = 1.5}), ValidationError);
    CHECK_THROWS_AS(optimize(s, MoeaParams{.generations = 0}), ValidationError);
  }

  TEST_CASE("pick_solution applies the policy with lexicographic ties") {
    const Scenario s = testsupport::reference_instance();
    const ParetoResult result = optimize(s, MoeaParams{.seed = 42});

    CHECK(pick_solution(result, PickPolicy::MinTotal).allocation == alloc({8, 2}));
    CHECK(pick_solution(result, PickPolicy::MinTC).allocation == alloc({3, 7}));
    CHECK(pick_solution(result, PickPolicy::MinPC).allocation == alloc({10, 0}));

    ParetoResult singleton;
    Individual only = point(5, 5);
    only.allocation = alloc({1, 0});
    singleton.front.push_back(only);
    for (const PickPolicy policy :
         {PickPolicy::MinTotal, PickPolicy::MinPC, PickPolicy::MinTC}) {
      CHECK(pick_solution(singleton, policy).allocation == only.allocation);
    }

    // equal keys resolve to the lexicographically smaller allocation
    ParetoResult tied;
    Individual left = point(4, 6);
    left.allocation = alloc({2, 3});
    Individual right = point(6, 4);
    right.allocation = alloc({1, 4});
    tied.front = {left, right};
    CHECK(pick_solution(tied, PickPolicy::MinTotal).allocation == alloc({1, 4}));

    CHECK_THROWS_AS(pick_solution(ParetoResult{}, PickPolicy::MinTotal), ValidationError);
  }

  TEST_CASE("search never undercuts the exhaustive optimum") {
    SeededRng rng(63);
    for (int trial = 0; trial < 5; ++trial) {
      const Scenario s = testsupport::random_scenario(
          rng, {.max_factories = 3, .max_order = 10, .force_feasible = true,
                .min_fleet = 4});
      const OracleResult truth = brute_force(s);
      for (std::uint64_t seed = 0; seed < 4; ++seed) {
        const ParetoResult result =
            optimize(s, MoeaParams{.population_size = 16, .generations = 30, .seed = seed});
        if (truth.best_total) {
          REQUIRE(result.best_scalarized.has_value());
          CHECK(result.best_scalarized->total() >= *truth.best_total - 1e-9);
        } else {
          CHECK_FALSE(result.best_scalarized.has_value());
        }
      }
    }
  }
}
