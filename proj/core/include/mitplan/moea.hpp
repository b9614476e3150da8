#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mitplan/cost.hpp"
#include "mitplan/model.hpp"
#include "mitplan/rng.hpp"

namespace mitplan {

/// One candidate solution: an allocation genome plus its evaluation and the
/// bookkeeping the survivor selection needs.
struct Individual {
  Allocation allocation;
  double production = 0.0;  // PC objective
  double transport = 0.0;   // TC objective
  bool feasible = true;     // fleet constraint satisfied
  double violation = 0.0;   // truck overflow beyond the fleet limit
  std::size_t rank = 0;     // non-domination front index
  double crowding = 0.0;

  double total() const { return production + transport; }
};

struct MoeaParams {
  std::size_t population_size = 64;  // must be even and >= 4
  std::size_t generations = 200;
  double crossover_prob = 0.9;
  /// Per-gene mutation trigger probability; unset means 1/n for n factories.
  std::optional<double> mutation_prob;
  std::size_t tournament_size = 2;
  std::uint64_t seed = 0;
};

/// Outcome of a search run: the feasible non-dominated set of the final
/// population (deduplicated by allocation, sorted by production cost), the
/// best total-cost solution seen anywhere during the run, and the per-
/// generation best-total trace. best_scalarized is empty only when no
/// fleet-feasible solution was ever encountered.
struct ParetoResult {
  std::vector<Individual> front;
  std::optional<Individual> best_scalarized;
  std::vector<double> history;
};

/// Constraint-domination: any fleet-feasible solution beats any infeasible
/// one; two infeasible solutions compare by violation; two feasible ones by
/// Pareto dominance on (production, transport).
bool dominates(const Individual& a, const Individual& b);

/// Fast non-dominated sorting plus crowding distance. Sets rank and crowding
/// on every individual and returns the fronts as index lists into `pop`.
std::vector<std::vector<std::size_t>> non_dominated_sort(std::vector<Individual>& pop);

/// Uniformly random compositions of the order across factories, evaluated.
/// Throws InfeasibleError when the scenario cannot cover the order.
std::vector<Individual> init_population(const Scenario& s, const MoeaParams& params,
                                        SeededRng& rng);

/// Binary-tournament parent selection plus uniform crossover with a
/// largest-remainder sum repair and a unit-moving mutation. Returns
/// population_size offspring genomes, every one a valid allocation.
std::vector<Allocation> select_and_vary(const Scenario& s,
                                        const std::vector<Individual>& pop,
                                        const MoeaParams& params, SeededRng& rng);

/// Full elitist run: init, then `generations` rounds of variation and
/// rank/crowding truncation over parents plus offspring. Deterministic for a
/// fixed (scenario, params, seed) regardless of `threads`, which only
/// parallelizes the side-effect-free evaluations.
ParetoResult optimize(const Scenario& s, const MoeaParams& params, unsigned threads = 1);

enum class PickPolicy { MinTotal, MinPC, MinTC };

/// Applies a scalar decision rule to the front; ties go to the
/// lexicographically smallest allocation. Throws ValidationError when the
/// front is empty.
Individual pick_solution(const ParetoResult& result, PickPolicy policy);

}  // namespace mitplan
