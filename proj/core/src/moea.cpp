#include "mitplan/moea.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>

#include "mitplan/errors.hpp"
#include "mitplan/feasibility.hpp"
#include "mitplan/parallel.hpp"

namespace mitplan {

namespace {

void validate_params(const MoeaParams& p) {
  if (p.population_size < 4 || p.population_size % 2 != 0) {
    throw ValidationError("population_size", "must be even and >= 4");
  }
  if (p.generations < 1) throw ValidationError("generations", "must be >= 1");
  if (!(p.crossover_prob >= 0.0 && p.crossover_prob <= 1.0)) {
    throw ValidationError("crossover_prob", "must be in [0, 1]");
  }
  if (p.mutation_prob && !(*p.mutation_prob >= 0.0 && *p.mutation_prob <= 1.0)) {
    throw ValidationError("mutation_prob", "must be in [0, 1]");
  }
  if (p.tournament_size < 2) throw ValidationError("tournament_size", "must be >= 2");
}

// Uniformly random composition of `order` into n non-negative parts, drawn
// by selection-sampling the n-1 separator positions among order+n-1 slots.
Allocation random_composition(std::size_t n, std::int64_t order, SeededRng& rng) {
  Allocation a;
  a.quantities.assign(n, 0);
  const std::int64_t slots = order + static_cast<std::int64_t>(n) - 1;
  std::int64_t bars_left = static_cast<std::int64_t>(n) - 1;
  std::int64_t stars = 0;
  std::size_t gene = 0;
  for (std::int64_t pos = 0; pos < slots; ++pos) {
    const std::int64_t slots_left = slots - pos;
    const bool is_bar =
        bars_left > 0 &&
        rng.uniform01() * static_cast<double>(slots_left) < static_cast<double>(bars_left);
    if (is_bar) {
      a.quantities[gene++] = stars;
      stars = 0;
      --bars_left;
    } else {
      ++stars;
    }
  }
  a.quantities[gene] = stars;
  return a;
}

Individual make_individual(const Scenario& s, Allocation alloc) {
  const Evaluation ev = evaluate(s, alloc);
  Individual ind;
  ind.allocation = std::move(alloc);
  ind.production = ev.cost.production;
  ind.transport = ev.cost.transport;
  ind.feasible = ev.fleet_ok;
  ind.violation =
      ev.fleet_ok ? 0.0 : static_cast<double>(ev.plan.total_trucks - s.fleet.max_trucks);
  return ind;
}

std::vector<Allocation> random_genomes(const Scenario& s, const MoeaParams& params,
                                       SeededRng& rng) {
  std::vector<Allocation> genomes;
  genomes.reserve(params.population_size);
  for (std::size_t i = 0; i < params.population_size; ++i) {
    genomes.push_back(random_composition(s.factory_count(), s.order, rng));
  }
  return genomes;
}

std::vector<Individual> evaluate_batch(const Scenario& s, std::vector<Allocation> genomes,
                                       unsigned threads) {
  std::vector<Individual> out(genomes.size());
  std::exception_ptr failure;
  std::mutex failure_mutex;
  parallel_chunks(genomes.size(), threads, [&](std::size_t begin, std::size_t end) {
    try {
      for (std::size_t i = begin; i < end; ++i) {
        out[i] = make_individual(s, std::move(genomes[i]));
      }
    } catch (...) {
      const std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  });
  if (failure) std::rethrow_exception(failure);
  return out;
}

// Rescales to the target sum, hands out floors, then distributes the missing
// units by largest fractional remainder (ties to the lower index).
void repair_sum(Allocation& a, std::int64_t order) {
  const std::size_t n = a.quantities.size();
  std::int64_t sum = 0;
  for (const std::int64_t q : a.quantities) sum += q;
  if (sum == order) return;

  std::vector<double> quota(n);
  if (sum > 0) {
    for (std::size_t g = 0; g < n; ++g) {
      quota[g] = static_cast<double>(a.quantities[g]) * static_cast<double>(order) /
                 static_cast<double>(sum);
    }
  } else {
    std::fill(quota.begin(), quota.end(),
              static_cast<double>(order) / static_cast<double>(n));
  }

  std::int64_t floored_total = 0;
  std::vector<std::pair<double, std::size_t>> remainders(n);
  for (std::size_t g = 0; g < n; ++g) {
    const double fl = std::floor(quota[g]);
    a.quantities[g] = static_cast<std::int64_t>(fl);
    floored_total += a.quantities[g];
    remainders[g] = {quota[g] - fl, g};
  }
  std::sort(remainders.begin(), remainders.end(),
            [](const auto& lhs, const auto& rhs) {
              if (lhs.first != rhs.first) return lhs.first > rhs.first;
              return lhs.second < rhs.second;
            });
  std::int64_t leftover = order - floored_total;
  for (std::size_t t = 0; leftover > 0; ++t, --leftover) {
    a.quantities[remainders[t % n].second] += 1;
  }
}

// Per triggered gene, moves 1..max(1, order/10) units from a random factory
// that has any to another one. Leaves the sum untouched by construction.
void mutate(Allocation& a, std::int64_t order, double prob, SeededRng& rng) {
  const std::size_t n = a.quantities.size();
  if (n < 2 || order == 0) return;
  const std::int64_t max_step = std::max<std::int64_t>(1, order / 10);
  for (std::size_t g = 0; g < n; ++g) {
    if (rng.uniform01() >= prob) continue;
    std::size_t positives = 0;
    for (const std::int64_t q : a.quantities) positives += q > 0 ? 1 : 0;
    std::size_t pick = rng.uniform_index(positives);
    std::size_t source = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (a.quantities[i] > 0 && pick-- == 0) {
        source = i;
        break;
      }
    }
    std::size_t dest = rng.uniform_index(n - 1);
    if (dest >= source) ++dest;
    const std::int64_t amount =
        std::min(rng.uniform_int(1, max_step), a.quantities[source]);
    a.quantities[source] -= amount;
    a.quantities[dest] += amount;
  }
}

void assign_crowding(std::vector<Individual>& pop, const std::vector<std::size_t>& front) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  for (const std::size_t idx : front) pop[idx].crowding = 0.0;
  if (front.size() <= 2) {
    for (const std::size_t idx : front) pop[idx].crowding = kInf;
    return;
  }
  std::vector<std::size_t> order(front);
  const auto objective = [&](std::size_t idx, int axis) {
    return axis == 0 ? pop[idx].production : pop[idx].transport;
  };
  for (int axis = 0; axis < 2; ++axis) {
    std::sort(order.begin(), order.end(), [&](std::size_t lhs, std::size_t rhs) {
      const double lv = objective(lhs, axis);
      const double rv = objective(rhs, axis);
      if (lv != rv) return lv < rv;
      return lhs < rhs;
    });
    pop[order.front()].crowding = kInf;
    pop[order.back()].crowding = kInf;
    const double span = objective(order.back(), axis) - objective(order.front(), axis);
    if (span <= 0.0) continue;
    for (std::size_t i = 1; i + 1 < order.size(); ++i) {
      pop[order[i]].crowding +=
          (objective(order[i + 1], axis) - objective(order[i - 1], axis)) / span;
    }
  }
}

// Survivor comparator within a split front.
bool more_crowded_first(const Individual& a, std::size_t ia, const Individual& b,
                        std::size_t ib) {
  if (a.crowding != b.crowding) return a.crowding > b.crowding;
  return ia < ib;
}

}  // namespace

bool dominates(const Individual& a, const Individual& b) {
  if (a.feasible != b.feasible) return a.feasible;
  if (!a.feasible) return a.violation < b.violation;
  const bool no_worse = a.production <= b.production && a.transport <= b.transport;
  const bool strictly_better = a.production < b.production || a.transport < b.transport;
  return no_worse && strictly_better;
}

std::vector<std::vector<std::size_t>> non_dominated_sort(std::vector<Individual>& pop) {
  const std::size_t n = pop.size();
  std::vector<std::vector<std::size_t>> dominated(n);
  std::vector<std::size_t> dominators(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (dominates(pop[i], pop[j])) {
        dominated[i].push_back(j);
        ++dominators[j];
      } else if (dominates(pop[j], pop[i])) {
        dominated[j].push_back(i);
        ++dominators[i];
      }
    }
  }

  std::vector<std::vector<std::size_t>> fronts;
  std::vector<std::size_t> current;
  for (std::size_t i = 0; i < n; ++i) {
    if (dominators[i] == 0) current.push_back(i);
  }
  while (!current.empty()) {
    for (const std::size_t idx : current) pop[idx].rank = fronts.size();
    assign_crowding(pop, current);
    std::vector<std::size_t> next;
    for (const std::size_t idx : current) {
      for (const std::size_t worse : dominated[idx]) {
        if (--dominators[worse] == 0) next.push_back(worse);
      }
    }
    fronts.push_back(std::move(current));
    current = std::move(next);
    std::sort(current.begin(), current.end());
  }
  return fronts;
}

std::vector<Individual> init_population(const Scenario& s, const MoeaParams& params,
                                        SeededRng& rng) {
  validate_params(params);
  require_aggregate_feasible(s);
  return evaluate_batch(s, random_genomes(s, params, rng), 1);
}

std::vector<Allocation> select_and_vary(const Scenario& s,
                                        const std::vector<Individual>& pop,
                                        const MoeaParams& params, SeededRng& rng) {
  const std::size_t n = s.factory_count();
  const double mutation_prob =
      params.mutation_prob ? *params.mutation_prob : 1.0 / static_cast<double>(n);

  const auto tournament = [&]() -> const Allocation& {
    std::size_t best = rng.uniform_index(pop.size());
    for (std::size_t t = 1; t < params.tournament_size; ++t) {
      const std::size_t challenger = rng.uniform_index(pop.size());
      const Individual& c = pop[challenger];
      const Individual& b = pop[best];
      const bool wins = c.rank < b.rank ||
                        (c.rank == b.rank && c.crowding > b.crowding) ||
                        (c.rank == b.rank && c.crowding == b.crowding && challenger < best);
      if (wins) best = challenger;
    }
    return pop[best].allocation;
  };

  std::vector<Allocation> offspring;
  offspring.reserve(params.population_size);
  while (offspring.size() < params.population_size) {
    Allocation child1 = tournament();
    Allocation child2 = tournament();
    if (rng.uniform01() < params.crossover_prob) {
      for (std::size_t g = 0; g < n; ++g) {
        if (rng.uniform01() < 0.5) std::swap(child1.quantities[g], child2.quantities[g]);
      }
      repair_sum(child1, s.order);
      repair_sum(child2, s.order);
    }
    mutate(child1, s.order, mutation_prob, rng);
    mutate(child2, s.order, mutation_prob, rng);
    offspring.push_back(std::move(child1));
    offspring.push_back(std::move(child2));
  }
  return offspring;
}

ParetoResult optimize(const Scenario& s, const MoeaParams& params, unsigned threads) {
  validate_params(params);
  require_aggregate_feasible(s);

  SeededRng rng(params.seed);
  ParetoResult result;

  const auto consider_best = [&result](const Individual& ind) {
    if (!ind.feasible) return;
    if (!result.best_scalarized || ind.total() < result.best_scalarized->total() ||
        (ind.total() == result.best_scalarized->total() &&
         ind.allocation < result.best_scalarized->allocation)) {
      result.best_scalarized = ind;
    }
  };
  const auto record_history = [&result]() {
    result.history.push_back(result.best_scalarized
                                 ? result.best_scalarized->total()
                                 : std::numeric_limits<double>::quiet_NaN());
  };

  std::vector<Individual> pop = evaluate_batch(s, random_genomes(s, params, rng), threads);
  for (const Individual& ind : pop) consider_best(ind);
  record_history();
  non_dominated_sort(pop);

  for (std::size_t gen = 0; gen < params.generations; ++gen) {
    std::vector<Individual> offspring =
        evaluate_batch(s, select_and_vary(s, pop, params, rng), threads);
    for (const Individual& ind : offspring) consider_best(ind);

    std::vector<Individual> combined = std::move(pop);
    combined.insert(combined.end(), std::make_move_iterator(offspring.begin()),
                    std::make_move_iterator(offspring.end()));
    const std::vector<std::vector<std::size_t>> fronts = non_dominated_sort(combined);

    pop.clear();
    pop.reserve(params.population_size);
    for (const std::vector<std::size_t>& front : fronts) {
      if (pop.size() + front.size() <= params.population_size) {
        for (const std::size_t idx : front) pop.push_back(std::move(combined[idx]));
        if (pop.size() == params.population_size) break;
      } else {
        std::vector<std::size_t> by_crowding(front);
        std::sort(by_crowding.begin(), by_crowding.end(),
                  [&combined](std::size_t lhs, std::size_t rhs) {
                    return more_crowded_first(combined[lhs], lhs, combined[rhs], rhs);
                  });
        for (const std::size_t idx : by_crowding) {
          if (pop.size() == params.population_size) break;
          pop.push_back(std::move(combined[idx]));
        }
        break;
      }
    }
    record_history();
  }

  non_dominated_sort(pop);
  for (const Individual& ind : pop) {
    if (ind.rank == 0 && ind.feasible) result.front.push_back(ind);
  }
  std::sort(result.front.begin(), result.front.end(),
            [](const Individual& a, const Individual& b) {
              if (a.production != b.production) return a.production < b.production;
              if (a.transport != b.transport) return a.transport < b.transport;
              return a.allocation < b.allocation;
            });
  result.front.erase(std::unique(result.front.begin(), result.front.end(),
                                 [](const Individual& a, const Individual& b) {
                                   return a.allocation == b.allocation;
                                 }),
                     result.front.end());
  return result;
}

Individual pick_solution(const ParetoResult& result, PickPolicy policy) {
  if (result.front.empty()) throw ValidationError("front", "empty front: nothing to pick");
  const auto key = [policy](const Individual& ind) {
    switch (policy) {
      case PickPolicy::MinPC:
        return ind.production;
      case PickPolicy::MinTC:
        return ind.transport;
      case PickPolicy::MinTotal:
      default:
        return ind.total();
    }
  };
  const Individual* best = &result.front.front();
  for (const Individual& ind : result.front) {
    if (key(ind) < key(*best) ||
        (key(ind) == key(*best) && ind.allocation < best->allocation)) {
      best = &ind;
    }
  }
  return *best;
}

}  // namespace mitplan
