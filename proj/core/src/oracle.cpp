#include "mitplan/oracle.hpp"

#include <algorithm>
#include <limits>
#include <mutex>

#include "mitplan/cost.hpp"
#include "mitplan/errors.hpp"
#include "mitplan/feasibility.hpp"
#include "mitplan/parallel.hpp"

namespace mitplan {

namespace {

constexpr std::uint64_t kMaxEnumerations = 1000000;
constexpr std::uint64_t kCountSaturated = std::numeric_limits<std::uint64_t>::max();

// Advances to the lexicographic successor in place: raise the rightmost
// position that still has units to its right, flush those units to the tail.
// Returns false from the last composition (all units in front).
bool advance_composition(Allocation& a) {
  const std::size_t n = a.quantities.size();
  std::int64_t tail = a.quantities[n - 1];
  for (std::size_t pos = n - 1; pos-- > 0;) {
    if (tail > 0) {
      a.quantities[pos] += 1;
      for (std::size_t z = pos + 1; z < n; ++z) a.quantities[z] = 0;
      a.quantities[n - 1] = tail - 1;
      return true;
    }
    tail += a.quantities[pos];
  }
  return false;
}

}  // namespace

std::uint64_t composition_count(std::size_t factory_count, std::int64_t order) {
  if (factory_count == 0) throw ValidationError("factory_count", "must be >= 1");
  if (order < 0) throw ValidationError("order", "must be >= 0");
  // C(order + n - 1, n - 1), one exact multiply-divide step per factor.
  const auto n = static_cast<std::uint64_t>(factory_count);
  const auto top = static_cast<std::uint64_t>(order) + n - 1;
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= n - 1; ++i) {
    const unsigned __int128 next =
        static_cast<unsigned __int128>(result) * (top - (n - 1) + i) / i;
    if (next > kCountSaturated / 2) return kCountSaturated;
    result = static_cast<std::uint64_t>(next);
  }
  return result;
}

AllocationEnumerator::AllocationEnumerator(std::size_t factory_count, std::int64_t order)
    : factory_count_(factory_count),
      order_(order),
      count_(composition_count(factory_count, order)) {
  if (count_ > kMaxEnumerations) {
    throw InstanceTooLargeError("allocation enumeration would visit " +
                                std::to_string(count_) + " compositions (limit " +
                                std::to_string(kMaxEnumerations) + ")");
  }
}

bool AllocationEnumerator::next(Allocation& out) {
  if (done_) return false;
  if (!started_) {
    current_.quantities.assign(factory_count_, 0);
    current_.quantities.back() = order_;
    started_ = true;
    out = current_;
    return true;
  }
  if (!advance_composition(current_)) {
    done_ = true;
    return false;
  }
  out = current_;
  return true;
}

Allocation composition_at(std::size_t factory_count, std::int64_t order, std::uint64_t rank) {
  Allocation a;
  a.quantities.assign(factory_count, 0);
  std::int64_t remaining = order;
  for (std::size_t pos = 0; pos + 1 < factory_count; ++pos) {
    std::int64_t value = 0;
    for (;; ++value) {
      const std::uint64_t block =
          composition_count(factory_count - pos - 1, remaining - value);
      if (rank < block) break;
      rank -= block;
    }
    a.quantities[pos] = value;
    remaining -= value;
  }
  a.quantities[factory_count - 1] = remaining;
  return a;
}

OracleResult brute_force(const Scenario& s, unsigned threads) {
  require_aggregate_feasible(s);
  AllocationEnumerator guard(s.factory_count(), s.order);
  const std::uint64_t total = guard.size();

  struct Point {
    double production = 0.0;
    double transport = 0.0;
    bool feasible = false;
  };
  std::vector<Point> points(total);

  std::exception_ptr failure;
  std::mutex failure_mutex;
  parallel_chunks(total, threads, [&](std::size_t begin, std::size_t end) {
    try {
      Allocation a = composition_at(s.factory_count(), s.order, begin);
      for (std::size_t rank = begin; rank < end; ++rank) {
        const Evaluation ev = evaluate(s, a);
        points[rank] = {ev.cost.production, ev.cost.transport, ev.fleet_ok};
        if (rank + 1 < end && !advance_composition(a)) break;
      }
    } catch (...) {
      const std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  });
  if (failure) std::rethrow_exception(failure);

  OracleResult result;
  result.evaluated_count = total;

  // Scalarized optimum and all of its allocations, in rank (= lex) order.
  std::vector<std::uint64_t> best_ranks;
  for (std::uint64_t rank = 0; rank < total; ++rank) {
    if (!points[rank].feasible) continue;
    const double value = points[rank].production + points[rank].transport;
    if (!result.best_total || value < *result.best_total) {
      result.best_total = value;
      best_ranks.assign(1, rank);
    } else if (value == *result.best_total) {
      best_ranks.push_back(rank);
    }
  }
  for (const std::uint64_t rank : best_ranks) {
    result.best_allocations.push_back(composition_at(s.factory_count(), s.order, rank));
  }

  // Exact front: sort feasible points by (PC, TC, rank) and sweep. Within one
  // PC group only the minimal-TC points survive, and the group survives only
  // if it improves on every cheaper-PC group's transport cost.
  struct Tagged {
    double production;
    double transport;
    std::uint64_t rank;
  };
  std::vector<Tagged> feasible;
  for (std::uint64_t rank = 0; rank < total; ++rank) {
    if (points[rank].feasible) {
      feasible.push_back({points[rank].production, points[rank].transport, rank});
    }
  }
  std::sort(feasible.begin(), feasible.end(), [](const Tagged& a, const Tagged& b) {
    if (a.production != b.production) return a.production < b.production;
    if (a.transport != b.transport) return a.transport < b.transport;
    return a.rank < b.rank;
  });
  double best_transport_seen = std::numeric_limits<double>::infinity();
  std::size_t i = 0;
  while (i < feasible.size()) {
    std::size_t group_end = i;
    while (group_end < feasible.size() &&
           feasible[group_end].production == feasible[i].production) {
      ++group_end;
    }
    const double group_min = feasible[i].transport;
    if (group_min < best_transport_seen) {
      for (std::size_t j = i; j < group_end && feasible[j].transport == group_min; ++j) {
        result.exact_front.push_back(
            {composition_at(s.factory_count(), s.order, feasible[j].rank),
             feasible[j].production, feasible[j].transport});
      }
      best_transport_seen = group_min;
    }
    i = group_end;
  }
  return result;
}

}  // namespace mitplan
