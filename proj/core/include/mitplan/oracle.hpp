#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mitplan/model.hpp"

namespace mitplan {

/// One feasible point of the exhaustively computed trade-off front.
struct OracleEntry {
  Allocation allocation;
  double production = 0.0;
  double transport = 0.0;

  bool operator==(const OracleEntry&) const = default;
};

/// Ground truth from full enumeration: the exact scalarized optimum, every
/// allocation achieving it, and the exact non-dominated front. best_total is
/// empty only when no allocation fits the fleet.
struct OracleResult {
  std::optional<double> best_total;
  std::vector<Allocation> best_allocations;  // lexicographic order
  std::vector<OracleEntry> exact_front;      // sorted by (production, transport, allocation)
  std::uint64_t evaluated_count = 0;
};

/// Number of ways to split `order` units across `factory_count` factories,
/// i.e. compositions of the order. Saturates instead of overflowing.
std::uint64_t composition_count(std::size_t factory_count, std::int64_t order);

/// Streams every composition of the order in ascending lexicographic order.
/// Construction throws InstanceTooLargeError past 10^6 compositions.
class AllocationEnumerator {
 public:
  AllocationEnumerator(std::size_t factory_count, std::int64_t order);

  /// Writes the next composition into `out`; returns false when exhausted.
  bool next(Allocation& out);

  std::uint64_t size() const { return count_; }

 private:
  std::size_t factory_count_;
  std::int64_t order_;
  std::uint64_t count_;
  Allocation current_;
  bool started_ = false;
  bool done_ = false;
};

/// The composition at a given position of the lexicographic enumeration.
/// `rank` must be below composition_count(factory_count, order).
Allocation composition_at(std::size_t factory_count, std::int64_t order, std::uint64_t rank);

/// Evaluates every allocation through the same greedy decoding the optimizer
/// uses and reports the exact optimum and exact front, skipping allocations
/// that exceed the fleet. Enumeration may run on several threads; the result
/// does not depend on the thread count.
/// Throws InstanceTooLargeError past the enumeration guard and
/// InfeasibleError when the scenario cannot cover the order.
OracleResult brute_force(const Scenario& s, unsigned threads = 1);

}  // namespace mitplan
