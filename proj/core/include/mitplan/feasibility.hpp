#pragma once

#include <cstddef>
#include <vector>

#include "mitplan/model.hpp"

namespace mitplan {

struct TransportPlan;

/// One strictly positive stock imbalance at a (factory, material) cell.
/// Indices point into Scenario::factories / Scenario::materials.
struct InventoryDelta {
  std::size_t factory = 0;
  std::size_t material = 0;
  double amount = 0.0;

  bool operator==(const InventoryDelta&) const = default;
};

/// Per-cell shortage/surplus decomposition for a fixed allocation.
///
/// A factory is short per_unit*quota - stock when that is positive, and holds
/// the mirror-image surplus when it is negative; exact zeros appear in
/// neither list, so the two lists are disjoint on (factory, material) keys.
struct ShortageReport {
  std::vector<InventoryDelta> shortages;   // sorted by (factory, material)
  std::vector<InventoryDelta> surpluses;   // sorted by (factory, material)
  bool transport_needed = false;           // true iff shortages is non-empty
  std::vector<std::size_t> affected_materials;  // sorted material indices with any shortage
};

/// Per-material aggregate feasibility, aligned with Scenario::materials:
/// entry k is true iff the network-wide stock of k covers the whole order.
std::vector<bool> aggregate_feasible(const Scenario& s);

/// Throws InfeasibleError naming the first material whose network-wide stock
/// cannot cover the order. Planning and search entry points call this.
void require_aggregate_feasible(const Scenario& s);

/// True iff some factory lacks stock for its quota, i.e. material has to move
/// before production can start. False means every factory can produce from
/// its own shelves.
bool transport_needed(const Scenario& s, const Allocation& a);

/// Computes the full shortage/surplus report for an allocation.
ShortageReport check_inventory(const Scenario& s, const Allocation& a);

/// Route occurrence matrix: cell [from][to] is true iff the plan moves any
/// material on that route. Diagonal is always false.
std::vector<std::vector<bool>> delta_matrix(const TransportPlan& plan,
                                            std::size_t factory_count);

}  // namespace mitplan
