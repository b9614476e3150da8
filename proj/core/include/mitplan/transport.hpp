#pragma once

#include <cstdint>
#include <vector>

#include "mitplan/model.hpp"

namespace mitplan {

/// One material quantity moving on one route. Indices point into the
/// scenario's factory/material lists; quantity is strictly positive and
/// from != to.
struct Shipment {
  std::size_t from = 0;
  std::size_t to = 0;
  std::size_t material = 0;
  double quantity = 0.0;

  bool operator==(const Shipment&) const = default;
};

struct RouteTrucks {
  std::size_t from = 0;
  std::size_t to = 0;
  std::int64_t trucks = 0;

  bool operator==(const RouteTrucks&) const = default;
};

/// A covering shipment plan. Shipments are sorted by (from, to, material) and
/// route_trucks by (from, to); every route's truck count is the capacity
/// ceiling over the consolidated load of all materials moving on it.
struct TransportPlan {
  std::vector<Shipment> shipments;
  std::vector<RouteTrucks> route_trucks;
  std::int64_t total_trucks = 0;

  bool empty() const { return shipments.empty(); }
  bool operator==(const TransportPlan&) const = default;
};

/// Smallest truck count whose combined capacity covers the load: 0 for an
/// empty load, otherwise the ceiling of quantity / capacity. Exact — no
/// tolerance is applied, and the result is monotone in both arguments.
/// Throws ValidationError on a negative quantity or non-positive capacity.
std::int64_t trucks_for_route(double total_quantity, double capacity);

/// Builds the deterministic greedy covering plan for an allocation:
/// shortage factories in list order, materials in list order, each deficit
/// drawn from donors in descending remaining-surplus order (ties to the
/// lower factory index), loads consolidated per route before truck counting.
/// Throws InfeasibleError when some material fails the aggregate feasibility
/// condition, i.e. when no covering plan exists at all. The fleet limit is
/// not enforced here; see check_fleet.
TransportPlan greedy_plan(const Scenario& s, const Allocation& a);

/// True iff the plan fits the fleet: total trucks within the fleet limit.
bool check_fleet(const TransportPlan& plan, const Fleet& fleet);

/// Exhaustive minimum-truck plan for tiny instances: enumerates every split
/// of every deficit across its donors on a quantity grid (step `resolution`)
/// and returns a plan with the fewest total trucks, ties broken by fewer
/// routes, then lexicographic route order, then lexicographic shipments.
/// Serves as the ground truth the greedy construction is measured against.
/// Throws InfeasibleError like greedy_plan, and InstanceTooLargeError when
/// the instance has more than three factories or the grid enumeration would
/// exceed 10^5 candidate splits.
TransportPlan exact_min_truck_plan(const Scenario& s, const Allocation& a,
                                   double resolution = 1.0);

}  // namespace mitplan
