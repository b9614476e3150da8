#include "mitplan/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "mitplan/errors.hpp"
#include "mitplan/feasibility.hpp"

namespace mitplan {

namespace {

// Residuals below this are floating-point crumbs, not real deficits.
constexpr double kQtyEps = 1e-9;

constexpr std::uint64_t kMaxSplitCandidates = 100000;

// Rebuilds route consolidation and truck counts from sorted shipments.
void finalize_plan(TransportPlan& plan, double truck_capacity) {
  std::sort(plan.shipments.begin(), plan.shipments.end(),
            [](const Shipment& a, const Shipment& b) {
              return std::tie(a.from, a.to, a.material) < std::tie(b.from, b.to, b.material);
            });
  plan.route_trucks.clear();
  plan.total_trucks = 0;
  std::size_t i = 0;
  while (i < plan.shipments.size()) {
    const std::size_t from = plan.shipments[i].from;
    const std::size_t to = plan.shipments[i].to;
    double load = 0.0;
    while (i < plan.shipments.size() && plan.shipments[i].from == from &&
           plan.shipments[i].to == to) {
      load += plan.shipments[i].quantity;
      ++i;
    }
    const std::int64_t trucks = trucks_for_route(load, truck_capacity);
    plan.route_trucks.push_back({from, to, trucks});
    plan.total_trucks += trucks;
  }
}

}  // namespace

std::int64_t trucks_for_route(double total_quantity, double capacity) {
  if (!(capacity > 0.0)) throw ValidationError("capacity", "must be > 0");
  if (!(total_quantity >= 0.0)) throw ValidationError("total_quantity", "must be >= 0");
  if (total_quantity == 0.0) return 0;
  if (total_quantity / capacity > 9.0e15) {
    throw ValidationError("total_quantity", "load too large for integral truck count");
  }
  auto trucks = static_cast<std::int64_t>(std::ceil(total_quantity / capacity));
  if (trucks < 1) trucks = 1;
  // The rounded quotient can land one step off the exact boundary; settle on
  // the smallest count whose combined capacity covers the load.
  while (trucks > 1 && static_cast<double>(trucks - 1) * capacity >= total_quantity) --trucks;
  while (static_cast<double>(trucks) * capacity < total_quantity) ++trucks;
  return trucks;
}

TransportPlan greedy_plan(const Scenario& s, const Allocation& a) {
  validate_allocation(s, a);
  require_aggregate_feasible(s);

  const ShortageReport report = check_inventory(s, a);
  TransportPlan plan;
  if (!report.transport_needed) return plan;

  const std::size_t m = s.material_count();
  std::vector<double> avail(s.factory_count() * m, 0.0);
  for (const InventoryDelta& surplus : report.surpluses) {
    avail[surplus.factory * m + surplus.material] = surplus.amount;
  }

  // Shortage cells come out of check_inventory sorted by (factory, material),
  // which is exactly the required processing order.
  for (const InventoryDelta& need : report.shortages) {
    double remaining = need.amount;
    while (remaining > kQtyEps) {
      std::size_t donor = s.factory_count();
      double donor_avail = 0.0;
      for (std::size_t j = 0; j < s.factory_count(); ++j) {
        const double av = avail[j * m + need.material];
        if (av > donor_avail) {
          donor_avail = av;
          donor = j;
        }
      }
      if (donor == s.factory_count()) {
        // The aggregate gate above rules out a genuine shortfall; donors can
        // only run dry here if rounding noise exceeded kQtyEps.
        throw Error("internal: residual deficit after draining all donors");
      }
      const double qty = std::min(remaining, donor_avail);
      plan.shipments.push_back({donor, need.factory, need.material, qty});
      avail[donor * m + need.material] -= qty;
      remaining -= qty;
    }
  }

  finalize_plan(plan, s.fleet.truck_capacity);
  return plan;
}

bool check_fleet(const TransportPlan& plan, const Fleet& fleet) {
  return plan.total_trucks <= fleet.max_trucks;
}

namespace {

// A deficit cell to cover, with its candidate donors fixed up front.
struct DeficitCell {
  std::size_t to = 0;
  std::size_t material = 0;
  std::int64_t units = 0;
  std::vector<std::size_t> donors;
};

std::uint64_t count_splits(std::int64_t units, const std::vector<std::int64_t>& caps,
                           std::size_t next) {
  if (next + 1 == caps.size()) return units <= caps[next] ? 1 : 0;
  std::uint64_t total = 0;
  const std::int64_t top = std::min(units, caps[next]);
  for (std::int64_t x = 0; x <= top; ++x) {
    total += count_splits(units - x, caps, next + 1);
    if (total > kMaxSplitCandidates) return total;
  }
  return total;
}

bool plan_less(const TransportPlan& a, const TransportPlan& b) {
  if (a.total_trucks != b.total_trucks) return a.total_trucks < b.total_trucks;
  if (a.route_trucks.size() != b.route_trucks.size()) {
    return a.route_trucks.size() < b.route_trucks.size();
  }
  for (std::size_t r = 0; r < a.route_trucks.size(); ++r) {
    const auto ra = std::tie(a.route_trucks[r].from, a.route_trucks[r].to);
    const auto rb = std::tie(b.route_trucks[r].from, b.route_trucks[r].to);
    if (ra != rb) return ra < rb;
  }
  for (std::size_t i = 0; i < std::min(a.shipments.size(), b.shipments.size()); ++i) {
    const auto sa = std::tie(a.shipments[i].from, a.shipments[i].to, a.shipments[i].material,
                             a.shipments[i].quantity);
    const auto sb = std::tie(b.shipments[i].from, b.shipments[i].to, b.shipments[i].material,
                             b.shipments[i].quantity);
    if (sa != sb) return sa < sb;
  }
  return a.shipments.size() < b.shipments.size();
}

struct SplitSearch {
  const Scenario& scenario;
  const std::vector<DeficitCell>& cells;
  std::vector<std::int64_t>& avail_units;  // remaining donor units per (factory, material)
  double resolution;
  std::vector<Shipment> current;
  TransportPlan best;
  bool found = false;

  void run(std::size_t cell_index) {
    if (cell_index == cells.size()) {
      TransportPlan candidate;
      candidate.shipments = current;
      finalize_plan(candidate, scenario.fleet.truck_capacity);
      if (!found || plan_less(candidate, best)) {
        best = std::move(candidate);
        found = true;
      }
      return;
    }
    const DeficitCell& cell = cells[cell_index];
    assign(cell_index, 0, cell.units);
  }

  // Enumerates grid amounts for cell.donors[donor_index...], ascending.
  void assign(std::size_t cell_index, std::size_t donor_index, std::int64_t left) {
    const DeficitCell& cell = cells[cell_index];
    const std::size_t m = scenario.material_count();
    const std::size_t donor = cell.donors[donor_index];
    std::int64_t& cap = avail_units[donor * m + cell.material];
    if (donor_index + 1 == cell.donors.size()) {
      if (left > cap) return;
      take(cell, donor, left, [&] { run(cell_index + 1); });
      return;
    }
    const std::int64_t top = std::min(left, cap);
    for (std::int64_t x = 0; x <= top; ++x) {
      take(cell, donor, x, [&] { assign(cell_index, donor_index + 1, left - x); });
    }
  }

  template <typename Next>
  void take(const DeficitCell& cell, std::size_t donor, std::int64_t units, Next&& next) {
    const std::size_t m = scenario.material_count();
    avail_units[donor * m + cell.material] -= units;
    if (units > 0) {
      current.push_back({donor, cell.to, cell.material,
                         static_cast<double>(units) * resolution});
    }
    next();
    if (units > 0) current.pop_back();
    avail_units[donor * m + cell.material] += units;
  }
};

std::int64_t to_grid_units(double quantity, double resolution, const char* what) {
  const double scaled = quantity / resolution;
  const double rounded = std::round(scaled);
  if (std::abs(rounded * resolution - quantity) > kQtyEps) {
    throw ValidationError(what, "quantity does not sit on the resolution grid");
  }
  return static_cast<std::int64_t>(rounded);
}

}  // namespace

TransportPlan exact_min_truck_plan(const Scenario& s, const Allocation& a, double resolution) {
  validate_allocation(s, a);
  if (!(resolution > 0.0)) throw ValidationError("resolution", "must be > 0");
  if (s.factory_count() > 3) {
    throw InstanceTooLargeError("exact plan search supports at most 3 factories");
  }
  require_aggregate_feasible(s);

  const ShortageReport report = check_inventory(s, a);
  if (!report.transport_needed) return {};

  const std::size_t m = s.material_count();
  std::vector<std::int64_t> avail_units(s.factory_count() * m, 0);
  for (const InventoryDelta& surplus : report.surpluses) {
    // Donors can only ship grid multiples; fractional tails stay on the shelf.
    avail_units[surplus.factory * m + surplus.material] =
        static_cast<std::int64_t>(std::floor(surplus.amount / resolution + kQtyEps));
  }

  std::vector<DeficitCell> cells;
  std::uint64_t candidates = 1;
  for (const InventoryDelta& need : report.shortages) {
    DeficitCell cell;
    cell.to = need.factory;
    cell.material = need.material;
    cell.units = to_grid_units(need.amount, resolution, "deficit");
    std::vector<std::int64_t> caps;
    for (std::size_t j = 0; j < s.factory_count(); ++j) {
      if (avail_units[j * m + need.material] > 0) {
        cell.donors.push_back(j);
        caps.push_back(avail_units[j * m + need.material]);
      }
    }
    if (cell.units > 0 && cell.donors.empty()) {
      throw ValidationError("resolution", "no covering plan exists on the quantity grid");
    }
    if (cell.units > 0) {
      const std::uint64_t cell_candidates = count_splits(cell.units, caps, 0);
      if (cell_candidates == 0) {
        throw ValidationError("resolution", "no covering plan exists on the quantity grid");
      }
      if (candidates > kMaxSplitCandidates / std::max<std::uint64_t>(cell_candidates, 1)) {
        throw InstanceTooLargeError("deficit split enumeration exceeds 10^5 candidates");
      }
      candidates *= cell_candidates;
      cells.push_back(std::move(cell));
    }
  }

  SplitSearch search{s, cells, avail_units, resolution, {}, {}, false};
  search.run(0);
  if (!search.found) {
    throw ValidationError("resolution", "no covering plan exists on the quantity grid");
  }
  return std::move(search.best);
}

}  // namespace mitplan
