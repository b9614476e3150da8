#include "mitplan/feasibility.hpp"

#include "mitplan/errors.hpp"
#include "mitplan/transport.hpp"

namespace mitplan {

std::vector<bool> aggregate_feasible(const Scenario& s) {
  std::vector<bool> verdicts(s.material_count(), true);
  for (std::size_t k = 0; k < s.material_count(); ++k) {
    double stock = 0.0;
    for (const Factory& f : s.factories) stock += f.inventory[k];
    const double demand = static_cast<double>(s.order) * s.materials[k].per_unit;
    verdicts[k] = stock >= demand;
  }
  return verdicts;
}

void require_aggregate_feasible(const Scenario& s) {
  const std::vector<bool> verdicts = aggregate_feasible(s);
  for (std::size_t k = 0; k < verdicts.size(); ++k) {
    if (!verdicts[k]) {
      throw InfeasibleError(s.materials[k].id,
                            "network stock of material '" + s.materials[k].id +
                                "' cannot cover the order; no covering plan exists");
    }
  }
}

bool transport_needed(const Scenario& s, const Allocation& a) {
  for (std::size_t i = 0; i < s.factory_count(); ++i) {
    const double quota = static_cast<double>(a.quantities[i]);
    for (std::size_t k = 0; k < s.material_count(); ++k) {
      if (s.materials[k].per_unit * quota > s.factories[i].inventory[k]) return true;
    }
  }
  return false;
}

ShortageReport check_inventory(const Scenario& s, const Allocation& a) {
  ShortageReport report;
  std::vector<bool> affected(s.material_count(), false);
  for (std::size_t i = 0; i < s.factory_count(); ++i) {
    const double quota = static_cast<double>(a.quantities[i]);
    for (std::size_t k = 0; k < s.material_count(); ++k) {
      const double gap = s.materials[k].per_unit * quota - s.factories[i].inventory[k];
      if (gap > 0.0) {
        report.shortages.push_back({i, k, gap});
        affected[k] = true;
      } else if (gap < 0.0) {
        report.surpluses.push_back({i, k, -gap});
      }
    }
  }
  report.transport_needed = !report.shortages.empty();
  for (std::size_t k = 0; k < affected.size(); ++k) {
    if (affected[k]) report.affected_materials.push_back(k);
  }
  return report;
}

std::vector<std::vector<bool>> delta_matrix(const TransportPlan& plan,
                                            std::size_t factory_count) {
  std::vector<std::vector<bool>> cells(factory_count,
                                       std::vector<bool>(factory_count, false));
  for (const Shipment& shipment : plan.shipments) {
    if (shipment.quantity > 0.0 && shipment.from != shipment.to) {
      cells[shipment.from][shipment.to] = true;
    }
  }
  return cells;
}

}  // namespace mitplan
