#include "mitplan/cost.hpp"

#include "mitplan/errors.hpp"

namespace mitplan {

double production_cost(const Scenario& s, const Allocation& a) {
  validate_allocation(s, a);
  double total = 0.0;
  for (std::size_t i = 0; i < s.factory_count(); ++i) {
    total += s.factories[i].unit_production_cost * static_cast<double>(a.quantities[i]);
  }
  return total;
}

double transport_cost(const TransportPlan& plan, const Fleet& fleet) {
  return static_cast<double>(plan.total_trucks) * fleet.unit_trip_cost;
}

Evaluation evaluate(const Scenario& s, const Allocation& a) {
  Evaluation ev;
  ev.plan = greedy_plan(s, a);
  ev.transport_needed = !ev.plan.empty();
  ev.fleet_ok = check_fleet(ev.plan, s.fleet);
  ev.cost.production = production_cost(s, a);
  ev.cost.transport = transport_cost(ev.plan, s.fleet);
  ev.cost.total = ev.cost.production + ev.cost.transport;
  return ev;
}

}  // namespace mitplan
