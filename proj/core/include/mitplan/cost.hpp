#pragma once

#include "mitplan/model.hpp"
#include "mitplan/transport.hpp"

namespace mitplan {

struct CostBreakdown {
  double production = 0.0;
  double transport = 0.0;
  double total = 0.0;

  bool operator==(const CostBreakdown&) const = default;
};

/// Sum over factories of unit production cost times allocated quantity.
double production_cost(const Scenario& s, const Allocation& a);

/// Truck trips times the per-trip cost. Route-independent by assumption:
/// one trip cost applies to the whole network.
double transport_cost(const TransportPlan& plan, const Fleet& fleet);

/// Everything the optimizer and the CLI need to judge one allocation.
struct Evaluation {
  TransportPlan plan;
  CostBreakdown cost;
  bool transport_needed = false;
  bool fleet_ok = true;
};

/// Decodes the allocation into its greedy transport plan and prices it.
/// Throws InfeasibleError when the scenario cannot cover the order at all;
/// a plan that exceeds the fleet is returned with fleet_ok = false rather
/// than rejected, so callers can rank infeasible solutions by overflow.
Evaluation evaluate(const Scenario& s, const Allocation& a);

}  // namespace mitplan
