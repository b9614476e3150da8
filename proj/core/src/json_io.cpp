#include "mitplan/json_io.hpp"

#include <charconv>
#include <cmath>

namespace mitplan {

namespace {

using nlohmann::json;

// Shortest round-trip decimal form, integral values without a trailing ".0";
// keeps CSV output byte-stable.
std::string format_number(double value) {
  char buffer[32];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

json allocation_json(const Allocation& a) {
  return json(a.quantities);
}

json front_row(const Allocation& a, double production, double transport) {
  return json{{"allocation", allocation_json(a)},
              {"pc", production},
              {"tc", transport},
              {"total", production + transport}};
}

std::string csv_row(const Allocation& a, double production, double transport) {
  std::string row;
  for (std::size_t i = 0; i < a.quantities.size(); ++i) {
    if (i > 0) row += ';';
    row += std::to_string(a.quantities[i]);
  }
  row += ',';
  row += format_number(production);
  row += ',';
  row += format_number(transport);
  row += ',';
  row += format_number(production + transport);
  row += '\n';
  return row;
}

}  // namespace

json to_json(const Scenario& s) {
  return json::parse(serialize(s));
}

json to_json(const ShortageReport& report, const Scenario& s) {
  const auto deltas = [&s](const std::vector<InventoryDelta>& list) {
    json rows = json::array();
    for (const InventoryDelta& d : list) {
      rows.push_back({{"factory", s.factories[d.factory].id},
                      {"material", s.materials[d.material].id},
                      {"amount", d.amount}});
    }
    return rows;
  };
  json affected = json::array();
  for (const std::size_t k : report.affected_materials) {
    affected.push_back(s.materials[k].id);
  }
  return json{{"shortages", deltas(report.shortages)},
              {"surpluses", deltas(report.surpluses)},
              {"transport_needed", report.transport_needed},
              {"affected_materials", std::move(affected)}};
}

json to_json(const TransportPlan& plan, const Scenario& s) {
  json shipments = json::array();
  for (const Shipment& shipment : plan.shipments) {
    shipments.push_back({{"from", s.factories[shipment.from].id},
                         {"to", s.factories[shipment.to].id},
                         {"material", s.materials[shipment.material].id},
                         {"qty", shipment.quantity}});
  }
  json routes = json::array();
  for (const RouteTrucks& route : plan.route_trucks) {
    routes.push_back({{"from", s.factories[route.from].id},
                      {"to", s.factories[route.to].id},
                      {"trucks", route.trucks}});
  }
  return json{{"shipments", std::move(shipments)},
              {"route_trucks", std::move(routes)},
              {"total_trucks", plan.total_trucks}};
}

json to_json(const CostBreakdown& cost) {
  return json{{"production", cost.production},
              {"transport", cost.transport},
              {"total", cost.total}};
}

json to_json(const Individual& ind) {
  return front_row(ind.allocation, ind.production, ind.transport);
}

json to_json(const ParetoResult& result) {
  json front = json::array();
  for (const Individual& ind : result.front) front.push_back(to_json(ind));
  json history = json::array();
  for (const double value : result.history) {
    if (std::isnan(value)) {
      history.push_back(nullptr);
    } else {
      history.push_back(value);
    }
  }
  return json{{"front", std::move(front)},
              {"best", result.best_scalarized ? to_json(*result.best_scalarized)
                                              : json(nullptr)},
              {"history", std::move(history)}};
}

json to_json(const OracleResult& result) {
  json front = json::array();
  for (const OracleEntry& entry : result.exact_front) {
    front.push_back(front_row(entry.allocation, entry.production, entry.transport));
  }
  json best = nullptr;
  if (result.best_total) {
    json allocations = json::array();
    for (const Allocation& a : result.best_allocations) {
      allocations.push_back(allocation_json(a));
    }
    best = json{{"total", *result.best_total}, {"allocations", std::move(allocations)}};
  }
  return json{{"front", std::move(front)},
              {"best", std::move(best)},
              {"evaluated_count", result.evaluated_count}};
}

std::string front_csv(const ParetoResult& result) {
  std::string out = "allocation,pc,tc,total\n";
  for (const Individual& ind : result.front) {
    out += csv_row(ind.allocation, ind.production, ind.transport);
  }
  return out;
}

std::string front_csv(const OracleResult& result) {
  std::string out = "allocation,pc,tc,total\n";
  for (const OracleEntry& entry : result.exact_front) {
    out += csv_row(entry.allocation, entry.production, entry.transport);
  }
  return out;
}

}  // namespace mitplan
