#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "mitplan/model.hpp"

namespace testsupport {

/// Compact scenario builder: materials named k1..km, factories f1..fn.
inline mitplan::Scenario make_scenario(std::int64_t order, std::vector<double> per_unit,
                                       std::vector<double> unit_costs,
                                       std::vector<std::vector<double>> inventories,
                                       double truck_capacity, std::int64_t max_trucks,
                                       double unit_trip_cost) {
  mitplan::Scenario s;
  s.order = order;
  for (std::size_t k = 0; k < per_unit.size(); ++k) {
    s.materials.push_back({"k" + std::to_string(k + 1), per_unit[k]});
  }
  for (std::size_t i = 0; i < unit_costs.size(); ++i) {
    s.factories.push_back(
        {"f" + std::to_string(i + 1), unit_costs[i], std::move(inventories[i])});
  }
  s.fleet = {truck_capacity, max_trucks, unit_trip_cost};
  mitplan::validate_scenario(s);
  return s;
}

/// The two-factory instance used across the suites: one material consumed 1:1,
/// stocks (3, 8), production costs (2, 3), trucks of capacity 5 at cost 4.
inline mitplan::Scenario reference_instance() {
  return make_scenario(10, {1}, {2, 3}, {{3}, {8}}, 5, 10, 4);
}

inline mitplan::Allocation alloc(std::initializer_list<std::int64_t> quantities) {
  return mitplan::Allocation{std::vector<std::int64_t>(quantities)};
}

}  // namespace testsupport
