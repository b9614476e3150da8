#pragma once

#include <json.hpp>
#include <string>

#include "mitplan/cost.hpp"
#include "mitplan/feasibility.hpp"
#include "mitplan/model.hpp"
#include "mitplan/moea.hpp"
#include "mitplan/oracle.hpp"
#include "mitplan/transport.hpp"

namespace mitplan {

/// JSON views of the planner's result types. Factory and material indices
/// are rendered as their scenario ids, and every list is emitted in a fixed
/// sorted order, so equal values always serialize to equal bytes.

nlohmann::json to_json(const Scenario& s);

nlohmann::json to_json(const ShortageReport& report, const Scenario& s);

nlohmann::json to_json(const TransportPlan& plan, const Scenario& s);

nlohmann::json to_json(const CostBreakdown& cost);

nlohmann::json to_json(const Individual& ind);

nlohmann::json to_json(const ParetoResult& result);

nlohmann::json to_json(const OracleResult& result);

/// Front rows as CSV: header `allocation,pc,tc,total`, allocation entries
/// joined with semicolons.
std::string front_csv(const ParetoResult& result);
std::string front_csv(const OracleResult& result);

}  // namespace mitplan
