#include "mitplan/model.hpp"

#include <cmath>
#include <json.hpp>
#include <limits>
#include <unordered_map>
#include <unordered_set>

#include "mitplan/errors.hpp"

namespace mitplan {

namespace {

using nlohmann::json;

bool representable_count(double v) {
  return std::isfinite(v) && std::floor(v) == v &&
         std::abs(v) <= 9007199254740992.0;  // 2^53, exact integer range
}

std::int64_t require_int(const json& j, const std::string& field) {
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_number_float() && representable_count(j.get<double>())) {
    return static_cast<std::int64_t>(j.get<double>());
  }
  throw ValidationError(field, "expected an integer");
}

double require_number(const json& j, const std::string& field) {
  if (!j.is_number()) throw ValidationError(field, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ValidationError(field, "must be finite");
  return v;
}

std::string require_string(const json& j, const std::string& field) {
  if (!j.is_string() || j.get<std::string>().empty()) {
    throw ValidationError(field, "expected a non-empty string");
  }
  return j.get<std::string>();
}

const json& require_member(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw ValidationError(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ValidationError(where + "." + key, "missing field");
  return *it;
}

}  // namespace

std::optional<std::size_t> Scenario::factory_index(std::string_view id) const {
  for (std::size_t i = 0; i < factories.size(); ++i) {
    if (factories[i].id == id) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> Scenario::material_index(std::string_view id) const {
  for (std::size_t k = 0; k < materials.size(); ++k) {
    if (materials[k].id == id) return k;
  }
  return std::nullopt;
}

Scenario load_scenario(std::string_view raw) {
  json doc;
  try {
    doc = json::parse(raw);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("scenario is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("", "scenario root must be an object");

  Scenario s;
  s.order = require_int(require_member(doc, "order", "scenario"), "order");
  if (s.order < 0) throw ValidationError("order", "must be >= 0");

  const json& materials = require_member(doc, "materials", "scenario");
  if (!materials.is_array()) throw ValidationError("materials", "expected an array");
  for (std::size_t k = 0; k < materials.size(); ++k) {
    const std::string where = "materials[" + std::to_string(k) + "]";
    Material m;
    m.id = require_string(require_member(materials[k], "id", where), where + ".id");
    m.per_unit = require_number(require_member(materials[k], "per_unit", where),
                                where + ".per_unit");
    s.materials.push_back(std::move(m));
  }

  const json& factories = require_member(doc, "factories", "scenario");
  if (!factories.is_array()) throw ValidationError("factories", "expected an array");
  for (std::size_t i = 0; i < factories.size(); ++i) {
    const std::string where = "factories[" + std::to_string(i) + "]";
    Factory f;
    f.id = require_string(require_member(factories[i], "id", where), where + ".id");
    f.unit_production_cost =
        require_number(require_member(factories[i], "unit_production_cost", where),
                       where + ".unit_production_cost");
    // Missing inventory entries read as 0 and are materialized here.
    f.inventory.assign(s.materials.size(), 0.0);
    const json& inv = require_member(factories[i], "inventory", where);
    if (!inv.is_object()) throw ValidationError(where + ".inventory", "expected an object");
    for (auto it = inv.begin(); it != inv.end(); ++it) {
      const std::string field = where + ".inventory." + it.key();
      auto k = s.material_index(it.key());
      if (!k) throw ValidationError(field, "unknown material id");
      f.inventory[*k] = require_number(it.value(), field);
    }
    s.factories.push_back(std::move(f));
  }

  const json& fleet = require_member(doc, "fleet", "scenario");
  s.fleet.truck_capacity =
      require_number(require_member(fleet, "truck_capacity", "fleet"), "fleet.truck_capacity");
  s.fleet.max_trucks =
      require_int(require_member(fleet, "max_trucks", "fleet"), "fleet.max_trucks");
  s.fleet.unit_trip_cost =
      require_number(require_member(fleet, "unit_trip_cost", "fleet"), "fleet.unit_trip_cost");

  validate_scenario(s);
  return s;
}

void validate_scenario(const Scenario& s) {
  if (s.order < 0) throw ValidationError("order", "must be >= 0");
  if (s.materials.empty()) throw ValidationError("materials", "at least one material required");
  if (s.factories.empty()) throw ValidationError("factories", "at least one factory required");

  std::unordered_set<std::string> seen;
  bool any_consumed = false;
  for (std::size_t k = 0; k < s.materials.size(); ++k) {
    const std::string where = "materials[" + std::to_string(k) + "]";
    const Material& m = s.materials[k];
    if (m.id.empty()) throw ValidationError(where + ".id", "must be non-empty");
    if (!seen.insert(m.id).second) throw ValidationError(where + ".id", "duplicate material id");
    if (!(m.per_unit >= 0.0)) throw ValidationError(where + ".per_unit", "must be >= 0");
    any_consumed = any_consumed || m.per_unit > 0.0;
  }
  if (!any_consumed) {
    throw ValidationError("materials", "at least one material must have per_unit > 0");
  }

  seen.clear();
  for (std::size_t i = 0; i < s.factories.size(); ++i) {
    const std::string where = "factories[" + std::to_string(i) + "]";
    const Factory& f = s.factories[i];
    if (f.id.empty()) throw ValidationError(where + ".id", "must be non-empty");
    if (!seen.insert(f.id).second) throw ValidationError(where + ".id", "duplicate factory id");
    if (!(f.unit_production_cost >= 0.0)) {
      throw ValidationError(where + ".unit_production_cost", "must be >= 0");
    }
    if (f.inventory.size() != s.materials.size()) {
      throw ValidationError(where + ".inventory", "one stock entry per declared material required");
    }
    for (std::size_t k = 0; k < f.inventory.size(); ++k) {
      if (!(f.inventory[k] >= 0.0)) {
        throw ValidationError(where + ".inventory." + s.materials[k].id, "must be >= 0");
      }
    }
  }

  if (!(s.fleet.truck_capacity > 0.0)) {
    throw ValidationError("fleet.truck_capacity", "must be > 0");
  }
  if (s.fleet.max_trucks < 0) throw ValidationError("fleet.max_trucks", "must be >= 0");
  if (!(s.fleet.unit_trip_cost >= 0.0)) {
    throw ValidationError("fleet.unit_trip_cost", "must be >= 0");
  }
}

void validate_allocation(const Scenario& s, const Allocation& a) {
  if (a.quantities.size() != s.factory_count()) {
    throw ValidationError("allocation", "expected one entry per factory (" +
                                            std::to_string(s.factory_count()) + ", got " +
                                            std::to_string(a.quantities.size()) + ")");
  }
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < a.quantities.size(); ++i) {
    if (a.quantities[i] < 0) {
      throw ValidationError("allocation[" + std::to_string(i) + "]", "negative entry");
    }
    sum += a.quantities[i];
  }
  if (sum != s.order) {
    throw ValidationError("allocation", "sum " + std::to_string(sum) + " != order " +
                                            std::to_string(s.order));
  }
}

std::string serialize(const Scenario& s) {
  json doc;
  doc["order"] = s.order;
  doc["materials"] = json::array();
  for (const Material& m : s.materials) {
    doc["materials"].push_back({{"id", m.id}, {"per_unit", m.per_unit}});
  }
  doc["factories"] = json::array();
  for (const Factory& f : s.factories) {
    json inv = json::object();
    for (std::size_t k = 0; k < f.inventory.size(); ++k) {
      inv[s.materials[k].id] = f.inventory[k];
    }
    doc["factories"].push_back({{"id", f.id},
                                {"unit_production_cost", f.unit_production_cost},
                                {"inventory", std::move(inv)}});
  }
  doc["fleet"] = {{"truck_capacity", s.fleet.truck_capacity},
                  {"max_trucks", s.fleet.max_trucks},
                  {"unit_trip_cost", s.fleet.unit_trip_cost}};
  return doc.dump(2);
}

}  // namespace mitplan
