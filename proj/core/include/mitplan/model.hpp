#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mitplan {

/// One raw material kind and how much of it a single product unit consumes.
struct Material {
  std::string id;
  double per_unit = 0.0;

  bool operator==(const Material&) const = default;
};

/// A production site. `inventory` is dense, aligned with Scenario::materials;
/// the loader materializes missing entries as 0.
struct Factory {
  std::string id;
  double unit_production_cost = 0.0;
  std::vector<double> inventory;

  bool operator==(const Factory&) const = default;
};

/// The shared truck pool. All trucks are identical: one capacity and one
/// per-trip cost apply to every route.
struct Fleet {
  double truck_capacity = 1.0;
  std::int64_t max_trucks = 0;
  double unit_trip_cost = 0.0;

  bool operator==(const Fleet&) const = default;
};

/// A full problem instance: the order to split, the recipe, the factory
/// network with its stocks, and the fleet that moves material between sites.
struct Scenario {
  std::int64_t order = 0;
  std::vector<Material> materials;
  std::vector<Factory> factories;
  Fleet fleet;

  std::size_t factory_count() const { return factories.size(); }
  std::size_t material_count() const { return materials.size(); }

  std::optional<std::size_t> factory_index(std::string_view id) const;
  std::optional<std::size_t> material_index(std::string_view id) const;

  bool operator==(const Scenario&) const = default;
};

/// Per-factory split of the total order. Entries are whole products; a valid
/// allocation is non-negative and sums to Scenario::order exactly.
struct Allocation {
  std::vector<std::int64_t> quantities;

  bool operator==(const Allocation&) const = default;
  auto operator<=>(const Allocation&) const = default;
};

/// Parses and validates a scenario document (see the JSON schema in the
/// README). Throws ParseError on malformed text and ValidationError, naming
/// the offending field, on invariant violations.
Scenario load_scenario(std::string_view raw);

/// Re-checks every model invariant on an in-memory scenario. load_scenario
/// calls this; it is public so programmatically built scenarios can be
/// validated the same way.
void validate_scenario(const Scenario& s);

/// Throws ValidationError unless `a` has one entry per factory, no negative
/// entries, and sums exactly to the scenario order.
void validate_allocation(const Scenario& s, const Allocation& a);

/// Canonical JSON form; load_scenario(serialize(s)) == s for any validated s.
std::string serialize(const Scenario& s);

}  // namespace mitplan
