#include <doctest.h>

#include <functional>
#include <string>

#include "mitplan/errors.hpp"
#include "mitplan/model.hpp"
#include "mitplan/rng.hpp"
#include "support/builders.hpp"
#include "support/generators.hpp"

using namespace mitplan;
using testsupport::alloc;

namespace {

const char* kMinimalDoc = R"({
  "order": 0,
  "materials": [{"id": "k1", "per_unit": 1.0}],
  "factories": [{"id": "f1", "unit_production_cost": 2.0, "inventory": {"k1": 5}}],
  "fleet": {"truck_capacity": 5, "max_trucks": 2, "unit_trip_cost": 4}
})";

std::string field_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const ValidationError& e) {
    return e.field();
  }
  return "<no error>";
}

}  // namespace

TEST_SUITE("model") {
  TEST_CASE("loads the smallest well-formed document") {
    const Scenario s = load_scenario(kMinimalDoc);
    CHECK(s.factory_count() == 1);
    CHECK(s.material_count() == 1);
    CHECK(s.order == 0);
    CHECK(s.fleet.truck_capacity == 5.0);
  }

  TEST_CASE("materializes missing inventory entries as zero") {
    const Scenario s = load_scenario(R"({
      "order": 3,
      "materials": [{"id": "k1", "per_unit": 1}, {"id": "k2", "per_unit": 2}],
      "factories": [
        {"id": "f1", "unit_production_cost": 1, "inventory": {"k1": 4}},
        {"id": "f2", "unit_production_cost": 1, "inventory": {"k1": 9, "k2": 30}}
      ],
      "fleet": {"truck_capacity": 5, "max_trucks": 2, "unit_trip_cost": 4}
    })");
    const auto k2 = s.material_index("k2");
    REQUIRE(k2.has_value());
    CHECK(s.factories[0].inventory[*k2] == 0.0);
    CHECK(s.factories[1].inventory[*k2] == 30.0);
  }

  TEST_CASE("rejects a negative order, naming the field") {
    try {
      load_scenario(R"({"order": -1, "materials": [{"id": "k1", "per_unit": 1}],
        "factories": [{"id": "f1", "unit_production_cost": 1, "inventory": {}}],
        "fleet": {"truck_capacity": 1, "max_trucks": 0, "unit_trip_cost": 0}})");
      FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
      CHECK(e.field() == "order");
    }
  }

  TEST_CASE("rejects malformed text with a parse error") {
    CHECK_THROWS_AS(load_scenario("{not json"), ParseError);
    CHECK_THROWS_AS(load_scenario(""), ParseError);
  }

  TEST_CASE("names the offending field on invariant violations") {
    auto doc = [](const std::string& patch) {
      return R"({"order": 5, "materials": [{"id": "k1", "per_unit": 1}],)" + patch +
             R"( "fleet": {"truck_capacity": 5, "max_trucks": 2, "unit_trip_cost": 4}})";
    };
    CHECK(field_of([&] {
            load_scenario(doc(R"("factories": [
              {"id": "f1", "unit_production_cost": 1, "inventory": {"k9": 1}}],)"));
          }) == "factories[0].inventory.k9");
    CHECK(field_of([&] {
            load_scenario(doc(R"("factories": [
              {"id": "f1", "unit_production_cost": 1, "inventory": {"k1": -2}}],)"));
          }) == "factories[0].inventory.k1");
    CHECK(field_of([&] {
            load_scenario(doc(R"("factories": [
              {"id": "f1", "unit_production_cost": 1, "inventory": {}},
              {"id": "f1", "unit_production_cost": 1, "inventory": {}}],)"));
          }) == "factories[1].id");
    CHECK(field_of([&] {
            load_scenario(doc(R"("factories": [
              {"id": "f1", "unit_production_cost": -1, "inventory": {}}],)"));
          }) == "factories[0].unit_production_cost");
  }

  TEST_CASE("rejects a fractional order") {
    try {
      load_scenario(R"({"order": 10.5, "materials": [{"id": "k1", "per_unit": 1}],
        "factories": [{"id": "f1", "unit_production_cost": 1, "inventory": {}}],
        "fleet": {"truck_capacity": 1, "max_trucks": 0, "unit_trip_cost": 0}})");
      FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
      CHECK(e.field() == "order");
    }
  }

  TEST_CASE("requires at least one consumed material") {
    CHECK_THROWS_AS(load_scenario(R"({"order": 5,
      "materials": [{"id": "k1", "per_unit": 0}],
      "factories": [{"id": "f1", "unit_production_cost": 1, "inventory": {}}],
      "fleet": {"truck_capacity": 1, "max_trucks": 0, "unit_trip_cost": 0}})"),
                    ValidationError);
    CHECK_THROWS_AS(load_scenario(R"({"order": 5, "materials": [],
      "factories": [{"id": "f1", "unit_production_cost": 1, "inventory": {}}],
      "fleet": {"truck_capacity": 1, "max_trucks": 0, "unit_trip_cost": 0}})"),
                    ValidationError);
  }

  TEST_CASE("validate_allocation accepts exact splits and rejects everything else") {
    const Scenario s = testsupport::reference_instance();
    CHECK_NOTHROW(validate_allocation(s, alloc({5, 5})));
    CHECK_THROWS_WITH_AS(validate_allocation(s, alloc({5, 6})),
                         "allocation: sum 11 != order 10", ValidationError);
    CHECK_THROWS_AS(validate_allocation(s, alloc({11, -1})), ValidationError);
    CHECK_THROWS_AS(validate_allocation(s, alloc({10})), ValidationError);

    const Scenario zero = testsupport::make_scenario(0, {1}, {1, 1}, {{0}, {0}}, 1, 0, 0);
    CHECK_NOTHROW(validate_allocation(zero, alloc({0, 0})));
  }

  TEST_CASE("serialize/load round-trips random scenarios") {
    SeededRng rng(11);
    for (int trial = 0; trial < 60; ++trial) {
      const Scenario s = testsupport::random_scenario(rng, {});
      const Scenario back = load_scenario(serialize(s));
      CHECK(back == s);
    }
  }

  TEST_CASE("fuzzed mutations never yield an invalid scenario") {
    SeededRng rng(12);
    const std::string base = serialize(testsupport::reference_instance());
    int loaded = 0;
    for (int trial = 0; trial < 400; ++trial) {
      std::string text = base;
      const std::size_t edits = 1 + rng.uniform_index(4);
      for (std::size_t e = 0; e < edits; ++e) {
        const std::size_t pos = rng.uniform_index(text.size());
        switch (rng.uniform_index(3)) {
          case 0:
            text[pos] = static_cast<char>(rng.uniform_int(32, 126));
            break;
          case 1:
            text.erase(pos, 1);
            break;
          default:
            text.insert(pos, 1, static_cast<char>(rng.uniform_int(32, 126)));
            break;
        }
      }
      try {
        const Scenario s = load_scenario(text);
        // Accepted input must satisfy every invariant.
        CHECK_NOTHROW(validate_scenario(s));
        ++loaded;
      } catch (const ParseError&) {
      } catch (const ValidationError&) {
      }
    }
    // Almost every mutation should be rejected; the loop above only checks
    // that survivors are valid.
    CHECK(loaded < 200);
  }
}
