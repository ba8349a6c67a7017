#include <doctest.h>

#include "coxalg/specfile.hpp"
#include "test_support.hpp"

using namespace coxalg;

namespace {

const char* kChainSpec = R"json({
  "schema": 1,
  "group": { "free_rank": 1, "moduli": [2] },
  "order": { "mode": "functional", "functionals": [[1]] },
  "variables": [
    { "name": "x", "degree": "(1;1~2)" },
    { "name": "y", "degree": "(1;0~2)" },
    { "name": "z", "degree": "(2;1~2)" }
  ],
  "polynomials": { "f": "x^3*y^3*z" },
  "ideals": {
    "chain": { "generators": ["x", "y^2", "z^3"] },
    "ann": { "annihilator_of": "f" },
    "jac": { "ring": "Q", "generators": ["X^4", "Y^4", "Z^2"] }
  }
})json";

}  // namespace

TEST_CASE("parsing a full spec file") {
  const RingSpecFile file = parse_ring_spec(kChainSpec);
  CHECK(file.ring->var_count() == 3);
  CHECK(file.ring->group().free_rank == 1);
  CHECK(file.ring->order().mode == OrderSpec::Mode::functional);
  CHECK(file.polynomials.count("f") == 1);
  REQUIRE(file.ideals.count("chain") == 1);
  CHECK(file.ideals.at("chain").generators.size() == 3);
  REQUIRE(file.ideals.count("ann") == 1);
  CHECK(file.ideals.at("ann").apolar_form.has_value());
  CHECK(file.ideals.at("ann").ring->role() == GradedRingSpec::Role::Q);
  REQUIRE(file.ideals.count("jac") == 1);
  CHECK(file.ideals.at("jac").ring->role() == GradedRingSpec::Role::Q);
  CHECK(to_string(file.ideals.at("jac").generators[0]) == "X^4");
}

TEST_CASE("serialization round-trips") {
  const RingSpecFile file = parse_ring_spec(kChainSpec);
  const std::string json = ring_spec_to_json(file);
  const RingSpecFile again = parse_ring_spec(json);
  CHECK(same_ring(file.ring, again.ring));
  CHECK(poly_eq(file.polynomials.at("f"), again.polynomials.at("f")));
  CHECK(again.ideals.at("chain").generators.size() == 3);
  CHECK(again.ideals.at("ann").apolar_form.has_value());
  CHECK(ring_spec_to_json(again) == json);
}

TEST_CASE("schema violations are reported as spec errors") {
  CHECK_THROWS_AS(parse_ring_spec("{"), spec_error);
  CHECK_THROWS_AS(parse_ring_spec(R"json({"schema": 2})json"), spec_error);
  CHECK_THROWS_AS(parse_ring_spec(R"json({"schema": 1, "group": {"free_rank": 1}})json"), spec_error);
  const char* bad_poly = R"json({
    "schema": 1,
    "group": { "free_rank": 1, "moduli": [] },
    "variables": [ { "name": "x", "degree": "(1)" } ],
    "polynomials": { "f": "x + w" }
  })json";
  CHECK_THROWS_AS(parse_ring_spec(bad_poly), spec_error);
  const char* bad_modulus = R"json({
    "schema": 1,
    "group": { "free_rank": 0, "moduli": [1] },
    "variables": [ { "name": "x", "degree": "(;0~1)" } ]
  })json";
  CHECK_THROWS_AS(parse_ring_spec(bad_modulus), spec_error);
  const char* duplicate_names = R"json({
    "schema": 1,
    "group": { "free_rank": 1, "moduli": [] },
    "variables": [
      { "name": "x", "degree": "(1)" },
      { "name": "x", "degree": "(1)" }
    ]
  })json";
  CHECK_THROWS_AS(parse_ring_spec(duplicate_names), spec_error);
  const char* missing_ref = R"json({
    "schema": 1,
    "group": { "free_rank": 1, "moduli": [] },
    "variables": [ { "name": "x", "degree": "(1)" } ],
    "ideals": { "I": { "annihilator_of": "nope" } }
  })json";
  CHECK_THROWS_AS(parse_ring_spec(missing_ref), spec_error);
}

TEST_CASE("functional entries accept exact rational strings") {
  const char* text = R"json({
    "schema": 1,
    "group": { "free_rank": 2, "moduli": [] },
    "order": { "mode": "functional", "functionals": [["1/2", 1]] },
    "variables": [
      { "name": "x", "degree": "(2,0)" },
      { "name": "y", "degree": "(0,1)" }
    ]
  })json";
  const RingSpecFile file = parse_ring_spec(text);
  CHECK(file.ring->order().functionals[0](0) == rat(1, 2));
}
