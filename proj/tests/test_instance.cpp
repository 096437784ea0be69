#include <doctest.h>

#include <sstream>

#include "cflp/instance.hpp"
#include "helpers.hpp"

using namespace cflp;

TEST_CASE("parse minimal well-formed file") {
  const std::string text =
      "2 2\n"
      "10 10\n"
      "5 5\n"
      "3 3\n"
      "1 2\n"
      "2 1\n"
      "1\n"
      "1 2\n";
  const Instance inst = parse_instance_text(text);
  CHECK(inst.num_customers() == 2);
  CHECK(inst.num_facilities() == 2);
  CHECK(inst.incompat_pairs().size() == 1);
  CHECK(inst.incompat_pairs()[0] == std::pair<int, int>{0, 1});
  CHECK(inst.demand(0) == 3);
  CHECK(inst.capacity(1) == 5);
  CHECK(inst.ship_cost(0, 1) == 2.0);
}

TEST_CASE("comments and flexible whitespace are accepted") {
  const std::string text =
      "# tiny instance\n"
      "2 2   # header\n"
      "10 10\n 5   5\n3 3\n1 2\n2 1\n0\n";
  const Instance inst = parse_instance_text(text);
  CHECK(inst.incompat_pairs().empty());
}

TEST_CASE("duplicate pair is rejected even when flipped") {
  const std::string text = "2 2\n10 10\n5 5\n3 3\n1 2\n2 1\n2\n2 1\n1 2\n";
  CHECK_THROWS_WITH_AS(parse_instance_text(text), doctest::Contains("duplicate"), ParseError);
}

TEST_CASE("non-positive demand is rejected") {
  const std::string text = "2 2\n10 10\n5 5\n0 3\n1 2\n2 1\n0\n";
  CHECK_THROWS_WITH_AS(parse_instance_text(text), doctest::Contains("demand"), ParseError);
}

TEST_CASE("parser reports the offending line") {
  const std::string text = "2 2\n10 10\n5 x\n";
  try {
    parse_instance_text(text);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("errors cover malformed header, count mismatch, bad pair index") {
  CHECK_THROWS_AS(parse_instance_text("0 2\n"), ParseError);
  CHECK_THROWS_AS(parse_instance_text("2 2\n10 10\n5 5\n3 3\n1 2\n"), ParseError);  // matrix cut short
  CHECK_THROWS_AS(parse_instance_text("2 2\n10 10\n5 5\n3 3\n1 2\n2 1\n1\n1 3\n"), ParseError);
  CHECK_THROWS_AS(parse_instance_text("2 2\n10 10\n5 5\n3 3\n1 2\n2 1\n1\n1 1\n"), ParseError);
  CHECK_THROWS_AS(parse_instance_text("2 2\n10 10\n5 5\n3 3\n1 -2\n2 1\n0\n"), ParseError);
}

TEST_CASE("serialize and parse round-trip") {
  GeneratorParams params;
  params.n = 23;
  params.m = 7;
  params.incompat_density = 0.15;
  for (std::uint64_t seed : {1ull, 2ull, 99ull}) {
    const Instance inst = generate_instance(seed, params);
    const Instance back = parse_instance_text(serialize_instance_text(inst));
    CHECK(back == inst);
  }
}

TEST_CASE("feasibility bound diagnostic") {
  SUBCASE("holds with slack") {
    const Instance inst = test::make_2x2();
    const auto r = validate_feasibility_bound(inst);
    CHECK(r.total_demand == 6);
    CHECK(r.total_capacity == 10);
    CHECK(r.holds);
  }
  SUBCASE("fails when capacity is short") {
    const Instance inst({3, 3}, {5}, {10.0}, {1.0, 2.0}, {});
    CHECK_FALSE(validate_feasibility_bound(inst).holds);
  }
  SUBCASE("aggregate check stays silent about incompatibilities") {
    // capacity covers demand, but the pair forces two facilities open
    const Instance inst({3, 3}, {20, 4}, {1.0, 1.0}, {1.0, 2.0, 2.0, 1.0}, {{0, 1}});
    CHECK(validate_feasibility_bound(inst).holds);
  }
}

TEST_CASE("generator is deterministic and honors density") {
  GeneratorParams params;
  params.n = 6;
  params.m = 3;
  params.incompat_density = 0.1;
  const Instance a = generate_instance(1, params);
  const Instance b = generate_instance(1, params);
  CHECK(a == b);

  params.incompat_density = 0.0;
  CHECK(generate_instance(5, params).incompat_pairs().empty());
}

TEST_CASE("generator keeps aggregate slack of 1.2") {
  GeneratorParams params;
  params.n = 40;
  params.m = 4;
  params.capacity = {10, 20};  // far too small before the lift
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Instance inst = generate_instance(seed, params);
    CHECK(5 * inst.total_capacity() >= 6 * inst.total_demand());
  }
}

TEST_CASE("wlp01-scale generation passes the validator") {
  GeneratorParams params;
  params.n = 115;
  params.m = 50;
  params.incompat_density = 0.05;
  const Instance inst = generate_instance(7, params);
  CHECK(inst.num_customers() == 115);
  CHECK(inst.num_facilities() == 50);
  CHECK(validate_feasibility_bound(inst).holds);
  // parses back cleanly
  const Instance back = parse_instance_text(serialize_instance_text(inst));
  CHECK(back == inst);
}
