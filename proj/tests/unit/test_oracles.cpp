#include "support.hpp"

#include "ppwalk/errors.hpp"
#include "ppwalk/oracles.hpp"

#include <doctest.h>

#include <algorithm>

using namespace ppwalk;

TEST_CASE("every computed fixture is reproduced by its oracle") {
  const auto outcomes = fixtures::run_oracles(test_support::store());
  CHECK(outcomes.size() >= 30);
  for (const auto& o : outcomes) {
    INFO(o.id << " via " << o.oracle << ": " << o.detail);
    CHECK(o.ok);
  }
  CHECK_NOTHROW(fixtures::require_all(outcomes));
}

TEST_CASE("store shape") {
  const auto& s = test_support::store();
  CHECK(s.version == 1);
  const auto ids = oracles::ids();
  std::vector<std::string> used;
  for (const auto& f : s.fixtures) {
    if (f.source == "computed") {
      CHECK(std::find(ids.begin(), ids.end(), f.oracle) != ids.end());
      used.push_back(f.oracle);
    } else {
      CHECK(f.oracle.empty());
      CHECK(!f.reference.empty());
    }
  }
  // One fixture per oracle and one oracle per computed fixture.
  std::sort(used.begin(), used.end());
  CHECK(std::adjacent_find(used.begin(), used.end()) == used.end());
  CHECK(used.size() == ids.size());
}

TEST_CASE("a tampered value is reported as a mismatch") {
  auto s = test_support::store();
  for (auto& f : s.fixtures)
    if (f.id == "delta.tau_1_10") f.value[1] = "-23/1";
  const auto outcomes = fixtures::run_oracles(s);
  const auto bad = std::find_if(outcomes.begin(), outcomes.end(), [](const auto& o) { return !o.ok; });
  REQUIRE(bad != outcomes.end());
  CHECK(bad->id == "delta.tau_1_10");
  try {
    fixtures::require_all(outcomes);
    FAIL("expected FixtureMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::FixtureMismatch);
    CHECK(std::string(e.what()).find("delta.tau_1_10") != std::string::npos);
  }
}

TEST_CASE("unknown oracle ids are rejected") {
  CHECK_THROWS_AS(oracles::evaluate("no_such_oracle"), std::out_of_range);
  CHECK_THROWS_AS(fixtures::load("/nonexistent/fixtures.json"), Error);
}

TEST_CASE("literature constants") {
  const auto& f0 = test_support::fixture("f0.displayed");
  CHECK(f0.at("2") == "-4/1");
  CHECK(f0.at("8") == "-64/1");
  const auto& full = test_support::fixture("f0.a1_a8");
  for (const auto& [n, v] : f0.items()) CHECK(full.at(std::stoi(n) - 1) == v);
}
