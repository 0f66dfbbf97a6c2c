#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace ppwalk::fixtures {

// One stored constant. source is "literature", "definitional" or "computed"; computed
// entries name the oracle that recomputes them.
struct Fixture {
  std::string id;
  nlohmann::json value;
  std::string source;
  std::string reference;
  std::string oracle;
};

struct FixtureStore {
  int version = 1;
  std::vector<Fixture> fixtures;

  // Throws InvalidArgument for unknown ids.
  const Fixture& get(const std::string& id) const;
  const nlohmann::json& value(const std::string& id) const { return get(id).value; }
};

// PPWALK_FIXTURES if set, else the store shipped with the source tree.
std::string default_path();

// Throws ParseError on malformed stores, InvalidArgument when a computed entry
// lacks a known oracle or a literature entry lacks a reference.
FixtureStore load(const std::string& path);
inline FixtureStore load_default() { return load(default_path()); }

struct OracleOutcome {
  std::string id;
  std::string oracle;
  bool ok = false;
  std::string detail;  // mismatch or oracle failure description
  double seconds = 0;
};

// Recompute every computed fixture, in parallel, and compare bit-exactly.
std::vector<OracleOutcome> run_oracles(const FixtureStore& store);

// Throws FixtureMismatch naming the first failed fixture.
void require_all(const std::vector<OracleOutcome>& outcomes);

}  // namespace ppwalk::fixtures
