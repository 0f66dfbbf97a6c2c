#include "ppwalk/fixtures.hpp"

#include "ppwalk/errors.hpp"
#include "ppwalk/oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <future>

#ifndef PPWALK_FIXTURE_FILE
#define PPWALK_FIXTURE_FILE "fixtures/fixtures.json"
#endif

namespace ppwalk::fixtures {

using nlohmann::json;

const Fixture& FixtureStore::get(const std::string& id) const {
  for (const auto& f : fixtures)
    if (f.id == id) return f;
  throw Error(ErrorCode::InvalidArgument, "no fixture '" + id + "'");
}

std::string default_path() {
  if (const char* env = std::getenv("PPWALK_FIXTURES"); env && *env) return env;
  return PPWALK_FIXTURE_FILE;
}

FixtureStore load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open fixture store " + path);
  FixtureStore store;
  try {
    const json doc = json::parse(in);
    store.version = doc.at("version").get<int>();
    for (const auto& f : doc.at("fixtures"))
      store.fixtures.push_back({f.at("id").get<std::string>(), f.at("value"), f.at("source").get<std::string>(),
                                f.value("reference", std::string()), f.value("oracle", std::string())});
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
  if (store.version != 1) throw Error(ErrorCode::ParseError, "unsupported fixture store version");

  const auto known = oracles::ids();
  for (const auto& f : store.fixtures) {
    if (f.source == "computed") {
      if (std::find(known.begin(), known.end(), f.oracle) == known.end())
        throw Error(ErrorCode::InvalidArgument, f.id + ": unknown oracle '" + f.oracle + "'");
    } else if (f.source == "literature") {
      if (f.reference.empty()) throw Error(ErrorCode::InvalidArgument, f.id + ": literature entry without reference");
    } else if (f.source != "definitional") {
      throw Error(ErrorCode::InvalidArgument, f.id + ": unknown source '" + f.source + "'");
    }
  }
  return store;
}

std::vector<OracleOutcome> run_oracles(const FixtureStore& store) {
  std::vector<std::future<OracleOutcome>> jobs;
  for (const auto& f : store.fixtures) {
    if (f.source != "computed") continue;
    jobs.push_back(std::async(std::launch::async, [&f] {
      OracleOutcome out{f.id, f.oracle, false, "", 0};
      const auto t0 = std::chrono::steady_clock::now();
      try {
        const json got = oracles::evaluate(f.oracle);
        out.ok = got == f.value;
        if (!out.ok) out.detail = "oracle gives " + got.dump() + ", store has " + f.value.dump();
      } catch (const std::exception& e) {
        out.detail = e.what();
      }
      out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      return out;
    }));
  }
  std::vector<OracleOutcome> outcomes;
  for (auto& j : jobs) outcomes.push_back(j.get());
  return outcomes;
}

void require_all(const std::vector<OracleOutcome>& outcomes) {
  for (const auto& o : outcomes)
    if (!o.ok) throw Error(ErrorCode::FixtureMismatch, o.id + " (" + o.oracle + "): " + o.detail);
}

}  // namespace ppwalk::fixtures
