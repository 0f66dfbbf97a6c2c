#pragma once

#include "ppwalk/fixtures.hpp"
#include "ppwalk/rational.hpp"

#include <vector>

namespace test_support {

inline const ppwalk::fixtures::FixtureStore& store() {
  static const auto s = ppwalk::fixtures::load_default();
  return s;
}

inline const nlohmann::json& fixture(const std::string& id) { return store().value(id); }

inline ppwalk::Rational rational(const nlohmann::json& j) { return ppwalk::parse_rational(j.get<std::string>()); }

inline std::vector<ppwalk::Rational> rationals(const nlohmann::json& j) {
  std::vector<ppwalk::Rational> out;
  for (const auto& x : j) out.push_back(rational(x));
  return out;
}

}  // namespace test_support
