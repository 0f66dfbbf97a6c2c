#pragma once

#include <json.hpp>

#include <string>
#include <vector>

// Brute-force recomputation of fixture values. Nothing here calls into the
// main library: arithmetic is boost::multiprecision throughout, with its own
// series, hull and characteristic polynomial code.
namespace ppwalk::oracles {

// Identifiers accepted by evaluate().
std::vector<std::string> ids();

// Recompute the value for `id`. Throws std::out_of_range for unknown ids and
// std::runtime_error when two internal derivations disagree.
nlohmann::json evaluate(const std::string& id);

}  // namespace ppwalk::oracles
