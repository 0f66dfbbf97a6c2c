#pragma once

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace ppwalk::cache {

struct CacheKey {
  std::string kind;   // "slopes", "oc", ...
  std::string level;  // empty when not applicable
  long k = 0;
  std::string op;
  std::size_t prec = 0;
  std::string version;  // code version; entries from other versions never match

  std::string str() const;
  std::string filename() const;  // "<kind>-<fnv1a hex>.json"
};

std::uint64_t fnv1a(const std::string& bytes);

// One JSON file per entry under a directory. Writes go to a temporary file
// that is renamed into place; unreadable or mismatching entries are removed.
class Cache {
 public:
  explicit Cache(std::filesystem::path dir);

  // PPWALK_CACHE_DIR, if set and nonempty.
  static std::optional<std::filesystem::path> dir_from_env();

  const std::filesystem::path& dir() const { return dir_; }

  std::optional<nlohmann::json> get(const CacheKey& key);
  void put(const CacheKey& key, const nlohmann::json& payload);

  std::size_t evicted() const { return evicted_; }

 private:
  std::filesystem::path dir_;
  std::size_t evicted_ = 0;
};

}  // namespace ppwalk::cache
