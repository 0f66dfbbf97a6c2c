#include "ppwalk/cache.hpp"

#include "ppwalk/errors.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include <unistd.h>

namespace ppwalk::cache {

using nlohmann::json;
namespace fs = std::filesystem;

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string CacheKey::str() const {
  std::ostringstream s;
  s << kind << '|' << level << '|' << k << '|' << op << '|' << prec << '|' << version;
  return s.str();
}

std::string CacheKey::filename() const {
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(fnv1a(str())));
  return kind + "-" + hex + ".json";
}

Cache::Cache(fs::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) throw Error(ErrorCode::InvalidArgument, "cannot create cache directory " + dir_.string());
}

std::optional<fs::path> Cache::dir_from_env() {
  if (const char* env = std::getenv("PPWALK_CACHE_DIR"); env && *env) return fs::path(env);
  return std::nullopt;
}

std::optional<json> Cache::get(const CacheKey& key) {
  const fs::path path = dir_ / key.filename();
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  try {
    const json entry = json::parse(in);
    const std::string payload = entry.at("payload").dump();
    if (entry.at("key").get<std::string>() == key.str() &&
        entry.at("digest").get<std::string>() == std::to_string(fnv1a(payload)))
      return entry.at("payload");
  } catch (const json::exception&) {
  }
  in.close();
  std::error_code ec;
  fs::remove(path, ec);
  ++evicted_;
  return std::nullopt;
}

void Cache::put(const CacheKey& key, const json& payload) {
  const auto now = std::chrono::system_clock::now().time_since_epoch();
  const json entry = {{"key", key.str()},
                      {"digest", std::to_string(fnv1a(payload.dump()))},
                      {"created_at", std::chrono::duration_cast<std::chrono::seconds>(now).count()},
                      {"payload", payload}};
  std::random_device rd;
  const fs::path target = dir_ / key.filename();
  const fs::path tmp = dir_ / (key.filename() + ".tmp." + std::to_string(::getpid()) + "." + std::to_string(rd()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write cache entry " + tmp.string());
    out << entry.dump();
    if (!out.flush()) throw Error(ErrorCode::InvalidArgument, "short write to " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorCode::InvalidArgument, "cannot publish cache entry " + target.string());
  }
}

}  // namespace ppwalk::cache
