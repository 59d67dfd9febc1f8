#include "symcover/cache.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "symcover/error.hpp"
#include "symcover/io.hpp"

namespace symcover {

namespace fs = std::filesystem;
using nlohmann::json;

ResultCache::ResultCache(fs::path root) : root_(std::move(root)) {
  std::error_code ec;
  fs::create_directories(root_, ec);
  if (ec) throw Error(ErrorCode::InvalidArgument, "cannot create cache directory " + root_.string() + ": " + ec.message());
}

fs::path ResultCache::entry_path(const std::string& key) const { return root_ / (hex64(stable_hash(key)) + ".json"); }

std::optional<std::string> ResultCache::lookup(const std::string& key, std::string* warning) const {
  const auto path = entry_path(key);
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    const json entry = json::parse(buffer.str());
    const auto payload = entry.at("payload").get<std::string>();
    if (entry.at("key").get<std::string>() != key) return std::nullopt;
    if (entry.at("checksum").get<std::string>() != hex64(stable_hash(payload)))
      throw std::runtime_error("checksum mismatch");
    return payload;
  } catch (const std::exception& e) {
    if (warning) *warning = "CorruptCacheEntry: " + path.string() + " ignored (" + e.what() + "); recomputing";
    return std::nullopt;
  }
}

void ResultCache::store(const std::string& key, const std::string& payload) const {
  const json entry{{"schema_version", kSchemaVersion},
                   {"key", key},
                   {"checksum", hex64(stable_hash(payload))},
                   {"payload", payload}};
  const auto path = entry_path(key);
  auto temp = path;
  temp += ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    out << entry.dump();
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write cache entry " + temp.string());
  }
  fs::rename(temp, path);
}

std::size_t ResultCache::purge() const {
  std::size_t removed = 0;
  for (const auto& item : fs::directory_iterator(root_)) {
    if (item.path().extension() == ".json" || item.path().extension() == ".tmp") {
      fs::remove(item.path());
      ++removed;
    }
  }
  return removed;
}

}  // namespace symcover
