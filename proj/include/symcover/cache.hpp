#pragma once

#include <filesystem>
#include <optional>
#include <string>

namespace symcover {

/// Content-addressed store of serialized reports. Entries are written to a
/// temporary file and renamed into place.
class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path root);

  const std::filesystem::path& root() const { return root_; }

  /// The stored payload, byte-identical to what was stored. A damaged entry
  /// is reported through `warning` (CorruptCacheEntry) and treated as a miss.
  std::optional<std::string> lookup(const std::string& key, std::string* warning = nullptr) const;
  void store(const std::string& key, const std::string& payload) const;
  /// Removes every entry; returns how many were deleted.
  std::size_t purge() const;

  std::filesystem::path entry_path(const std::string& key) const;

 private:
  std::filesystem::path root_;
};

}  // namespace symcover
