#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "zsum/group.hpp"
#include "zsum/search.hpp"
#include "zsum/sequence.hpp"

namespace zsum {

enum class CacheStatus { exact, lower_bound };

struct CacheEntry {
  GroupSpec group;  // canonical
  Invariant invariant = Invariant::davenport;
  int r = 1;
  std::int64_t value = 0;
  CacheStatus status = CacheStatus::lower_bound;
  std::string tool_version;
  // Kept so a cached answer reproduces the original report.
  std::optional<GSequence> certificate;
  std::uint64_t nodes = 0;

  std::string key() const;
};

// "<canonical group>|<invariant>|<r>"; throws InvalidInput on a
// non-canonical group.
std::string cache_key(const GroupSpec& canonical, Invariant inv, int r);

// Exact entries never change; a lower-bound entry may be raised or upgraded
// to exact.
class ResultCache {
 public:
  ResultCache() = default;
  // A missing file is an empty cache.
  static ResultCache load(const std::filesystem::path& path);
  static ResultCache parse(std::string_view text);

  std::optional<CacheEntry> find(const GroupSpec& canonical, Invariant inv, int r) const;
  // Returns true if the stored entry changed. Throws std::logic_error when
  // an exact entry would be contradicted.
  bool put(const CacheEntry& e);
  std::size_t size() const noexcept { return entries_.size(); }

  std::string serialize() const;
  // Writes a sibling temporary file, then renames it over the target.
  void save(const std::filesystem::path& path) const;

 private:
  std::map<std::string, CacheEntry> entries_;
};

}  // namespace zsum
