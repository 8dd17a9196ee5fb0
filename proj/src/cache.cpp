#include "zsum/cache.hpp"

#include <fstream>
#include <stdexcept>

#include "json.hpp"
#include "zsum/errors.hpp"
#include "zsum/sequence_io.hpp"

namespace zsum {

namespace {

std::string_view status_name(CacheStatus s) { return s == CacheStatus::exact ? "exact" : "lower-bound"; }

CacheStatus parse_status(std::string_view s) {
  if (s == "exact") return CacheStatus::exact;
  if (s == "lower-bound") return CacheStatus::lower_bound;
  throw InvalidInput("unknown cache status '" + std::string(s) + "'");
}

}  // namespace

std::string cache_key(const GroupSpec& canonical, Invariant inv, int r) {
  if (!is_canonical(canonical)) throw InvalidInput("cache keys need a canonical group");
  return to_string(canonical) + "|" + std::string(invariant_name(inv)) + "|" + std::to_string(r);
}

std::string CacheEntry::key() const { return cache_key(group, invariant, r); }

ResultCache ResultCache::load(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) return {};
  return parse(read_text_file(path));
}

ResultCache ResultCache::parse(std::string_view text) {
  ResultCache c;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("cache file is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw InvalidInput("cache file must be a JSON object");
  try {
    for (const auto& [key, v] : j.items()) {
      CacheEntry e;
      e.group = parse_group(v.at("group").get<std::string>());
      e.invariant = parse_invariant(v.at("invariant").get<std::string>());
      e.r = v.at("r").get<int>();
      e.value = v.at("value").get<std::int64_t>();
      e.status = parse_status(v.at("status").get<std::string>());
      e.tool_version = v.at("tool-version").get<std::string>();
      if (v.contains("certificate")) e.certificate = to_gsequence(sequence_from_json(v["certificate"]));
      if (v.contains("nodes")) e.nodes = v["nodes"].get<std::uint64_t>();
      if (e.key() != key) throw InvalidInput("cache key '" + key + "' does not match its entry");
      c.entries_.emplace(key, std::move(e));
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed cache entry: ") + e.what());
  }
  return c;
}

std::optional<CacheEntry> ResultCache::find(const GroupSpec& canonical, Invariant inv, int r) const {
  auto it = entries_.find(cache_key(canonical, inv, r));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

bool ResultCache::put(const CacheEntry& e) {
  const std::string key = e.key();
  auto it = entries_.find(key);
  if (it == entries_.end()) {
    entries_.emplace(key, e);
    return true;
  }
  CacheEntry& old = it->second;
  if (old.status == CacheStatus::exact) {
    if (e.status == CacheStatus::exact && e.value != old.value)
      throw std::logic_error("cache entry " + key + " is exact at " + std::to_string(old.value) + ", new value " +
                             std::to_string(e.value));
    if (e.status == CacheStatus::lower_bound && e.value > old.value)
      throw std::logic_error("lower bound " + std::to_string(e.value) + " exceeds exact cache entry " + key);
    return false;
  }
  if (e.status == CacheStatus::exact) {
    if (e.value < old.value)
      throw std::logic_error("exact value " + std::to_string(e.value) + " below cached lower bound for " + key);
    old = e;
    return true;
  }
  if (e.value > old.value) {
    old = e;
    return true;
  }
  return false;
}

std::string ResultCache::serialize() const {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [key, e] : entries_) {
    nlohmann::ordered_json v;
    v["group"] = to_string(e.group);
    v["invariant"] = std::string(invariant_name(e.invariant));
    v["r"] = e.r;
    v["value"] = e.value;
    v["status"] = std::string(status_name(e.status));
    v["tool-version"] = e.tool_version;
    if (e.certificate) v["certificate"] = to_json(to_document(*e.certificate));
    v["nodes"] = e.nodes;
    j[key] = std::move(v);
  }
  return j.dump(2) + "\n";
}

void ResultCache::save(const std::filesystem::path& path) const {
  auto tmp = path;
  tmp += ".tmp";
  write_text_file(tmp, serialize());
  std::filesystem::rename(tmp, path);
}

}  // namespace zsum
