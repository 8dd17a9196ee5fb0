#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"
#include "zsum/bounds.hpp"
#include "zsum/sequence.hpp"

namespace zsum {

enum class OutputFormat { table, json, csv };
OutputFormat parse_format(std::string_view name);

std::string_view tool_version();

// The CLI report: a BoundReport plus how it was obtained.
struct Report {
  BoundReport bounds;
  std::optional<GSequence> certificate;
  std::int64_t runtime_ms = 0;
  std::uint64_t nodes = 0;
};

// {invariant, group, canonical_group, r, lower, upper, exact?, sources[],
//  certificate?, runtime_ms, nodes}
nlohmann::ordered_json report_json(const Report& rep);
std::string render_report(const Report& rep, OutputFormat fmt);

}  // namespace zsum
