#include <limits>

#include "zsum/detail/disjoint_solver.hpp"
#include "zsum/errors.hpp"
#include "zsum/group_table.hpp"
#include "zsum/search.hpp"

namespace zsum {

namespace {

std::optional<DisjointFamily> disjoint_family(const GSequence& s, int r, bool short_blocks) {
  if (r < 1) throw InvalidInput("r must be at least 1");
  auto table = GroupTable::shared(s.group());
  detail::Counts counts(table->size(), 0);
  for (const auto& [e, k] : s.entries()) {
    if (k > std::numeric_limits<std::uint16_t>::max()) throw InvalidInput("multiplicity too large");
    counts[table->index(e)] = static_cast<std::uint16_t>(k);
  }
  detail::DisjointSolver solver(*table, short_blocks ? table->exponent() : 0);
  auto blocks = solver.family(counts, r);
  if (!blocks) return std::nullopt;
  std::vector<Witness> members;
  members.reserve(blocks->size());
  for (const auto& b : *blocks) {
    GSequence part(s.group());
    for (std::uint32_t i = 0; i < table->size(); ++i)
      if (b[i]) part.insert(table->element(i), b[i]);
    members.push_back(certify_zero_sum(s, std::move(part)));
  }
  return DisjointFamily(s, std::move(members));
}

}  // namespace

std::optional<DisjointFamily> find_disjoint_zero_sums(const GSequence& s, int r) {
  return disjoint_family(s, r, false);
}

std::optional<DisjointFamily> find_disjoint_short_zero_sums(const GSequence& s, int r) {
  return disjoint_family(s, r, true);
}

}  // namespace zsum
