#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "zsum/group_table.hpp"

namespace zsum::detail {

// Multiplicity of every table index.
using Counts = std::vector<std::uint16_t>;

// Decides whether a multiset holds r disjoint nonempty zero-sum
// subsequences, optionally each of length at most `max_block`.
//
// The smallest element g present is either unused by some optimal family
// (drop every copy of g) or lies in a block B that is a zero-sum with
// B \ g zero-sum free; such B are enumerated in canonical order and the
// remainder recursed on with r - 1. Answers are memoized per remainder.
class DisjointSolver {
 public:
  // max_block == 0 means blocks of any length.
  DisjointSolver(const GroupTable& table, std::uint32_t max_block, std::size_t memo_limit = 4'000'000);

  bool at_least(const Counts& s, int r);
  // Blocks of a family of r, or nullopt.
  std::optional<std::vector<Counts>> family(const Counts& s, int r);
  // s has exactly k disjoint blocks; does s plus one copy of g have k + 1?
  bool extends(const Counts& s, std::uint32_t g, int k);

  std::size_t memo_size() const noexcept { return memo_.size(); }

 private:
  // Calls visit(z) for each zero-sum free z within `avail`, |z| <= limit,
  // sigma(z) = target, in canonical order, until visit returns true.
  template <class Visit>
  bool for_each_block(const Counts& avail, std::uint32_t target, std::uint32_t limit, Visit&& visit);
  template <class Visit>
  bool block_dfs(const Counts& avail, std::uint32_t target, std::uint32_t limit, std::uint32_t start,
                 std::uint32_t sum, std::uint32_t depth, Counts& z, Visit& visit);

  bool solve(Counts& s, int r, std::vector<Counts>* out);
  std::string key(const Counts& s, int r) const;

  const GroupTable& t_;
  std::uint32_t n_;
  std::uint32_t max_block_;
  std::size_t memo_limit_;
  std::size_t stride_;
  // One arena of per-depth reach tables for each nesting level of block
  // enumeration (the visitor recurses into solve()).
  std::vector<std::vector<std::uint8_t>> arenas_;
  std::vector<std::uint8_t*> levels_;
  std::unordered_map<std::string, bool> memo_;
};

}  // namespace zsum::detail
