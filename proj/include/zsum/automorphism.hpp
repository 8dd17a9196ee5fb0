#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "zsum/group_table.hpp"

namespace zsum {

// A subgroup K of Aut(G), stored as index permutations of a GroupTable.
// If Aut(G) has more than `max_size` elements, K is the pointwise
// stabilizer of the first k written generators for the least k that fits.
// The identity is not stored.
class AutomorphismSet {
 public:
  AutomorphismSet() = default;
  AutomorphismSet(const GroupTable& table, std::size_t max_size);

  std::size_t size() const noexcept { return count_; }
  const std::uint16_t* perm(std::size_t i) const { return &perms_[i * n_]; }
  // Number of generators forced to map to themselves.
  std::size_t fixed_generators() const noexcept { return fixed_; }
  bool is_full_group() const noexcept { return fixed_ == 0; }

 private:
  bool enumerate(const GroupTable& table, std::size_t fixed, std::size_t max_size);

  std::size_t n_ = 0;
  std::size_t count_ = 0;
  std::size_t fixed_ = 0;
  std::vector<std::uint16_t> perms_;
};

}  // namespace zsum
