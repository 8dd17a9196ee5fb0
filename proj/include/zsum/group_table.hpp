#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "zsum/group.hpp"

namespace zsum {

// Dense mixed-radix indexing of a group (last coordinate fastest), so index
// order coincides with the lexicographic element order. Holds the full
// addition table; intended for |G| up to max_order.
class GroupTable {
 public:
  static constexpr std::uint32_t max_order = 2048;

  explicit GroupTable(GroupSpec g);
  // Shared, lazily built tables keyed by the written spec.
  static std::shared_ptr<const GroupTable> shared(const GroupSpec& g);

  const GroupSpec& spec() const noexcept { return spec_; }
  std::uint32_t size() const noexcept { return n_; }
  std::uint32_t exponent() const noexcept { return exponent_; }

  std::uint32_t index(const GroupElement& a) const;
  GroupElement element(std::uint32_t i) const;

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return add_[a * n_ + b]; }
  std::uint32_t neg(std::uint32_t a) const { return neg_[a]; }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add_[a * n_ + neg_[b]]; }
  std::uint32_t order(std::uint32_t a) const { return ord_[a]; }

  // Row i -> i - g, the gather pattern for translating a table by g.
  const std::uint16_t* shift(std::uint32_t g) const { return &add_[neg_[g] * n_]; }

 private:
  GroupSpec spec_;
  std::uint32_t n_ = 1;
  std::uint32_t exponent_ = 1;
  std::vector<std::uint32_t> radix_;  // place value of each coordinate
  std::vector<std::uint16_t> add_;
  std::vector<std::uint16_t> neg_;
  std::vector<std::uint16_t> ord_;
};

}  // namespace zsum
