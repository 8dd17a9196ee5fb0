#include "zsum/group_table.hpp"

#include <map>
#include <mutex>

#include "zsum/errors.hpp"

namespace zsum {

GroupTable::GroupTable(GroupSpec g) : spec_(std::move(g)) {
  std::int64_t card = spec_.cardinality();
  if (card > max_order)
    throw InvalidInput("group " + to_string(spec_) + " has order " + std::to_string(card) +
                       ", above the dense-table limit " + std::to_string(max_order));
  n_ = static_cast<std::uint32_t>(card);
  exponent_ = static_cast<std::uint32_t>(zsum::exponent(spec_));
  const std::size_t d = spec_.dimension();
  radix_.assign(d, 1);
  for (std::size_t i = d; i-- > 1;) radix_[i - 1] = radix_[i] * static_cast<std::uint32_t>(spec_.order(i));

  // Residue digits of every index, then the tables from digit arithmetic.
  std::vector<std::uint32_t> digits(static_cast<std::size_t>(n_) * d);
  for (std::uint32_t x = 0; x < n_; ++x)
    for (std::size_t i = 0; i < d; ++i)
      digits[x * d + i] = (x / radix_[i]) % static_cast<std::uint32_t>(spec_.order(i));

  add_.resize(static_cast<std::size_t>(n_) * n_);
  neg_.resize(n_);
  ord_.resize(n_);
  for (std::uint32_t a = 0; a < n_; ++a) {
    std::uint32_t na = 0;
    for (std::size_t i = 0; i < d; ++i) {
      auto n = static_cast<std::uint32_t>(spec_.order(i));
      na += ((n - digits[a * d + i]) % n) * radix_[i];
    }
    neg_[a] = static_cast<std::uint16_t>(na);
    for (std::uint32_t b = 0; b < n_; ++b) {
      std::uint32_t s = 0;
      for (std::size_t i = 0; i < d; ++i) {
        auto n = static_cast<std::uint32_t>(spec_.order(i));
        s += ((digits[a * d + i] + digits[b * d + i]) % n) * radix_[i];
      }
      add_[static_cast<std::size_t>(a) * n_ + b] = static_cast<std::uint16_t>(s);
    }
  }
  for (std::uint32_t a = 0; a < n_; ++a) {
    std::uint32_t k = 1, x = a;
    while (x != 0) {
      x = add(x, a);
      ++k;
    }
    ord_[a] = static_cast<std::uint16_t>(a == 0 ? 1 : k);
  }
}

std::shared_ptr<const GroupTable> GroupTable::shared(const GroupSpec& g) {
  static std::mutex mu;
  static std::map<GroupSpec, std::shared_ptr<const GroupTable>> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(g);
  if (it != cache.end()) return it->second;
  auto t = std::make_shared<const GroupTable>(g);
  cache.emplace(g, t);
  return t;
}

std::uint32_t GroupTable::index(const GroupElement& a) const {
  require_element(spec_, a);
  std::uint32_t x = 0;
  for (std::size_t i = 0; i < a.size(); ++i) x += static_cast<std::uint32_t>(a[i]) * radix_[i];
  return x;
}

GroupElement GroupTable::element(std::uint32_t x) const {
  std::vector<std::int64_t> r(spec_.dimension());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = (x / radix_[i]) % static_cast<std::uint32_t>(spec_.order(i));
  return GroupElement(std::move(r));
}

}  // namespace zsum
