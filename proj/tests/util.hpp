#pragma once

#include <random>
#include <vector>

#include "oracle.hpp"
#include "zsum/group.hpp"
#include "zsum/sequence.hpp"

namespace testutil {

inline oracle::Group to_oracle(const zsum::GroupSpec& g) { return oracle::Group{g.orders()}; }

inline std::vector<oracle::Elem> to_oracle(const zsum::GSequence& s) {
  std::vector<oracle::Elem> out;
  for (const auto& e : s.expanded()) out.push_back(e.residues);
  return out;
}

inline zsum::GroupElement random_element(const zsum::GroupSpec& g, std::mt19937_64& rng) {
  std::vector<std::int64_t> r;
  for (auto n : g.orders()) r.push_back(std::uniform_int_distribution<std::int64_t>(0, n - 1)(rng));
  return zsum::GroupElement(r);
}

inline zsum::GSequence random_sequence(const zsum::GroupSpec& g, int len, std::mt19937_64& rng) {
  zsum::GSequence s(g);
  for (int i = 0; i < len; ++i) s.insert(random_element(g, rng));
  return s;
}

// x uniform over C_p^d; r uniform in [0, max_r], spread over the q - 1
// nonzero y-blocks uniformly.
inline zsum::StructuredSequence random_structured(std::int64_t p, std::int64_t q, int d, std::int64_t max_r,
                                                  std::mt19937_64& rng) {
  const std::int64_t m = zsum::StructuredSequence::length_for(p, q, d);
  const zsum::GroupSpec h(std::vector<std::int64_t>(static_cast<std::size_t>(d), p));
  std::vector<zsum::GroupElement> x;
  for (std::int64_t i = 0; i < m; ++i) x.push_back(random_element(h, rng));
  const std::int64_t r = std::uniform_int_distribution<std::int64_t>(0, std::min(max_r, m))(rng);
  std::vector<std::int64_t> blocks(static_cast<std::size_t>(q - 1), 0);
  for (std::int64_t i = 0; i < r; ++i) ++blocks[rng() % blocks.size()];
  return zsum::StructuredSequence(p, q, d, std::move(x), std::move(blocks));
}

// Any sequence over C_p^d x C_q of length m, positions shuffled.
inline zsum::PairSequence random_pairs(std::int64_t p, std::int64_t q, int d, std::mt19937_64& rng) {
  const std::int64_t m = zsum::StructuredSequence::length_for(p, q, d);
  std::vector<std::int64_t> orders(static_cast<std::size_t>(d), p);
  orders.push_back(q);
  const zsum::GroupSpec full(orders);
  std::vector<zsum::GroupElement> el;
  for (std::int64_t i = 0; i < m; ++i) el.push_back(random_element(full, rng));
  return zsum::PairSequence::from_elements(full, el);
}

// Small groups in canonical form used by the property suites.
inline std::vector<zsum::GroupSpec> small_groups() {
  return {{2}, {3}, {4}, {5}, {6}, {7}, {8}, {2, 2}, {2, 4}, {3, 3}, {2, 6}, {2, 2, 2}, {4, 4}, {2, 2, 4}, {3, 6}};
}

}  // namespace testutil
