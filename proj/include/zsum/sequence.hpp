#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "zsum/group.hpp"

namespace zsum {

// A finite multiset of group elements, keyed in the global element order.
class GSequence {
 public:
  GSequence() = default;
  explicit GSequence(GroupSpec g) : group_(std::move(g)) {}
  GSequence(GroupSpec g, const std::vector<GroupElement>& elements);
  GSequence(GroupSpec g, std::map<GroupElement, std::int64_t> mult);

  const GroupSpec& group() const noexcept { return group_; }
  const std::map<GroupElement, std::int64_t>& entries() const noexcept { return mult_; }
  std::int64_t multiplicity(const GroupElement& g) const;
  std::int64_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }
  // Elements with repetition, in the global order.
  std::vector<GroupElement> expanded() const;

  void insert(const GroupElement& g, std::int64_t count = 1);
  // T | S: every multiplicity of *this is at most the parent's.
  bool divides(const GSequence& parent) const;
  // Stable 64-bit digest of the group and multiplicities.
  std::uint64_t fingerprint() const;

  friend bool operator==(const GSequence&, const GSequence&) = default;

 private:
  GroupSpec group_;
  std::map<GroupElement, std::int64_t> mult_;
  std::int64_t size_ = 0;
};

// A nonempty subsequence certified against its parent at construction.
class Witness {
 public:
  Witness(const GSequence& parent, GSequence part);
  const GSequence& sequence() const noexcept { return part_; }
  std::uint64_t parent_id() const noexcept { return parent_id_; }
  std::int64_t size() const noexcept { return part_.size(); }
  bool is_zero_sum() const;

 private:
  GSequence part_;
  std::uint64_t parent_id_;
};

// Additionally requires sigma(part) = 0.
Witness certify_zero_sum(const GSequence& parent, GSequence part);

// Members are mutually disjoint subsequences of one parent.
class DisjointFamily {
 public:
  DisjointFamily(const GSequence& parent, std::vector<Witness> members);
  const std::vector<Witness>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }

 private:
  std::vector<Witness> members_;
};

GroupElement sigma(const GSequence& s);
// { sigma(T) : T nonempty, T | S } via the reachable-set DP, sorted.
std::vector<GroupElement> sumset(const GSequence& s);
bool is_zero_sum_free(const GSequence& s);
GSequence remove(const GSequence& s, const Witness& t);
GSequence remove(const GSequence& s, const GSequence& t);
GSequence concat(const GSequence& a, const GSequence& b);

struct Pair {
  GroupElement x;
  std::int64_t y = 0;
  friend bool operator==(const Pair&, const Pair&) = default;
  friend auto operator<=>(const Pair&, const Pair&) = default;
};

// Positional sequence over H x C_q; element i is (x_i, y_i).
class PairSequence {
 public:
  PairSequence(GroupSpec h, std::int64_t q, std::vector<Pair> pairs);
  // Split a sequence over [orders..., q] written positionally; last coordinate is y.
  static PairSequence from_elements(const GroupSpec& full, const std::vector<GroupElement>& elements);

  const GroupSpec& h() const noexcept { return h_; }
  std::int64_t q() const noexcept { return q_; }
  const std::vector<Pair>& pairs() const noexcept { return pairs_; }
  std::size_t size() const noexcept { return pairs_.size(); }
  const Pair& operator[](std::size_t i) const { return pairs_.at(i); }

  // H x C_q as a written spec (H's orders followed by q).
  GroupSpec group() const;
  GroupElement element(std::size_t i) const;
  std::vector<GroupElement> elements() const;
  GSequence multiset() const;
  GSequence multiset(std::span<const std::size_t> positions) const;
  // x-projection over H, optionally restricted to positions.
  GSequence x_multiset() const;
  GSequence x_multiset(std::span<const std::size_t> positions) const;

 private:
  GroupSpec h_;
  std::int64_t q_;
  std::vector<Pair> pairs_;
};

// T^S: the pairs of s at the given (0-based) positions.
PairSequence extension(std::span<const std::size_t> t, const PairSequence& s);

// Positions into a PairSequence together with the certified zero-sum
// witness they form.
struct PairWitness {
  std::vector<std::size_t> positions;  // sorted, distinct
  Witness witness;
};
PairWitness certify_pair_witness(const PairSequence& s, std::vector<std::size_t> positions);

// x over C_p^d, y-values laid out as blocks 1..q-1 then zeros.
class StructuredSequence {
 public:
  StructuredSequence(std::int64_t p, std::int64_t q, int d, std::vector<GroupElement> x,
                     std::vector<std::int64_t> blocks);
  // m = p(q + d - 1) - (d - 1)
  static std::int64_t length_for(std::int64_t p, std::int64_t q, int d);

  std::int64_t p() const noexcept { return p_; }
  std::int64_t q() const noexcept { return q_; }
  int d() const noexcept { return d_; }
  std::int64_t m() const noexcept { return static_cast<std::int64_t>(x_.size()); }
  const std::vector<GroupElement>& x() const noexcept { return x_; }
  // r_1..r_{q-1}; blocks()[i - 1] is r_i.
  const std::vector<std::int64_t>& blocks() const noexcept { return blocks_; }
  std::int64_t r() const noexcept { return r_; }
  std::int64_t r_i(std::int64_t i) const { return blocks_.at(static_cast<std::size_t>(i - 1)); }
  std::int64_t t_i(std::int64_t i) const { return r_i(i) / q_; }
  std::int64_t l_i(std::int64_t i) const { return r_i(i) % q_; }
  // 0-based position of the first entry of block i.
  std::int64_t block_offset(std::int64_t i) const;
  std::int64_t y_at(std::size_t pos) const;

  GroupSpec x_group() const;
  GroupSpec group() const;
  PairSequence to_pairs() const;

 private:
  std::int64_t p_, q_;
  int d_;
  std::vector<GroupElement> x_;
  std::vector<std::int64_t> blocks_;
  std::int64_t r_ = 0;
};

struct NormalizedSequence {
  StructuredSequence seq;
  // permutation[k] is the original index of structured position k.
  std::vector<std::size_t> permutation;
};

// s must be over C_p^d x C_q with |s| = m.
NormalizedSequence normalize(const PairSequence& s);

}  // namespace zsum
