#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zsum/sequence.hpp"

namespace zsum {

// Runs, leftovers and tail of a structured sequence (0-based positions).
// Block i (y = i) of size r_i splits into t_i = r_i / q runs of length q
// followed by l_i = r_i % q leftovers.
struct BlockDecomposition {
  // runs[i - 1][j - 1] = positions of X_i^j.
  std::vector<std::vector<std::vector<std::size_t>>> runs;
  // leftovers[i - 1] = the last l_i positions of block i.
  std::vector<std::vector<std::size_t>> leftovers;
  std::vector<std::size_t> tail;  // positions r .. m-1, all with y = 0

  static BlockDecomposition of(const StructuredSequence& s);
  std::int64_t total_runs() const;
  std::int64_t total_leftovers() const;
};

// Lemma 13 (i): q disjoint zero-sums of the x-projection, given as
// position lists, lift to a zero-sum of s.
PairWitness lemma13_case1(const PairSequence& s, const std::vector<std::vector<std::size_t>>& family);

// Lemma 13 (ii): all y equal and t an x-zero-sum with q | |t|.
PairWitness lemma13_case2(const PairSequence& s, const std::vector<std::size_t>& t);

// Lemma 15: s followed by (t, l) = (-sum x, -sum y).
class Lemma15Augmentation {
 public:
  explicit Lemma15Augmentation(PairSequence s);

  const PairSequence& original() const noexcept { return original_; }
  const PairSequence& augmented() const noexcept { return augmented_; }
  // Position of the appended pair in augmented().
  std::size_t appended() const noexcept { return original_.size(); }

  // Maps a proper zero-sum of augmented() (positions) to a zero-sum of s.
  PairWitness pullback(std::vector<std::size_t> w) const;

 private:
  PairSequence original_;
  PairSequence augmented_;
};

Lemma15Augmentation lemma15_augment(const PairSequence& s);

enum class Prop14Case { tail_only, block_sums, leftover_blocks_full, leftover_blocks };
std::string_view prop14_case_name(Prop14Case c);  // "I", "II", "III.i", "III.ii"

struct Prop14Result {
  PairWitness witness;  // positions refer to s.to_pairs()
  Prop14Case route;
  // Case III: solution of sum(l_i) = q*alpha + j + 1.
  std::optional<std::int64_t> alpha;
  // Disjoint leftover zero-sums whose x-sums were appended to T.
  std::int64_t leftover_blocks = 0;
  // The case's own count of leftover blocks left T short of D(C_p^d)
  // and extra blocks were taken.
  bool topped_up = false;
};

// Zero-sum of a structured sequence with r <= pq, built the way the
// block-sum argument prescribes. Throws ConstructionFailure if the
// construction cannot close.
Prop14Result prop14_extract(const StructuredSequence& s);

struct Theorem2Result {
  PairWitness witness;  // positions refer to the input sequence
  std::string route;    // "prop14", "oracle", "lemma15", "oracle-full-r"
  std::vector<std::string> notes;
};

// Certified zero-sum of s over C_p^d x C_q, |s| = p(q+d-1)-(d-1).
// Throws CounterexampleFound if the exhaustive oracle finds none.
Theorem2Result theorem2_decide(const PairSequence& s);

// Positions of s (lowest first per element) realizing a sub-multiset.
std::vector<std::size_t> positions_of(const PairSequence& s, const GSequence& part);

}  // namespace zsum
