#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "zsum/bigint.hpp"
#include "zsum/search.hpp"
#include "zsum/sequence.hpp"

namespace zsum {

// Progress through the ordered work list: unit k is (signature, first
// element branch) in enumeration order; units before `next_unit` are done.
struct ConjectureCheckpoint {
  std::int64_t p = 0, q = 0;
  int d = 0;
  std::uint64_t next_signature = 0;
  std::uint64_t next_branch = 0;
  std::uint64_t candidates_checked = 0;
  std::uint64_t nodes = 0;

  friend bool operator==(const ConjectureCheckpoint&, const ConjectureCheckpoint&) = default;
};

std::string write_checkpoint(const ConjectureCheckpoint& c);
ConjectureCheckpoint read_checkpoint(const std::string& text);

enum class ConjectureStatus { verified, counterexample, budget_exceeded };
std::string_view conjecture_status_name(ConjectureStatus s);

struct ConjectureVerdict {
  ConjectureStatus status = ConjectureStatus::verified;
  // Zero-sum free sequence in block layout (y = 1, ..., q-1, then 0) and
  // its block sizes r_1, ..., r_{q-1}.
  std::optional<PairSequence> counterexample;
  std::vector<std::int64_t> counterexample_blocks;
  // Number of (signature, x-assignment) pairs before any reduction.
  BigInt search_space_size;
  std::uint64_t signatures = 0;
  // Partial assignments closed off (each one covers every completion).
  std::uint64_t candidates_checked = 0;
  std::uint64_t nodes = 0;
  ConjectureCheckpoint cursor;
};

struct ConjectureOptions {
  SearchBudget budget;
  // Written after every finished unit when set.
  std::optional<std::filesystem::path> checkpoint_file;
  std::optional<ConjectureCheckpoint> resume_from;
  // Check sequences of this length instead of m = p(q+d-1)-(d-1). Shorter
  // lengths admit zero-sum free sequences, which exercises the
  // counterexample path.
  std::optional<std::int64_t> length;
};

// Block-size signatures (r_1, ..., r_{q-1}) with r in [pq + 1, m] and
// sum i r_i = 0 mod q, in lexicographic order, for sequences of length m.
std::vector<std::vector<std::int64_t>> conjecture_signatures(std::int64_t p, std::int64_t q, std::int64_t m);

// Searches every structured sequence covered by the conjecture for one
// without a nonempty zero-sum.
ConjectureVerdict conjecture1_check(std::int64_t p, std::int64_t q, int d, const ConjectureOptions& options = {});

}  // namespace zsum
