#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "zsum/group.hpp"
#include "zsum/sequence.hpp"

namespace zsum {

struct SearchBudget {
  std::uint64_t max_nodes = 50'000'000'000ull;
  double max_seconds = 6 * 3600.0;
  // Sequential search with reproducible node counts.
  bool deterministic = true;
  // Worker count when not deterministic; 0 means hardware concurrency.
  unsigned threads = 0;
  // Size guards.
  std::int64_t max_order_davenport = 256;
  std::int64_t max_order_r = 81;
  int max_r = 4;
  // Largest automorphism subgroup kept for symmetry breaking.
  std::size_t max_automorphisms = 100'000;
  // Skip the in-process result cache (for timing and independence tests).
  bool bypass_cache = false;

  void validate() const;
};

enum class Invariant { davenport, davenport_r, eta, eta_r };

std::string_view invariant_name(Invariant inv);  // "D", "D_r", "eta", "eta_r"
// Accepts D, D_r, eta, eta_r, davenport, davenport_r.
Invariant parse_invariant(std::string_view name);

struct ComputeResult {
  Invariant invariant = Invariant::davenport;
  GroupSpec group;  // canonical form the search ran on
  int r = 1;
  // The invariant when exact; otherwise a proven lower bound (certificate
  // length + 1).
  std::int64_t value = 0;
  bool exact = false;
  // Length value - 1, lacking the structure the invariant forces.
  GSequence certificate_low;
  std::uint64_t nodes_visited = 0;
  double seconds = 0;
};

std::optional<Witness> find_zero_sum(const GSequence& s);
// Lexicographically least nonempty zero-sum subsequence of length <= max_len.
std::optional<Witness> find_zero_sum_bounded(const GSequence& s, std::int64_t max_len);
// Length at most exp(G).
std::optional<Witness> find_short_zero_sum(const GSequence& s);
std::optional<DisjointFamily> find_disjoint_zero_sums(const GSequence& s, int r);
std::optional<DisjointFamily> find_disjoint_short_zero_sums(const GSequence& s, int r);

// True iff s lacks what the invariant forces: a zero-sum (D), r disjoint
// zero-sums (D_r), a short zero-sum (eta), r disjoint short zero-sums (eta_r).
bool is_deficient(const GSequence& s, Invariant inv, int r);

ComputeResult davenport_exact(const GroupSpec& g, const SearchBudget& budget = {});
ComputeResult davenport_r_exact(const GroupSpec& g, int r, const SearchBudget& budget = {});
ComputeResult eta_exact(const GroupSpec& g, const SearchBudget& budget = {});
ComputeResult eta_r_exact(const GroupSpec& g, int r, const SearchBudget& budget = {});
ComputeResult compute_invariant(Invariant inv, const GroupSpec& g, int r, const SearchBudget& budget = {});

// Forget exact results memoized in this process.
void clear_result_cache();

}  // namespace zsum
