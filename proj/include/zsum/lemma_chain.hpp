#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "zsum/group.hpp"
#include "zsum/search.hpp"

namespace zsum {

// vacuous: the hypothesis of a conditional inequality is false.
// skipped: a value it needs could not be settled within budget.
enum class CheckStatus { pass, fail, skipped, vacuous };
std::string_view check_status_name(CheckStatus s);

struct LemmaCheck {
  // "8.1" (D_r(G) <= D_{D_r(H)}(G/H)), "8.2" (D(G) >= D(H) + D(G/H) - 1),
  // "9", "10", "11", "12".
  std::string lemma;
  GroupSpec group;
  std::optional<GroupSpec> sub, quotient;
  // Empty for checks that do not depend on r.
  std::optional<int> r;
  std::string claim;
  CheckStatus status = CheckStatus::skipped;
  std::string note;
};

struct LemmaChainReport {
  std::vector<LemmaCheck> checks;
  std::size_t count(CheckStatus s) const;
  void append(const LemmaChainReport& other);
};

// Where a value used by the checks came from.
struct OracleValue {
  std::optional<std::int64_t> exact;
  std::int64_t lower = 0;  // proven lower bound; equals *exact when known
  std::string source;      // "search", "rank<=2 formula", "p-group D = D*", "deficient sequence", ...
};

// Exact values for the lemma checks: exhaustive search inside the budget,
// then closed forms that are theorems for the whole class (cyclic and rank 2
// D_r; D of p-groups), then a verified deficient basis sequence as a lower
// bound for D_r.
class LemmaOracle {
 public:
  explicit LemmaOracle(SearchBudget budget);
  OracleValue value(Invariant inv, const GroupSpec& g, int r);

 private:
  SearchBudget budget_;
};

// Checks at this r plus the r-free checks (8.2, 9, 10). Lemma 8 runs over
// every split of the elementary divisors into a nontrivial proper H and its
// complement.
LemmaChainReport lemma_chain_check(const GroupSpec& g, int r, LemmaOracle& oracle);
LemmaChainReport lemma_chain_check(const GroupSpec& g, int r, const SearchBudget& budget);

// Every abelian group of order <= max_order and r in [1, max_r]; r-free
// checks are listed once per group.
LemmaChainReport lemma_grid(std::int64_t max_order, int max_r, const SearchBudget& budget);

}  // namespace zsum
