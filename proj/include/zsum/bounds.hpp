#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zsum/bigint.hpp"
#include "zsum/group.hpp"
#include "zsum/search.hpp"

namespace zsum {

// A closed-form value with its applicability. When `applies` is false,
// `reason` says which hypothesis failed and `value` is empty.
struct FormulaValue {
  std::string tag;
  bool applies = false;
  std::optional<BigInt> value;
  std::string reason;
};

struct FormulaBounds {
  std::string tag;
  bool applies = false;
  std::optional<BigInt> lower, upper;
  std::string reason;
  std::string note;
};

// D_r of C_{p^e_1} x ... x C_{p^e_d} when p^{e_d} >= 1 + sum_{i<d} (p^{e_i} - 1).
FormulaValue theorem3_value(const PGroupSpec& spec, std::int64_t r);

// D_r of C_{p^e_1} x ... x C_{p^e_{d-1}} x C_{m p^e_d} under the same
// hypothesis. Tagged "thm4" for odd p and "obs1" for p = 2.
FormulaValue theorem4_value(std::int64_t p, const std::vector<int>& exps, std::int64_t m, std::int64_t r);

// Bounds on D_r of C_{p^e_1} x ... x C_{m p^e_{d-1}} x C_{n p^e_d}, p odd,
// m | n ("cor5.1") or n | m ("cor5.2").
FormulaBounds corollary5_bounds(std::int64_t p, const std::vector<int>& exps, std::int64_t m, std::int64_t n,
                                std::int64_t r);

// Exponent matrix over distinct primes: exps[j][i] = e_{i+1}^{(j)}.
struct MultiPrimeSpec {
  std::vector<std::int64_t> primes;
  std::vector<std::vector<int>> exps;

  void validate() const;  // throws InvalidInput
  std::size_t d() const { return exps.empty() ? 0 : exps.front().size(); }
  GroupSpec to_group() const;
  // Primes in increasing order, exponents read off the invariant factors.
  static MultiPrimeSpec from_group(const GroupSpec& g);
  MultiPrimeSpec reordered(const std::vector<std::size_t>& order) const;
};

FormulaBounds theorem6_bounds(const MultiPrimeSpec& spec, std::int64_t r);

// D of C_p^{d-1} x C_{pq} when p | q, d >= 3 and p^2 >= 1 + (d-1)(p-1).
FormulaValue theorem7_value(std::int64_t p, std::int64_t q, int d);

// (upper - lower) / lower of theorem6_bounds.
Rational error_ratio(const MultiPrimeSpec& spec, std::int64_t r);

struct BoundSource {
  std::string tag;
  bool applies = false;
  std::optional<BigInt> lower, upper;
  std::string note;
};

struct BoundReport {
  Invariant invariant = Invariant::davenport;
  GroupSpec group;
  GroupSpec canonical_group;
  std::int64_t r = 1;
  BigInt lower, upper;
  std::optional<BigInt> exact;
  std::vector<BoundSource> sources;

  // Folds in an exactly computed value (tag "exact"); throws
  // std::logic_error if it falls outside [lower, upper].
  void add_exact(const BigInt& value);
  // Adds a proven lower bound from a search that did not finish.
  void add_search_lower(const BigInt& value);
};

// Every closed-form source that speaks to this invariant of g.
BoundReport bound_report(Invariant inv, const GroupSpec& g, std::int64_t r);

}  // namespace zsum
