#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace zsum {

// C_{n_1} x ... x C_{n_d} in the order written. Orders of 1 are tolerated on
// input and dropped by canonicalize().
class GroupSpec {
 public:
  GroupSpec() = default;
  explicit GroupSpec(std::vector<std::int64_t> orders);
  GroupSpec(std::initializer_list<std::int64_t> orders)
      : GroupSpec(std::vector<std::int64_t>(orders)) {}

  const std::vector<std::int64_t>& orders() const noexcept { return orders_; }
  std::size_t dimension() const noexcept { return orders_.size(); }
  std::int64_t order(std::size_t i) const { return orders_.at(i); }
  // Product of the orders; throws InvalidInput on 63-bit overflow.
  std::int64_t cardinality() const;
  bool is_trivial() const;

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
  friend auto operator<=>(const GroupSpec&, const GroupSpec&) = default;

 private:
  std::vector<std::int64_t> orders_;
};

struct GroupElement {
  std::vector<std::int64_t> residues;

  GroupElement() = default;
  explicit GroupElement(std::vector<std::int64_t> r) : residues(std::move(r)) {}
  GroupElement(std::initializer_list<std::int64_t> r) : residues(r) {}

  std::size_t size() const noexcept { return residues.size(); }
  std::int64_t operator[](std::size_t i) const { return residues[i]; }

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  // Lexicographic on residues: the global element order.
  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

GroupSpec canonicalize(const GroupSpec& g);
bool isomorphic(const GroupSpec& a, const GroupSpec& b);
bool is_canonical(const GroupSpec& g);

bool is_element_of(const GroupSpec& g, const GroupElement& a);
// Throws InvalidInput unless `a` is a reduced element of `g`.
void require_element(const GroupSpec& g, const GroupElement& a);

GroupElement zero(const GroupSpec& g);
GroupElement element_add(const GroupSpec& g, const GroupElement& a, const GroupElement& b);
GroupElement element_sub(const GroupSpec& g, const GroupElement& a, const GroupElement& b);
GroupElement negate(const GroupSpec& g, const GroupElement& a);
GroupElement scale(const GroupSpec& g, const GroupElement& a, std::int64_t k);
std::int64_t element_order(const GroupSpec& g, const GroupElement& a);
// Reduce arbitrary integers into an element of g.
GroupElement reduce(const GroupSpec& g, std::vector<std::int64_t> raw);
// Standard basis vector e_i.
GroupElement basis(const GroupSpec& g, std::size_t i);

std::int64_t d_star(const GroupSpec& g);
std::int64_t exponent(const GroupSpec& g);
std::size_t rank(const GroupSpec& g);

// "3,3,9"; the trivial group prints as "1".
std::string to_string(const GroupSpec& g);
GroupSpec parse_group(std::string_view text);
// "(1,0,2)"
std::string to_string(const GroupElement& a);
GroupElement parse_element(std::string_view text);

// Number theory helpers at desk scale.
bool is_prime(std::int64_t n);
std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n);
std::int64_t gcd(std::int64_t a, std::int64_t b);
std::int64_t lcm(std::int64_t a, std::int64_t b);
std::int64_t ipow(std::int64_t base, int e);
// Prime-power cyclic factors of g, sorted ascending.
std::vector<std::int64_t> elementary_divisors(const GroupSpec& g);
// If g is a p-group, its prime; otherwise 0. The trivial group gives 0.
std::int64_t p_group_prime(const GroupSpec& g);

// C_{p^{e_1}} x ... x C_{p^{e_d}}, e_1 <= ... <= e_d.
class PGroupSpec {
 public:
  PGroupSpec(std::int64_t p, std::vector<int> exponents, bool allow_zero = false);
  std::int64_t p() const noexcept { return p_; }
  const std::vector<int>& exponents() const noexcept { return e_; }
  std::size_t d() const noexcept { return e_.size(); }
  GroupSpec to_group() const;
  // From a p-group spec; throws InvalidInput if g is not a nontrivial p-group.
  static PGroupSpec from_group(const GroupSpec& g);

 private:
  std::int64_t p_;
  std::vector<int> e_;
};

// All isomorphism classes of abelian groups of order n, canonical form,
// sorted. Order 1 yields the trivial group.
std::vector<GroupSpec> abelian_groups_of_order(std::int64_t n);

}  // namespace zsum
