#include "doctest.h"
#include "zsum/errors.hpp"
#include "zsum/group.hpp"

using namespace zsum;

TEST_SUITE("group") {
  TEST_CASE("canonical form is the invariant factor decomposition") {
    CHECK(canonicalize(GroupSpec{6, 4}) == GroupSpec{2, 12});
    CHECK(canonicalize(GroupSpec{9, 3, 3}) == GroupSpec{3, 3, 9});
    CHECK(canonicalize(GroupSpec{2, 3}) == GroupSpec{6});
    CHECK(canonicalize(GroupSpec{1, 1}).is_trivial());
    CHECK(isomorphic(GroupSpec{4, 6}, GroupSpec{2, 12}));
    CHECK_FALSE(isomorphic(GroupSpec{4, 4}, GroupSpec{2, 8}));
    CHECK(is_canonical(GroupSpec{2, 4, 8}));
    CHECK_FALSE(is_canonical(GroupSpec{4, 2}));
  }

  TEST_CASE("10 x 15 x 6 has invariant factors 30, 30 times nothing else of order 2 or 3") {
    // 10*15*6 = 900 = 30 * 30
    CHECK(canonicalize(GroupSpec{10, 15, 6}) == GroupSpec{30, 30});
  }

  TEST_CASE("D*, exponent and rank") {
    CHECK(d_star(GroupSpec{3, 3, 9}) == 13);
    CHECK(d_star(GroupSpec{6, 4}) == 13);  // 2 x 12
    CHECK(d_star(GroupSpec{}) == 1);
    CHECK(exponent(GroupSpec{4, 6}) == 12);
    CHECK(rank(GroupSpec{4, 6}) == 2);
    CHECK(rank(GroupSpec{2, 3}) == 1);
  }

  TEST_CASE("element arithmetic") {
    GroupSpec g{3, 6};
    GroupElement a{1, 4}, b{2, 5};
    CHECK(element_add(g, a, b) == GroupElement{0, 3});
    CHECK(element_sub(g, a, b) == GroupElement{2, 5});
    CHECK(negate(g, a) == GroupElement{2, 2});
    CHECK(scale(g, a, 3) == GroupElement{0, 0});
    CHECK(element_order(g, a) == 3);
    CHECK(element_order(g, GroupElement{0, 1}) == 6);
    CHECK(reduce(g, {-1, 13}) == GroupElement{2, 1});
    CHECK_THROWS_AS(require_element(g, GroupElement{3, 0}), InvalidInput);
    CHECK_THROWS_AS(require_element(g, GroupElement{0}), InvalidInput);
  }

  TEST_CASE("text formats round-trip") {
    CHECK(to_string(GroupSpec{3, 3, 9}) == "3,3,9");
    CHECK(parse_group("3,3,9") == GroupSpec{3, 3, 9});
    CHECK(parse_group(" 2 , 4 ") == GroupSpec{2, 4});
    CHECK(to_string(GroupSpec{}) == "1");
    CHECK(to_string(GroupElement{1, 0, 2}) == "(1,0,2)");
    CHECK(parse_element("(1,0,2)") == GroupElement{1, 0, 2});
    CHECK_THROWS_AS(parse_group("3,,9"), InvalidInput);
    CHECK_THROWS_AS(parse_group("0"), InvalidInput);
    CHECK_THROWS_AS(parse_group("-2"), InvalidInput);
    CHECK_THROWS_AS(parse_element("1,2"), InvalidInput);
  }

  TEST_CASE("number theory helpers") {
    CHECK(is_prime(97));
    CHECK_FALSE(is_prime(91));
    CHECK_FALSE(is_prime(1));
    CHECK(factorize(360) == std::vector<std::pair<std::int64_t, int>>{{2, 3}, {3, 2}, {5, 1}});
    CHECK(elementary_divisors(GroupSpec{6, 4}) == std::vector<std::int64_t>{2, 3, 4});
    CHECK(p_group_prime(GroupSpec{3, 9}) == 3);
    CHECK(p_group_prime(GroupSpec{6}) == 0);
    CHECK(p_group_prime(GroupSpec{}) == 0);
  }

  TEST_CASE("abelian groups of a given order") {
    // partition counts of the exponents
    CHECK(abelian_groups_of_order(16).size() == 5);
    CHECK(abelian_groups_of_order(32).size() == 7);
    CHECK(abelian_groups_of_order(36).size() == 4);
    CHECK(abelian_groups_of_order(64).size() == 11);
    CHECK(abelian_groups_of_order(1).size() == 1);
    for (auto& g : abelian_groups_of_order(72)) {
      CHECK(is_canonical(g));
      CHECK(g.cardinality() == 72);
    }
  }

  TEST_CASE("p-group specs") {
    PGroupSpec s(2, {1, 2});
    CHECK(s.to_group() == GroupSpec{2, 4});
    CHECK(PGroupSpec::from_group(GroupSpec{4, 2}).exponents() == std::vector<int>{1, 2});
    CHECK_THROWS_AS(PGroupSpec(4, {1}), InvalidInput);
    CHECK_THROWS_AS(PGroupSpec(2, {2, 1}), InvalidInput);
    CHECK_THROWS_AS(PGroupSpec::from_group(GroupSpec{6}), InvalidInput);
  }
}
