#include <doctest.h>

#include "zsum/bounds.hpp"
#include "zsum/errors.hpp"
#include "zsum/extremal.hpp"
#include "zsum/lemma_chain.hpp"

using namespace zsum;

namespace {

std::int64_t int_pow(std::int64_t b, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// D_r from the displayed p-group formula, computed in plain integers.
std::int64_t thm3_formula(std::int64_t p, const std::vector<int>& e, std::int64_t m, std::int64_t r) {
  std::int64_t s = r * m * int_pow(p, e.back());
  for (std::size_t i = 0; i + 1 < e.size(); ++i) s += int_pow(p, e[i]);
  return s - static_cast<std::int64_t>(e.size()) + 1;
}

std::int64_t as_int(const std::optional<BigInt>& v) {
  REQUIRE(v.has_value());
  return static_cast<std::int64_t>(*v);
}

MultiPrimeSpec c2c2c12() { return MultiPrimeSpec{{2, 3}, {{1, 1, 2}, {0, 0, 1}}}; }

}  // namespace

TEST_SUITE("bounds") {
  TEST_CASE("theorem3 values") {
    auto a = theorem3_value(PGroupSpec(2, {1, 2}), 2);
    CHECK(a.applies);
    CHECK(as_int(a.value) == 9);
    CHECK(as_int(theorem3_value(PGroupSpec(3, {1, 2}), 1).value) == 11);
    auto f = theorem3_value(PGroupSpec(2, {2, 2, 2}), 1);
    CHECK_FALSE(f.applies);
    CHECK_FALSE(f.value.has_value());
    CHECK_FALSE(f.reason.empty());
  }

  TEST_CASE("theorem3 agrees with the rank-2 formula") {
    for (int e1 = 1; e1 <= 3; ++e1)
      for (int e2 = e1; e2 <= 4; ++e2)
        for (std::int64_t r = 1; r <= 4; ++r) {
          auto v = theorem3_value(PGroupSpec(2, {e1, e2}), r);
          if (!v.applies) continue;
          CHECK(as_int(v.value) == r * int_pow(2, e2) + int_pow(2, e1) - 1);
        }
  }

  TEST_CASE("theorem4 and observation 1") {
    auto a = theorem4_value(3, {1, 1}, 2, 1);
    CHECK(a.tag == "thm4");
    CHECK(as_int(a.value) == 8);
    CHECK(as_int(theorem4_value(3, {1, 1}, 2, 2).value) == 14);
    auto b = theorem4_value(2, {1, 2}, 3, 1);
    CHECK(b.tag == "obs1");
    CHECK(b.applies);
    CHECK(as_int(b.value) == 13);
    CHECK_THROWS_AS(theorem4_value(3, {1, 1}, 0, 1), InvalidInput);
    for (std::int64_t m = 1; m <= 5; ++m)
      for (std::int64_t r = 1; r <= 3; ++r)
        CHECK(as_int(theorem4_value(5, {1, 2}, m, r).value) == thm3_formula(5, {1, 2}, m, r));
  }

  TEST_CASE("corollary5 bounds") {
    auto a = corollary5_bounds(3, {1, 1}, 2, 2, 1);
    CHECK(a.tag == "cor5.1");
    CHECK(as_int(a.lower) == 11);
    CHECK(as_int(a.upper) == 11);
    auto b = corollary5_bounds(3, {1, 1}, 1, 2, 2);
    CHECK(as_int(b.lower) == 14);
    CHECK(as_int(b.upper) == 14);
    // n | m with p = 5, e = (1, 2), m = 2, n = 1: C_10 x C_25.
    // Upper (rm + n - 1) p^{e_d} + p^{e_1} - d + 1 = 2*25 + 5 - 1 = 54.
    // Lower max(r n p^{e_d} + (rm - 1) p^{e_{d-1}}, ...) + 5 - 1 = 34; the
    // rank-2 value D(C_5 x C_50) = 54 sits in between.
    auto c = corollary5_bounds(5, {1, 2}, 2, 1, 1);
    CHECK(c.tag == "cor5.2");
    CHECK(as_int(c.upper) == 54);
    CHECK(as_int(c.lower) == 34);
    CHECK(as_int(c.lower) <= as_int(c.upper));
    CHECK_THROWS_AS(corollary5_bounds(3, {1, 1}, 2, 3, 1), InvalidInput);
  }

  TEST_CASE("theorem6 bounds") {
    auto a = theorem6_bounds(MultiPrimeSpec{{2, 3}, {{1, 1}, {0, 1}}}, 1);
    CHECK(a.applies);
    CHECK(as_int(a.lower) == 7);
    CHECK(as_int(a.upper) == 9);
    auto b = theorem6_bounds(c2c2c12(), 1);
    CHECK(as_int(b.lower) == 14);
    CHECK(as_int(b.upper) == 18);
    auto c = theorem6_bounds(c2c2c12(), 2);
    CHECK(as_int(c.lower) == 26);
    CHECK(as_int(c.upper) == 30);
    CHECK(c2c2c12().to_group() == GroupSpec{2, 2, 12});
  }

  TEST_CASE("theorem6 lower bound at r = 1 is d_star") {
    for (const GroupSpec& g : {GroupSpec{2, 6}, GroupSpec{2, 2, 12}, GroupSpec{6, 6}, GroupSpec{3, 15}, GroupSpec{2, 10}}) {
      auto b = theorem6_bounds(MultiPrimeSpec::from_group(g), 1);
      if (!b.applies) continue;
      CHECK(as_int(b.lower) == d_star(g));
    }
  }

  TEST_CASE("theorem6 sandwiches exact values") {
    for (const GroupSpec& g : {GroupSpec{6}, GroupSpec{2, 6}, GroupSpec{2, 10}, GroupSpec{3, 6}, GroupSpec{2, 2, 6}})
      for (int r = 1; r <= 2; ++r) {
        auto b = theorem6_bounds(MultiPrimeSpec::from_group(g), r);
        if (!b.applies) continue;
        const auto v = davenport_r_exact(g, r);
        REQUIRE(v.exact);
        CHECK(as_int(b.lower) <= v.value);
        CHECK(v.value <= as_int(b.upper));
      }
  }

  TEST_CASE("theorem7 values") {
    auto a = theorem7_value(3, 6, 3);
    CHECK(a.applies);
    CHECK(as_int(a.value) == 3 * (6 + 3 - 1) - 3 + 1);
    auto b = theorem7_value(2, 4, 4);
    CHECK(b.applies);
    CHECK(as_int(b.value) == 11);
    CHECK_FALSE(theorem7_value(2, 4, 5).applies);
    CHECK_FALSE(theorem7_value(3, 4, 3).applies);
    // Small instances match exhaustive search.
    const auto d = davenport_exact(GroupSpec{2, 2, 4});
    CHECK(as_int(theorem7_value(2, 2, 3).value) == d.value);
  }

  TEST_CASE("error ratio") {
    CHECK(error_ratio(c2c2c12(), 1) == Rational(2, 7));
    CHECK(error_ratio(c2c2c12(), 2) == Rational(2, 13));
    for (std::int64_t r = 1; r <= 5; ++r) {
      CHECK(error_ratio(c2c2c12(), r) == Rational(4, 12 * r + 2));
      if (r > 1) CHECK(error_ratio(c2c2c12(), r) < error_ratio(c2c2c12(), r - 1));
    }
    CHECK(error_ratio(MultiPrimeSpec{{3}, {{1, 2}}}, 1) == 0);
    CHECK(error_ratio(MultiPrimeSpec{{5}, {{1, 1, 2}}}, 3) == 0);
  }

  TEST_CASE("multi-prime spec validation") {
    CHECK_THROWS_AS((MultiPrimeSpec{{2, 2}, {{1}, {1}}}).validate(), InvalidInput);
    CHECK_THROWS_AS((MultiPrimeSpec{{2}, {{2, 1}}}).validate(), InvalidInput);
    CHECK_THROWS_AS((MultiPrimeSpec{{2, 3}, {{1, 1}, {0, 0}}}).validate(), InvalidInput);
    CHECK_NOTHROW(c2c2c12().validate());
  }

  TEST_CASE("bound report brackets the exact value") {
    auto rep = bound_report(Invariant::davenport_r, GroupSpec{2, 4}, 2);
    CHECK(rep.lower <= 9);
    CHECK(rep.upper >= 9);
    rep.add_exact(9);
    CHECK(rep.exact == BigInt(9));
    CHECK(rep.lower == 9);
    CHECK(rep.upper == 9);

    auto bad = bound_report(Invariant::davenport_r, GroupSpec{2, 4}, 2);
    CHECK_THROWS_AS(bad.add_exact(8), std::logic_error);

    auto rep3 = bound_report(Invariant::davenport, GroupSpec{3, 3, 3}, 1);
    CHECK(rep3.lower == 7);
    bool has_dstar = false;
    for (const auto& s : rep3.sources) has_dstar |= s.tag == "dstar";
    CHECK(has_dstar);
    CHECK(rep3.lower <= rep3.upper);
  }
}

TEST_SUITE("extremal") {
  TEST_CASE("recipes match the printed sequences") {
    ExtremalRecipe a{RecipeSource::thm3, 2, {1, 2}, 1, 1, 2};
    CHECK(a.multiplicities() == std::vector<std::int64_t>{1, 7});
    const auto sa = construct_extremal(a);
    CHECK(sa.size() == 8);
    CHECK(a.claimed_lower_bound() == 9);
    CHECK(verify_deficiency(sa, 2));
    auto plus = sa;
    plus.insert(GroupElement{0, 1});
    CHECK_FALSE(verify_deficiency(plus, 2));

    ExtremalRecipe b{RecipeSource::thm4, 3, {1, 1}, 2, 1, 1};
    CHECK(b.multiplicities() == std::vector<std::int64_t>{2, 5});
    CHECK(construct_extremal(b).size() == 7);
    CHECK(verify_deficiency(construct_extremal(b), 1));

    CHECK(verify_deficiency(GSequence(GroupSpec{2}), 1));
  }

  TEST_CASE("cor5.2-S2 follows the printed exponents and is deficient") {
    ExtremalRecipe c{RecipeSource::cor5_2_s2, 3, {1, 1}, 2, 1, 2};
    // r m p^{e_{d-1}} - 1 = 11, n p^{e_d} - 1 = 2.
    CHECK(c.multiplicities() == std::vector<std::int64_t>{11, 2});
    CHECK(verify_deficiency(construct_extremal(c), 2));
  }

  TEST_CASE("thm3 and thm4 recipes are deficient on small groups") {
    for (std::int64_t p : {2, 3})
      for (const std::vector<int>& e : {std::vector<int>{1}, {2}, {1, 1}, {1, 2}, {1, 1, 1}})
        for (std::int64_t r = 1; r <= 2; ++r) {
          ExtremalRecipe rec{RecipeSource::thm3, p, e, 1, 1, r};
          try {
            rec.validate();
          } catch (const InvalidInput&) {
            continue;
          }
          CHECK(verify_deficiency(construct_extremal(rec), static_cast<int>(r)));
        }
  }

  TEST_CASE("recipe names round trip") {
    for (auto s : {RecipeSource::thm3, RecipeSource::thm4, RecipeSource::cor5_1_s, RecipeSource::cor5_2_s1,
                   RecipeSource::cor5_2_s2})
      CHECK(parse_recipe(recipe_name(s)) == s);
    CHECK_THROWS_AS(parse_recipe("thm9"), InvalidInput);
  }
}

namespace {

SearchBudget lemma_budget() {
  SearchBudget b;
  b.max_nodes = 20'000'000;
  return b;
}

}  // namespace

TEST_SUITE("lemma chain") {
  TEST_CASE("lemma 8 on C_2 x C_4 at r = 2") {
    const auto rep = lemma_chain_check(GroupSpec{2, 4}, 2, lemma_budget());
    CHECK(rep.count(CheckStatus::fail) == 0);
    bool found = false;
    for (const auto& c : rep.checks)
      if (c.lemma == "8.1" && c.sub == GroupSpec{2} && c.quotient == GroupSpec{4}) {
        found = true;
        CHECK(c.status == CheckStatus::pass);
      }
    CHECK(found);
  }

  TEST_CASE("eta of C_3^2 against lemma 10") {
    const auto eta = eta_exact(GroupSpec{3, 3});
    REQUIRE(eta.exact);
    CHECK(eta.value <= 5 + 3);
    const auto rep = lemma_chain_check(GroupSpec{3, 3}, 1, lemma_budget());
    CHECK(rep.count(CheckStatus::fail) == 0);
    for (const auto& c : rep.checks)
      if (c.lemma == "10") CHECK(c.status == CheckStatus::pass);
  }

  TEST_CASE("lemma 8 lower inequality on C_6") {
    const auto rep = lemma_chain_check(GroupSpec{6}, 1, lemma_budget());
    bool found = false;
    for (const auto& c : rep.checks)
      if (c.lemma == "8.2") {
        found = true;
        CHECK(c.status == CheckStatus::pass);
      }
    CHECK(found);
  }

  TEST_CASE("small grid has no failures") {
    const auto rep = lemma_grid(12, 2, lemma_budget());
    CHECK(rep.checks.size() > 0);
    CHECK(rep.count(CheckStatus::fail) == 0);
    CHECK(rep.count(CheckStatus::skipped) == 0);
  }
}
