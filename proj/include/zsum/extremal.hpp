#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "zsum/bigint.hpp"
#include "zsum/group.hpp"
#include "zsum/sequence.hpp"

namespace zsum {

enum class RecipeSource { thm3, thm4, cor5_1_s, cor5_2_s1, cor5_2_s2 };

std::string_view recipe_name(RecipeSource s);  // "thm3", "thm4", "cor5.1-S", ...
RecipeSource parse_recipe(std::string_view name);

// Standard-basis power sequences that witness the lower bounds. The group is
// C_{p^e_1} x ... x C_{p^e_d} for thm3, with the last order times m for thm4,
// and with the last two orders times m and n for the cor5 recipes.
struct ExtremalRecipe {
  RecipeSource source = RecipeSource::thm3;
  std::int64_t p = 2;
  std::vector<int> exps;
  std::int64_t m = 1, n = 1;
  std::int64_t r = 1;

  // Throws InvalidInput when the parameters miss the source's hypotheses.
  void validate() const;
  GroupSpec group() const;
  // Multiplicity of each basis vector e_1, ..., e_d.
  std::vector<std::int64_t> multiplicities() const;
  // The lower bound on D_r the sequence is meant to certify.
  BigInt claimed_lower_bound() const;
};

GSequence construct_extremal(const ExtremalRecipe& recipe);

// True iff s has no r pairwise disjoint nonempty zero-sum subsequences.
bool verify_deficiency(const GSequence& s, int r);

}  // namespace zsum
