#include "zsum/extremal.hpp"

#include "zsum/errors.hpp"
#include "zsum/search.hpp"

namespace zsum {

namespace {

BigInt pw(std::int64_t p, int e) { return boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(e)); }

std::int64_t to_count(const BigInt& v) {
  if (v < 0 || v > BigInt(1'000'000'000)) throw InvalidInput("multiplicity out of range");
  return static_cast<std::int64_t>(v);
}

bool uses_mn(RecipeSource s) {
  return s == RecipeSource::cor5_1_s || s == RecipeSource::cor5_2_s1 || s == RecipeSource::cor5_2_s2;
}

}  // namespace

std::string_view recipe_name(RecipeSource s) {
  switch (s) {
    case RecipeSource::thm3: return "thm3";
    case RecipeSource::thm4: return "thm4";
    case RecipeSource::cor5_1_s: return "cor5.1-S";
    case RecipeSource::cor5_2_s1: return "cor5.2-S1";
    case RecipeSource::cor5_2_s2: return "cor5.2-S2";
  }
  return "?";
}

RecipeSource parse_recipe(std::string_view name) {
  for (auto s : {RecipeSource::thm3, RecipeSource::thm4, RecipeSource::cor5_1_s, RecipeSource::cor5_2_s1,
                 RecipeSource::cor5_2_s2})
    if (recipe_name(s) == name) return s;
  throw InvalidInput("unknown recipe '" + std::string(name) + "'");
}

void ExtremalRecipe::validate() const {
  PGroupSpec(p, exps);
  if (r < 1) throw InvalidInput("r must be at least 1");
  if (m < 1 || n < 1) throw InvalidInput("m and n must be at least 1");
  BigInt rhs = 1;
  for (std::size_t i = 0; i + 1 < exps.size(); ++i) rhs += pw(p, exps[i]) - 1;
  if (pw(p, exps.back()) < rhs) throw InvalidInput("p^{e_d} < 1 + sum (p^{e_i} - 1)");
  switch (source) {
    case RecipeSource::thm3:
      if (m != 1 || n != 1) throw InvalidInput("thm3 takes no m or n");
      break;
    case RecipeSource::thm4:
      if (n != 1) throw InvalidInput("thm4 takes no n");
      break;
    case RecipeSource::cor5_1_s:
    case RecipeSource::cor5_2_s1:
    case RecipeSource::cor5_2_s2:
      if (p == 2) throw InvalidInput("corollary recipes need an odd prime");
      if (exps.size() < 2) throw InvalidInput("corollary recipes need d >= 2");
      if (source == RecipeSource::cor5_1_s && n % m != 0) throw InvalidInput("cor5.1-S needs m | n");
      if (source != RecipeSource::cor5_1_s && m % n != 0) throw InvalidInput("cor5.2 recipes need n | m");
      break;
  }
  (void)group().cardinality();
}

GroupSpec ExtremalRecipe::group() const {
  std::vector<std::int64_t> orders;
  for (int e : exps) orders.push_back(ipow(p, e));
  const std::size_t d = orders.size();
  if (source == RecipeSource::thm4) orders[d - 1] *= m;
  if (uses_mn(source)) {
    orders[d - 2] *= m;
    orders[d - 1] *= n;
  }
  return GroupSpec(std::move(orders));
}

std::vector<std::int64_t> ExtremalRecipe::multiplicities() const {
  const std::size_t d = exps.size();
  std::vector<BigInt> c(d);
  for (std::size_t i = 0; i < d; ++i) c[i] = pw(p, exps[i]) - 1;
  const BigInt top = pw(p, exps[d - 1]);
  switch (source) {
    case RecipeSource::thm3: c[d - 1] = r * top - 1; break;
    case RecipeSource::thm4: c[d - 1] = BigInt(r) * m * top - 1; break;
    case RecipeSource::cor5_1_s:
      c[d - 2] = m * pw(p, exps[d - 2]) - 1;
      c[d - 1] = BigInt(r) * n * top - 1;
      break;
    case RecipeSource::cor5_2_s1:
      c[d - 2] = BigInt(r) * m * pw(p, exps[d - 2]) - 1;
      c[d - 1] = BigInt(r) * n * top - 1;
      break;
    case RecipeSource::cor5_2_s2:
      c[d - 2] = BigInt(r) * m * pw(p, exps[d - 2]) - 1;
      c[d - 1] = n * top - 1;
      break;
  }
  std::vector<std::int64_t> out;
  for (const auto& v : c) out.push_back(to_count(v));
  return out;
}

BigInt ExtremalRecipe::claimed_lower_bound() const {
  const std::size_t d = exps.size();
  BigInt low = 0;
  for (std::size_t i = 0; i + 1 < d; ++i) low += pw(p, exps[i]);
  low -= static_cast<std::int64_t>(d) - 1;
  const BigInt top = pw(p, exps[d - 1]);
  switch (source) {
    case RecipeSource::thm3: return r * top + low;
    case RecipeSource::thm4: return BigInt(r) * m * top + low;
    case RecipeSource::cor5_1_s:
    case RecipeSource::cor5_2_s1: return BigInt(r) * n * top + (m - 1) * pw(p, exps[d - 2]) + low;
    case RecipeSource::cor5_2_s2: return n * top + (BigInt(r) * m - 1) * pw(p, exps[d - 2]) + low;
  }
  return 0;
}

GSequence construct_extremal(const ExtremalRecipe& recipe) {
  recipe.validate();
  const GroupSpec g = recipe.group();
  const auto counts = recipe.multiplicities();
  GSequence s(g);
  for (std::size_t i = 0; i < counts.size(); ++i)
    if (counts[i] > 0) s.insert(basis(g, i), counts[i]);
  return s;
}

bool verify_deficiency(const GSequence& s, int r) {
  if (r < 1) throw InvalidInput("r must be at least 1");
  return !find_disjoint_zero_sums(s, r).has_value();
}

}  // namespace zsum
