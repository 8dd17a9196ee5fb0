#include <algorithm>

#include "zsum/errors.hpp"
#include "zsum/group_table.hpp"
#include "zsum/search.hpp"
#include "zsum/simd/kernels.hpp"

namespace zsum {

namespace {

// Sorted table indices of s, with repetition.
std::vector<std::uint32_t> sorted_indices(const GroupTable& t, const GSequence& s) {
  std::vector<std::uint32_t> a;
  a.reserve(static_cast<std::size_t>(s.size()));
  for (const auto& [e, k] : s.entries())
    for (std::int64_t i = 0; i < k; ++i) a.push_back(t.index(e));
  return a;  // map order is index order
}

GSequence from_indices(const GroupTable& t, const std::vector<std::uint32_t>& idx) {
  GSequence out(t.spec());
  for (auto i : idx) out.insert(t.element(i));
  return out;
}

// Lexicographically least nonempty zero-sum subsequence with length at most
// max_len. suffix[k] describes what the entries a[k..] can still reach, so
// each greedy step can test whether its prefix completes: with no length
// bound it is a reachability table, otherwise the least count of entries
// summing to each element (`cap` when unreachable or too long).
std::optional<std::vector<std::uint32_t>> least_zero_sum(const GroupTable& t, const std::vector<std::uint32_t>& a,
                                                         std::int64_t max_len) {
  const std::size_t len = a.size();
  if (len == 0 || max_len < 1) return std::nullopt;
  const bool bounded = max_len < static_cast<std::int64_t>(len);
  if (bounded && max_len > 253) throw InvalidInput("bounded zero-sum search supports lengths up to 253");
  const std::uint32_t n = t.size();
  const std::size_t stride = simd::padded_size(n);
  const auto& k = simd::active();
  const std::uint8_t cap = bounded ? static_cast<std::uint8_t>(max_len + 1) : 0;
  std::vector<std::uint8_t> suffix((len + 1) * stride, cap);
  suffix[len * stride] = bounded ? 0 : 1;
  for (std::size_t i = len; i-- > 0;) {
    if (bounded)
      k.translate_min_inc(&suffix[i * stride], &suffix[(i + 1) * stride], t.shift(a[i]), n);
    else
      k.translate_or(&suffix[i * stride], &suffix[(i + 1) * stride], t.shift(a[i]), n);
  }
  auto completes = [&](std::size_t from, std::uint32_t target, std::int64_t used) {
    std::uint8_t v = suffix[from * stride + target];
    if (!bounded) return v != 0;
    return v < cap && used + v <= max_len;
  };
  std::vector<std::uint32_t> chosen;
  std::uint32_t sum = 0;
  std::size_t pos = 0;
  while (true) {
    bool advanced = false;
    for (std::size_t j = pos; j < len; ++j) {
      if (j > pos && a[j] == a[j - 1]) continue;  // a later copy never completes where the first failed
      std::uint32_t s2 = t.add(sum, a[j]);
      if (completes(j + 1, t.neg(s2), static_cast<std::int64_t>(chosen.size()) + 1)) {
        chosen.push_back(a[j]);
        sum = s2;
        pos = j + 1;
        advanced = true;
        break;
      }
    }
    if (!advanced) return std::nullopt;
    if (sum == 0) return chosen;
  }
}

}  // namespace

std::optional<Witness> find_zero_sum_bounded(const GSequence& s, std::int64_t max_len) {
  auto t = GroupTable::shared(s.group());
  auto a = sorted_indices(*t, s);
  auto w = least_zero_sum(*t, a, std::min<std::int64_t>(max_len, s.size()));
  if (!w) return std::nullopt;
  return certify_zero_sum(s, from_indices(*t, *w));
}

std::optional<Witness> find_zero_sum(const GSequence& s) { return find_zero_sum_bounded(s, s.size()); }

std::optional<Witness> find_short_zero_sum(const GSequence& s) {
  return find_zero_sum_bounded(s, exponent(s.group()));
}

bool is_deficient(const GSequence& s, Invariant inv, int r) {
  switch (inv) {
    case Invariant::davenport: return !find_zero_sum(s);
    case Invariant::eta: return !find_short_zero_sum(s);
    case Invariant::davenport_r: return !find_disjoint_zero_sums(s, r);
    case Invariant::eta_r: return !find_disjoint_short_zero_sums(s, r);
  }
  return false;
}

}  // namespace zsum
