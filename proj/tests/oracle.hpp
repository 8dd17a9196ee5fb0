#pragma once

// Brute-force reference implementations. Nothing here touches the library:
// elements are plain residue vectors and every question is answered by
// enumerating subsets or multisets.

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <vector>

namespace oracle {

using Elem = std::vector<std::int64_t>;

struct Group {
  std::vector<std::int64_t> n;

  std::int64_t order() const {
    std::int64_t o = 1;
    for (auto k : n) o *= k;
    return o;
  }
  std::int64_t exponent() const {
    std::int64_t e = 1;
    for (auto k : n) {
      std::int64_t a = e, b = k;
      while (b) {
        std::int64_t t = a % b;
        a = b;
        b = t;
      }
      e = e / a * k;
    }
    return e;
  }
  Elem zero() const { return Elem(n.size(), 0); }
  Elem add(const Elem& a, const Elem& b) const {
    Elem c(n.size());
    for (std::size_t i = 0; i < n.size(); ++i) c[i] = (a[i] + b[i]) % n[i];
    return c;
  }
  std::vector<Elem> elements() const {
    std::vector<Elem> out{Elem{}};
    for (auto k : n) {
      std::vector<Elem> next;
      for (const auto& e : out)
        for (std::int64_t v = 0; v < k; ++v) {
          Elem f = e;
          f.push_back(v);
          next.push_back(f);
        }
      out = std::move(next);
    }
    return out;
  }
};

inline Elem subset_sum(const Group& g, const std::vector<Elem>& s, std::uint32_t mask) {
  Elem acc = g.zero();
  for (std::size_t i = 0; i < s.size(); ++i)
    if (mask >> i & 1) acc = g.add(acc, s[i]);
  return acc;
}

inline int popcount(std::uint32_t m) { return __builtin_popcount(m); }

// Sums of all nonempty subsequences.
inline std::set<Elem> sumset(const Group& g, const std::vector<Elem>& s) {
  std::set<Elem> out;
  for (std::uint32_t m = 1; m < (1u << s.size()); ++m) out.insert(subset_sum(g, s, m));
  return out;
}

// Masks of nonempty zero-sum subsequences with at most max_len terms
// (0 = no limit).
inline std::vector<std::uint32_t> zero_sum_masks(const Group& g, const std::vector<Elem>& s, std::int64_t max_len) {
  std::vector<std::uint32_t> out;
  const Elem z = g.zero();
  for (std::uint32_t m = 1; m < (1u << s.size()); ++m)
    if ((max_len == 0 || popcount(m) <= max_len) && subset_sum(g, s, m) == z) out.push_back(m);
  return out;
}

inline bool has_zero_sum(const Group& g, const std::vector<Elem>& s, std::int64_t max_len = 0) {
  return !zero_sum_masks(g, s, max_len).empty();
}

// Largest number of pairwise disjoint nonempty zero-sum subsequences.
inline int max_disjoint(const Group& g, const std::vector<Elem>& s, std::int64_t max_len = 0) {
  const auto masks = zero_sum_masks(g, s, max_len);
  std::map<std::uint32_t, int> memo;
  std::function<int(std::uint32_t)> best = [&](std::uint32_t avail) -> int {
    if (!avail) return 0;
    auto it = memo.find(avail);
    if (it != memo.end()) return it->second;
    const std::uint32_t low = avail & (~avail + 1);
    int b = best(avail & ~low);
    for (auto m : masks)
      if ((m & low) && (m & avail) == m) b = std::max(b, 1 + best(avail & ~m));
    memo[avail] = b;
    return b;
  };
  return best((s.size() >= 32 ? 0u : (1u << s.size())) - 1);
}

// Calls f on every multiset of length len over the elements, as a vector.
inline void for_each_multiset(const std::vector<Elem>& elems, int len, const std::function<void(const std::vector<Elem>&)>& f) {
  std::vector<Elem> cur;
  std::function<void(std::size_t, int)> rec = [&](std::size_t start, int left) {
    if (left == 0) {
      f(cur);
      return;
    }
    for (std::size_t i = start; i < elems.size(); ++i) {
      cur.push_back(elems[i]);
      rec(i, left - 1);
      cur.pop_back();
    }
  };
  rec(0, len);
}

// Least L such that every length-L sequence has r disjoint zero-sums
// (short ones, of length <= exp, when `short_sums`).
inline int invariant(const Group& g, int r, bool short_sums) {
  const auto elems = g.elements();
  const std::int64_t max_len = short_sums ? g.exponent() : 0;
  for (int len = 1;; ++len) {
    bool all = true;
    for_each_multiset(elems, len, [&](const std::vector<Elem>& s) {
      if (all && max_disjoint(g, s, max_len) < r) all = false;
    });
    if (all) return len;
  }
}

}  // namespace oracle
