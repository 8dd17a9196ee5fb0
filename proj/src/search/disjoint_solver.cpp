#include "zsum/detail/disjoint_solver.hpp"

#include <algorithm>
#include <numeric>

#include "zsum/simd/kernels.hpp"

namespace zsum::detail {

DisjointSolver::DisjointSolver(const GroupTable& table, std::uint32_t max_block, std::size_t memo_limit)
    : t_(table),
      n_(table.size()),
      max_block_(max_block),
      memo_limit_(memo_limit),
      stride_(simd::padded_size(table.size())) {}

std::string DisjointSolver::key(const Counts& s, int r) const {
  std::string k;
  k.reserve(32);
  k.push_back(static_cast<char>(r & 0xFF));
  k.push_back(static_cast<char>(r >> 8));
  for (std::uint32_t i = 0; i < n_; ++i) {
    if (!s[i]) continue;
    k.push_back(static_cast<char>(i & 0xFF));
    k.push_back(static_cast<char>(i >> 8));
    k.push_back(static_cast<char>(s[i] & 0xFF));
    k.push_back(static_cast<char>(s[i] >> 8));
  }
  return k;
}

template <class Visit>
bool DisjointSolver::block_dfs(const Counts& avail, std::uint32_t target, std::uint32_t limit, std::uint32_t start,
                               std::uint32_t sum, std::uint32_t depth, Counts& z, Visit& visit) {
  // Reach table of z (empty sum included) sits at arena slot `depth` of the
  // current nesting level.
  std::uint8_t* reach = levels_.back() + depth * stride_;
  for (std::uint32_t h = start; h < n_; ++h) {
    if (avail[h] <= z[h]) continue;
    if (reach[t_.neg(h)]) continue;  // h would close a zero-sum inside z
    const std::uint32_t next_sum = t_.add(sum, h);
    ++z[h];
    if (next_sum == target && visit(z)) {
      --z[h];
      return true;
    }
    if (depth + 1 < limit) {
      simd::active().translate_or(reach + stride_, reach, t_.shift(h), n_);
      if (block_dfs(avail, target, limit, h, next_sum, depth + 1, z, visit)) {
        --z[h];
        return true;
      }
    }
    --z[h];
  }
  return false;
}

template <class Visit>
bool DisjointSolver::for_each_block(const Counts& avail, std::uint32_t target, std::uint32_t limit, Visit&& visit) {
  if (limit == 0) return false;
  const std::uint32_t depth_cap = std::min(limit, n_);
  const std::size_t level = levels_.size();
  if (level == arenas_.size()) arenas_.emplace_back();
  auto& arena = arenas_[level];
  const std::size_t need = (static_cast<std::size_t>(depth_cap) + 1) * stride_;
  if (arena.size() < need) arena.assign(need, 0);
  std::fill_n(arena.begin(), stride_, std::uint8_t{0});
  arena[0] = 1;
  levels_.push_back(arena.data());
  Counts z(n_, 0);
  bool hit = block_dfs(avail, target, depth_cap, 0, 0, 0, z, visit);
  levels_.pop_back();
  return hit;
}

bool DisjointSolver::solve(Counts& s, int r, std::vector<Counts>* out) {
  if (r <= 0) return true;
  const std::size_t out_mark = out ? out->size() : 0;
  if (s[0] > 0) {
    // A zero is a block by itself; taking it never hurts.
    const int take = std::min<int>(s[0], r);
    if (out)
      for (int i = 0; i < take; ++i) {
        Counts b(n_, 0);
        b[0] = 1;
        out->push_back(std::move(b));
      }
    s[0] = static_cast<std::uint16_t>(s[0] - take);
    bool ok = solve(s, r - take, out);
    s[0] = static_cast<std::uint16_t>(s[0] + take);
    if (!ok && out) out->resize(out_mark);
    return ok;
  }
  const std::uint64_t total = std::accumulate(s.begin(), s.end(), std::uint64_t{0});
  if (total < 2 * static_cast<std::uint64_t>(r)) return false;

  // A memoized "yes" still needs the search when blocks are requested.
  std::string k = key(s, r);
  if (auto it = memo_.find(k); it != memo_.end() && (!out || !it->second)) return it->second;

  std::uint32_t g = 0;
  while (s[g] == 0) ++g;
  const std::uint32_t zlimit = max_block_ ? max_block_ - 1 : n_;
  --s[g];
  bool found = for_each_block(s, t_.neg(g), zlimit, [&](const Counts& z) {
    for (std::uint32_t i = 0; i < n_; ++i) s[i] = static_cast<std::uint16_t>(s[i] - z[i]);
    bool ok = solve(s, r - 1, out);
    for (std::uint32_t i = 0; i < n_; ++i) s[i] = static_cast<std::uint16_t>(s[i] + z[i]);
    if (ok && out) {
      Counts b = z;
      ++b[g];
      out->push_back(std::move(b));
    }
    return ok;
  });
  ++s[g];
  if (!found) {
    const std::uint16_t saved = s[g];
    s[g] = 0;
    found = solve(s, r, out);
    s[g] = saved;
  }
  if (!found && out) out->resize(out_mark);
  if (memo_.size() >= memo_limit_) memo_.clear();
  memo_.emplace(std::move(k), found);
  return found;
}

bool DisjointSolver::at_least(const Counts& s, int r) {
  Counts work = s;
  return solve(work, r, nullptr);
}

std::optional<std::vector<Counts>> DisjointSolver::family(const Counts& s, int r) {
  Counts work = s;
  std::vector<Counts> blocks;
  if (!solve(work, r, &blocks)) return std::nullopt;
  std::reverse(blocks.begin(), blocks.end());
  return blocks;
}

bool DisjointSolver::extends(const Counts& s, std::uint32_t g, int k) {
  if (g == 0) return true;
  const std::uint32_t zlimit = max_block_ ? max_block_ - 1 : n_;
  Counts work = s;
  if (k == 0) return for_each_block(work, t_.neg(g), zlimit, [](const Counts&) { return true; });
  return for_each_block(work, t_.neg(g), zlimit, [&](const Counts& z) {
    for (std::uint32_t i = 0; i < n_; ++i) work[i] = static_cast<std::uint16_t>(work[i] - z[i]);
    bool ok = solve(work, k, nullptr);
    for (std::uint32_t i = 0; i < n_; ++i) work[i] = static_cast<std::uint16_t>(work[i] + z[i]);
    return ok;
  });
}

}  // namespace zsum::detail
