// Exhaustive check of structured sequences over C_p^d x C_q.
//
// A sequence is laid out as blocks y = 1, ..., q-1, 0 of fixed sizes; only
// the multiset of x-values inside each block matters, so each block is
// filled in non-decreasing x order. Linear automorphisms of C_p^d acting on
// the x part preserve the layout; the element chosen at each step must be
// the least of its orbit under the automorphisms fixing every earlier x.
#include "zsum/conjecture.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <mutex>
#include <thread>

#include "json.hpp"
#include "zsum/automorphism.hpp"
#include "zsum/errors.hpp"
#include "zsum/group_table.hpp"
#include "zsum/sequence_io.hpp"
#include "zsum/simd/kernels.hpp"

namespace zsum {

namespace {

using Clock = std::chrono::steady_clock;

struct Block {
  std::int64_t y;
  std::int64_t size;
};

std::vector<Block> layout(std::int64_t m, std::int64_t q, const std::vector<std::int64_t>& sig) {
  std::vector<Block> out;
  std::int64_t r = 0;
  for (std::int64_t i = 1; i < q; ++i) {
    const std::int64_t k = sig[static_cast<std::size_t>(i - 1)];
    r += k;
    if (k > 0) out.push_back(Block{i, k});
  }
  if (m > r) out.push_back(Block{0, m - r});
  return out;
}

BigInt multichoose(std::int64_t n, std::int64_t k) {
  // C(n + k - 1, k)
  BigInt c = 1;
  for (std::int64_t i = 1; i <= k; ++i) c = c * (n + k - i) / i;
  return c;
}

struct Shared {
  std::uint64_t max_nodes;
  Clock::time_point deadline;
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> stop{false};
  std::atomic<bool> budget_hit{false};
};

struct UnitResult {
  std::uint64_t nodes = 0;
  std::uint64_t candidates = 0;
  bool completed = false;
  std::optional<std::vector<std::uint32_t>> counterexample;  // element indices
};

class Walker {
 public:
  Walker(const GroupTable& t, std::uint32_t xsize, const AutomorphismSet& aut, std::vector<Block> blocks,
         Shared& shared)
      : t_(t),
        xs_(xsize),
        q_(static_cast<std::uint32_t>(t.size() / xsize)),
        aut_(aut),
        blocks_(std::move(blocks)),
        shared_(shared),
        k_(simd::active()),
        stride_(simd::padded_size(t.size())) {
    for (const auto& b : blocks_) m_ += static_cast<std::size_t>(b.size);
    tables_.assign((m_ + 1) * stride_, 0);
    tables_[0] = 1;
    stabs_.resize(m_ + 1);
    for (std::size_t i = 0; i < aut.size(); ++i) stabs_[0].push_back(static_cast<std::uint32_t>(i));
  }

  // Root node: returns the viable first elements (as x values) after the
  // root's own bound checks, filling `acct` with the root's work.
  std::vector<std::uint32_t> root(UnitResult& acct) {
    acct = {};
    ++acct.nodes;
    std::vector<std::uint32_t> out;
    if (m_ == 0 || closed(0, 0, 0, 0)) {
      ++acct.candidates;
      acct.completed = true;
      return out;
    }
    for (std::uint32_t x = 0; x < xs_; ++x) {
      const std::uint32_t g = elem(x, 0);
      if (table(0)[t_.neg(g)]) {
        ++acct.candidates;
        continue;
      }
      if (orbit_min(0, x)) out.push_back(x);
    }
    acct.completed = true;
    return out;
  }

  UnitResult branch(std::uint32_t x0) {
    acct_ = {};
    path_.clear();
    if (m_ == 0) return acct_;
    descend(0, 0, x0);
    bool ok = dfs(1, next_block(0, 1), next_start(0, 1, x0), next_filled(0, 1));
    path_.clear();
    acct_.completed = ok;
    return acct_;
  }

 private:
  std::uint32_t elem(std::uint32_t x, std::size_t block) const {
    return x * q_ + static_cast<std::uint32_t>(blocks_[block].y);
  }
  std::uint8_t* table(std::size_t depth) { return &tables_[depth * stride_]; }

  bool orbit_min(std::size_t depth, std::uint32_t x) const {
    for (auto a : stabs_[depth])
      if (aut_.perm(a)[x] < x) return false;
    return true;
  }

  // Where the walk continues after placing an element of `block` that made
  // `filled` elements in that block.
  std::size_t next_block(std::size_t block, std::int64_t filled) const {
    return filled == blocks_[block].size ? block + 1 : block;
  }
  std::uint32_t next_start(std::size_t block, std::int64_t filled, std::uint32_t x) const {
    return filled == blocks_[block].size ? 0 : x;
  }
  std::int64_t next_filled(std::size_t block, std::int64_t filled) const {
    return filled == blocks_[block].size ? 0 : filled;
  }

  void descend(std::size_t depth, std::size_t block, std::uint32_t x) {
    const std::uint32_t g = elem(x, block);
    k_.translate_or(table(depth + 1), table(depth), t_.shift(g), t_.size());
    auto& next = stabs_[depth + 1];
    next.clear();
    for (auto a : stabs_[depth])
      if (aut_.perm(a)[x] == x) next.push_back(a);
    path_.push_back(g);
  }

  // Copies of g that can still be appended without reaching zero.
  std::int64_t copies(const std::uint8_t* tb, std::uint32_t g) const {
    std::int64_t j = 0;
    for (std::uint32_t x = g; !tb[t_.neg(x)]; x = t_.add(x, g)) ++j;
    return j;
  }

  // True when every completion of this node is forced to hold a zero-sum.
  bool closed(std::size_t depth, std::size_t block, std::uint32_t start, std::int64_t filled) {
    const std::uint8_t* tb = table(depth);
    const std::size_t remaining = m_ - depth;
    // A zero-sum free extension adds at least one new subset sum per element.
    if (k_.count_nonzero(tb, t_.size()) + remaining > t_.size()) return true;
    for (std::size_t b = block; b < blocks_.size(); ++b) {
      const std::int64_t slots = b == block ? blocks_[b].size - filled : blocks_[b].size;
      std::int64_t cap = 0;
      for (std::uint32_t x = b == block ? start : 0; x < xs_ && cap < slots; ++x) cap += copies(tb, elem(x, b));
      if (cap < slots) return true;
    }
    return false;
  }

  // Returns false if stopped early.
  bool dfs(std::size_t depth, std::size_t block, std::uint32_t start, std::int64_t filled) {
    ++acct_.nodes;
    const std::uint64_t n = shared_.nodes.fetch_add(1, std::memory_order_relaxed) + 1;
    if (n > shared_.max_nodes || ((n & 1023) == 0 && Clock::now() > shared_.deadline)) {
      shared_.budget_hit = true;
      shared_.stop = true;
    }
    if (shared_.stop.load(std::memory_order_relaxed)) return false;
    if (depth == m_) {
      acct_.counterexample = path_;
      shared_.stop = true;
      return true;
    }
    if (closed(depth, block, start, filled)) {
      ++acct_.candidates;
      return true;
    }
    const std::uint8_t* tb = table(depth);
    for (std::uint32_t x = start; x < xs_; ++x) {
      const std::uint32_t g = elem(x, block);
      if (tb[t_.neg(g)]) {
        ++acct_.candidates;
        continue;
      }
      if (!orbit_min(depth, x)) continue;
      descend(depth, block, x);
      const std::int64_t f = filled + 1;
      const bool ok = dfs(depth + 1, next_block(block, f), next_start(block, f, x), next_filled(block, f));
      path_.pop_back();
      if (!ok || acct_.counterexample) return ok;
    }
    return true;
  }

  const GroupTable& t_;
  const std::uint32_t xs_;
  const std::uint32_t q_;
  const AutomorphismSet& aut_;
  std::vector<Block> blocks_;
  Shared& shared_;
  const simd::Kernels& k_;
  const std::size_t stride_;
  std::size_t m_ = 0;
  std::vector<std::uint8_t> tables_;
  std::vector<std::vector<std::uint32_t>> stabs_;
  std::vector<std::uint32_t> path_;
  UnitResult acct_;
};

// Independent re-check: no nonempty subset of the elements sums to zero.
bool subset_scan_zero_sum_free(const GroupSpec& g, const std::vector<GroupElement>& elems) {
  const std::size_t n = elems.size();
  if (n > 24) throw InvalidInput("subset scan limited to 24 elements");
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    GroupElement acc = zero(g);
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) acc = element_add(g, acc, elems[i]);
    if (acc == zero(g)) return false;
  }
  return true;
}

void save_checkpoint(const std::filesystem::path& path, const ConjectureCheckpoint& c) {
  auto tmp = path;
  tmp += ".tmp";
  write_text_file(tmp, write_checkpoint(c));
  std::filesystem::rename(tmp, path);
}

}  // namespace

std::string write_checkpoint(const ConjectureCheckpoint& c) {
  nlohmann::ordered_json j;
  j["p"] = c.p;
  j["q"] = c.q;
  j["d"] = c.d;
  j["next_signature"] = c.next_signature;
  j["next_branch"] = c.next_branch;
  j["candidates_checked"] = c.candidates_checked;
  j["nodes"] = c.nodes;
  return j.dump() + "\n";
}

ConjectureCheckpoint read_checkpoint(const std::string& text) {
  try {
    auto j = nlohmann::json::parse(text);
    ConjectureCheckpoint c;
    c.p = j.at("p").get<std::int64_t>();
    c.q = j.at("q").get<std::int64_t>();
    c.d = j.at("d").get<int>();
    c.next_signature = j.at("next_signature").get<std::uint64_t>();
    c.next_branch = j.at("next_branch").get<std::uint64_t>();
    c.candidates_checked = j.at("candidates_checked").get<std::uint64_t>();
    c.nodes = j.at("nodes").get<std::uint64_t>();
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed checkpoint: ") + e.what());
  }
}

std::string_view conjecture_status_name(ConjectureStatus s) {
  switch (s) {
    case ConjectureStatus::verified: return "verified";
    case ConjectureStatus::counterexample: return "counterexample";
    case ConjectureStatus::budget_exceeded: return "budget-exceeded";
  }
  return "?";
}

std::vector<std::vector<std::int64_t>> conjecture_signatures(std::int64_t p, std::int64_t q, std::int64_t m) {
  std::vector<std::vector<std::int64_t>> out;
  if (q < 2) return out;
  std::vector<std::int64_t> sig(static_cast<std::size_t>(q - 1), 0);
  // Odometer over all tuples with sum <= m, lexicographic.
  auto rec = [&](auto&& self, std::size_t i, std::int64_t used) -> void {
    if (i == sig.size()) {
      std::int64_t weighted = 0;
      for (std::size_t k = 0; k < sig.size(); ++k) weighted = (weighted + static_cast<std::int64_t>(k + 1) * sig[k]) % q;
      if (used >= p * q + 1 && weighted == 0) out.push_back(sig);
      return;
    }
    for (std::int64_t v = 0; used + v <= m; ++v) {
      sig[i] = v;
      self(self, i + 1, used + v);
    }
    sig[i] = 0;
  };
  rec(rec, 0, 0);
  return out;
}

ConjectureVerdict conjecture1_check(std::int64_t p, std::int64_t q, int d, const ConjectureOptions& options) {
  if (!is_prime(p)) throw InvalidInput("p must be prime");
  if (q < 1) throw InvalidInput("q must be at least 1");
  if (gcd(p, q) != 1) throw InvalidInput("p and q must be coprime");
  if (d < 3) throw InvalidInput("d must be at least 3");
  options.budget.validate();
  const std::int64_t m = options.length.value_or(StructuredSequence::length_for(p, q, d));
  if (m < 1) throw InvalidInput("sequence length must be positive");
  std::vector<std::int64_t> orders(static_cast<std::size_t>(d), p);
  const GroupSpec xgroup(orders);
  orders.push_back(q);
  const GroupSpec group(orders);
  if (group.cardinality() > GroupTable::max_order) throw InvalidInput("p^d q exceeds the dense-table limit");
  if (m > 24) throw InvalidInput("sequence length m exceeds the desk-scale guard of 24");
  const GroupTable table(group);
  const GroupTable xtable(xgroup);
  const AutomorphismSet aut(xtable, options.budget.max_automorphisms);

  ConjectureVerdict verdict;
  const auto sigs = conjecture_signatures(p, q, m);
  verdict.signatures = sigs.size();
  verdict.search_space_size = 0;
  for (const auto& sig : sigs) {
    BigInt prod = 1;
    for (const auto& b : layout(m, q, sig)) prod *= multichoose(xtable.size(), b.size);
    verdict.search_space_size += prod;
  }

  ConjectureCheckpoint cur{p, q, d, 0, 0, 0, 0};
  if (options.resume_from) {
    const auto& r = *options.resume_from;
    if (r.p != p || r.q != q || r.d != d) throw InvalidInput("checkpoint is for a different (p, q, d)");
    if (r.next_signature > sigs.size()) throw InvalidInput("checkpoint cursor out of range");
    cur = r;
  }

  Shared shared;
  shared.max_nodes = options.budget.max_nodes;
  shared.deadline = Clock::now() + std::chrono::milliseconds(static_cast<std::int64_t>(options.budget.max_seconds * 1000));
  const unsigned threads =
      options.budget.deterministic ? 1u
                                   : (options.budget.threads ? options.budget.threads
                                                             : std::max(1u, std::thread::hardware_concurrency()));

  std::optional<std::vector<std::uint32_t>> found;
  std::vector<std::int64_t> found_sig;
  while (cur.next_signature < sigs.size() && !found && !shared.stop) {
    const auto& sig = sigs[cur.next_signature];
    const auto blocks = layout(m, q, sig);
    Walker root_walker(table, xtable.size(), aut, blocks, shared);
    UnitResult root_acct;
    const auto branches = root_walker.root(root_acct);
    // Unit 0 is the root itself, unit k >= 1 the (k-1)-th branch.
    const std::size_t units = branches.size() + 1;
    if (cur.next_branch > units) throw InvalidInput("checkpoint cursor out of range");
    std::vector<UnitResult> results(units);
    std::vector<bool> done(units, false);
    std::size_t first_open = cur.next_branch;
    std::mutex mu;
    std::atomic<std::size_t> next{cur.next_branch};

    auto advance = [&] {
      // Fold finished units into the cursor in order.
      while (first_open < units && done[first_open]) {
        cur.nodes += results[first_open].nodes;
        cur.candidates_checked += results[first_open].candidates;
        ++first_open;
        cur.next_branch = first_open;
        if (options.checkpoint_file && first_open < units) save_checkpoint(*options.checkpoint_file, cur);
      }
    };
    auto worker = [&] {
      Walker w(table, xtable.size(), aut, blocks, shared);
      for (;;) {
        const std::size_t u = next.fetch_add(1);
        if (u >= units || shared.stop) return;
        UnitResult res;
        if (u == 0) {
          res = root_acct;
        } else {
          res = w.branch(branches[u - 1]);
        }
        std::lock_guard lock(mu);
        if (res.counterexample) {
          if (!found) {
            found = res.counterexample;
            found_sig = sig;
          }
          return;
        }
        if (!res.completed) return;
        results[u] = res;
        done[u] = true;
        advance();
      }
    };
    if (threads <= 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }
    if (first_open == units && !found) {
      ++cur.next_signature;
      cur.next_branch = 0;
      if (options.checkpoint_file) save_checkpoint(*options.checkpoint_file, cur);
    }
  }

  verdict.cursor = cur;
  verdict.candidates_checked = cur.candidates_checked;
  verdict.nodes = cur.nodes;
  if (found) {
    std::vector<GroupElement> full;
    for (auto g : *found) full.push_back(table.element(g));
    if (!subset_scan_zero_sum_free(group, full))
      throw std::logic_error("claimed counterexample has a zero-sum subsequence");
    verdict.status = ConjectureStatus::counterexample;
    verdict.counterexample = PairSequence::from_elements(group, full);
    verdict.counterexample_blocks = found_sig;
    return verdict;
  }
  verdict.status = cur.next_signature >= sigs.size() ? ConjectureStatus::verified : ConjectureStatus::budget_exceeded;
  return verdict;
}

}  // namespace zsum
