// Branch and bound for the longest sequence lacking the forced structure.
//
// Sequences are grown in non-decreasing index order. Two reductions keep the
// tree small:
//   - symmetry: the element chosen at each level must be the least of its
//     orbit under the automorphisms that fix every earlier choice;
//   - bounds: an extension can add at most as many elements as there are
//     unreachable sums (zero-sum free case), and at most the number of
//     copies of each candidate that keep the property, summed over
//     candidates. For r >= 2, a prefix with a zero-sum of length t caps
//     every extension at t + L_{r-1}, where L_k is the answer for k.
#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <map>
#include <memory>
#include <mutex>
#include <thread>
#include <unordered_map>

#include "zsum/automorphism.hpp"
#include "zsum/detail/disjoint_solver.hpp"
#include "zsum/errors.hpp"
#include "zsum/group_table.hpp"
#include "zsum/search.hpp"
#include "zsum/simd/kernels.hpp"

namespace zsum {

namespace {

using Clock = std::chrono::steady_clock;
using detail::Counts;
using Path = std::vector<std::uint16_t>;

struct Control {
  std::uint64_t max_nodes = 0;
  Clock::time_point deadline;
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> aborted{false};

  bool tick() {
    const std::uint64_t n = nodes.fetch_add(1, std::memory_order_relaxed) + 1;
    if (n > max_nodes || ((n & 1023) == 0 && Clock::now() > deadline)) aborted.store(true, std::memory_order_relaxed);
    return !aborted.load(std::memory_order_relaxed);
  }
  bool stopped() const { return aborted.load(std::memory_order_relaxed); }
};

struct Incumbent {
  std::atomic<int> best{0};
  std::mutex mu;
  Path seq;

  void seed(Path p) {
    best = static_cast<int>(p.size());
    seq = std::move(p);
  }
  void offer(const Path& p) {
    const int len = static_cast<int>(p.size());
    if (len <= best.load(std::memory_order_relaxed)) return;
    std::lock_guard lock(mu);
    if (len > best.load()) {
      seq = p;
      best.store(len);
    }
  }
};

// Shared per-search machinery: per-depth tables, stabilizer lists, path.
class SearchBase {
 public:
  SearchBase(const GroupTable& t, const AutomorphismSet& aut, Control& ctl, Incumbent& inc, std::size_t max_depth)
      : t_(t), aut_(aut), ctl_(ctl), inc_(inc), n_(t.size()), stride_(simd::padded_size(t.size())),
        k_(simd::active()) {
    tables_.assign((max_depth + 2) * stride_, 0);
    stabs_.resize(max_depth + 2);
    stabs_[0].resize(aut.size());
    for (std::size_t i = 0; i < aut.size(); ++i) stabs_[0][i] = static_cast<std::uint32_t>(i);
  }

 protected:
  std::uint8_t* table(std::size_t depth) { return &tables_[depth * stride_]; }

  // g is the least element of its orbit under the current stabilizer.
  bool orbit_min(std::size_t depth, std::uint32_t g) const {
    for (auto a : stabs_[depth])
      if (aut_.perm(a)[g] < g) return false;
    return true;
  }
  void narrow_stab(std::size_t depth, std::uint32_t g) {
    auto& next = stabs_[depth + 1];
    next.clear();
    for (auto a : stabs_[depth])
      if (aut_.perm(a)[g] == g) next.push_back(a);
  }

  const GroupTable& t_;
  const AutomorphismSet& aut_;
  Control& ctl_;
  Incumbent& inc_;
  const std::uint32_t n_;
  const std::size_t stride_;
  const simd::Kernels& k_;
  std::vector<std::uint8_t> tables_;
  std::vector<std::vector<std::uint32_t>> stabs_;
  Path path_;
};

// r = 1: zero-sum free (D) or short-zero-sum free (eta) sequences.
class SingleSearch : SearchBase {
 public:
  SingleSearch(const GroupTable& t, const AutomorphismSet& aut, Control& ctl, Incumbent& inc, bool eta)
      : SearchBase(t, aut, ctl, inc, t.size() + 1), eta_(eta), e_(static_cast<int>(t.exponent())) {
    std::uint8_t* root = table(0);
    if (eta_) {
      std::fill_n(root, stride_, static_cast<std::uint8_t>(e_));
      root[0] = 0;
    } else {
      std::fill_n(root, stride_, std::uint8_t{0});
      root[0] = 1;
    }
    key_bytes_ = eta_ ? n_ : (n_ + 7) / 8;
    memo_limit_ = (std::size_t{192} << 20) / (key_bytes_ + 72);
  }

  void run_all() { dfs(0, 0); }

  std::vector<std::uint32_t> root_branches() {
    ctl_.tick();
    std::vector<std::uint32_t> out;
    for (std::uint32_t g = 0; g < n_; ++g)
      if (feasible(table(0), g) && orbit_min(0, g)) out.push_back(g);
    return out;
  }

  void run_branch(std::uint32_t g) {
    descend(0, g);
    path_.push_back(static_cast<std::uint16_t>(g));
    dfs(1, g);
    path_.pop_back();
  }

 private:
  bool feasible(const std::uint8_t* tb, std::uint32_t g) const {
    return eta_ ? tb[t_.neg(g)] >= e_ : tb[t_.neg(g)] == 0;
  }

  // Copies of g that can still be appended without creating the structure.
  int copies(const std::uint8_t* tb, std::uint32_t g) const {
    int j = 0;
    std::uint32_t x = g;
    for (int i = 1;; ++i, x = t_.add(x, g)) {
      std::uint8_t v = tb[t_.neg(x)];
      if (eta_ ? v + i <= e_ : v != 0) return j;
      ++j;
    }
  }

  void descend(std::size_t depth, std::uint32_t g) {
    if (eta_)
      k_.translate_min_inc(table(depth + 1), table(depth), t_.shift(g), n_);
    else
      k_.translate_or(table(depth + 1), table(depth), t_.shift(g), n_);
    narrow_stab(depth, g);
  }

  std::string key(const std::uint8_t* tb, std::uint32_t start) const {
    std::string k(key_bytes_ + 2, '\0');
    if (eta_) {
      std::copy_n(tb, n_, k.begin());
    } else {
      for (std::uint32_t i = 0; i < n_; ++i)
        if (tb[i]) k[i >> 3] = static_cast<char>(k[i >> 3] | (1 << (i & 7)));
    }
    k[key_bytes_] = static_cast<char>(start & 0xFF);
    k[key_bytes_ + 1] = static_cast<char>(start >> 8);
    return k;
  }

  // Returns an upper bound on how many more elements this node can take.
  int dfs(std::size_t depth, std::uint32_t start) {
    if (!ctl_.tick()) return 0;
    if (static_cast<int>(depth) > inc_.best.load(std::memory_order_relaxed)) inc_.offer(path_);
    const int best = inc_.best.load(std::memory_order_relaxed);
    const int len = static_cast<int>(depth);
    const std::uint8_t* tb = table(depth);

    if (!eta_) {
      const int unreachable = static_cast<int>(n_ - k_.count_nonzero(tb, n_));
      if (len + unreachable <= best) return unreachable;
    }
    int capsum = 0;
    for (std::uint32_t g = start; g < n_ && len + capsum <= best; ++g) capsum += copies(tb, g);
    if (len + capsum <= best) return capsum;

    const bool memo_ok = stabs_[depth].empty();
    std::string k;
    if (memo_ok) {
      k = key(tb, start);
      auto it = memo_.find(k);
      if (it != memo_.end() && len + it->second <= best) return it->second;
    }

    int ub = 0;
    for (std::uint32_t g = start; g < n_; ++g) {
      if (!feasible(tb, g) || !orbit_min(depth, g)) continue;
      descend(depth, g);
      path_.push_back(static_cast<std::uint16_t>(g));
      const int sub = dfs(depth + 1, g);
      path_.pop_back();
      ub = std::max(ub, sub + 1);
      if (ctl_.stopped()) return ub;
    }
    if (memo_ok) {
      if (memo_.size() >= memo_limit_) memo_.clear();
      memo_[std::move(k)] = ub;
    }
    return ub;
  }

  const bool eta_;
  const int e_;
  std::size_t key_bytes_ = 0;
  std::size_t memo_limit_ = 0;
  std::unordered_map<std::string, int> memo_;
};

// r >= 2: no r disjoint (short) zero-sums. lower[k] = L_k for k < r.
class MultiSearch : SearchBase {
 public:
  MultiSearch(const GroupTable& t, const AutomorphismSet& aut, Control& ctl, Incumbent& inc, bool eta, int r,
              std::vector<int> lower, std::size_t max_depth)
      : SearchBase(t, aut, ctl, inc, max_depth),
        eta_(eta),
        r_(r),
        e_(static_cast<int>(t.exponent())),
        cap_(eta ? static_cast<int>(t.exponent()) : 254),
        lower_(std::move(lower)),
        solver_(t, eta ? t.exponent() : 0),
        counts_(t.size(), 0),
        f_(max_depth + 2, 0),
        t1_(max_depth + 2, 255) {
    std::uint8_t* root = table(0);
    std::fill_n(root, stride_, static_cast<std::uint8_t>(cap_));
    root[0] = 0;
  }

  void run_all() { dfs(0, 0); }

  std::vector<std::uint32_t> root_branches() {
    ctl_.tick();
    std::vector<std::uint32_t> out;
    for (std::uint32_t g = 0; g < n_; ++g)
      if (orbit_min(0, g)) out.push_back(g);
    return out;
  }

  void run_branch(std::uint32_t g) {
    if (!try_child(0, g)) return;
  }

 private:
  int max_copies(std::uint32_t g) const { return r_ * static_cast<int>(t_.order(g)) - 1; }

  // Applies the child checks for appending g at `depth`; recurses if viable.
  bool try_child(std::size_t depth, std::uint32_t g) {
    if (counts_[g] + 1 > max_copies(g)) return false;
    const std::uint8_t* tb = table(depth);
    const int best = inc_.best.load(std::memory_order_relaxed);
    int tau = best - lower_[r_ - 1];
    if (eta_) tau = std::min(tau, e_);
    const int through_g = tb[t_.neg(g)] >= cap_ ? 255 : tb[t_.neg(g)] + 1;
    const int t1 = std::min<int>(t1_[depth], through_g);
    if (t1 <= tau) return false;
    const int f = f_[depth];
    const int nf = f + (solver_.extends(counts_, g, f) ? 1 : 0);
    if (nf >= r_) return false;
    k_.translate_min_inc(table(depth + 1), tb, t_.shift(g), n_);
    narrow_stab(depth, g);
    f_[depth + 1] = nf;
    t1_[depth + 1] = static_cast<std::uint8_t>(t1);
    ++counts_[g];
    path_.push_back(static_cast<std::uint16_t>(g));
    dfs(depth + 1, g);
    path_.pop_back();
    --counts_[g];
    return true;
  }

  void dfs(std::size_t depth, std::uint32_t start) {
    if (!ctl_.tick()) return;
    if (static_cast<int>(depth) > inc_.best.load(std::memory_order_relaxed)) inc_.offer(path_);
    const int best = inc_.best.load(std::memory_order_relaxed);
    const int len = static_cast<int>(depth);
    const int f = f_[depth];
    if (f >= 1 && len + lower_[r_ - f] <= best) return;
    if (depth + 1 >= f_.size()) return;

    int tau = best - lower_[r_ - 1];
    if (eta_) tau = std::min(tau, e_);
    const std::uint8_t* tb = table(depth);
    int capsum = 0;
    for (std::uint32_t g = start; g < n_ && len + capsum <= best; ++g) {
      const int limit = max_copies(g) - counts_[g];
      int j = 0;
      std::uint32_t x = g;
      for (int i = 1; j < limit; ++i, x = t_.add(x, g)) {
        const int v = tb[t_.neg(x)];
        if (v < cap_ && v + i <= tau) break;
        ++j;
      }
      capsum += j;
    }
    if (len + capsum <= best) return;

    for (std::uint32_t g = start; g < n_; ++g) {
      if (!orbit_min(depth, g)) continue;
      try_child(depth, g);
      if (ctl_.stopped()) return;
    }
  }

  const bool eta_;
  const int r_;
  const int e_;
  const int cap_;
  std::vector<int> lower_;
  detail::DisjointSolver solver_;
  Counts counts_;
  std::vector<int> f_;
  std::vector<std::uint8_t> t1_;
};

template <class Search, class Make>
void run_search(Make make, unsigned threads, Control& ctl) {
  if (threads <= 1) {
    auto s = make();
    s->run_all();
    return;
  }
  auto probe = make();
  const auto branches = probe->root_branches();
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < threads; ++w)
    pool.emplace_back([&] {
      try {
        auto s = make();
        while (!ctl.stopped()) {
          const std::size_t i = next.fetch_add(1);
          if (i >= branches.size()) break;
          s->run_branch(branches[i]);
        }
      } catch (...) {
        std::lock_guard lock(failure_mu);
        failure = std::current_exception();
        ctl.aborted = true;
      }
    });
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

struct CacheKey {
  GroupSpec group;
  Invariant inv;
  int r;
  friend auto operator<=>(const CacheKey&, const CacheKey&) = default;
};

std::mutex cache_mu;
std::map<CacheKey, ComputeResult>& result_cache() {
  static std::map<CacheKey, ComputeResult> c;
  return c;
}

Path to_path(const GroupTable& t, const GSequence& s) {
  Path p;
  for (const auto& [e, k] : s.entries())
    for (std::int64_t i = 0; i < k; ++i) p.push_back(static_cast<std::uint16_t>(t.index(e)));
  return p;
}

GSequence to_sequence(const GroupTable& t, const Path& p) {
  GSequence s(t.spec());
  for (auto i : p) s.insert(t.element(i));
  return s;
}

Counts to_counts(const GroupTable& t, const Path& p) {
  Counts c(t.size(), 0);
  for (auto i : p) ++c[i];
  return c;
}

class Engine {
 public:
  Engine(GroupSpec canonical, const SearchBudget& budget)
      : budget_(budget), table_(GroupTable::shared(canonical)) {
    ctl_.max_nodes = budget.max_nodes;
    ctl_.deadline = Clock::now() + std::chrono::milliseconds(static_cast<std::int64_t>(budget.max_seconds * 1000.0));
    threads_ = budget.deterministic ? 1 : (budget.threads ? budget.threads : std::max(1u, std::thread::hardware_concurrency()));
  }

  ComputeResult run(Invariant inv, int r) {
    const auto start = Clock::now();
    const bool eta = inv == Invariant::eta || inv == Invariant::eta_r;
    ComputeResult res = level(eta, r);
    res.invariant = inv;
    res.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    res.nodes_visited = ctl_.nodes.load() + replayed_;
    return res;
  }

 private:
  const AutomorphismSet& automorphisms() {
    if (!aut_) aut_ = std::make_unique<AutomorphismSet>(*table_, budget_.max_automorphisms);
    return *aut_;
  }

  // Exact (or best-effort) answer for level r, as a ComputeResult whose
  // invariant field is normalized to eta/D by r.
  ComputeResult level(bool eta, int r) {
    const Invariant inv = eta ? (r == 1 ? Invariant::eta : Invariant::eta_r)
                              : (r == 1 ? Invariant::davenport : Invariant::davenport_r);
    const CacheKey ck{table_->spec(), eta ? Invariant::eta_r : Invariant::davenport_r, r};
    if (!budget_.bypass_cache) {
      std::lock_guard lock(cache_mu);
      auto it = result_cache().find(ck);
      if (it != result_cache().end()) {
        ComputeResult hit = it->second;
        hit.invariant = inv;
        // Count the work the cached answer originally took.
        replayed_ += hit.nodes_visited;
        return hit;
      }
    }
    const GroupTable& t = *table_;
    const std::uint64_t nodes_before = ctl_.nodes.load() + replayed_;
    Incumbent inc;
    bool exact = true;
    if (r == 1) {
      inc.seed(basis_seed(0));
      run_search<SingleSearch>(
          [&] { return std::make_unique<SingleSearch>(t, automorphisms(), ctl_, inc, eta); }, threads_, ctl_);
    } else {
      std::vector<int> lower(static_cast<std::size_t>(r), 0);
      Path prev;
      for (int k = 1; k < r; ++k) {
        ComputeResult sub = level(eta, k);
        if (!sub.exact) {
          // Without exact lower levels the bounds are unsound; report the
          // best certified sequence we have.
          ComputeResult out;
          out.invariant = inv;
          out.group = t.spec();
          out.r = r;
          out.certificate_low = sub.certificate_low;
          out.value = sub.certificate_low.size() + 1;
          out.exact = false;
          return out;
        }
        lower[static_cast<std::size_t>(k)] = static_cast<int>(sub.value - 1);
        if (k == r - 1) prev = to_path(t, sub.certificate_low);
      }
      detail::DisjointSolver check(t, eta ? t.exponent() : 0);
      Path seed = basis_seed(r - 1);
      if (prev.size() > seed.size() || check.at_least(to_counts(t, seed), r)) seed = prev;
      inc.seed(seed);
      // No valid sequence is longer than L_{r-1} + |G| (remove one block of
      // length at most exp(G)... bounded crudely by the order).
      const std::size_t max_depth = static_cast<std::size_t>(lower[static_cast<std::size_t>(r - 1)]) + t.size() + 2;
      run_search<MultiSearch>(
          [&] {
            return std::make_unique<MultiSearch>(t, automorphisms(), ctl_, inc, eta, r, lower, max_depth);
          },
          threads_, ctl_);
    }
    exact = !ctl_.stopped();
    ComputeResult res;
    res.invariant = inv;
    res.group = t.spec();
    res.r = r;
    res.value = inc.best.load() + 1;
    res.exact = exact;
    res.certificate_low = to_sequence(t, inc.seq);
    res.nodes_visited = ctl_.nodes.load() + replayed_ - nodes_before;
    if (!is_deficient(res.certificate_low, eta ? Invariant::eta_r : Invariant::davenport_r, r))
      throw std::logic_error("search produced a certificate that is not deficient");
    if (exact && !budget_.bypass_cache) {
      std::lock_guard lock(cache_mu);
      result_cache().emplace(ck, res);
    }
    return res;
  }

  // e_1^{n_1-1} ... e_d^{n_d-1} with `extra` * n_d more copies of e_d.
  Path basis_seed(int extra) const {
    const auto& spec = table_->spec();
    Path p;
    for (std::size_t i = 0; i < spec.dimension(); ++i) {
      std::int64_t copies = spec.order(i) - 1;
      if (i + 1 == spec.dimension()) copies += extra * spec.order(i);
      const auto g = static_cast<std::uint16_t>(table_->index(basis(spec, i)));
      for (std::int64_t c = 0; c < copies; ++c) p.push_back(g);
    }
    std::sort(p.begin(), p.end());
    return p;
  }

  SearchBudget budget_;
  std::shared_ptr<const GroupTable> table_;
  std::unique_ptr<AutomorphismSet> aut_;
  Control ctl_;
  std::uint64_t replayed_ = 0;
  unsigned threads_ = 1;
};

void check_guard(const GroupSpec& canonical, Invariant inv, int r, const SearchBudget& b) {
  b.validate();
  if (r < 1) throw InvalidInput("r must be at least 1");
  const std::int64_t order = canonical.cardinality();
  const bool plain_d = inv == Invariant::davenport || (inv == Invariant::davenport_r && r == 1);
  const std::int64_t guard = plain_d ? b.max_order_davenport : b.max_order_r;
  if (order > guard)
    throw InvalidInput("group order " + std::to_string(order) + " exceeds the size guard " + std::to_string(guard));
  if (!plain_d && r > b.max_r)
    throw InvalidInput("r = " + std::to_string(r) + " exceeds the size guard " + std::to_string(b.max_r));
  if (order > GroupTable::max_order) throw InvalidInput("group too large for dense tables");
  if (!plain_d && exponent(canonical) > 250) throw InvalidInput("exponent too large for length tables");
}

}  // namespace

void SearchBudget::validate() const {
  if (max_nodes == 0) throw InvalidInput("node budget must be positive");
  if (!(max_seconds > 0)) throw InvalidInput("time budget must be positive");
  if (max_order_davenport < 1 || max_order_r < 1 || max_r < 1) throw InvalidInput("size guards must be positive");
}

std::string_view invariant_name(Invariant inv) {
  switch (inv) {
    case Invariant::davenport: return "D";
    case Invariant::davenport_r: return "D_r";
    case Invariant::eta: return "eta";
    case Invariant::eta_r: return "eta_r";
  }
  return "?";
}

Invariant parse_invariant(std::string_view name) {
  if (name == "D" || name == "davenport") return Invariant::davenport;
  if (name == "D_r" || name == "davenport_r") return Invariant::davenport_r;
  if (name == "eta") return Invariant::eta;
  if (name == "eta_r") return Invariant::eta_r;
  throw InvalidInput("unknown invariant '" + std::string(name) + "'");
}

ComputeResult compute_invariant(Invariant inv, const GroupSpec& g, int r, const SearchBudget& budget) {
  const GroupSpec canonical = canonicalize(g);
  if (inv == Invariant::davenport || inv == Invariant::eta) r = 1;
  check_guard(canonical, inv, r, budget);
  Engine engine(canonical, budget);
  return engine.run(inv, r);
}

ComputeResult davenport_exact(const GroupSpec& g, const SearchBudget& budget) {
  return compute_invariant(Invariant::davenport, g, 1, budget);
}

ComputeResult davenport_r_exact(const GroupSpec& g, int r, const SearchBudget& budget) {
  return compute_invariant(Invariant::davenport_r, g, r, budget);
}

ComputeResult eta_exact(const GroupSpec& g, const SearchBudget& budget) {
  return compute_invariant(Invariant::eta, g, 1, budget);
}

ComputeResult eta_r_exact(const GroupSpec& g, int r, const SearchBudget& budget) {
  return compute_invariant(Invariant::eta_r, g, r, budget);
}

void clear_result_cache() {
  std::lock_guard lock(cache_mu);
  result_cache().clear();
}

}  // namespace zsum
