#include "zsum/constructive.hpp"

#include <algorithm>
#include <numeric>

#include "zsum/errors.hpp"
#include "zsum/search.hpp"
#include "zsum/sequence_io.hpp"

namespace zsum {

namespace {

// One entry of an auxiliary sequence: an x-value standing for a set of
// positions whose y-coordinates already sum to zero.
struct Entry {
  GroupElement x;
  std::vector<std::size_t> positions;
};

GroupElement x_sum(const GroupSpec& h, const PairSequence& s, const std::vector<std::size_t>& pos) {
  GroupElement acc = zero(h);
  for (auto i : pos) acc = element_add(h, acc, s[i].x);
  return acc;
}

// Lexicographically least zero-sum sub-multiset of the entry values,
// expanded back to positions.
std::optional<std::vector<std::size_t>> zero_sum_of_entries(const GroupSpec& h, const std::vector<Entry>& entries) {
  GSequence t(h);
  for (const auto& e : entries) t.insert(e.x);
  auto w = find_zero_sum(t);
  if (!w) return std::nullopt;
  std::vector<bool> used(entries.size(), false);
  std::vector<std::size_t> out;
  for (const auto& [value, count] : w->sequence().entries()) {
    std::int64_t need = count;
    for (std::size_t i = 0; i < entries.size() && need > 0; ++i) {
      if (used[i] || entries[i].x != value) continue;
      used[i] = true;
      out.insert(out.end(), entries[i].positions.begin(), entries[i].positions.end());
      --need;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Least index set (as an ascending list) of values summing to 0 mod q.
std::optional<std::vector<std::size_t>> least_zero_sum_indices(const std::vector<std::int64_t>& v, std::int64_t q) {
  const std::size_t n = v.size();
  // reach[i][x]: some subset of v[i..] (possibly empty) sums to x.
  std::vector<std::vector<bool>> reach(n + 1, std::vector<bool>(static_cast<std::size_t>(q), false));
  reach[n][0] = true;
  for (std::size_t i = n; i-- > 0;)
    for (std::int64_t x = 0; x < q; ++x)
      reach[i][static_cast<std::size_t>(x)] =
          reach[i + 1][static_cast<std::size_t>(x)] || reach[i + 1][static_cast<std::size_t>(((x - v[i]) % q + q) % q)];
  std::vector<std::size_t> out;
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t next = (sum + v[i]) % q;
    if (next == 0) {
      out.push_back(i);
      return out;
    }
    if (reach[i + 1][static_cast<std::size_t>((q - next) % q)]) {
      out.push_back(i);
      sum = next;
    }
  }
  return std::nullopt;
}

std::vector<std::size_t> check_positions(const PairSequence& s, std::vector<std::size_t> pos, const char* what) {
  std::sort(pos.begin(), pos.end());
  if (pos.empty()) throw InvalidWitness(std::string(what) + " is empty");
  if (pos.back() >= s.size()) throw InvalidWitness(std::string(what) + " has a position out of range");
  if (std::adjacent_find(pos.begin(), pos.end()) != pos.end())
    throw InvalidWitness(std::string(what) + " repeats a position");
  return pos;
}

}  // namespace

BlockDecomposition BlockDecomposition::of(const StructuredSequence& s) {
  BlockDecomposition b;
  const std::int64_t q = s.q();
  for (std::int64_t i = 1; i < q; ++i) {
    const auto off = static_cast<std::size_t>(s.block_offset(i));
    std::vector<std::vector<std::size_t>> runs;
    for (std::int64_t j = 0; j < s.t_i(i); ++j) {
      std::vector<std::size_t> run(static_cast<std::size_t>(q));
      std::iota(run.begin(), run.end(), off + static_cast<std::size_t>(j * q));
      runs.push_back(std::move(run));
    }
    std::vector<std::size_t> left(static_cast<std::size_t>(s.l_i(i)));
    std::iota(left.begin(), left.end(), off + static_cast<std::size_t>(s.t_i(i) * q));
    b.runs.push_back(std::move(runs));
    b.leftovers.push_back(std::move(left));
  }
  for (auto k = static_cast<std::size_t>(s.r()); k < s.x().size(); ++k) b.tail.push_back(k);
  return b;
}

std::int64_t BlockDecomposition::total_runs() const {
  std::int64_t n = 0;
  for (const auto& r : runs) n += static_cast<std::int64_t>(r.size());
  return n;
}

std::int64_t BlockDecomposition::total_leftovers() const {
  std::int64_t n = 0;
  for (const auto& l : leftovers) n += static_cast<std::int64_t>(l.size());
  return n;
}

std::vector<std::size_t> positions_of(const PairSequence& s, const GSequence& part) {
  std::vector<bool> used(s.size(), false);
  std::vector<std::size_t> out;
  for (const auto& [value, count] : part.entries()) {
    std::int64_t need = count;
    for (std::size_t i = 0; i < s.size() && need > 0; ++i) {
      if (used[i] || s.element(i) != value) continue;
      used[i] = true;
      out.push_back(i);
      --need;
    }
    if (need > 0) throw InvalidWitness("part is not a subsequence");
  }
  std::sort(out.begin(), out.end());
  return out;
}

PairWitness lemma13_case1(const PairSequence& s, const std::vector<std::vector<std::size_t>>& family) {
  if (static_cast<std::int64_t>(family.size()) != s.q())
    throw InvalidWitness("family must have exactly q members");
  std::vector<bool> seen(s.size(), false);
  std::vector<std::int64_t> ysum;
  for (const auto& member : family) {
    auto pos = check_positions(s, member, "family member");
    for (auto i : pos) {
      if (seen[i]) throw InvalidWitness("family members are not disjoint");
      seen[i] = true;
    }
    if (x_sum(s.h(), s, pos) != zero(s.h())) throw InvalidWitness("family member is not an x-zero-sum");
    std::int64_t y = 0;
    for (auto i : pos) y = (y + s[i].y) % s.q();
    ysum.push_back(y);
  }
  auto chosen = least_zero_sum_indices(ysum, s.q());
  if (!chosen) throw ConstructionFailure("q values in C_q without a zero-sum");
  std::vector<std::size_t> pos;
  for (auto k : *chosen) pos.insert(pos.end(), family[k].begin(), family[k].end());
  return certify_pair_witness(s, std::move(pos));
}

PairWitness lemma13_case2(const PairSequence& s, const std::vector<std::size_t>& t) {
  auto pos = check_positions(s, t, "subsequence");
  for (std::size_t i = 1; i < s.size(); ++i)
    if (s[i].y != s[0].y) throw InvalidInput("y-coordinates are not all equal");
  if (static_cast<std::int64_t>(pos.size()) % s.q() != 0)
    throw InvalidInput("q = " + std::to_string(s.q()) + " does not divide |T| = " + std::to_string(pos.size()));
  if (x_sum(s.h(), s, pos) != zero(s.h())) throw InvalidWitness("T is not an x-zero-sum");
  return certify_pair_witness(s, std::move(pos));
}

Lemma15Augmentation::Lemma15Augmentation(PairSequence s) : original_(std::move(s)), augmented_(original_) {
  GroupElement t = zero(original_.h());
  std::int64_t y = 0;
  for (const auto& pr : original_.pairs()) {
    t = element_add(original_.h(), t, pr.x);
    y = (y + pr.y) % original_.q();
  }
  auto pairs = original_.pairs();
  pairs.push_back(Pair{negate(original_.h(), t), (original_.q() - y) % original_.q()});
  augmented_ = PairSequence(original_.h(), original_.q(), std::move(pairs));
}

PairWitness Lemma15Augmentation::pullback(std::vector<std::size_t> w) const {
  auto checked = certify_pair_witness(augmented_, std::move(w));
  const auto& pos = checked.positions;
  if (pos.size() == augmented_.size()) throw InvalidWitness("witness is the whole augmented sequence, not proper");
  if (pos.back() != appended()) return certify_pair_witness(original_, pos);
  // W = U (t, l): the complement of U in s sums to zero.
  std::vector<bool> in_u(original_.size(), false);
  for (auto i : pos)
    if (i != appended()) in_u[i] = true;
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < original_.size(); ++i)
    if (!in_u[i]) rest.push_back(i);
  return certify_pair_witness(original_, std::move(rest));
}

Lemma15Augmentation lemma15_augment(const PairSequence& s) { return Lemma15Augmentation(s); }

std::string_view prop14_case_name(Prop14Case c) {
  switch (c) {
    case Prop14Case::tail_only: return "I";
    case Prop14Case::block_sums: return "II";
    case Prop14Case::leftover_blocks_full: return "III.i";
    case Prop14Case::leftover_blocks: return "III.ii";
  }
  return "?";
}

Prop14Result prop14_extract(const StructuredSequence& s) {
  const std::int64_t p = s.p(), q = s.q(), d = s.d(), r = s.r();
  if (gcd(p, q) != 1) throw InvalidInput("p and q must be coprime");
  if (r > p * q) throw InvalidInput("r = " + std::to_string(r) + " exceeds pq = " + std::to_string(p * q));
  const PairSequence pairs = s.to_pairs();
  const GroupSpec h = s.x_group();
  const std::int64_t davenport_h = p * d - d + 1;
  const auto dec = BlockDecomposition::of(s);

  std::vector<Entry> entries;
  Prop14Case route;
  std::optional<std::int64_t> alpha;
  std::int64_t want_blocks = 0;
  if (r <= (q - 1) * p) {
    route = Prop14Case::tail_only;
  } else {
    for (const auto& block : dec.runs)
      for (const auto& run : block) entries.push_back(Entry{x_sum(h, pairs, run), run});
    if (r <= p * q - q) {
      route = Prop14Case::block_sums;
    } else {
      const std::int64_t j = r - (p * q - q + 1);
      const std::int64_t lsum = dec.total_leftovers();
      // lsum = q*alpha + j + 1 holds mod q by construction.
      alpha = (lsum - j - 1) / q;
      route = j == q - 1 ? Prop14Case::leftover_blocks_full : Prop14Case::leftover_blocks;
      want_blocks = std::max<std::int64_t>(0, j == q - 1 ? *alpha + 1 : *alpha);
    }
  }
  for (auto k : dec.tail) entries.push_back(Entry{pairs[k].x, {k}});

  bool topped_up = false;
  std::int64_t blocks = want_blocks;
  const auto have = static_cast<std::int64_t>(entries.size());
  if (have + blocks < davenport_h) {
    if (route == Prop14Case::tail_only)
      throw ConstructionFailure("tail of length " + std::to_string(have) + " is shorter than D(C_p^d)");
    blocks = davenport_h - have;
    topped_up = blocks > want_blocks;
  }
  if (blocks > 0) {
    std::vector<std::size_t> left;
    for (const auto& l : dec.leftovers) left.insert(left.end(), l.begin(), l.end());
    GSequence ys(GroupSpec{q});
    for (auto k : left) ys.insert(GroupElement{pairs[k].y});
    auto fam = find_disjoint_zero_sums(ys, static_cast<int>(blocks));
    if (!fam)
      throw ConstructionFailure("leftovers hold fewer than " + std::to_string(blocks) + " disjoint zero-sums over C_q");
    std::vector<bool> used(left.size(), false);
    for (const auto& member : fam->members()) {
      std::vector<std::size_t> pos;
      for (const auto& [value, count] : member.sequence().entries()) {
        std::int64_t need = count;
        for (std::size_t i = 0; i < left.size() && need > 0; ++i) {
          if (used[i] || pairs[left[i]].y != value[0]) continue;
          used[i] = true;
          pos.push_back(left[i]);
          --need;
        }
      }
      std::sort(pos.begin(), pos.end());
      entries.push_back(Entry{x_sum(h, pairs, pos), pos});
    }
  }
  auto pos = zero_sum_of_entries(h, entries);
  if (!pos)
    throw ConstructionFailure("auxiliary sequence of length " + std::to_string(entries.size()) +
                              " over C_p^d has no zero-sum");
  return Prop14Result{certify_pair_witness(pairs, std::move(*pos)), route, alpha, std::max<std::int64_t>(blocks, 0),
                      topped_up};
}

Theorem2Result theorem2_decide(const PairSequence& s) {
  const auto norm = normalize(s);
  const StructuredSequence& st = norm.seq;
  const std::int64_t p = st.p(), q = st.q(), m = st.m(), r = st.r();
  if (gcd(p, q) != 1) throw InvalidInput("p and q must be coprime");

  auto oracle = [&](const PairSequence& t) -> std::vector<std::size_t> {
    auto w = find_zero_sum(t.multiset());
    if (!w)
      throw CounterexampleFound("zero-sum free sequence of length " + std::to_string(t.size()) + " over " +
                                    to_string(t.group()),
                                write_sequence_document(to_document(t)));
    return positions_of(t, w->sequence());
  };

  if (r <= p * q) {
    auto res = prop14_extract(st);
    std::vector<std::size_t> pos;
    for (auto k : res.witness.positions) pos.push_back(norm.permutation[k]);
    return Theorem2Result{certify_pair_witness(s, std::move(pos)), "prop14",
                          {"case " + std::string(prop14_case_name(res.route))}};
  }
  std::int64_t j = 0;
  for (std::int64_t i = 1; i < q; ++i) j = (j + i * st.r_i(i)) % q;
  if (j == 0) {
    return Theorem2Result{certify_pair_witness(s, oracle(s)), "oracle", {}};
  }
  if (r == m) {
    // No pair with y = 0 to trade for (t, q - j).
    return Theorem2Result{certify_pair_witness(s, oracle(s)), "oracle-full-r",
                          {"r = m: no zero-y pair to exchange; exhaustive oracle used"}};
  }
  const auto aug = lemma15_augment(s);
  const std::size_t dropped = norm.permutation[static_cast<std::size_t>(m - 1)];
  // T = S (x_m, 0)^{-1} (t, q - j), as positions of the augmented sequence.
  std::vector<std::size_t> t_pos;
  for (std::size_t i = 0; i <= s.size(); ++i)
    if (i != dropped) t_pos.push_back(i);
  PairSequence t = extension(t_pos, aug.augmented());
  std::vector<std::size_t> w;
  for (auto k : oracle(t)) w.push_back(t_pos[k]);
  return Theorem2Result{aug.pullback(std::move(w)), "lemma15", {}};
}

}  // namespace zsum
