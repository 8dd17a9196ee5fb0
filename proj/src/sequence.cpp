#include "zsum/sequence.hpp"

#include <algorithm>
#include <set>

#include "zsum/errors.hpp"
#include "zsum/group_table.hpp"
#include "zsum/simd/kernels.hpp"

namespace zsum {

namespace {

constexpr std::uint64_t fnv_offset = 1469598103934665603ull;
constexpr std::uint64_t fnv_prime = 1099511628211ull;

void mix(std::uint64_t& h, std::int64_t v) {
  auto u = static_cast<std::uint64_t>(v);
  for (int i = 0; i < 8; ++i) {
    h ^= (u >> (8 * i)) & 0xFF;
    h *= fnv_prime;
  }
}

bool fits_table(const GroupSpec& g) {
  std::int64_t c = g.cardinality();
  return c <= GroupTable::max_order;
}

}  // namespace

GSequence::GSequence(GroupSpec g, const std::vector<GroupElement>& elements) : group_(std::move(g)) {
  for (const auto& e : elements) insert(e);
}

GSequence::GSequence(GroupSpec g, std::map<GroupElement, std::int64_t> mult) : group_(std::move(g)) {
  for (const auto& [e, k] : mult) insert(e, k);
}

std::int64_t GSequence::multiplicity(const GroupElement& g) const {
  auto it = mult_.find(g);
  return it == mult_.end() ? 0 : it->second;
}

std::vector<GroupElement> GSequence::expanded() const {
  std::vector<GroupElement> out;
  out.reserve(static_cast<std::size_t>(size_));
  for (const auto& [e, k] : mult_)
    for (std::int64_t i = 0; i < k; ++i) out.push_back(e);
  return out;
}

void GSequence::insert(const GroupElement& g, std::int64_t count) {
  require_element(group_, g);
  if (count < 0) throw InvalidInput("negative multiplicity");
  if (count == 0) return;
  mult_[g] += count;
  size_ += count;
}

bool GSequence::divides(const GSequence& parent) const {
  if (!(group_ == parent.group_)) return false;
  for (const auto& [e, k] : mult_)
    if (parent.multiplicity(e) < k) return false;
  return true;
}

std::uint64_t GSequence::fingerprint() const {
  std::uint64_t h = fnv_offset;
  for (auto n : group_.orders()) mix(h, n);
  mix(h, -1);
  for (const auto& [e, k] : mult_) {
    for (auto r : e.residues) mix(h, r);
    mix(h, k);
  }
  return h;
}

Witness::Witness(const GSequence& parent, GSequence part) : part_(std::move(part)), parent_id_(parent.fingerprint()) {
  if (part_.empty()) throw InvalidWitness("witness is empty");
  if (!(part_.group() == parent.group())) throw InvalidWitness("witness is over a different group");
  if (!part_.divides(parent)) throw InvalidWitness("witness is not a subsequence of its parent");
}

bool Witness::is_zero_sum() const { return sigma(part_) == zero(part_.group()); }

Witness certify_zero_sum(const GSequence& parent, GSequence part) {
  Witness w(parent, std::move(part));
  if (!w.is_zero_sum()) throw InvalidWitness("witness does not sum to zero");
  return w;
}

DisjointFamily::DisjointFamily(const GSequence& parent, std::vector<Witness> members) : members_(std::move(members)) {
  const auto id = parent.fingerprint();
  std::map<GroupElement, std::int64_t> used;
  for (const auto& w : members_) {
    if (w.parent_id() != id) throw InvalidWitness("family member certifies a different parent");
    for (const auto& [e, k] : w.sequence().entries()) used[e] += k;
  }
  for (const auto& [e, k] : used)
    if (parent.multiplicity(e) < k) throw InvalidWitness("family members overlap beyond the parent's multiplicity");
}

GroupElement sigma(const GSequence& s) {
  const auto& g = s.group();
  std::vector<std::int64_t> acc(g.dimension(), 0);
  for (const auto& [e, k] : s.entries())
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = (acc[i] + (e[i] * (k % g.order(i)))) % g.order(i);
  return GroupElement(std::move(acc));
}

std::vector<GroupElement> sumset(const GSequence& s) {
  const auto& g = s.group();
  if (!fits_table(g)) {
    // Same DP over an ordered set for groups too large for dense tables.
    std::set<GroupElement> reach;
    for (const auto& e : s.expanded()) {
      std::set<GroupElement> next = reach;
      next.insert(e);
      for (const auto& a : reach) next.insert(element_add(g, a, e));
      reach = std::move(next);
    }
    return {reach.begin(), reach.end()};
  }
  auto table = GroupTable::shared(g);
  const auto n = table->size();
  const auto& k = simd::active();
  // `with_empty` also marks the empty sum; 0 joins the sumset only once a
  // nonempty subsequence reaches it.
  std::vector<std::uint8_t> with_empty(simd::padded_size(n), 0), next(simd::padded_size(n), 0);
  with_empty[0] = 1;
  bool zero_hit = false;
  for (const auto& [e, mult] : s.entries()) {
    auto gi = table->index(e);
    for (std::int64_t c = 0; c < mult; ++c) {
      if (with_empty[table->neg(gi)]) zero_hit = true;
      k.translate_or(next.data(), with_empty.data(), table->shift(gi), n);
      std::swap(with_empty, next);
    }
  }
  std::vector<GroupElement> out;
  for (std::uint32_t i = 0; i < n; ++i)
    if (with_empty[i] && (i != 0 || zero_hit)) out.push_back(table->element(i));
  return out;
}

bool is_zero_sum_free(const GSequence& s) {
  auto ss = sumset(s);
  return !std::binary_search(ss.begin(), ss.end(), zero(s.group()));
}

GSequence remove(const GSequence& s, const GSequence& t) {
  if (!(s.group() == t.group())) throw InvalidWitness("cannot remove a sequence over a different group");
  auto mult = s.entries();
  for (const auto& [e, k] : t.entries()) {
    auto it = mult.find(e);
    if (it == mult.end() || it->second < k)
      throw InvalidWitness("removal of " + to_string(e) + " would make a multiplicity negative");
    it->second -= k;
    if (it->second == 0) mult.erase(it);
  }
  return GSequence(s.group(), std::move(mult));
}

GSequence remove(const GSequence& s, const Witness& t) { return remove(s, t.sequence()); }

GSequence concat(const GSequence& a, const GSequence& b) {
  if (!(a.group() == b.group())) throw InvalidInput("cannot concatenate sequences over different groups");
  GSequence out = a;
  for (const auto& [e, k] : b.entries()) out.insert(e, k);
  return out;
}

PairSequence::PairSequence(GroupSpec h, std::int64_t q, std::vector<Pair> pairs)
    : h_(std::move(h)), q_(q), pairs_(std::move(pairs)) {
  if (q_ < 1) throw InvalidInput("q must be at least 1");
  for (const auto& pr : pairs_) {
    require_element(h_, pr.x);
    if (pr.y < 0 || pr.y >= q_) throw InvalidInput("y-coordinate out of range");
  }
}

PairSequence PairSequence::from_elements(const GroupSpec& full, const std::vector<GroupElement>& elements) {
  if (full.dimension() < 1) throw InvalidInput("pair sequence needs a group with a last (y) coordinate");
  std::vector<std::int64_t> horders(full.orders().begin(), full.orders().end() - 1);
  std::int64_t q = full.orders().back();
  std::vector<Pair> pairs;
  for (const auto& e : elements) {
    require_element(full, e);
    pairs.push_back(Pair{GroupElement(std::vector<std::int64_t>(e.residues.begin(), e.residues.end() - 1)),
                         e.residues.back()});
  }
  return PairSequence(GroupSpec(std::move(horders)), q, std::move(pairs));
}

GroupSpec PairSequence::group() const {
  auto orders = h_.orders();
  orders.push_back(q_);
  return GroupSpec(std::move(orders));
}

GroupElement PairSequence::element(std::size_t i) const {
  auto r = pairs_.at(i).x.residues;
  r.push_back(pairs_.at(i).y);
  return GroupElement(std::move(r));
}

std::vector<GroupElement> PairSequence::elements() const {
  std::vector<GroupElement> out;
  for (std::size_t i = 0; i < pairs_.size(); ++i) out.push_back(element(i));
  return out;
}

GSequence PairSequence::multiset() const {
  GSequence s(group());
  for (std::size_t i = 0; i < pairs_.size(); ++i) s.insert(element(i));
  return s;
}

GSequence PairSequence::multiset(std::span<const std::size_t> positions) const {
  GSequence s(group());
  for (auto i : positions) s.insert(element(i));
  return s;
}

GSequence PairSequence::x_multiset() const {
  GSequence s(h_);
  for (const auto& pr : pairs_) s.insert(pr.x);
  return s;
}

GSequence PairSequence::x_multiset(std::span<const std::size_t> positions) const {
  GSequence s(h_);
  for (auto i : positions) s.insert(pairs_.at(i).x);
  return s;
}

namespace {

std::vector<std::size_t> checked_positions(std::span<const std::size_t> t, std::size_t n) {
  std::vector<std::size_t> v(t.begin(), t.end());
  std::sort(v.begin(), v.end());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] >= n) throw InvalidInput("index " + std::to_string(v[i]) + " out of range");
    if (i > 0 && v[i] == v[i - 1]) throw InvalidInput("index " + std::to_string(v[i]) + " repeated");
  }
  return v;
}

}  // namespace

PairSequence extension(std::span<const std::size_t> t, const PairSequence& s) {
  std::vector<Pair> out;
  for (auto i : checked_positions(t, s.size())) out.push_back(s[i]);
  return PairSequence(s.h(), s.q(), std::move(out));
}

PairWitness certify_pair_witness(const PairSequence& s, std::vector<std::size_t> positions) {
  try {
    positions = checked_positions(positions, s.size());
  } catch (const InvalidInput& e) {
    throw InvalidWitness(e.what());
  }
  auto full = s.multiset();
  auto w = certify_zero_sum(full, s.multiset(positions));
  return PairWitness{std::move(positions), std::move(w)};
}

StructuredSequence::StructuredSequence(std::int64_t p, std::int64_t q, int d, std::vector<GroupElement> x,
                                       std::vector<std::int64_t> blocks)
    : p_(p), q_(q), d_(d), x_(std::move(x)), blocks_(std::move(blocks)) {
  if (!is_prime(p_)) throw InvalidInput("p must be prime");
  if (q_ < 1) throw InvalidInput("q must be at least 1");
  if (d_ < 1) throw InvalidInput("d must be at least 1");
  if (static_cast<std::int64_t>(x_.size()) != length_for(p_, q_, d_))
    throw InvalidInput("structured sequence must have length p(q+d-1)-(d-1) = " +
                       std::to_string(length_for(p_, q_, d_)));
  if (static_cast<std::int64_t>(blocks_.size()) != q_ - 1) throw InvalidInput("need exactly q-1 block sizes");
  auto xg = x_group();
  for (const auto& e : x_) require_element(xg, e);
  for (auto b : blocks_) {
    if (b < 0) throw InvalidInput("block sizes must be non-negative");
    r_ += b;
  }
  if (r_ > m()) throw InvalidInput("block sizes exceed the sequence length");
}

std::int64_t StructuredSequence::length_for(std::int64_t p, std::int64_t q, int d) { return p * (q + d - 1) - (d - 1); }

std::int64_t StructuredSequence::block_offset(std::int64_t i) const {
  std::int64_t off = 0;
  for (std::int64_t k = 1; k < i; ++k) off += r_i(k);
  return off;
}

std::int64_t StructuredSequence::y_at(std::size_t pos) const {
  std::int64_t acc = 0;
  for (std::int64_t i = 1; i < q_; ++i) {
    acc += r_i(i);
    if (static_cast<std::int64_t>(pos) < acc) return i;
  }
  return 0;
}

GroupSpec StructuredSequence::x_group() const { return GroupSpec(std::vector<std::int64_t>(static_cast<std::size_t>(d_), p_)); }

GroupSpec StructuredSequence::group() const {
  std::vector<std::int64_t> o(static_cast<std::size_t>(d_), p_);
  o.push_back(q_);
  return GroupSpec(std::move(o));
}

PairSequence StructuredSequence::to_pairs() const {
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < x_.size(); ++i) pairs.push_back(Pair{x_[i], y_at(i)});
  return PairSequence(x_group(), q_, std::move(pairs));
}

NormalizedSequence normalize(const PairSequence& s) {
  const auto& h = s.h();
  if (h.dimension() < 1) throw InvalidInput("normalize needs H = C_p^d with d >= 1");
  std::int64_t p = h.order(0);
  for (auto n : h.orders())
    if (n != p) throw InvalidInput("normalize needs H = C_p^d");
  if (!is_prime(p)) throw InvalidInput("normalize needs H = C_p^d with p prime");
  int d = static_cast<int>(h.dimension());
  std::int64_t q = s.q();
  if (static_cast<std::int64_t>(s.size()) != StructuredSequence::length_for(p, q, d))
    throw InvalidInput("sequence has length " + std::to_string(s.size()) + ", expected p(q+d-1)-(d-1) = " +
                       std::to_string(StructuredSequence::length_for(p, q, d)));
  // Blocks y = 1..q-1, then y = 0; stable within a block.
  auto rank = [q](std::int64_t y) { return y == 0 ? q : y; };
  std::vector<std::size_t> perm(s.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return rank(s[a].y) < rank(s[b].y); });
  std::vector<std::int64_t> blocks(static_cast<std::size_t>(q - 1), 0);
  std::vector<GroupElement> x;
  for (auto i : perm) {
    x.push_back(s[i].x);
    if (s[i].y != 0) ++blocks[static_cast<std::size_t>(s[i].y - 1)];
  }
  return NormalizedSequence{StructuredSequence(p, q, d, std::move(x), std::move(blocks)), std::move(perm)};
}

}  // namespace zsum
