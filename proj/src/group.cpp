#include "zsum/group.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

#include "zsum/errors.hpp"

namespace zsum {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t n) {
  std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

void require_same_dim(const GroupSpec& g, const GroupElement& a) {
  if (a.size() != g.dimension())
    throw InvalidInput("element " + to_string(a) + " has wrong dimension for group " + to_string(g));
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\n' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::vector<std::int64_t> parse_int_list(std::string_view text, std::string_view what) {
  std::vector<std::int64_t> out;
  text = trim(text);
  if (text.empty()) return out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string_view tok = trim(text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos));
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size())
      throw InvalidInput("cannot parse " + std::string(what) + " '" + std::string(text) + "'");
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

GroupSpec::GroupSpec(std::vector<std::int64_t> orders) : orders_(std::move(orders)) {
  for (auto n : orders_)
    if (n < 1) throw InvalidInput("cyclic order must be at least 1, got " + std::to_string(n));
}

std::int64_t GroupSpec::cardinality() const {
  std::int64_t c = 1;
  for (auto n : orders_) {
    if (c > std::numeric_limits<std::int64_t>::max() / n)
      throw InvalidInput("group order overflows 63 bits");
    c *= n;
  }
  return c;
}

bool GroupSpec::is_trivial() const {
  return std::all_of(orders_.begin(), orders_.end(), [](auto n) { return n == 1; });
}

std::int64_t gcd(std::int64_t a, std::int64_t b) {
  while (b != 0) {
    a %= b;
    std::swap(a, b);
  }
  return a < 0 ? -a : a;
}

std::int64_t lcm(std::int64_t a, std::int64_t b) {
  if (a == 0 || b == 0) return 0;
  return a / gcd(a, b) * b;
}

std::int64_t ipow(std::int64_t base, int e) {
  std::int64_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (r > std::numeric_limits<std::int64_t>::max() / base) throw InvalidInput("integer power overflows");
    r *= base;
  }
  return r;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t f = 2; f * f <= n; ++f)
    if (n % f == 0) return false;
  return true;
}

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
  std::vector<std::pair<std::int64_t, int>> out;
  for (std::int64_t f = 2; f * f <= n; ++f) {
    int k = 0;
    while (n % f == 0) {
      n /= f;
      ++k;
    }
    if (k > 0) out.emplace_back(f, k);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<std::int64_t> elementary_divisors(const GroupSpec& g) {
  std::vector<std::int64_t> out;
  for (auto n : g.orders())
    for (auto [p, k] : factorize(n)) out.push_back(ipow(p, k));
  std::sort(out.begin(), out.end());
  return out;
}

GroupSpec canonicalize(const GroupSpec& g) {
  // prime -> its prime-power components, largest first
  std::map<std::int64_t, std::vector<std::int64_t>> by_prime;
  for (auto n : g.orders())
    for (auto [p, k] : factorize(n)) by_prime[p].push_back(ipow(p, k));
  std::size_t d = 0;
  for (auto& [p, powers] : by_prime) {
    std::sort(powers.begin(), powers.end(), std::greater<>());
    d = std::max(d, powers.size());
  }
  // Invariant factor i (counted from the top) collects the i-th largest
  // component of every prime.
  std::vector<std::int64_t> inv(d, 1);
  for (auto& [p, powers] : by_prime)
    for (std::size_t i = 0; i < powers.size(); ++i) inv[d - 1 - i] *= powers[i];
  return GroupSpec(std::move(inv));
}

bool is_canonical(const GroupSpec& g) { return canonicalize(g) == g; }

bool isomorphic(const GroupSpec& a, const GroupSpec& b) { return canonicalize(a) == canonicalize(b); }

bool is_element_of(const GroupSpec& g, const GroupElement& a) {
  if (a.size() != g.dimension()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] < 0 || a[i] >= g.order(i)) return false;
  return true;
}

void require_element(const GroupSpec& g, const GroupElement& a) {
  require_same_dim(g, a);
  if (!is_element_of(g, a)) throw InvalidInput("element " + to_string(a) + " is not reduced for group " + to_string(g));
}

GroupElement zero(const GroupSpec& g) { return GroupElement(std::vector<std::int64_t>(g.dimension(), 0)); }

GroupElement reduce(const GroupSpec& g, std::vector<std::int64_t> raw) {
  if (raw.size() != g.dimension()) throw InvalidInput("residue vector has wrong dimension");
  for (std::size_t i = 0; i < raw.size(); ++i) raw[i] = mod(raw[i], g.order(i));
  return GroupElement(std::move(raw));
}

GroupElement element_add(const GroupSpec& g, const GroupElement& a, const GroupElement& b) {
  require_same_dim(g, a);
  require_same_dim(g, b);
  std::vector<std::int64_t> r(a.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = mod(a[i] + b[i], g.order(i));
  return GroupElement(std::move(r));
}

GroupElement element_sub(const GroupSpec& g, const GroupElement& a, const GroupElement& b) {
  return element_add(g, a, negate(g, b));
}

GroupElement negate(const GroupSpec& g, const GroupElement& a) {
  require_same_dim(g, a);
  std::vector<std::int64_t> r(a.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = mod(-a[i], g.order(i));
  return GroupElement(std::move(r));
}

GroupElement scale(const GroupSpec& g, const GroupElement& a, std::int64_t k) {
  require_same_dim(g, a);
  std::vector<std::int64_t> r(a.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    std::int64_t n = g.order(i);
    r[i] = mod(mod(a[i], n) * mod(k, n), n);
  }
  return GroupElement(std::move(r));
}

std::int64_t element_order(const GroupSpec& g, const GroupElement& a) {
  require_element(g, a);
  std::int64_t o = 1;
  for (std::size_t i = 0; i < a.size(); ++i) o = lcm(o, g.order(i) / gcd(a[i], g.order(i)));
  return o;
}

GroupElement basis(const GroupSpec& g, std::size_t i) {
  GroupElement e = zero(g);
  if (i >= g.dimension()) throw InvalidInput("basis index out of range");
  e.residues[i] = g.order(i) > 1 ? 1 : 0;
  return e;
}

std::int64_t d_star(const GroupSpec& g) {
  const GroupSpec c = canonicalize(g);
  std::int64_t s = 1;
  for (auto n : c.orders()) s += n - 1;
  return s;
}

std::int64_t exponent(const GroupSpec& g) {
  std::int64_t e = 1;
  for (auto n : g.orders()) e = lcm(e, n);
  return e;
}

std::size_t rank(const GroupSpec& g) { return canonicalize(g).dimension(); }

std::string to_string(const GroupSpec& g) {
  if (g.orders().empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < g.dimension(); ++i) {
    if (i) s += ',';
    s += std::to_string(g.order(i));
  }
  return s;
}

GroupSpec parse_group(std::string_view text) {
  auto v = parse_int_list(text, "group");
  return GroupSpec(std::move(v));
}

std::string to_string(const GroupElement& a) {
  std::string s = "(";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(a[i]);
  }
  return s + ")";
}

GroupElement parse_element(std::string_view text) {
  text = trim(text);
  if (text.size() < 2 || text.front() != '(' || text.back() != ')')
    throw InvalidInput("element must be parenthesized: '" + std::string(text) + "'");
  return GroupElement(parse_int_list(text.substr(1, text.size() - 2), "element"));
}

std::int64_t p_group_prime(const GroupSpec& g) {
  std::int64_t p = 0;
  for (auto n : g.orders()) {
    if (n == 1) continue;
    auto f = factorize(n);
    if (f.size() != 1) return 0;
    if (p != 0 && f[0].first != p) return 0;
    p = f[0].first;
  }
  return p;
}

PGroupSpec::PGroupSpec(std::int64_t p, std::vector<int> exponents, bool allow_zero)
    : p_(p), e_(std::move(exponents)) {
  if (!is_prime(p_)) throw InvalidInput(std::to_string(p_) + " is not prime");
  if (e_.empty()) throw InvalidInput("p-group needs at least one exponent");
  for (std::size_t i = 0; i < e_.size(); ++i) {
    if (e_[i] < 0 || (!allow_zero && e_[i] == 0)) throw InvalidInput("exponents must be positive");
    if (i > 0 && e_[i] < e_[i - 1]) throw InvalidInput("exponents must be non-decreasing");
  }
}

GroupSpec PGroupSpec::to_group() const {
  std::vector<std::int64_t> orders;
  for (int e : e_) orders.push_back(ipow(p_, e));
  return GroupSpec(std::move(orders));
}

PGroupSpec PGroupSpec::from_group(const GroupSpec& g) {
  GroupSpec c = canonicalize(g);
  std::int64_t p = p_group_prime(c);
  if (p == 0) throw InvalidInput("group " + to_string(g) + " is not a nontrivial p-group");
  std::vector<int> e;
  for (auto n : c.orders()) e.push_back(factorize(n)[0].second);
  return PGroupSpec(p, std::move(e));
}

namespace {

void partitions(int n, int max_part, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int k = std::min(n, max_part); k >= 1; --k) {
    cur.push_back(k);
    partitions(n - k, k, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<GroupSpec> abelian_groups_of_order(std::int64_t n) {
  if (n < 1) throw InvalidInput("group order must be positive");
  std::vector<std::vector<std::int64_t>> combos{{}};
  for (auto [p, k] : factorize(n)) {
    std::vector<std::vector<int>> parts;
    std::vector<int> cur;
    partitions(k, k, cur, parts);
    std::vector<std::vector<std::int64_t>> next;
    for (const auto& c : combos)
      for (const auto& part : parts) {
        auto v = c;
        for (int e : part) v.push_back(ipow(p, e));
        next.push_back(std::move(v));
      }
    combos = std::move(next);
  }
  std::vector<GroupSpec> out;
  for (auto& c : combos) out.push_back(canonicalize(GroupSpec(c)));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace zsum
