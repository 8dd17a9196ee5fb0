#include "zsum/bounds.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "zsum/errors.hpp"

namespace zsum {

namespace {

BigInt pw(std::int64_t p, int e) { return boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(e)); }

int valuation(std::int64_t n, std::int64_t p) {
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

bool is_power_of(std::int64_t n, std::int64_t p) {
  while (n % p == 0) n /= p;
  return n == 1;
}

// p^{e_d} >= 1 + sum_{i<d} (p^{e_i} - 1)
bool large_top(std::int64_t p, const std::vector<int>& e) {
  BigInt rhs = 1;
  for (std::size_t i = 0; i + 1 < e.size(); ++i) rhs += pw(p, e[i]) - 1;
  return pw(p, e.back()) >= rhs;
}

// sum_{i<d} p^{e_i} - d + 1
BigInt low_part(std::int64_t p, const std::vector<int>& e) {
  BigInt s = 0;
  for (std::size_t i = 0; i + 1 < e.size(); ++i) s += pw(p, e[i]);
  return s - static_cast<std::int64_t>(e.size()) + 1;
}

std::string exps_string(const std::vector<int>& e) {
  std::string s = "(";
  for (std::size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + std::to_string(e[i]);
  return s + ")";
}

void require_r(std::int64_t r) {
  if (r < 1) throw InvalidInput("r must be at least 1");
}

void check_exponents(std::int64_t p, const std::vector<int>& exps) { PGroupSpec(p, exps); }

}  // namespace

FormulaValue theorem3_value(const PGroupSpec& spec, std::int64_t r) {
  require_r(r);
  FormulaValue out{"thm3", false, std::nullopt, ""};
  const auto& e = spec.exponents();
  if (!large_top(spec.p(), e)) {
    out.reason = "p^{e_d} < 1 + sum (p^{e_i} - 1) for p = " + std::to_string(spec.p()) + ", e = " + exps_string(e);
    return out;
  }
  out.applies = true;
  out.value = r * pw(spec.p(), e.back()) + low_part(spec.p(), e);
  return out;
}

FormulaValue theorem4_value(std::int64_t p, const std::vector<int>& exps, std::int64_t m, std::int64_t r) {
  require_r(r);
  check_exponents(p, exps);
  if (m < 1) throw InvalidInput("m must be at least 1");
  FormulaValue out{p == 2 ? "obs1" : "thm4", false, std::nullopt, ""};
  if (!large_top(p, exps)) {
    out.reason = "p^{e_d} < 1 + sum (p^{e_i} - 1) for p = " + std::to_string(p) + ", e = " + exps_string(exps);
    return out;
  }
  out.applies = true;
  out.value = BigInt(r) * m * pw(p, exps.back()) + low_part(p, exps);
  return out;
}

FormulaBounds corollary5_bounds(std::int64_t p, const std::vector<int>& exps, std::int64_t m, std::int64_t n,
                                std::int64_t r) {
  require_r(r);
  check_exponents(p, exps);
  if (exps.size() < 2) throw InvalidInput("need d >= 2 exponents");
  if (m < 1 || n < 1) throw InvalidInput("m and n must be positive");
  const bool case1 = n % m == 0;
  const bool case2 = m % n == 0;
  if (!case1 && !case2) throw InvalidInput("neither m | n nor n | m");
  FormulaBounds out{case1 ? "cor5.1" : "cor5.2", false, std::nullopt, std::nullopt, "", ""};
  if (p == 2) {
    out.reason = "needs an odd prime";
    return out;
  }
  if (!large_top(p, exps)) {
    out.reason = "p^{e_d} < 1 + sum (p^{e_i} - 1) for p = " + std::to_string(p) + ", e = " + exps_string(exps);
    return out;
  }
  const std::size_t d = exps.size();
  const BigInt top = pw(p, exps[d - 1]);
  const BigInt next = pw(p, exps[d - 2]);
  const BigInt rest = low_part(p, exps);
  out.applies = true;
  if (case1) {
    out.lower = BigInt(r) * n * top + (m - 1) * next + rest;
    out.upper = (BigInt(r) * n + m - 1) * top + rest;
  } else {
    out.lower = std::max<BigInt>(BigInt(r) * n * top + (m - 1) * next + rest, n * top + (BigInt(r) * m - 1) * next + rest);
    out.upper = (BigInt(r) * m + n - 1) * top + rest;
    out.note = "upper bound written as (rm + n - 1) p^{e_d} + sum p^{e_i} - d + 1";
  }
  return out;
}

void MultiPrimeSpec::validate() const {
  if (primes.empty()) throw InvalidInput("need at least one prime");
  if (exps.size() != primes.size()) throw InvalidInput("one exponent column per prime");
  for (std::size_t j = 0; j < primes.size(); ++j) {
    if (!is_prime(primes[j])) throw InvalidInput(std::to_string(primes[j]) + " is not prime");
    for (std::size_t k = 0; k < j; ++k)
      if (primes[k] == primes[j]) throw InvalidInput("primes must be distinct");
    const auto& col = exps[j];
    if (col.empty() || col.size() != exps.front().size()) throw InvalidInput("exponent columns must share length d");
    for (std::size_t i = 0; i < col.size(); ++i) {
      if (col[i] < 0) throw InvalidInput("exponents must be non-negative");
      if (i > 0 && col[i] < col[i - 1]) throw InvalidInput("exponent columns must be non-decreasing");
    }
    if (col.back() == 0) throw InvalidInput("prime " + std::to_string(primes[j]) + " has an all-zero column");
  }
}

GroupSpec MultiPrimeSpec::to_group() const {
  validate();
  std::vector<std::int64_t> orders(d(), 1);
  for (std::size_t j = 0; j < primes.size(); ++j)
    for (std::size_t i = 0; i < d(); ++i) orders[i] *= ipow(primes[j], exps[j][i]);
  return GroupSpec(std::move(orders));
}

MultiPrimeSpec MultiPrimeSpec::from_group(const GroupSpec& g) {
  const GroupSpec c = canonicalize(g);
  if (c.is_trivial()) throw InvalidInput("trivial group has no prime decomposition");
  MultiPrimeSpec s;
  for (const auto& [p, k] : factorize(c.cardinality())) {
    (void)k;
    s.primes.push_back(p);
    std::vector<int> col;
    for (auto n : c.orders()) col.push_back(valuation(n, p));
    s.exps.push_back(std::move(col));
  }
  return s;
}

MultiPrimeSpec MultiPrimeSpec::reordered(const std::vector<std::size_t>& order) const {
  MultiPrimeSpec s;
  for (auto j : order) {
    s.primes.push_back(primes.at(j));
    s.exps.push_back(exps.at(j));
  }
  return s;
}

FormulaBounds theorem6_bounds(const MultiPrimeSpec& spec, std::int64_t r) {
  require_r(r);
  spec.validate();
  FormulaBounds out{"thm6", false, std::nullopt, std::nullopt, "", ""};
  const std::size_t l = spec.primes.size();
  const std::size_t d = spec.d();
  for (std::size_t j = 0; j < l; ++j)
    if (!large_top(spec.primes[j], spec.exps[j])) {
      out.reason += (out.reason.empty() ? "" : "; ") + std::string("predicate fails for p = ") +
                    std::to_string(spec.primes[j]);
    }
  if (!out.reason.empty()) return out;

  BigInt top = 1;
  for (std::size_t j = 0; j < l; ++j) top *= pw(spec.primes[j], spec.exps[j][d - 1]);
  BigInt lower = r * top;
  for (std::size_t i = 0; i + 1 < d; ++i) {
    BigInt prod = 1;
    for (std::size_t j = 0; j < l; ++j) prod *= pw(spec.primes[j], spec.exps[j][i]);
    lower += prod - 1;
  }
  auto phi = [&](std::size_t j) { return low_part(spec.primes[j], spec.exps[j]); };
  BigInt upper = r * top + phi(l - 1);
  for (std::size_t m = 0; m + 1 < l; ++m) {
    BigInt tail = 1;
    for (std::size_t j = m + 1; j < l; ++j) tail *= pw(spec.primes[j], spec.exps[j][d - 1]);
    upper += tail * phi(m);
  }
  out.applies = true;
  out.lower = lower;
  out.upper = upper;
  return out;
}

FormulaValue theorem7_value(std::int64_t p, std::int64_t q, int d) {
  if (!is_prime(p)) throw InvalidInput(std::to_string(p) + " is not prime");
  if (q < 1) throw InvalidInput("q must be positive");
  FormulaValue out{"thm7", false, std::nullopt, ""};
  if (q % p != 0) {
    out.reason = "p does not divide q";
    return out;
  }
  if (d < 3) {
    out.reason = "needs d >= 3";
    return out;
  }
  if (BigInt(p) * p < 1 + BigInt(d - 1) * (p - 1)) {
    out.reason = "p^2 < 1 + (d-1)(p-1)";
    return out;
  }
  out.applies = true;
  out.value = BigInt(p) * (q + d - 1) - d + 1;
  return out;
}

Rational error_ratio(const MultiPrimeSpec& spec, std::int64_t r) {
  auto b = theorem6_bounds(spec, r);
  if (!b.applies) throw InvalidInput("bounds do not apply: " + b.reason);
  return Rational(*b.upper - *b.lower, *b.lower);
}

void BoundReport::add_exact(const BigInt& value) {
  exact = value;
  sources.push_back(BoundSource{"exact", true, value, value, ""});
  if (value < lower || value > upper)
    throw std::logic_error("exact value " + value.str() + " outside the closed-form range [" + lower.str() + ", " +
                           upper.str() + "]");
  lower = upper = value;
}

void BoundReport::add_search_lower(const BigInt& value) {
  sources.push_back(BoundSource{"search", true, value, std::nullopt, "search stopped early; lower bound only"});
  if (value > upper)
    throw std::logic_error("search lower bound " + value.str() + " exceeds the closed-form upper bound " +
                           upper.str());
  lower = std::max(lower, value);
}

BoundReport bound_report(Invariant inv, const GroupSpec& g, std::int64_t r) {
  const bool rwise = inv == Invariant::davenport_r || inv == Invariant::eta_r;
  if (!rwise) r = 1;
  require_r(r);
  BoundReport rep;
  rep.invariant = inv;
  rep.group = g;
  rep.canonical_group = canonicalize(g);
  rep.r = r;
  const GroupSpec& c = rep.canonical_group;
  const bool eta = inv == Invariant::eta || inv == Invariant::eta_r;
  const BigInt order = c.cardinality();
  const BigInt e = exponent(c);

  auto add = [&](const std::string& tag, bool applies, std::optional<BigInt> lo, std::optional<BigInt> hi,
                 std::string note) {
    rep.sources.push_back(BoundSource{tag, applies, applies ? lo : std::nullopt, applies ? hi : std::nullopt,
                                      std::move(note)});
  };
  auto add_value = [&](const FormulaValue& f, const std::string& note = "") {
    add(f.tag, f.applies, f.value, f.value, f.applies ? note : f.reason);
  };
  auto add_bounds = [&](const FormulaBounds& f, const std::string& note = "") {
    add(f.tag, f.applies, f.lower, f.upper, f.applies ? (note.empty() ? f.note : note) : f.reason);
  };

  add("dstar", true, d_star(c) + (r - 1) * e, std::nullopt, r > 1 ? "D*(G) + (r-1) exp(G)" : "D*(G)");
  if (eta)
    add("trivial", true, std::nullopt, (r * e - 1) * order + 1, "some element repeats r exp(G) times");
  else
    add("trivial", true, std::nullopt, r * order, "r |G|");

  const std::int64_t p_only = c.is_trivial() ? 0 : p_group_prime(c);
  if (!eta) {
    if (p_only) add_value(theorem3_value(PGroupSpec::from_group(c), r));
    const std::size_t d = c.dimension();
    if (!c.is_trivial()) {
      for (const auto& [p, k] : factorize(c.cardinality())) {
        (void)k;
        // C_{p^e_1} x ... x C_{m p^e_d} with m > 1.
        bool fits = c.order(d - 1) % p == 0;
        for (std::size_t i = 0; i + 1 < d && fits; ++i) fits = is_power_of(c.order(i), p);
        if (fits) {
          std::vector<int> ex;
          for (std::size_t i = 0; i < d; ++i) ex.push_back(valuation(c.order(i), p));
          const std::int64_t m = c.order(d - 1) / ipow(p, ex.back());
          if (m > 1) add_value(theorem4_value(p, ex, m, r), "m = " + std::to_string(m));
        }
        // C_{p^e_1} x ... x C_{m p^e_{d-1}} x C_{n p^e_d} with m > 1.
        if (d >= 2 && p != 2) {
          bool fits5 = c.order(d - 2) % p == 0 && c.order(d - 1) % p == 0;
          for (std::size_t i = 0; i + 2 < d && fits5; ++i) fits5 = is_power_of(c.order(i), p);
          if (fits5) {
            std::vector<int> ex;
            for (std::size_t i = 0; i < d; ++i) ex.push_back(valuation(c.order(i), p));
            const std::int64_t m = c.order(d - 2) / ipow(p, ex[d - 2]);
            const std::int64_t n = c.order(d - 1) / ipow(p, ex[d - 1]);
            if (m > 1 && (n % m == 0 || m % n == 0))
              add_bounds(corollary5_bounds(p, ex, m, n, r), "m = " + std::to_string(m) + ", n = " + std::to_string(n));
          }
        }
      }
      const auto spec = MultiPrimeSpec::from_group(c);
      if (spec.primes.size() >= 2) {
        std::vector<std::size_t> order_idx(spec.primes.size());
        std::iota(order_idx.begin(), order_idx.end(), 0);
        std::optional<FormulaBounds> best;
        std::string best_order;
        do {
          auto b = theorem6_bounds(spec.reordered(order_idx), r);
          if (!b.applies) {
            best = b;
            break;
          }
          if (!best || *b.upper < *best->upper) {
            best = b;
            best_order.clear();
            for (auto j : order_idx) best_order += (best_order.empty() ? "" : ",") + std::to_string(spec.primes[j]);
          }
        } while (std::next_permutation(order_idx.begin(), order_idx.end()));
        add_bounds(*best, best->applies ? "prime order (" + best_order + ")" : "");
      }
      if (r == 1 && d >= 3) {
        const std::int64_t p = c.order(0);
        bool fits7 = is_prime(p);
        for (std::size_t i = 0; i + 1 < d && fits7; ++i) fits7 = c.order(i) == p;
        if (fits7 && c.order(d - 1) % (p * p) == 0)
          add_value(theorem7_value(p, c.order(d - 1) / p, static_cast<int>(d)));
      }
    }
  } else if (p_only) {
    // eta_r(G) <= D(G) + r exp(G) for p-groups where the D value is known.
    auto spec = PGroupSpec::from_group(c);
    auto f = theorem3_value(spec, 1);
    if (f.applies)
      add("thm3", true, std::nullopt, *f.value + r * e, "D(G) + r exp(G)");
    else
      add("thm3", false, std::nullopt, std::nullopt, f.reason);
  }

  bool have_lower = false, have_upper = false;
  for (const auto& s : rep.sources) {
    if (!s.applies) continue;
    if (s.lower && (!have_lower || *s.lower > rep.lower)) {
      rep.lower = *s.lower;
      have_lower = true;
    }
    if (s.upper && (!have_upper || *s.upper < rep.upper)) {
      rep.upper = *s.upper;
      have_upper = true;
    }
  }
  if (rep.lower > rep.upper)
    throw std::logic_error("closed-form bounds cross: lower " + rep.lower.str() + " > upper " + rep.upper.str());
  return rep;
}

}  // namespace zsum
