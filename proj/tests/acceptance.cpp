// Acceptance runner: one PASS/FAIL line per criterion.
//   zsum_acceptance [--criterion N]...   (default: all)

#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "oracle.hpp"
#include "util.hpp"
#include "zsum/bounds.hpp"
#include "zsum/conjecture.hpp"
#include "zsum/constructive.hpp"
#include "zsum/errors.hpp"
#include "zsum/extremal.hpp"
#include "zsum/lemma_chain.hpp"
#include "zsum/search.hpp"
#include "zsum/sequence_io.hpp"

using namespace zsum;

namespace {

// Wall-clock limits, in seconds.
constexpr double limit_p_groups = 300;
constexpr double limit_rank12 = 600;
constexpr double limit_c3c3c9 = 3600;
constexpr double limit_prop14 = 600;  // per triple
constexpr double limit_conjecture = 1800;  // per run
constexpr double limit_extremal = 300;
constexpr double limit_properties = 600;

constexpr int prop14_instances = 10'000;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void fail(const std::string& why) {
    pass = false;
    detail << "[" << why << "] ";
  }
  void expect(bool ok, const std::string& why) {
    if (!ok) fail(why);
  }
};

double since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

std::vector<GroupSpec> p_groups(std::int64_t p, std::int64_t max_order) {
  std::vector<GroupSpec> out;
  for (std::int64_t n = p; n <= max_order; n *= p)
    for (const auto& g : abelian_groups_of_order(n)) out.push_back(g);
  return out;
}

std::string str(const GroupSpec& g) { return "[" + to_string(g) + "]"; }

void p_group_davenport(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  int groups = 0;
  for (std::int64_t p : {2, 3, 5, 7})
    for (const auto& g : p_groups(p, 64)) {
      const auto v = davenport_exact(g);
      ++groups;
      o.expect(v.exact, "search did not finish on " + str(g));
      o.expect(v.value == d_star(g), "D" + str(g) + " = " + std::to_string(v.value) + " != D* = " +
                                         std::to_string(d_star(g)));
    }
  const double s = since(t0);
  o.expect(s < limit_p_groups, "runtime " + std::to_string(s) + " s");
  o.detail << groups << " p-groups, D = D* on all, " << s << " s";
}

void rank12(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  int cases = 0;
  for (std::int64_t n2 = 2; n2 <= 8; ++n2)
    for (std::int64_t n1 = 1; n1 <= n2; ++n1) {
      if (n2 % n1 != 0) continue;
      const GroupSpec g = n1 == 1 ? GroupSpec{n2} : GroupSpec{n1, n2};
      for (int r = 1; r <= 3; ++r) {
        const auto v = davenport_r_exact(g, r);
        const std::int64_t want = r * n2 + n1 - 1;
        ++cases;
        o.expect(v.exact && v.value == want, "D_" + std::to_string(r) + str(g) + " = " + std::to_string(v.value) +
                                                 ", formula " + std::to_string(want));
      }
    }
  const double s = since(t0);
  o.expect(s < limit_rank12, "runtime " + std::to_string(s) + " s");
  o.detail << cases << " (group, r) cases match r n_1 and r n_2 + n_1 - 1, " << s << " s";
}

void theorem3(Outcome& o) {
  int cases = 0;
  for (std::int64_t p : {2, 3, 5, 7})
    for (const auto& g : p_groups(p, 32))
      for (int r = 1; r <= 3; ++r) {
        const auto f = theorem3_value(PGroupSpec::from_group(g), r);
        if (!f.applies) continue;
        const auto v = davenport_r_exact(g, r);
        ++cases;
        o.expect(v.exact && BigInt(v.value) == *f.value,
                 "D_" + std::to_string(r) + str(g) + " = " + std::to_string(v.value) + ", formula " + f.value->str());
      }
  std::vector<std::int64_t> c24;
  for (int r = 1; r <= 3; ++r) c24.push_back(davenport_r_exact(GroupSpec{2, 4}, r).value);
  o.expect(c24 == std::vector<std::int64_t>{5, 9, 13}, "D_r(C_2 x C_4) != {5, 9, 13}");
  o.detail << cases << " qualifying (group, r) cases match; D_r(C_2 x C_4) = {5, 9, 13}";
}

void c3c3c9(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  SearchBudget b;
  b.max_seconds = limit_c3c3c9;
  const auto v = davenport_exact(GroupSpec{3, 3, 9}, b);
  const double s = since(t0);
  if (v.exact) {
    o.expect(v.value == 13, "D(3,3,9) = " + std::to_string(v.value));
    o.detail << "D(C_3 x C_3 x C_9) = " << v.value << " exact, " << v.nodes_visited << " nodes, " << s << " s";
  } else {
    o.fail("search did not finish within " + std::to_string(limit_c3c3c9) + " s; lower bound " + std::to_string(v.value));
  }
}

void prop14(Outcome& o) {
  std::mt19937_64 rng(20240614);
  for (auto [p, q, d] : {std::tuple{2, 3, 3}, std::tuple{3, 2, 3}, std::tuple{2, 5, 3}}) {
    const auto t0 = std::chrono::steady_clock::now();
    int valid = 0, failures = 0, topped = 0;
    std::map<std::string, int> routes;
    for (int i = 0; i < prop14_instances; ++i) {
      const auto s = testutil::random_structured(p, q, d, p * q, rng);
      const auto pairs = s.to_pairs();
      try {
        const auto res = prop14_extract(s);
        // Independent recheck: nonempty, distinct in-range positions, zero sum.
        const auto& pos = res.witness.positions;
        std::vector<oracle::Elem> sub;
        bool ok = !pos.empty();
        for (std::size_t k = 0; k < pos.size(); ++k) {
          ok = ok && pos[k] < pairs.size() && (k == 0 || pos[k - 1] < pos[k]);
          if (ok) sub.push_back(pairs.element(pos[k]).residues);
        }
        const auto og = testutil::to_oracle(pairs.group());
        oracle::Elem acc = og.zero();
        for (const auto& e : sub) acc = og.add(acc, e);
        ok = ok && acc == og.zero();
        valid += ok;
        topped += res.topped_up;
        ++routes[std::string(prop14_case_name(res.route))];
      } catch (const ConstructionFailure&) {
        ++failures;
      }
    }
    const double s = since(t0);
    o.expect(valid == prop14_instances, "invalid witnesses");
    o.expect(failures == 0, std::to_string(failures) + " construction failures");
    o.expect(s < limit_prop14, "runtime " + std::to_string(s) + " s");
    o.detail << "(" << p << "," << q << "," << d << "): " << valid << "/" << prop14_instances << " valid, routes";
    for (const auto& [k, v] : routes) o.detail << " " << k << "=" << v;
    o.detail << ", topped-up " << topped << ", " << s << " s; ";
  }
}

ConjectureVerdict resumed_run(std::int64_t p, std::int64_t q, int d, int& runs) {
  const auto path = std::filesystem::temp_directory_path() / "zsum_acceptance.ckpt";
  std::filesystem::remove(path);
  ConjectureOptions opt;
  opt.budget.max_nodes = 64;
  opt.checkpoint_file = path;
  ConjectureVerdict v;
  for (runs = 1;; ++runs) {
    const auto before = opt.resume_from.value_or(ConjectureCheckpoint{p, q, d});
    v = conjecture1_check(p, q, d, opt);
    if (v.status != ConjectureStatus::budget_exceeded) break;
    if (v.cursor == before) opt.budget.max_nodes *= 2;
    opt.resume_from = read_checkpoint(read_text_file(path));
  }
  std::filesystem::remove(path);
  return v;
}

void conjecture(Outcome& o) {
  for (auto [p, q, d] : {std::tuple{3, 2, 3}, std::tuple{2, 3, 3}}) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto v = conjecture1_check(p, q, d);
    const double s = since(t0);
    o.expect(s < limit_conjecture, "runtime " + std::to_string(s) + " s");
    const bool definite = v.status != ConjectureStatus::budget_exceeded;
    if (p == 3)
      o.expect(v.status == ConjectureStatus::verified, "(3,2,3) not verified");
    else
      o.expect(definite, "(2,3,3) has no definite verdict");
    int runs = 0;
    const auto r = resumed_run(p, q, d, runs);
    o.expect(r.status == v.status && r.candidates_checked == v.candidates_checked && r.nodes == v.nodes,
             "resumed run differs");
    o.detail << "(" << p << "," << q << "," << d << "): " << conjecture_status_name(v.status) << ", "
             << v.signatures << " signatures, search space " << v.search_space_size.str() << ", "
             << v.candidates_checked << " candidates, " << v.nodes << " nodes, " << s << " s; resumed over " << runs
             << " runs to the same totals; ";
  }
}

void lemmas(Outcome& o) {
  SearchBudget b;
  b.max_nodes = 20'000'000;
  b.deterministic = false;
  const auto rep = lemma_grid(36, 3, b);
  const auto fails = rep.count(CheckStatus::fail);
  const auto skipped = rep.count(CheckStatus::skipped);
  for (const auto& c : rep.checks)
    if (c.status == CheckStatus::fail) o.fail("lemma " + c.lemma + " on " + str(c.group) + ": " + c.claim);
  o.expect(skipped == 0, std::to_string(skipped) + " checks skipped");
  o.detail << rep.checks.size() << " checks: " << rep.count(CheckStatus::pass) << " pass, "
           << rep.count(CheckStatus::vacuous) << " vacuous, " << skipped << " skipped, " << fails << " fail";
}

void theorem6(Outcome& o) {
  const MultiPrimeSpec a{{2, 3}, {{1, 1}, {0, 1}}};
  const MultiPrimeSpec b{{2, 3}, {{1, 1, 2}, {0, 0, 1}}};
  for (const auto& spec : {a, b}) {
    const auto bounds = theorem6_bounds(spec, 1);
    const auto v = davenport_exact(spec.to_group());
    o.expect(bounds.applies && v.exact, "bounds or search unavailable for " + str(spec.to_group()));
    if (!bounds.applies || !v.exact) continue;
    o.expect(*bounds.lower <= v.value && v.value <= *bounds.upper, "sandwich fails on " + str(spec.to_group()));
    o.detail << *bounds.lower << " <= D" << str(spec.to_group()) << " = " << v.value << " <= " << *bounds.upper
             << "; ";
  }
  o.expect(*theorem6_bounds(a, 1).lower == 7 && *theorem6_bounds(a, 1).upper == 9, "C_2 x C_6 bounds != [7, 9]");
  o.expect(*theorem6_bounds(b, 1).lower == 14 && *theorem6_bounds(b, 1).upper == 18,
           "C_2 x C_2 x C_12 bounds != [14, 18]");
  Rational prev = -1;
  for (std::int64_t r = 1; r <= 5; ++r) {
    const Rational e = error_ratio(b, r);
    o.expect(e == Rational(4, 12 * r + 2), "error ratio at r = " + std::to_string(r) + " is " + e.str());
    if (r > 1) o.expect(e < prev, "error ratio not decreasing at r = " + std::to_string(r));
    prev = e;
    o.detail << "err(" << r << ") = " << e.str() << " ";
  }
}

void extremal(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  int checked = 0;
  for (std::int64_t p : {2, 3, 5, 7})
    for (const auto& g : p_groups(p, 32)) {
      const auto spec = PGroupSpec::from_group(g);
      for (std::int64_t r = 1; r <= 2; ++r) {
        for (std::int64_t m = 1; m * g.cardinality() <= 32; ++m) {
          ExtremalRecipe rec{m == 1 ? RecipeSource::thm3 : RecipeSource::thm4, p, spec.exponents(), m, 1, r};
          try {
            rec.validate();
          } catch (const InvalidInput&) {
            continue;
          }
          const auto s = construct_extremal(rec);
          ++checked;
          o.expect(BigInt(s.size()) + 1 == rec.claimed_lower_bound(), "length mismatch for " + str(rec.group()));
          o.expect(verify_deficiency(s, static_cast<int>(r)),
                   std::string(recipe_name(rec.source)) + " on " + str(rec.group()) + " r=" + std::to_string(r) +
                       " is not deficient");
        }
      }
    }
  const double s = since(t0);
  o.expect(s < limit_extremal, "runtime " + std::to_string(s) + " s");
  o.detail << checked << " thm3/thm4 sequences deficient, " << s << " s";
}

void properties(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(10);
  int witnesses = 0, sumsets = 0;
  for (const auto& g : testutil::small_groups()) {
    const auto og = testutil::to_oracle(g);
    for (int trial = 0; trial < 40; ++trial) {
      const int len = 1 + static_cast<int>(rng() % 12);
      const auto s = testutil::random_sequence(g, len, rng);
      const auto el = testutil::to_oracle(s);
      // Witness validity: returned zero-sums are zero-sum subsequences, and
      // one exists exactly when brute force finds one.
      const auto w = find_zero_sum(s);
      o.expect(w.has_value() == oracle::has_zero_sum(og, el), "zero-sum existence disagrees on " + str(g));
      if (w) {
        o.expect(w->sequence().divides(s) && w->is_zero_sum(), "invalid witness on " + str(g));
        ++witnesses;
      }
      for (int r = 2; r <= 3; ++r) {
        const auto f = find_disjoint_zero_sums(s, r);
        o.expect(f.has_value() == (oracle::max_disjoint(og, el) >= r), "disjoint family disagrees on " + str(g));
      }
      // Sumset DP against subset enumeration.
      std::set<oracle::Elem> got;
      for (const auto& e : sumset(s)) got.insert(e.residues);
      o.expect(got == oracle::sumset(og, el), "sumset differs on " + str(g));
      ++sumsets;
    }
    // Monotonicity in r and D* <= D <= eta.
    std::int64_t prev_d = 0, prev_e = 0;
    for (int r = 1; r <= 3; ++r) {
      const auto d = davenport_r_exact(g, r);
      const auto e = eta_r_exact(g, r);
      o.expect(d.exact && e.exact, "search unfinished on " + str(g));
      o.expect(d.value >= prev_d && e.value >= prev_e, "not monotone in r on " + str(g));
      o.expect(d.value <= e.value, "D_r > eta_r on " + str(g));
      if (r == 1) o.expect(d_star(g) <= d.value, "D* > D on " + str(g));
      prev_d = d.value;
      prev_e = e.value;
    }
  }
  const double s = since(t0);
  o.expect(s < limit_properties, "runtime " + std::to_string(s) + " s");
  o.detail << testutil::small_groups().size() << " groups: " << witnesses << " witnesses, " << sumsets
           << " sumsets checked; monotone in r; D* <= D <= eta; " << s << " s";
}

const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
    {"p-groups: D = D* for |G| <= 64", p_group_davenport},
    {"rank 1 and 2 r-wise formulas", rank12},
    {"p-group D_r formula vs search", theorem3},
    {"D(C_3 x C_3 x C_9) = 13", c3c3c9},
    {"block-sum extraction soundness", prop14},
    {"structured-sequence conjecture checker", conjecture},
    {"lemma inequality grid", lemmas},
    {"multi-prime sandwich and error ratio", theorem6},
    {"extremal sequences are deficient", extremal},
    {"property suites", properties},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::vector<int> which;
  app.add_option("--criterion", which, "Criterion number (repeatable)")->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);
  if (which.empty())
    for (int i = 1; i <= 10; ++i) which.push_back(i);

  bool all = true;
  for (int n : which) {
    const auto& [name, fn] = criteria[static_cast<std::size_t>(n - 1)];
    Outcome o;
    try {
      fn(o);
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << n << " (" << name << "): " << o.detail.str()
              << std::endl;
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
