#include "zsum/cli.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "zsum/bounds.hpp"
#include "zsum/cache.hpp"
#include "zsum/conjecture.hpp"
#include "zsum/constructive.hpp"
#include "zsum/errors.hpp"
#include "zsum/extremal.hpp"
#include "zsum/group_table.hpp"
#include "zsum/lemma_chain.hpp"
#include "zsum/report.hpp"
#include "zsum/search.hpp"
#include "zsum/sequence_io.hpp"

namespace zsum {

namespace {

using json = nlohmann::ordered_json;

struct Globals {
  std::string format = "table";
  std::uint64_t budget_nodes = 0;
  double budget_seconds = 0;
  bool deterministic = false;
  unsigned threads = 0;
  std::string cache;
  std::string out_dir = ".";
  std::int64_t max_order_d = 0, max_order_r = 0;
  int max_r = 0;
};

struct Context {
  Globals g;
  OutputFormat fmt = OutputFormat::table;
  std::ostream& out;
  std::ostream& err;

  SearchBudget budget(std::uint64_t default_nodes = 0) const {
    SearchBudget b;
    if (g.budget_nodes) b.max_nodes = g.budget_nodes;
    else if (default_nodes) b.max_nodes = default_nodes;
    if (g.budget_seconds > 0) b.max_seconds = g.budget_seconds;
    b.deterministic = g.deterministic;
    b.threads = g.threads;
    // An explicit allowance bounds the work, so the order guards relax to
    // what the dense tables hold.
    if (g.budget_nodes || g.budget_seconds > 0) {
      b.max_order_davenport = GroupTable::max_order;
      b.max_order_r = GroupTable::max_order;
    }
    if (g.max_order_d) b.max_order_davenport = g.max_order_d;
    if (g.max_order_r) b.max_order_r = g.max_order_r;
    if (g.max_r) b.max_r = g.max_r;
    return b;
  }
};

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

std::string scalar_text(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

// Flat records for everything that is not a bound report.
void emit(const Context& ctx, const json& rec) {
  switch (ctx.fmt) {
    case OutputFormat::json:
      ctx.out << rec.dump(2) << "\n";
      break;
    case OutputFormat::table: {
      std::size_t w = 0;
      for (const auto& [k, v] : rec.items()) w = std::max(w, k.size());
      for (const auto& [k, v] : rec.items()) ctx.out << k << std::string(w + 2 - k.size(), ' ') << scalar_text(v) << "\n";
      break;
    }
    case OutputFormat::csv:
      ctx.out << "key,value\n";
      for (const auto& [k, v] : rec.items()) ctx.out << csv_field(k) << "," << csv_field(scalar_text(v)) << "\n";
      break;
  }
}

json positions_json(const std::vector<std::size_t>& pos) {
  json a = json::array();
  for (auto p : pos) a.push_back(p);
  return a;
}

std::vector<std::size_t> parse_positions(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    try {
      std::size_t used = 0;
      long long v = std::stoll(tok, &used);
      if (used != tok.size() || v < 0) throw std::invalid_argument(tok);
      out.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      throw InvalidInput("bad position '" + tok + "'");
    }
  }
  return out;
}

std::vector<GroupElement> elements_at(const PairSequence& s, const std::vector<std::size_t>& pos) {
  std::vector<GroupElement> out;
  for (auto p : pos) out.push_back(s.element(p));
  return out;
}

json witness_json(const PairSequence& s, const std::vector<std::size_t>& pos) {
  return to_json(SequenceDocument{s.group(), elements_at(s, pos)});
}

// Unused positions of s whose x-coordinates make up `part`.
std::vector<std::size_t> claim_x_positions(const PairSequence& s, const GSequence& part, std::vector<bool>& used) {
  std::vector<std::size_t> out;
  for (const auto& [e, k] : part.entries()) {
    std::int64_t need = k;
    for (std::size_t i = 0; i < s.size() && need > 0; ++i)
      if (!used[i] && s[i].x == e) {
        used[i] = true;
        out.push_back(i);
        --need;
      }
    if (need > 0) throw InvalidWitness("family does not fit the x-projection");
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y%m%dT%H%M%S", &tm);
  std::ostringstream s;
  s << buf << std::setw(3) << std::setfill('0') << ms << "Z";
  return s.str();
}

std::filesystem::path write_payload(const Context& ctx, const std::string& payload) {
  std::filesystem::path path = std::filesystem::path(ctx.g.out_dir) / ("counterexample-" + timestamp() + ".json");
  write_text_file(path, payload);
  ctx.err << "counterexample written to " << path.string() << "\n";
  return path;
}

PairSequence read_pairs(const std::string& file) { return to_pair_sequence(read_sequence_file(file)); }

// --- subcommands -----------------------------------------------------------

int run_exact(const Context& ctx, const std::string& inv_name, const std::string& group_text, int r) {
  const Invariant inv = parse_invariant(inv_name);
  const bool rwise = inv == Invariant::davenport_r || inv == Invariant::eta_r;
  if (!rwise && r != 1) throw InvalidInput("r applies to D_r and eta_r only");
  const GroupSpec g = parse_group(group_text);
  const GroupSpec c = canonicalize(g);
  if (!(g == c)) ctx.err << "note: group " << to_string(g) << " canonicalized to " << to_string(c) << "\n";

  Report rep;
  rep.bounds = bound_report(inv, g, r);
  std::optional<ResultCache> cache;
  std::optional<CacheEntry> hit;
  if (!ctx.g.cache.empty()) {
    cache = ResultCache::load(ctx.g.cache);
    hit = cache->find(c, inv, r);
  }
  if (hit && hit->status == CacheStatus::exact) {
    rep.bounds.add_exact(hit->value);
    rep.certificate = hit->certificate;
    rep.nodes = hit->nodes;
    ctx.out << render_report(rep, ctx.fmt);
    return exit_ok;
  }

  const SearchBudget budget = ctx.budget();
  const auto t0 = std::chrono::steady_clock::now();
  const ComputeResult res = compute_invariant(inv, c, r, budget);
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  std::int64_t value = res.value;
  if (res.exact)
    rep.bounds.add_exact(value);
  else {
    if (hit) value = std::max(value, hit->value);
    rep.bounds.add_search_lower(value);
  }
  rep.certificate = res.certificate_low;
  if (!res.exact && hit && hit->value > res.value) rep.certificate = hit->certificate;
  rep.nodes = res.nodes_visited;
  rep.runtime_ms = budget.deterministic ? 0 : ms;

  if (cache) {
    CacheEntry e{c, inv, r, value, res.exact ? CacheStatus::exact : CacheStatus::lower_bound,
                 std::string(tool_version()), res.certificate_low, res.nodes_visited};
    e.certificate = rep.certificate;
    if (cache->put(e)) cache->save(ctx.g.cache);
  }
  ctx.out << render_report(rep, ctx.fmt);
  if (!res.exact) {
    ctx.err << "budget exceeded: best lower bound " << value << "\n";
    return exit_budget;
  }
  return exit_ok;
}

int run_bounds(const Context& ctx, const std::string& inv_name, const std::string& group_text, int r) {
  const Invariant inv = parse_invariant(inv_name);
  const GroupSpec g = parse_group(group_text);
  if (!(g == canonicalize(g))) ctx.err << "note: group " << to_string(g) << " canonicalized to " << to_string(canonicalize(g)) << "\n";
  Report rep;
  rep.bounds = bound_report(inv, g, r);
  ctx.out << render_report(rep, ctx.fmt);
  return exit_ok;
}

ExtremalRecipe parse_params(RecipeSource source, const std::vector<std::string>& params) {
  ExtremalRecipe rec;
  rec.source = source;
  bool have_e = false;
  for (const auto& kv : params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw InvalidInput("parameter '" + kv + "' is not key=value");
    const std::string k = kv.substr(0, eq), v = kv.substr(eq + 1);
    try {
      if (k == "p") rec.p = std::stoll(v);
      else if (k == "m") rec.m = std::stoll(v);
      else if (k == "n") rec.n = std::stoll(v);
      else if (k == "r") rec.r = std::stoll(v);
      else if (k == "e" || k == "exps") {
        rec.exps.clear();
        for (auto x : parse_positions(v)) rec.exps.push_back(static_cast<int>(x));
        have_e = true;
      } else
        throw InvalidInput("unknown parameter '" + k + "'");
    } catch (const std::logic_error&) {
      throw InvalidInput("bad value in '" + kv + "'");
    }
  }
  if (!have_e) throw InvalidInput("recipe needs e=<exponents>");
  return rec;
}

int run_construct(const Context& ctx, const std::string& recipe_tag, const std::vector<std::string>& params) {
  const ExtremalRecipe rec = parse_params(parse_recipe(recipe_tag), params);
  const GSequence s = construct_extremal(rec);
  json j;
  j["recipe"] = std::string(recipe_name(rec.source));
  j["group"] = to_string(rec.group());
  j["r"] = rec.r;
  j["claimed_lower_bound"] = rec.claimed_lower_bound().str();
  j["length"] = s.size();
  std::optional<bool> ok;
  try {
    if (rec.r > std::numeric_limits<int>::max()) throw InvalidInput("r too large");
    ok = verify_deficiency(s, static_cast<int>(rec.r));
  } catch (const InvalidInput& e) {
    ctx.err << "verification skipped: " << e.what() << "\n";
  }
  j["deficient"] = ok ? json(*ok) : json(nullptr);
  j["sequence"] = to_json(to_document(s));
  emit(ctx, j);
  if (ok == false) {
    write_payload(ctx, write_sequence_document(to_document(s)));
    ctx.err << "sequence has " << rec.r << " disjoint zero-sum subsequences\n";
    return exit_counterexample;
  }
  return exit_ok;
}

int run_extract(const Context& ctx, const std::string& kind, const std::string& input, int lemma13_case,
                const std::string& positions_text) {
  const PairSequence s = read_pairs(input);
  json j;
  j["input"] = input;
  if (kind == "prop14") {
    const NormalizedSequence n = normalize(s);
    const Prop14Result res = prop14_extract(n.seq);
    std::vector<std::size_t> pos;
    for (auto k : res.witness.positions) pos.push_back(n.permutation[k]);
    std::sort(pos.begin(), pos.end());
    certify_pair_witness(s, pos);
    j["case"] = std::string(prop14_case_name(res.route));
    j["r"] = n.seq.r();
    j["alpha"] = res.alpha ? json(*res.alpha) : json(nullptr);
    j["leftover_blocks"] = res.leftover_blocks;
    j["topped_up"] = res.topped_up;
    j["positions"] = positions_json(pos);
    j["witness"] = witness_json(s, pos);
  } else if (kind == "lemma13") {
    PairWitness w = [&] {
      if (lemma13_case == 2) {
        if (positions_text.empty()) throw InvalidInput("lemma13 case 2 needs --positions");
        return lemma13_case2(s, parse_positions(positions_text));
      }
      if (lemma13_case != 1) throw InvalidInput("lemma13 case must be 1 or 2");
      const auto fam = find_disjoint_zero_sums(s.x_multiset(), static_cast<int>(s.q()));
      if (!fam) throw InvalidInput("x-projection has no " + std::to_string(s.q()) + " disjoint zero-sums");
      std::vector<bool> used(s.size(), false);
      std::vector<std::vector<std::size_t>> family;
      for (const auto& m : fam->members()) family.push_back(claim_x_positions(s, m.sequence(), used));
      return lemma13_case1(s, family);
    }();
    j["case"] = lemma13_case;
    j["positions"] = positions_json(w.positions);
    j["witness"] = witness_json(s, w.positions);
  } else if (kind == "lemma15") {
    const Lemma15Augmentation aug = lemma15_augment(s);
    const PairSequence& a = aug.augmented();
    j["augmented"] = to_json(to_document(a));
    std::optional<std::vector<std::size_t>> proper;
    for (std::size_t drop = 0; drop < a.size() && !proper; ++drop) {
      std::vector<std::size_t> keep;
      for (std::size_t i = 0; i < a.size(); ++i)
        if (i != drop) keep.push_back(i);
      const auto w = find_zero_sum(a.multiset(keep));
      if (!w) continue;
      std::vector<bool> used(a.size(), true);
      for (auto i : keep) used[i] = false;
      std::vector<std::size_t> pos;
      for (const auto& [e, k] : w->sequence().entries()) {
        std::int64_t need = k;
        for (auto i : keep)
          if (need > 0 && !used[i] && a.element(i) == e) {
            used[i] = true;
            pos.push_back(i);
            --need;
          }
      }
      std::sort(pos.begin(), pos.end());
      proper = pos;
    }
    if (proper) {
      const PairWitness back = aug.pullback(*proper);
      j["proper_zero_sum"] = positions_json(*proper);
      j["positions"] = positions_json(back.positions);
      j["witness"] = witness_json(s, back.positions);
    } else {
      j["proper_zero_sum"] = nullptr;
    }
  } else {
    throw InvalidInput("extract takes prop14, lemma13 or lemma15");
  }
  emit(ctx, j);
  return exit_ok;
}

int run_decide(const Context& ctx, const std::string& which, const std::string& input) {
  if (which != "thm2") throw InvalidInput("decide takes thm2");
  const PairSequence s = read_pairs(input);
  try {
    const Theorem2Result res = theorem2_decide(s);
    json j;
    j["input"] = input;
    j["route"] = res.route;
    j["notes"] = res.notes;
    j["positions"] = positions_json(res.witness.positions);
    j["witness"] = witness_json(s, res.witness.positions);
    emit(ctx, j);
    return exit_ok;
  } catch (const CounterexampleFound& e) {
    ctx.err << e.what() << "\n";
    write_payload(ctx, e.payload());
    return exit_counterexample;
  }
}

int run_check(const Context& ctx, const std::string& which, std::int64_t p, std::int64_t q, int d,
              const std::string& resume, const std::string& checkpoint, std::int64_t length) {
  if (which != "conjecture1") throw InvalidInput("check takes conjecture1");
  ConjectureOptions opt;
  opt.budget = ctx.budget();
  if (!resume.empty()) {
    opt.resume_from = read_checkpoint(read_text_file(resume));
    opt.checkpoint_file = resume;
  }
  if (!checkpoint.empty()) opt.checkpoint_file = checkpoint;
  if (length > 0) opt.length = length;
  const ConjectureVerdict v = conjecture1_check(p, q, d, opt);
  json j;
  j["p"] = p;
  j["q"] = q;
  j["d"] = d;
  j["status"] = std::string(conjecture_status_name(v.status));
  j["search_space_size"] = v.search_space_size.str();
  j["signatures"] = v.signatures;
  j["candidates_checked"] = v.candidates_checked;
  j["nodes"] = v.nodes;
  if (v.status == ConjectureStatus::budget_exceeded)
    j["checkpoint"] = nlohmann::ordered_json::parse(write_checkpoint(v.cursor));
  if (v.counterexample) {
    j["counterexample"] = to_json(to_document(*v.counterexample));
    j["counterexample_blocks"] = v.counterexample_blocks;
  }
  emit(ctx, j);
  switch (v.status) {
    case ConjectureStatus::verified: return exit_ok;
    case ConjectureStatus::budget_exceeded: return exit_budget;
    case ConjectureStatus::counterexample:
      write_payload(ctx, write_sequence_document(to_document(*v.counterexample)));
      return exit_counterexample;
  }
  return exit_error;
}

int run_verify(const Context& ctx, const std::string& which, std::int64_t max_order, int max_r, bool all) {
  if (which != "lemmas") throw InvalidInput("verify takes lemmas");
  const LemmaChainReport rep = lemma_grid(max_order, max_r, ctx.budget(20'000'000));
  const std::size_t fails = rep.count(CheckStatus::fail), skipped = rep.count(CheckStatus::skipped);
  if (ctx.fmt == OutputFormat::json) {
    json j;
    j["max_order"] = max_order;
    j["max_r"] = max_r;
    j["pass"] = rep.count(CheckStatus::pass);
    j["fail"] = fails;
    j["skipped"] = skipped;
    j["vacuous"] = rep.count(CheckStatus::vacuous);
    j["checks"] = json::array();
    for (const auto& c : rep.checks) {
      if (!all && c.status == CheckStatus::pass) continue;
      json e;
      e["lemma"] = c.lemma;
      e["group"] = to_string(c.group);
      if (c.sub) e["H"] = to_string(*c.sub);
      if (c.quotient) e["G/H"] = to_string(*c.quotient);
      e["r"] = c.r ? json(*c.r) : json(nullptr);
      e["status"] = std::string(check_status_name(c.status));
      e["claim"] = c.claim;
      if (!c.note.empty()) e["note"] = c.note;
      j["checks"].push_back(std::move(e));
    }
    ctx.out << j.dump(2) << "\n";
  } else {
    const bool csv = ctx.fmt == OutputFormat::csv;
    if (csv) ctx.out << "lemma,group,r,status,claim,note\n";
    for (const auto& c : rep.checks) {
      if (!all && c.status == CheckStatus::pass) continue;
      const std::string r = c.r ? std::to_string(*c.r) : "-";
      if (csv)
        ctx.out << c.lemma << "," << csv_field(to_string(c.group)) << "," << r << "," << check_status_name(c.status)
                << "," << csv_field(c.claim) << "," << csv_field(c.note) << "\n";
      else
        ctx.out << std::left << std::setw(5) << c.lemma << std::setw(12) << to_string(c.group) << std::setw(3) << r
                << std::setw(9) << check_status_name(c.status) << c.claim << (c.note.empty() ? "" : "  [" + c.note + "]")
                << "\n";
    }
    if (!csv)
      ctx.out << "checks " << rep.checks.size() << ": pass " << rep.count(CheckStatus::pass) << ", fail " << fails
              << ", skipped " << skipped << ", vacuous " << rep.count(CheckStatus::vacuous) << "\n";
  }
  if (fails) {
    ctx.err << fails << " lemma inequality instance(s) FAILED\n";
    return exit_counterexample;
  }
  return skipped ? exit_budget : exit_ok;
}

}  // namespace

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact zero-sum invariants of finite abelian groups", "zsum"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--format", g.format, "table, json or csv")->check(CLI::IsMember({"table", "json", "csv"}));
  app.add_option("--budget-nodes", g.budget_nodes, "search node allowance");
  app.add_option("--budget-seconds", g.budget_seconds, "search time allowance");
  app.add_flag("--deterministic", g.deterministic, "single-threaded, reproducible node counts, runtime_ms = 0");
  app.add_option("--threads", g.threads, "worker threads (0 = all cores)");
  app.add_option("--cache", g.cache, "result cache file");
  app.add_option("--out-dir", g.out_dir, "directory for counterexample files");
  app.add_option("--max-order-d", g.max_order_d, "size guard on |G| for D and eta");
  app.add_option("--max-order-r", g.max_order_r, "size guard on |G| for D_r and eta_r");
  app.add_option("--max-r", g.max_r, "size guard on r");

  std::string inv_name, group_text, input, kind, positions, resume, checkpoint, recipe;
  std::string bounds_inv = "D_r";
  int r = 1, lemma_case = 1, max_r = 3, d = 0;
  std::int64_t p = 0, q = 0, length = 0, max_order = 36;
  bool all = false;
  std::vector<std::string> params;

  auto* exact = app.add_subcommand("exact", "exhaustive search for D, D_r, eta or eta_r");
  exact->add_option("invariant", inv_name, "D, D_r, eta, eta_r, davenport or davenport_r")->required();
  exact->add_option("--group", group_text, "cyclic orders, e.g. 3,3,9")->required();
  exact->add_option("--r", r, "r for D_r and eta_r");

  auto* bounds = app.add_subcommand("bounds", "every closed-form bound that applies");
  bounds->add_option("--group", group_text)->required();
  bounds->add_option("--r", r);
  bounds->add_option("--invariant", bounds_inv, "default D_r");

  auto* construct = app.add_subcommand("construct", "build and verify an extremal sequence");
  construct->add_option("--recipe", recipe, "thm3, thm4, cor5.1-S, cor5.2-S1 or cor5.2-S2")->required();
  construct->add_option("--params", params, "p=P e=E1,E2,... [m=M] [n=N] [r=R]")->required();

  auto* extract = app.add_subcommand("extract", "witness-producing constructions");
  extract->add_option("kind", kind, "prop14, lemma13 or lemma15")->required();
  extract->add_option("--input", input, "sequence file")->required();
  extract->add_option("--case", lemma_case, "lemma13 case (1 or 2)");
  extract->add_option("--positions", positions, "lemma13 case 2: positions of T, comma separated");

  auto* decide = app.add_subcommand("decide", "find a zero-sum by the decision pipeline");
  std::string which;
  decide->add_option("theorem", which, "thm2")->required();
  decide->add_option("--input", input)->required();

  auto* check = app.add_subcommand("check", "exhaustive conjecture check");
  check->add_option("what", which, "conjecture1")->required();
  check->add_option("--p", p)->required();
  check->add_option("--q", q)->required();
  check->add_option("--d", d)->required();
  check->add_option("--resume", resume, "checkpoint file to resume from (and keep updating)");
  check->add_option("--checkpoint", checkpoint, "write progress here");
  check->add_option("--length", length, "check this sequence length instead");

  auto* verify = app.add_subcommand("verify", "check the lemma inequalities over small groups");
  verify->add_option("what", which, "lemmas")->required();
  verify->add_option("--max-order", max_order);
  verify->add_option("--max-r", max_r);
  verify->add_flag("--all", all, "list passing checks too");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_invalid;
  }

  Context ctx{g, parse_format(g.format), out, err};
  try {
    if (*exact) return run_exact(ctx, inv_name, group_text, r);
    if (*bounds) return run_bounds(ctx, bounds_inv, group_text, r);
    if (*construct) return run_construct(ctx, recipe, params);
    if (*extract) return run_extract(ctx, kind, input, lemma_case, positions);
    if (*decide) return run_decide(ctx, which, input);
    if (*check) return run_check(ctx, which, p, q, d, resume, checkpoint, length);
    if (*verify) return run_verify(ctx, which, max_order, max_r, all);
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return exit_budget;
  } catch (const InvalidInput& e) {
    err << "invalid input: " << e.what() << "\n";
    return exit_invalid;
  } catch (const CounterexampleFound& e) {
    err << e.what() << "\n";
    write_payload(ctx, e.payload());
    return exit_counterexample;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_error;
  }
  return exit_error;
}

int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return cli_dispatch(args, out, err);
}

}  // namespace zsum
