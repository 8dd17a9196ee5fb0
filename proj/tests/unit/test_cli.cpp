#include <doctest.h>

#include <filesystem>
#include <map>
#include <sstream>

#include "json.hpp"
#include "zsum/cache.hpp"
#include "zsum/cli.hpp"
#include "zsum/sequence_io.hpp"

using namespace zsum;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli_dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

// First two whitespace-separated columns of each table line.
std::map<std::string, std::string> table_rows(const std::string& text) {
  std::map<std::string, std::string> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == ' ') continue;
    std::istringstream ls(line);
    std::string k, v;
    ls >> k >> v;
    if (!v.empty()) rows[k] = v;
  }
  return rows;
}

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / "zsum_cli_tests";
  fs::create_directories(dir);
  auto p = dir / name;
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("exact davenport of C_3^3") {
    auto r = run({"exact", "davenport", "--group", "3,3,3"});
    CHECK(r.code == exit_ok);
    CHECK(table_rows(r.out)["exact"] == "7");
  }

  TEST_CASE("budget exhaustion exits 2 with a lower bound") {
    auto r = run({"--format", "json", "exact", "davenport", "--group", "7,49", "--budget-nodes", "10"});
    CHECK(r.code == exit_budget);
    const auto j = nlohmann::json::parse(r.out);
    CHECK_FALSE(j.contains("exact"));
    CHECK(j["lower"].get<std::int64_t>() >= 55);
  }

  TEST_CASE("invalid input exits 3") {
    CHECK(run({"exact", "davenport", "--group", "0,3"}).code == exit_invalid);
    CHECK(run({"bogus"}).code == exit_invalid);
    CHECK(run({}).code == exit_invalid);
    CHECK(run({"exact", "nonsense", "--group", "3"}).code == exit_invalid);
    CHECK(run({"--format", "xml", "bounds", "--group", "3"}).code == exit_invalid);
  }

  TEST_CASE("json and table carry the same numbers") {
    auto t = run({"--deterministic", "exact", "D_r", "--group", "2,4", "--r", "2"});
    auto j = run({"--deterministic", "--format", "json", "exact", "D_r", "--group", "2,4", "--r", "2"});
    REQUIRE(t.code == exit_ok);
    REQUIRE(j.code == exit_ok);
    const auto rows = table_rows(t.out);
    const auto doc = nlohmann::json::parse(j.out);
    for (const char* k : {"r", "lower", "upper", "exact", "nodes", "runtime_ms"})
      CHECK(rows.at(k) == std::to_string(doc[k].get<std::int64_t>()));
    CHECK(rows.at("group") == doc["group"].get<std::string>());
    CHECK(doc["exact"].get<int>() == 9);
  }

  TEST_CASE("non-canonical groups are canonicalized") {
    auto r = run({"--format", "json", "exact", "D_r", "--group", "4,2", "--r", "2"});
    REQUIRE(r.code == exit_ok);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["canonical_group"] == "2,4");
    CHECK(doc["exact"] == 9);
  }

  TEST_CASE("csv has one row per source") {
    auto r = run({"--format", "csv", "bounds", "--group", "2,2,12"});
    REQUIRE(r.code == exit_ok);
    std::istringstream in(r.out);
    std::string header;
    std::getline(in, header);
    CHECK(header.rfind("invariant,group,canonical_group,r,lower,upper", 0) == 0);
    int rows = 0;
    for (std::string line; std::getline(in, line);) rows += !line.empty();
    CHECK(rows >= 2);
  }

  TEST_CASE("cache round trip reproduces the report bytes") {
    const auto cache = scratch("cache.json");
    const std::vector<std::string> args{"--deterministic", "--format", "json", "--cache", cache.string(),
                                        "exact",           "eta",      "--group", "3,3"};
    auto first = run(args);
    REQUIRE(first.code == exit_ok);
    REQUIRE(fs::exists(cache));
    const auto saved = read_text_file(cache);
    auto second = run(args);
    CHECK(second.code == exit_ok);
    CHECK(second.out == first.out);
    CHECK(read_text_file(cache) == saved);

    const auto c = ResultCache::load(cache);
    auto e = c.find(GroupSpec{3, 3}, Invariant::eta, 1);
    REQUIRE(e.has_value());
    CHECK(e->value == 7);
    CHECK(e->status == CacheStatus::exact);
    CHECK(ResultCache::parse(c.serialize()).serialize() == c.serialize());
  }

  TEST_CASE("cache keeps exact entries immutable") {
    ResultCache c;
    CacheEntry e{GroupSpec{3, 3}, Invariant::davenport, 1, 5, CacheStatus::lower_bound, "t", std::nullopt, 0};
    CHECK(c.put(e));
    e.value = 4;
    CHECK_FALSE(c.put(e));
    e.value = 5;
    e.status = CacheStatus::exact;
    CHECK(c.put(e));
    e.value = 6;
    CHECK_THROWS_AS(c.put(e), std::logic_error);
    e.status = CacheStatus::lower_bound;
    CHECK_THROWS_AS(c.put(e), std::logic_error);
    CHECK(c.find(GroupSpec{3, 3}, Invariant::davenport, 1)->value == 5);
    CHECK_THROWS(cache_key(GroupSpec{3, 2}, Invariant::davenport, 1));
  }

  TEST_CASE("construct verifies deficiency") {
    auto a = run({"construct", "--recipe", "thm3", "--params", "p=2", "e=1,2", "r=2"});
    CHECK(a.code == exit_ok);
    auto rows = table_rows(a.out);
    CHECK(rows["length"] == "8");
    CHECK(rows["deficient"] == "true");

    auto b = run({"--format", "json", "construct", "--recipe", "thm4", "--params", "p=3", "e=1,1", "m=2"});
    CHECK(b.code == exit_ok);
    CHECK(nlohmann::json::parse(b.out)["length"] == 7);

    CHECK(run({"construct", "--recipe", "thm3", "--params", "p=2", "e=2,2,2"}).code == exit_invalid);
    CHECK(run({"construct", "--recipe", "nope", "--params", "p=2", "e=1"}).code == exit_invalid);
  }

  TEST_CASE("conjecture check for p = 3") {
    auto r = run({"check", "conjecture1", "--p", "3", "--q", "2", "--d", "3"});
    CHECK(r.code == exit_ok);
    CHECK(r.out.find("verified") != std::string::npos);
  }

  TEST_CASE("decide and extract read sequence files") {
    const auto dir = scratch("io");
    fs::create_directories(dir);
    // C_2^2 x C_6 written as [2,2,2,3]; length p(q+d-1)-(d-1) = 8 with p=2, q=3, d=3.
    const auto input = dir / "seq.json";
    write_text_file(input,
                    R"({"group":[2,2,2,3],"elements":[[1,0,0,1],[0,1,0,1],[0,0,1,1],[1,1,0,2],)"
                    R"([0,1,1,0],[1,0,1,2],[1,1,1,1],[0,0,0,2]]})");
    auto d = run({"--format", "json", "decide", "thm2", "--input", input.string()});
    CHECK(d.code == exit_ok);
    auto l = run({"--format", "json", "extract", "lemma15", "--input", input.string()});
    CHECK(l.code == exit_ok);
    CHECK(run({"decide", "thm2", "--input", (dir / "missing.json").string()}).code == exit_invalid);
  }

  TEST_CASE("lemma verification on a small grid") {
    auto r = run({"verify", "lemmas", "--max-order", "8", "--max-r", "2"});
    CHECK(r.code == exit_ok);
  }
}
