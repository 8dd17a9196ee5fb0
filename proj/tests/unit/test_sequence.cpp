#include <random>

#include "../util.hpp"
#include "doctest.h"
#include "zsum/errors.hpp"
#include "zsum/sequence.hpp"
#include "zsum/sequence_io.hpp"

using namespace zsum;

TEST_SUITE("sequence") {
  TEST_CASE("multiset bookkeeping") {
    GroupSpec g{2, 4};
    GSequence s(g, {GroupElement{0, 1}, GroupElement{1, 0}, GroupElement{0, 1}});
    CHECK(s.size() == 3);
    CHECK(s.multiplicity(GroupElement{0, 1}) == 2);
    CHECK(s.expanded() == std::vector<GroupElement>{{0, 1}, {0, 1}, {1, 0}});
    CHECK(sigma(s) == GroupElement{1, 2});
    GSequence t(g, {GroupElement{0, 1}});
    CHECK(t.divides(s));
    CHECK_FALSE(s.divides(t));
    CHECK(remove(s, t).size() == 2);
    CHECK(concat(s, t).multiplicity(GroupElement{0, 1}) == 3);
    CHECK(s.fingerprint() == GSequence(g, {GroupElement{1, 0}, GroupElement{0, 1}, GroupElement{0, 1}}).fingerprint());
    CHECK(s.fingerprint() != t.fingerprint());
    CHECK_THROWS_AS(s.insert(GroupElement{2, 0}), InvalidInput);
  }

  TEST_CASE("witnesses are certified against their parent") {
    GroupSpec g{4};
    GSequence s(g, {GroupElement{1}, GroupElement{3}, GroupElement{2}});
    Witness w = certify_zero_sum(s, GSequence(g, std::vector<GroupElement>{GroupElement{1}, GroupElement{3}}));
    CHECK(w.is_zero_sum());
    CHECK(w.parent_id() == s.fingerprint());
    CHECK_THROWS_AS(certify_zero_sum(s, GSequence(g, {GroupElement{1}})), InvalidWitness);
    CHECK_THROWS_AS(Witness(s, GSequence(g, std::vector<GroupElement>{GroupElement{1}, GroupElement{1}})), InvalidWitness);
    CHECK_THROWS_AS(Witness(s, GSequence(g)), InvalidWitness);
    Witness a = certify_zero_sum(s, GSequence(g, std::vector<GroupElement>{GroupElement{1}, GroupElement{3}}));
    CHECK_THROWS_AS(DisjointFamily(s, {a, a}), InvalidWitness);
  }

  TEST_CASE("sumset DP agrees with subset enumeration") {
    std::mt19937_64 rng(20261016);
    for (const auto& g : testutil::small_groups())
      for (int trial = 0; trial < 40; ++trial) {
        const int len = static_cast<int>(rng() % 13);
        const GSequence s = testutil::random_sequence(g, len, rng);
        std::set<oracle::Elem> want = oracle::sumset(testutil::to_oracle(g), testutil::to_oracle(s));
        std::set<oracle::Elem> got;
        for (const auto& e : sumset(s)) got.insert(e.residues);
        REQUIRE(got == want);
        CHECK(is_zero_sum_free(s) == !oracle::has_zero_sum(testutil::to_oracle(g), testutil::to_oracle(s)));
      }
  }

  TEST_CASE("sequence documents round-trip bit-exactly") {
    SequenceDocument doc{GroupSpec{3, 3, 9}, {GroupElement{1, 0, 2}, GroupElement{0, 0, 0}, GroupElement{1, 0, 2}}};
    const std::string text = write_sequence_document(doc);
    CHECK(text == "{\"group\":[3,3,9],\"elements\":[[1,0,2],[0,0,0],[1,0,2]]}\n");
    CHECK(read_sequence_document(text) == doc);
    CHECK(write_sequence_document(read_sequence_document(text)) == text);
    CHECK(to_gsequence(doc).size() == 3);
    CHECK_THROWS_AS(read_sequence_document("{\"group\":[3],\"elements\":[[3]]}"), InvalidInput);
    CHECK_THROWS_AS(read_sequence_document("{\"group\":[3]}"), InvalidInput);
    CHECK_THROWS_AS(read_sequence_document("not json"), InvalidInput);
  }

  TEST_CASE("pair sequences split off the last coordinate") {
    const GroupSpec full{2, 2, 3};
    PairSequence s = PairSequence::from_elements(full, {GroupElement{1, 0, 2}, GroupElement{0, 1, 0}});
    CHECK(s.h() == GroupSpec{2, 2});
    CHECK(s.q() == 3);
    CHECK(s[0].y == 2);
    CHECK(s.group() == full);
    CHECK(s.element(1) == GroupElement{0, 1, 0});
    CHECK(to_pair_sequence(to_document(s)).pairs() == s.pairs());
  }

  TEST_CASE("normalize sorts into y-blocks and keeps the permutation") {
    // C_2^3 x C_3 has m = 2(3+3-1) - 2 = 8
    const GroupSpec full{2, 2, 2, 3};
    std::vector<GroupElement> el{{1, 0, 0, 0}, {0, 1, 0, 2}, {0, 0, 1, 1}, {1, 1, 0, 0},
                                 {0, 1, 1, 2}, {1, 0, 1, 1}, {1, 1, 1, 0}, {0, 0, 0, 2}};
    PairSequence s = PairSequence::from_elements(full, el);
    NormalizedSequence n = normalize(s);
    CHECK(n.seq.blocks() == std::vector<std::int64_t>{2, 3});
    CHECK(n.seq.r() == 5);
    for (std::size_t k = 0; k < el.size(); ++k) {
      CHECK(n.seq.to_pairs()[k].x == s[n.permutation[k]].x);
      CHECK(n.seq.y_at(k) == s[n.permutation[k]].y);
    }
    CHECK_THROWS_AS(normalize(PairSequence::from_elements(full, {el[0]})), InvalidInput);
  }
}
