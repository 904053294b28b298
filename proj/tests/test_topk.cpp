#include <doctest.h>

#include <random>

#include "moquery/errors.hpp"
#include "moquery/oracle.hpp"
#include "moquery/topk.hpp"
#include "support/fixtures.hpp"

using namespace moquery;
namespace mt = moquery::testing;

TEST_SUITE("topk") {

TEST_CASE("build_index sorts lists by value then id") {
  Dataset d = mt::demo_dataset();
  AccessIndex idx = AccessIndex::build(d);
  REQUIRE(idx.size() == 8);
  REQUIRE(idx.arity() == 2);

  // experience: SS(10) first, then the 9-tie MR before NF by id.
  CHECK(idx.id(idx.rowAt(0, 0)) == "SS");
  CHECK(idx.id(idx.rowAt(0, 1)) == "MR");
  CHECK(idx.id(idx.rowAt(0, 2)) == "NF");
  // score: strictly decreasing values.
  CHECK(idx.id(idx.rowAt(1, 0)) == "JS");
  CHECK(idx.id(idx.rowAt(1, 1)) == "FS");
  CHECK(idx.id(idx.rowAt(1, 2)) == "PT");

  SUBCASE("non-negative data needs no shift") {
    CHECK(idx.shift(0) == 0.0);
    CHECK(idx.shift(1) == 0.0);
  }
  SUBCASE("empty dataset is rejected") {
    Dataset empty;
    empty.attributes = {{"x", Direction::Max}};
    CHECK_THROWS_AS(AccessIndex::build(empty), DataError);
  }
  SUBCASE("negative values produce a compensating shift") {
    Dataset neg;
    neg.attributes = {{"x", Direction::Max}, {"y", Direction::Max}};
    neg.tuples.push_back({"a", {-3.0, 1.0}});
    neg.tuples.push_back({"b", {2.0, -0.5}});
    AccessIndex nidx = AccessIndex::build(neg);
    CHECK(nidx.shift(0) == 3.0);
    CHECK(nidx.shift(1) == 0.5);
  }
}

TEST_CASE("fagin on the demo dataset") {
  AccessIndex idx = AccessIndex::build(mt::demo_dataset());

  SUBCASE("f1, k=1 stops after the round where a common row appears") {
    RankedResult r = fagin(idx, mt::f1(), 1);
    REQUIRE(r.entries.size() == 1);
    CHECK(r.entries[0].id == "JS");
    CHECK(*r.entries[0].score == doctest::Approx(21.4).epsilon(1e-12));
    CHECK(r.ordered);
    // Both lists to depth 5; every one of the 8 tuples has been seen.
    CHECK(r.stats.sortedAccesses == 10);
    CHECK(r.stats.randomAccesses == 8);
  }
  SUBCASE("f1, k=3 needs depth 6 and respects the FS/NF tie rule") {
    RankedResult r = fagin(idx, mt::f1(), 3);
    CHECK(mt::entry_ids(r) == std::vector<std::string>{"JS", "PT", "FS"});
    CHECK(r.stats.sortedAccesses == 12);
  }
  SUBCASE("f2, k=1") {
    RankedResult r = fagin(idx, mt::f2(), 1);
    CHECK(r.entries[0].id == "NF");
    CHECK(*r.entries[0].score == doctest::Approx(17.4).epsilon(1e-12));
  }
  SUBCASE("k=n yields the full ranking") {
    RankedResult r = fagin(idx, mt::f2(), 8);
    CHECK(mt::entry_ids(r) ==
          std::vector<std::string>{"NF", "SS", "PT", "DR", "JS", "MR", "MMM", "FS"});
    for (std::size_t i = 1; i < r.entries.size(); ++i) {
      CHECK(*r.entries[i - 1].score >= *r.entries[i].score);
    }
  }
}

TEST_CASE("threshold on the demo dataset") {
  AccessIndex idx = AccessIndex::build(mt::demo_dataset());

  SUBCASE("f1, k=1 stops at depth 2 where 21.4 beats the threshold 21.0") {
    RankedResult r = threshold(idx, mt::f1(), 1);
    REQUIRE(r.entries.size() == 1);
    CHECK(r.entries[0].id == "JS");
    CHECK(*r.entries[0].score == doctest::Approx(21.4).epsilon(1e-12));
    CHECK(r.stats.sortedAccesses == 4);
    CHECK(r.stats.randomAccesses == 4);
    CHECK(r.stats.bufferPeak == 1);
  }
  SUBCASE("f2, k=1 stops at depth 4") {
    RankedResult r = threshold(idx, mt::f2(), 1);
    CHECK(r.entries[0].id == "NF");
    CHECK(*r.entries[0].score == doctest::Approx(17.4).epsilon(1e-12));
    CHECK(r.stats.sortedAccesses == 8);
    CHECK(r.stats.bufferPeak == 1);
  }
  SUBCASE("k=n matches the exhaustive ranking") {
    RankedResult r = threshold(idx, mt::f1(), 8);
    auto brute = oracle::brute_topk(mt::demo_dataset(), mt::f1(), 8);
    REQUIRE(r.entries.size() == brute.size());
    for (std::size_t i = 0; i < brute.size(); ++i) {
      CHECK(r.entries[i].id == brute[i].first);
      CHECK(*r.entries[i].score == brute[i].second);
    }
  }
}

TEST_CASE("nra on the demo dataset") {
  AccessIndex idx = AccessIndex::build(mt::demo_dataset());

  SUBCASE("f1, k=1 stops once JS's lower bound clears every upper bound") {
    RankedResult r = nra(idx, mt::f1(), 1);
    REQUIRE(r.entries.size() == 1);
    CHECK(r.entries[0].id == "JS");
    CHECK_FALSE(r.entries[0].score.has_value());
    CHECK_FALSE(r.ordered);
    CHECK(r.stats.sortedAccesses == 10);  // both lists to depth 5
    CHECK(r.stats.randomAccesses == 0);
  }
  SUBCASE("f2, k=2 finds NF and SS without scores") {
    RankedResult r = nra(idx, mt::f2(), 2);
    CHECK(mt::entry_ids(r) == std::vector<std::string>{"NF", "SS"});
    CHECK(r.stats.randomAccesses == 0);
  }
  SUBCASE("k=n returns everything") {
    RankedResult r = nra(idx, mt::f1(), 8);
    CHECK(mt::entry_ids(r) ==
          std::vector<std::string>{"DR", "FS", "JS", "MMM", "MR", "NF", "PT", "SS"});
  }
}

TEST_CASE("nra_ordered ranks by repeated runs") {
  AccessIndex idx = AccessIndex::build(mt::demo_dataset());
  RankedResult r = nra_ordered(idx, mt::f2(), 2);
  CHECK(mt::entry_ids(r) == std::vector<std::string>{"NF", "SS"});
  CHECK(r.ordered);
  CHECK_FALSE(r.entries[0].score.has_value());
  CHECK(r.stats.randomAccesses == 0);

  SUBCASE("k=1 equals a single nra run") {
    RankedResult once = nra(idx, mt::f2(), 1);
    RankedResult ranked = nra_ordered(idx, mt::f2(), 1);
    CHECK(mt::entry_ids(once) == mt::entry_ids(ranked));
    CHECK(once.stats.sortedAccesses == ranked.stats.sortedAccesses);
  }
  SUBCASE("the prefix property holds on a random instance") {
    std::mt19937_64 rng(99);
    Dataset d = mt::random_dataset(rng, 50, 3);
    AccessIndex ridx = AccessIndex::build(d);
    ScoringFunction f = mt::random_scoring(rng, 3);
    RankedResult full = nra_ordered(ridx, f, 10);
    auto brute = oracle::brute_topk(d, f, 10);
    // Continuous data: ties have probability zero, order must match.
    for (std::size_t i = 0; i < 10; ++i) CHECK(full.entries[i].id == brute[i].first);
  }
}

TEST_CASE("all three algorithms validate their inputs") {
  AccessIndex idx = AccessIndex::build(mt::demo_dataset());
  CHECK_THROWS_AS(fagin(idx, mt::f1(), 0), ContractError);
  CHECK_THROWS_AS(threshold(idx, mt::f1(), 9), ContractError);
  CHECK_THROWS_AS(nra(idx, ScoringFunction{"bad", {1.0}}, 1), ContractError);
  CHECK_THROWS_AS(fagin(idx, ScoringFunction{"neg", {0.5, -0.1}}, 1), ContractError);
}

TEST_CASE("results agree with the exhaustive scan on random instances") {
  std::mt19937_64 rng(1234);
  for (int iter = 0; iter < 150; ++iter) {
    std::size_t n = 2 + static_cast<std::size_t>(mt::next_uniform(rng) * 58);
    std::size_t m = 2 + static_cast<std::size_t>(mt::next_uniform(rng) * 3);
    bool gridded = mt::next_uniform(rng) < 0.3;
    Dataset d = mt::random_dataset(rng, n, m,
                                   gridded ? mt::DataKind::Gridded : mt::DataKind::Continuous);
    AccessIndex idx = AccessIndex::build(d);
    ScoringFunction f = mt::random_scoring(rng, m);
    std::size_t k = 1 + static_cast<std::size_t>(mt::next_uniform(rng) * n);

    RankedResult fa = fagin(idx, f, k);
    RankedResult ta = threshold(idx, f, k);
    RankedResult nr = nra(idx, f, k);
    CHECK(mt::valid_topk(d, f, k, mt::entry_ids(fa)));
    CHECK(mt::valid_topk(d, f, k, mt::entry_ids(ta)));
    CHECK(mt::valid_topk(d, f, k, mt::entry_ids(nr)));

    // The threshold scan never reads deeper than the round-robin scan and
    // never buffers more than k candidates.
    CHECK(ta.stats.sortedAccesses <= fa.stats.sortedAccesses);
    CHECK(ta.stats.bufferPeak <= k);
    CHECK(nr.stats.randomAccesses == 0);
  }
}

TEST_CASE("rankings are invariant under shared positive affine rescaling") {
  std::mt19937_64 rng(555);
  for (int iter = 0; iter < 40; ++iter) {
    std::size_t n = 5 + static_cast<std::size_t>(mt::next_uniform(rng) * 40);
    std::size_t m = 2 + static_cast<std::size_t>(mt::next_uniform(rng) * 2);
    Dataset d = mt::random_dataset(rng, n, m);
    double scale = 0.5 + 2.0 * mt::next_uniform(rng);
    std::vector<double> offset(m);
    // Negative offsets force the no-random-access shift logic to engage.
    for (double& b : offset) b = -2.0 + mt::next_uniform(rng);

    Dataset transformed = d;
    for (Tuple& t : transformed.tuples) {
      for (std::size_t i = 0; i < m; ++i) t.values[i] = scale * t.values[i] + offset[i];
    }

    ScoringFunction f = mt::random_scoring(rng, m);
    std::size_t k = 1 + static_cast<std::size_t>(mt::next_uniform(rng) * (n / 2));
    AccessIndex a = AccessIndex::build(d);
    AccessIndex b = AccessIndex::build(transformed);
    CHECK(mt::entry_ids(fagin(a, f, k)) == mt::entry_ids(fagin(b, f, k)));
    CHECK(mt::entry_ids(threshold(a, f, k)) == mt::entry_ids(threshold(b, f, k)));
    CHECK(mt::entry_ids(nra(a, f, k)) == mt::entry_ids(nra(b, f, k)));
  }
}

}  // TEST_SUITE
