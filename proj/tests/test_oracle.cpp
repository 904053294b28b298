#include <doctest.h>

#include <random>

#include "moquery/errors.hpp"
#include "moquery/geometry.hpp"
#include "moquery/oracle.hpp"
#include "support/fixtures.hpp"

using namespace moquery;
namespace mt = moquery::testing;

TEST_SUITE("oracle") {

TEST_CASE("brute_topk ranks the demo dataset") {
  Dataset d = mt::demo_dataset();

  SUBCASE("f1, k=3: FS and NF tie exactly, ascending id wins") {
    CHECK(score(mt::f1(), d.tuples[1]) == score(mt::f1(), d.tuples[4]));  // FS == NF
    auto top = oracle::brute_topk(d, mt::f1(), 3);
    REQUIRE(top.size() == 3);
    CHECK(top[0].first == "JS");
    CHECK(top[0].second == doctest::Approx(21.4).epsilon(1e-12));
    CHECK(top[1].first == "PT");
    CHECK(top[1].second == doctest::Approx(18.2).epsilon(1e-12));
    CHECK(top[2].first == "FS");
    CHECK(top[2].second == doctest::Approx(16.8).epsilon(1e-12));
  }
  SUBCASE("f2, k=1") {
    auto top = oracle::brute_topk(d, mt::f2(), 1);
    CHECK(top[0].first == "NF");
    CHECK(top[0].second == doctest::Approx(17.4).epsilon(1e-12));
  }
  SUBCASE("f2, k=n is a full ranking with the JS/MR tie in id order") {
    auto top = oracle::brute_topk(d, mt::f2(), 8);
    std::vector<std::string> ids;
    for (const auto& [id, s] : top) ids.push_back(id);
    CHECK(ids == std::vector<std::string>{"NF", "SS", "PT", "DR", "JS", "MR", "MMM", "FS"});
    CHECK(top[4].second == top[5].second);  // JS == MR
  }
  SUBCASE("contract errors") {
    CHECK_THROWS_AS(oracle::brute_topk(d, mt::f1(), 0), ContractError);
    CHECK_THROWS_AS(oracle::brute_topk(d, mt::f1(), 9), ContractError);
    CHECK_THROWS_AS(oracle::brute_topk(d, ScoringFunction{"bad", {1.0}}, 1), ContractError);
  }
}

TEST_CASE("brute_skyline on the demo dataset") {
  Dataset d = mt::demo_dataset();
  CHECK(oracle::brute_skyline(d) == std::vector<std::string>{"JS", "NF", "PT", "SS"});
}

TEST_CASE("brute_skyline keeps exact duplicates") {
  Dataset d;
  d.attributes = {{"x1", Direction::Max}, {"x2", Direction::Max}};
  d.tuples.push_back({"a", {1.0, 0.5}});
  d.tuples.push_back({"b", {1.0, 0.5}});
  d.tuples.push_back({"c", {0.2, 0.1}});
  CHECK(oracle::brute_skyline(d) == std::vector<std::string>{"a", "b"});
}

TEST_CASE("brute_vertices finds exact corner points") {
  SUBCASE("full simplex") {
    auto vs = oracle::brute_vertices(make_polytope(2, {}));
    REQUIRE(vs.size() == 2);
    CHECK(vs[0] == std::vector<double>{0.0, 1.0});
    CHECK(vs[1] == std::vector<double>{1.0, 0.0});
  }
  SUBCASE("w1 <= w2") {
    auto vs = oracle::brute_vertices(mt::demo_polytope());
    REQUIRE(vs.size() == 2);
    CHECK(vs[0] == std::vector<double>{0.0, 1.0});
    CHECK(vs[1] == std::vector<double>{0.5, 0.5});
  }
  SUBCASE("decimal-string constraints stay exact") {
    oracle::ExactConstraint c{{"1", "0"}, "0.3"};  // w1 <= 3/10
    auto vs = oracle::brute_vertices(2, {c});
    REQUIRE(vs.size() == 2);
    CHECK(vs[0] == std::vector<double>{0.0, 1.0});
    CHECK(vs[1][0] == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(vs[1][1] == doctest::Approx(0.7).epsilon(1e-15));
  }
  SUBCASE("three dimensions") {
    auto vs = oracle::brute_vertices(make_polytope(3, {}));
    REQUIRE(vs.size() == 3);
    CHECK(vs[2] == std::vector<double>{1.0, 0.0, 0.0});
  }
  SUBCASE("caps") {
    WeightPolytope big;
    big.dim = 5;
    CHECK_THROWS_AS(oracle::brute_vertices(big), CapacityError);
    WeightPolytope crowded;
    crowded.dim = 2;
    crowded.constraints.assign(11, LinearConstraint{{1.0, 0.0}, 1.0});
    CHECK_THROWS_AS(oracle::brute_vertices(crowded), CapacityError);
  }
  SUBCASE("malformed decimal") {
    oracle::ExactConstraint c{{"1x", "0"}, "0.3"};
    CHECK_THROWS_AS(oracle::brute_vertices(2, {c}), ContractError);
  }
}

TEST_CASE("brute_nd on the demo polytope") {
  Dataset d = mt::demo_dataset();
  CHECK(oracle::brute_nd(d, mt::demo_polytope()) ==
        std::vector<std::string>{"JS", "NF", "PT"});

  SUBCASE("without constraints it equals the skyline") {
    WeightPolytope full = make_polytope(2, {});
    CHECK(oracle::brute_nd(d, full) == oracle::brute_skyline(d));
  }
  SUBCASE("arity mismatch") {
    CHECK_THROWS_AS(oracle::brute_nd(d, make_polytope(3, {})), ContractError);
  }
}

TEST_CASE("brute_po on the demo polytope") {
  Dataset d = mt::demo_dataset();
  auto po = oracle::brute_po(d, mt::demo_polytope(), 1000);
  std::vector<std::string> ids;
  for (const auto& cert : po) ids.push_back(cert.id);
  CHECK(ids == std::vector<std::string>{"JS", "NF"});

  SUBCASE("certificates really witness optimality") {
    for (const auto& cert : po) {
      const Tuple* winner = nullptr;
      for (const Tuple& t : d.tuples) {
        if (t.id == cert.id) winner = &t;
      }
      REQUIRE(winner != nullptr);
      double ws = cert.weight[0] * winner->values[0] + cert.weight[1] * winner->values[1];
      for (const Tuple& t : d.tuples) {
        double s = cert.weight[0] * t.values[0] + cert.weight[1] * t.values[1];
        CHECK(ws >= s - 1e-9);
      }
    }
  }
  SUBCASE("full simplex adds SS but never PT") {
    auto free = oracle::brute_po(d, make_polytope(2, {}), 100);
    std::vector<std::string> freeIds;
    for (const auto& cert : free) freeIds.push_back(cert.id);
    CHECK(freeIds == std::vector<std::string>{"JS", "NF", "SS"});
  }
  SUBCASE("resolution is validated") {
    CHECK_THROWS_AS(oracle::brute_po(d, mt::demo_polytope(), 99), ContractError);
  }
}

TEST_CASE("brute_po scans a three-dimensional grid") {
  Dataset d;
  d.attributes = {{"x1", Direction::Max}, {"x2", Direction::Max}, {"x3", Direction::Max}};
  d.tuples.push_back({"a", {1.0, 0.0, 0.0}});
  d.tuples.push_back({"b", {0.0, 1.0, 0.0}});
  d.tuples.push_back({"c", {0.0, 0.0, 1.0}});
  d.tuples.push_back({"mid", {0.2, 0.2, 0.2}});
  auto po = oracle::brute_po(d, make_polytope(3, {}), 100);
  std::vector<std::string> ids;
  for (const auto& cert : po) ids.push_back(cert.id);
  CHECK(ids == std::vector<std::string>{"a", "b", "c"});
}

TEST_CASE("brute and production vertex enumeration agree on random polytopes") {
  std::mt19937_64 rng(4242);
  for (int iter = 0; iter < 100; ++iter) {
    std::size_t m = 2 + static_cast<std::size_t>(mt::next_uniform(rng) * 3);  // 2..4
    WeightPolytope poly = mt::random_polytope(rng, m, 4);
    auto exact = oracle::brute_vertices(poly);
    VertexSet fast = enumerate_vertices(poly);
    REQUIRE(exact.size() == fast.count());
    for (std::size_t i = 0; i < exact.size(); ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        CHECK(std::abs(fast.vertices[i][j] - exact[i][j]) <= 1e-9);
      }
    }
  }
}

}  // TEST_SUITE
