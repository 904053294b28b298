#include <doctest.h>

#include <sstream>

#include "moquery/errors.hpp"
#include "moquery/geometry.hpp"
#include "moquery/model.hpp"
#include "support/fixtures.hpp"

using namespace moquery;
namespace mt = moquery::testing;

TEST_SUITE("model") {

TEST_CASE("score evaluates the weighted sum") {
  Dataset d = mt::demo_dataset();
  CHECK(score(mt::f1(), d.tuples[0]) == doctest::Approx(21.4).epsilon(1e-12));   // JS
  CHECK(score(mt::f1(), d.tuples[2]) == doctest::Approx(18.2).epsilon(1e-12));   // PT
  CHECK(score(mt::f2(), d.tuples[4]) == doctest::Approx(17.4).epsilon(1e-12));   // NF
  ScoringFunction zeroish{"z", {0.0, 1.0}};
  CHECK(score(zeroish, d.tuples[5]) == doctest::Approx(3.0));                    // SS
}

TEST_CASE("score and validate_scoring reject bad input") {
  Tuple t{"a", {1.0, 2.0}};
  CHECK_THROWS_AS(score(ScoringFunction{"f", {1.0}}, t), ContractError);
  CHECK_THROWS_AS(validate_scoring(ScoringFunction{"f", {1.0, -0.1}}, 2), ContractError);
  CHECK_THROWS_AS(validate_scoring(ScoringFunction{"f", {0.0, 0.0}}, 2), ContractError);
  CHECK_THROWS_AS(validate_scoring(ScoringFunction{"f", {1.0}}, 2), ContractError);
  CHECK_NOTHROW(validate_scoring(ScoringFunction{"f", {0.0, 2.0}}, 2));
}

TEST_CASE("parse_csv reads the happy path") {
  std::istringstream in("id,price,rating\na,10,4.5\nb,20,3\n");
  Dataset d = parse_csv(in);
  REQUIRE(d.size() == 2);
  REQUIRE(d.arity() == 2);
  CHECK(d.attributes[0].name == "price");
  CHECK(d.attributes[1].name == "rating");
  CHECK(d.tuples[0].id == "a");
  CHECK(d.tuples[0].values == std::vector<double>{10.0, 4.5});
  CHECK(d.tuples[1].values == std::vector<double>{20.0, 3.0});
}

TEST_CASE("minimized columns are negated at load") {
  std::istringstream in("id,price,rating\na,10,4.5\nb,20,3\n");
  Dataset d = parse_csv(in, {"price"});
  CHECK(d.attributes[0].direction == Direction::Min);
  CHECK(d.tuples[0].values == std::vector<double>{-10.0, 4.5});
  CHECK(d.tuples[1].values == std::vector<double>{-20.0, 3.0});

  SUBCASE("and serialization restores the original sign") {
    std::string csv = dataset_to_csv(d);
    CHECK(csv == "id,price,rating\na,10,4.5\nb,20,3\n");
  }
}

TEST_CASE("csv round-trips exactly through 17 significant digits") {
  Dataset d;
  d.attributes = {{"x1", Direction::Max}};
  d.tuples.push_back({"a", {0.1 + 0.2}});
  d.tuples.push_back({"b", {1.0 / 3.0}});
  std::istringstream in(dataset_to_csv(d));
  Dataset back = parse_csv(in);
  CHECK(back.tuples[0].values[0] == d.tuples[0].values[0]);
  CHECK(back.tuples[1].values[0] == d.tuples[1].values[0]);
}

TEST_CASE("parse_csv rejects broken input") {
  auto parse = [](const char* text, std::set<std::string> mins = {}) {
    std::istringstream in(text);
    return parse_csv(in, mins);
  };
  CHECK_THROWS_AS(parse(""), DataError);
  CHECK_THROWS_AS(parse("id,x\n"), DataError);                       // no rows
  CHECK_THROWS_AS(parse("name,x\na,1\n"), DataError);                // id column missing
  CHECK_THROWS_AS(parse("id\n"), DataError);                         // no attributes
  CHECK_THROWS_AS(parse("id,x\na,1\na,2\n"), DataError);             // duplicate id
  CHECK_THROWS_AS(parse("id,x\na,1,9\n"), DataError);                // ragged row
  CHECK_THROWS_AS(parse("id,x\na,\n"), DataError);                   // empty cell
  CHECK_THROWS_AS(parse("id,x\na,abc\n"), DataError);                // not a number
  CHECK_THROWS_AS(parse("id,x\n,1\n"), DataError);                   // empty id
  CHECK_THROWS_AS(parse("id,x\na,1\n", {"y"}), DataError);           // unknown min column

  SUBCASE("the error names the offending line") {
    try {
      parse("id,x\na,1\nb,oops\n");
      FAIL("expected DataError");
    } catch (const DataError& e) {
      CHECK(std::string(e.what()).find("line 3") != std::string::npos);
      CHECK(std::string(e.what()).find("oops") != std::string::npos);
    }
  }
}

TEST_CASE("parse_csv tolerates blank lines and padding") {
  std::istringstream in("\nid, x , y\n a , 1 , 2 \n\n b ,3,4\n\n");
  Dataset d = parse_csv(in);
  REQUIRE(d.size() == 2);
  CHECK(d.attributes[0].name == "x");
  CHECK(d.tuples[0].id == "a");
  CHECK(d.tuples[1].values == std::vector<double>{3.0, 4.0});
}

TEST_CASE("make_polytope checks arity and feasibility") {
  CHECK_NOTHROW(make_polytope(2, {}));
  CHECK_NOTHROW(make_polytope(2, {{{1.0, -1.0}, 0.0}}));
  CHECK_THROWS_AS(make_polytope(2, {{{1.0}, 0.0}}), ContractError);
  CHECK_THROWS_AS(make_polytope(0, {}), ContractError);

  SUBCASE("an unsatisfiable constraint set is a data error") {
    // w1 >= 0.8 and w1 <= 0.1 cannot both hold.
    std::vector<LinearConstraint> cons{{{-1.0, 0.0}, -0.8}, {{1.0, 0.0}, 0.1}};
    CHECK_THROWS_WITH_AS(make_polytope(2, cons), "empty preference set", DataError);
  }
}

TEST_CASE("demo fixture tuple count and schema") {
  Dataset d = mt::demo_dataset();
  CHECK(d.size() == 8);
  CHECK(d.arity() == 2);
}

}  // TEST_SUITE
