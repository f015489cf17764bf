#include "doctest.h"

#include "cesorl/error.hpp"
#include "cesorl/funcrep.hpp"

using namespace cesorl;

TEST_CASE("pieces are normalized") {
  StepFunction f(Domain::HalfLine, {{0, 1, 2}, {1, 2, 2}, {3, 4, 0}});
  REQUIRE(f.pieces().size() == 1);
  CHECK(f.pieces()[0] == StepPiece{0, 2, 2});
  CHECK(f == StepFunction::indicator(Domain::HalfLine, 0, 2, 2));
  CHECK(StepFunction(Domain::HalfLine, {{0, 1, -3}})(0.5) == 3.0);
}

TEST_CASE("invalid pieces are rejected") {
  CHECK_THROWS_AS(StepFunction(Domain::HalfLine, {{1, 0, 1}}), ConstructionError);
  CHECK_THROWS_AS(StepFunction(Domain::HalfLine, {{0, 2, 1}, {1, 3, 1}}), ConstructionError);
  CHECK_THROWS_AS(StepFunction(Domain::UnitInterval, {{0.5, 1.5, 1}}), ConstructionError);
}

TEST_CASE("evaluation and integrals") {
  StepFunction f(Domain::HalfLine, {{0, 1, 3}, {2, 4, 1}});
  CHECK(f(0.5) == 3.0);
  CHECK(f(1.5) == 0.0);
  CHECK(f(4.0) == 0.0);
  CHECK(f.integral() == 5.0);
  CHECK(f.support_measure() == 3.0);
  CHECK(f.max_value() == 3.0);
  CHECK(f.support_end() == 4.0);
}

TEST_CASE("distribution and rearrangement") {
  StepFunction f(Domain::HalfLine, {{0, 1, 1}, {2, 4, 3}});
  CHECK(distribution(f, 0.5) == 3.0);
  CHECK(distribution(f, 2.0) == 2.0);
  CHECK(distribution(f, 3.0) == 0.0);
  const auto r = rearrangement(f);
  CHECK(r == StepFunction(Domain::HalfLine, {{0, 2, 3}, {2, 3, 1}}));
  for (double l : {0.25, 0.5, 1.0, 2.5}) CHECK(distribution(r, l) == distribution(f, l));
}

TEST_CASE("dilation") {
  const auto f = StepFunction::indicator(Domain::HalfLine, 1, 2, 5);
  CHECK(dilate(f, 2.0) == StepFunction::indicator(Domain::HalfLine, 2, 4, 5));
  const auto g = StepFunction::indicator(Domain::UnitInterval, 0.25, 0.75);
  CHECK(dilate(g, 2.0) == StepFunction::indicator(Domain::UnitInterval, 0.5, 1.0));
  CHECK_THROWS_AS(dilate(f, 0.0), DomainError);
}

TEST_CASE("lattice operations") {
  StepFunction x(Domain::HalfLine, {{0, 2, 2}});
  StepFunction y(Domain::HalfLine, {{1, 2, 1}});
  CHECK(dominated_by(y, x, 0.0));
  CHECK_FALSE(dominated_by(x, y, 0.0));
  CHECK(abs_difference(x, y) == StepFunction(Domain::HalfLine, {{0, 1, 2}, {1, 2, 1}}));
  CHECK((x + y)(1.5) == 3.0);
  CHECK(x.restricted(0.5, 1) == StepFunction::indicator(Domain::HalfLine, 0.5, 1, 2));
  CHECK(x.restricted_outside(0.5, 1).support_measure() == 1.5);
  CHECK(to_csv(y) == "left,right,value\n1,2,1\n");
}
