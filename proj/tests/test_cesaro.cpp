#include "doctest.h"

#include <random>

#include "cesorl/cesaro.hpp"
#include "cesorl/error.hpp"

using namespace cesorl;

namespace {
double direct(const StepFunction& x, double t) {
  double m = 0.0;
  for (const auto& p : x.pieces()) {
    if (p.left < t) m += p.value * (std::min(p.right, t) - p.left);
  }
  return m / t;
}
} // namespace

TEST_CASE("C of an indicator at 0") {
  const auto g = cesaro_mean(StepFunction::indicator(Domain::HalfLine, 0, 1));
  CHECK(eval_C(g, 0.5) == 1.0);
  CHECK(eval_C(g, 4.0) == doctest::Approx(0.25));
  REQUIRE(g.tail());
  CHECK(g.tail()->start == 1.0);
  CHECK(g.tail()->mass == 1.0);
  CHECK_THROWS_AS(eval_C(g, 0.0), DomainError);
}

TEST_CASE("C matches direct averaging on random step functions") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (auto domain : {Domain::UnitInterval, Domain::HalfLine}) {
    for (int k = 0; k < 50; ++k) {
      std::vector<StepPiece> pieces;
      double pos = 0.0;
      const double span = domain == Domain::UnitInterval ? 0.1 : 3.0;
      for (int i = 0; i < 6; ++i) {
        const double l = pos + span * u(gen), r = l + span * u(gen) + 1e-3;
        if (domain == Domain::UnitInterval && r > 1.0) break;
        pieces.push_back({l, r, 4.0 * u(gen)});
        pos = r;
      }
      if (pieces.empty()) continue;
      StepFunction x(domain, pieces);
      const auto g = cesaro_mean(x);
      const double end = domain == Domain::UnitInterval ? 1.0 : 2.0 * pos;
      for (int i = 1; i < 200; ++i) {
        const double t = end * i / 200.0;
        CHECK(eval_C(g, t) == doctest::Approx(direct(x, t)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("C is positive and monotone") {
  StepFunction x(Domain::HalfLine, {{0.5, 1, 2}, {3, 5, 1}});
  StepFunction y(Domain::HalfLine, {{0.5, 1, 1}, {4, 5, 1}});
  const auto gx = cesaro_mean(x), gy = cesaro_mean(y);
  for (double t = 0.01; t < 20.0; t *= 1.1) CHECK(eval_C(gy, t) <= eval_C(gx, t));
  CHECK(cesaro_mean(StepFunction(Domain::HalfLine)).pieces().empty());
}

TEST_CASE("unit-interval images stop at 1") {
  const auto g = cesaro_mean(StepFunction::indicator(Domain::UnitInterval, 0.25, 0.5));
  CHECK_FALSE(g.tail());
  CHECK(eval_C(g, 1.0 - 1e-12) == doctest::Approx(0.25));
  CHECK(g.sup_on(0.25, 1.0) == doctest::Approx(0.5));
}
