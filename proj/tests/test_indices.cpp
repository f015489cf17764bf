#include "doctest.h"

#include <cmath>

#include "cesorl/error.hpp"
#include "cesorl/indices.hpp"
#include "cesorl/propcheck.hpp"

using namespace cesorl;

namespace {
OrliczFunction fam(const char* name, std::vector<double> p = {}) { return make_family(name, p); }
}

TEST_CASE("Delta_2 verdicts of the named families") {
  CHECK(delta2_test(fam("power", {2}), Regime::AllArgs).verdict == Outcome::Holds);
  CHECK(delta2_test(fam("power", {2}), Regime::AllArgs).k_hat == doctest::Approx(4.0));
  const auto e = delta2_test(fam("exp_gap"), Regime::Infinity);
  CHECK(e.verdict == Outcome::Fails);
  REQUIRE(e.witness.size() >= 64);
  for (std::size_t n = 0; n < e.witness.size(); ++n) CHECK(e.witness[n].ratio >= std::ldexp(1.0, static_cast<int>(n) + 1));
  CHECK(delta2_test(fam("exp_gap"), Regime::Zero).verdict == Outcome::Holds);
  CHECK(delta2_test(fam("flat_zero_exp"), Regime::Zero).verdict == Outcome::Fails);
  CHECK(delta2_test(fam("flat_zero_exp"), Regime::Infinity).verdict == Outcome::Holds);
  CHECK(delta2_test(fam("shifted_power", {1, 1}), Regime::Zero).verdict == Outcome::Fails);
  CHECK(delta2_test(fam("capped_infinite", {1}), Regime::Infinity).verdict == Outcome::Fails);
  CHECK(delta2_test(fam("capped_finite", {1}), Regime::Zero).verdict == Outcome::Holds);
}

TEST_CASE("contradicted declared flags raise a diagnostic") {
  OrliczFlags wrong;
  wrong.delta2_infinity = true;
  const auto phi = make_family(Family::ExpGap, {}, wrong);
  CHECK_THROWS_AS(delta2_test(phi, Regime::Infinity), DiagnosticError);
  Delta2Options quiet;
  quiet.cross_check = false;
  CHECK(delta2_test(phi, Regime::Infinity, quiet).verdict == Outcome::Fails);
}

TEST_CASE("regime convention") {
  CHECK(regime_for(Domain::UnitInterval) == Regime::Infinity);
  CHECK(regime_for(Domain::HalfLine) == Regime::AllArgs);
  CHECK(regime_from_string("zero") == Regime::Zero);
  CHECK_THROWS_AS(regime_from_string("x"), ParseError);
}

TEST_CASE("index estimates of powers") {
  for (double p : {1.0, 1.5, 2.0, 3.0}) {
    const auto e = matuszewska_indices(fam("power", {p}));
    CHECK(e.alpha_hat == doctest::Approx(p).epsilon(1e-6));
    CHECK(e.beta_hat == doctest::Approx(p).epsilon(1e-6));
    CHECK(e.determined);
  }
}

TEST_CASE("condition (S)") {
  CHECK(condition_S(fam("power", {1})).verdict == Outcome::Fails);
  CHECK(condition_S(fam("power", {1.2})).verdict == Outcome::Holds);
  CHECK(condition_S(fam("exp_gap")).verdict == Outcome::Holds);
}

TEST_CASE("Hardy probe") {
  const auto p2 = fam("power", {2});
  const auto single = hardy_probe(p2, {StepFunction::indicator(Domain::HalfLine, 0, 1)});
  REQUIRE(single.ratios.size() == 1);
  CHECK(single.ratios[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
  const auto corpus = random_corpus(Domain::HalfLine, {100, 16, kDefaultSeed});
  const auto r = hardy_probe(p2, corpus);
  CHECK(r.c_hat <= 2.0 + 1e-6);
  CHECK(r.c_hat >= r.c_hat_half);
  const auto lin = hardy_probe(fam("power", {1}), {StepFunction::indicator(Domain::HalfLine, 0, 1)});
  CHECK_FALSE(lin.bounded_consistent);
  CHECK_THROWS_AS(hardy_probe(p2, {}), PreconditionError);
}
