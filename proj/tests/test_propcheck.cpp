#include "doctest.h"

#include <cmath>

#include "cesorl/error.hpp"
#include "cesorl/propcheck.hpp"

using namespace cesorl;

namespace {
OrliczFunction fam(const char* name, std::vector<double> p = {}) { return make_family(name, p); }
}

TEST_CASE("random corpora are reproducible and well formed") {
  const CorpusOptions opt{50, 8, 42};
  const auto a = random_corpus(Domain::UnitInterval, opt);
  CHECK(a == random_corpus(Domain::UnitInterval, opt));
  CHECK_FALSE(a == random_corpus(Domain::UnitInterval, {50, 8, 43}));
  REQUIRE(a.size() == 50);
  for (const auto& f : a) {
    CHECK(f.pieces().size() <= 8);
    CHECK(f.support_end() <= 1.0);
    for (const auto& p : f.pieces()) {
      const double scaled = std::ldexp(p.left, 32);
      CHECK(scaled == std::floor(scaled));
      CHECK(p.value >= 1.0 / 16.0);
      CHECK(p.value <= 16.0);
    }
  }
}

TEST_CASE("dominated pairs") {
  for (const auto& pr : dominated_pairs(Domain::HalfLine, {100, 16, 7})) {
    CHECK(dominated_by(pr.small, pr.large, 0.0));
    CHECK_FALSE(pr.small == pr.large);
  }
}

TEST_CASE("fixed shapes and families") {
  CHECK(hardy_shapes(Domain::HalfLine).size() == 6);
  CHECK(named_families().size() == 7);
}

TEST_CASE("Delta_2 against order-continuity witnesses") {
  Theorem7Options opt;
  opt.override_hypothesis = true;
  const auto rows = theorem7_suite({fam("power", {2}), fam("capped_infinite", {1})}, Domain::HalfLine, opt);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].witness == WitnessKind::NoWitnessFound);
  CHECK(rows[1].witness == WitnessKind::OCFailure);
  for (const auto& r : rows) CHECK(r.consistent);
  CHECK_THROWS_AS(theorem7_suite({fam("capped_finite", {1})}, Domain::HalfLine), PreconditionError);
}

TEST_CASE("monotonicity of power 2") {
  MonotonicityOptions opt;
  opt.corpus.size = 20;
  const auto rep = monotonicity_suite(fam("power", {2}), Domain::HalfLine, opt);
  CHECK(rep.positive);
  CHECK(rep.sm_gap_min > 0.0);
  for (const auto& pt : rep.curve) CHECK(pt.delta_hat > 0.0);
  CHECK(monotonicity_csv(rep).rfind("epsilon,delta_hat,pairs,witness_delta\n", 0) == 0);
}

TEST_CASE("embeddings") {
  const auto cert = find_majorization(fam("power", {3}), fam("power", {2}), Domain::UnitInterval);
  REQUIRE(cert);
  CHECK(cert->case_tag == "(ii)");
  CHECK_FALSE(find_majorization(fam("power", {2}), fam("power", {3}), Domain::UnitInterval));
  const auto corpus = random_corpus(Domain::HalfLine, {20, 8, 3});
  const auto same = embedding_suite(fam("power", {2}), fam("power", {2}), Domain::HalfLine, corpus);
  CHECK(same.a_hat == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(same.verdict == EmbeddingVerdict::Embedded);
}

TEST_CASE("lifting probe") {
  CHECK(fact_lifting_probe(fam("power", {2}), Domain::HalfLine, {}).vacuous);
  const auto rep = fact_lifting_probe(fam("power", {2}), Domain::UnitInterval, random_corpus(Domain::UnitInterval, {10, 8, 5}));
  CHECK(rep.functions == 10);
  CHECK(rep.pass());
}
