#include "doctest.h"

#include <cmath>

#include "cesorl/witnesses.hpp"

using namespace cesorl;

namespace {

OrliczFunction fam(const char* name, std::vector<double> p = {}) { return make_family(name, p); }

long double series_modular(const StepFunction& x, long double (*phi)(long double)) {
  long double s = 0.0L;
  for (const auto& p : x.pieces()) s += phi(p.value) * (static_cast<long double>(p.right) - p.left);
  return s;
}

long double capped_infinite_1(long double u) { return u / (1.0L - u); }
long double exp_gap(long double u) { return std::expm1(u) - u; }

double root_t_log_t() {
  double lo = 1.0, hi = 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (mid * std::log(mid) < 1.0 ? lo : hi) = mid;
  }
  return hi;
}

} // namespace

TEST_CASE("series witness near b_phi") {
  const auto r = oc_failure_witness(fam("capped_infinite", {1}), Domain::HalfLine);
  CHECK(r.kind == WitnessKind::OCFailure);
  CHECK(r.case_tag == "I(1)");
  CHECK(r.all_hold());
  REQUIRE(r.truncation);
  CHECK(r.truncation->remainder == "1/1073741824");
  const auto& x = r.elements.at(0);
  CHECK(static_cast<double>(series_modular(x, capped_infinite_1)) ==
        doctest::Approx(1.0 - std::ldexp(1.0, -30)).epsilon(1e-12));
  CHECK(2.0 * x.max_value() > 1.0);
  CHECK(oc_failure_witness(fam("capped_infinite", {1}), Domain::UnitInterval).case_tag == "II(1)");
}

TEST_CASE("series witness for exponential growth on the unit interval") {
  const auto r = oc_failure_witness(fam("exp_gap"), Domain::UnitInterval);
  CHECK(r.case_tag == "II(3)");
  CHECK(r.all_hold());
  const auto& x = r.elements.at(0);
  CHECK(x.support_end() <= 1.0);
  CHECK(static_cast<double>(series_modular(x, exp_gap)) == doctest::Approx(1.0 - std::ldexp(1.0, -30)).epsilon(1e-12));
  WitnessOptions opt;
  opt.truncation = 10;
  const auto shorter = oc_failure_witness(fam("exp_gap"), Domain::UnitInterval, opt);
  CHECK(shorter.elements.at(0).pieces().size() == 10);
}

TEST_CASE("finite b_phi and positive a_phi cases") {
  const auto capped = oc_failure_witness(fam("capped_finite", {1}), Domain::HalfLine);
  CHECK(capped.case_tag == "I(2)");
  CHECK(capped.all_hold());
  CHECK(2.0 * capped.elements.at(0).max_value() > 1.0);
  const auto shifted = oc_failure_witness(fam("shifted_power", {1, 1}), Domain::HalfLine);
  CHECK(shifted.case_tag == "I(3)");
  CHECK(shifted.all_hold());
  CHECK(shifted.elements.at(0).max_value() == 1.0);
}

TEST_CASE("Delta_2 functions admit no order-continuity witness") {
  for (const char* name : {"power"}) {
    for (auto d : {Domain::UnitInterval, Domain::HalfLine}) {
      CHECK(oc_failure_witness(fam(name, {2}), d).kind == WitnessKind::NoWitnessFound);
    }
  }
}

TEST_CASE("strict monotonicity fails when phi vanishes near zero") {
  const auto r = sm_failure_witness(fam("shifted_power", {1, 1}), Domain::HalfLine);
  CHECK(r.kind == WitnessKind::SMFailure);
  CHECK(r.all_hold());
  REQUIRE(r.elements.size() == 2);
  const auto& u = r.elements[0];
  const auto& v = r.elements[1];
  CHECK(dominated_by(u, v, 0.0));
  CHECK_FALSE(u == v);
  // rho(c chi_[0,1)) = c ln c for phi(u) = (u - 1)_+.
  CHECK(u.max_value() == doctest::Approx(root_t_log_t()).epsilon(1e-10));
  CHECK(luxemburg_norm(fam("shifted_power", {1, 1}), v, Space::Cesaro).value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(sm_failure_witness(fam("power", {2}), Domain::HalfLine).kind == WitnessKind::NoWitnessFound);
}

TEST_CASE("non-triviality") {
  CHECK(nontriviality(fam("power", {2}), Domain::HalfLine).nontrivial == true);
  CHECK(nontriviality(fam("power", {1}), Domain::HalfLine).nontrivial == false);
  CHECK(nontriviality(fam("capped_finite", {1}), Domain::HalfLine).nontrivial == false);
  CHECK(nontriviality(fam("capped_finite", {1}), Domain::UnitInterval).nontrivial == true);
}

TEST_CASE("order-continuous approximation") {
  const StepFunction x(Domain::HalfLine, {{0.001, 0.5, 3}, {2, 40, 0.25}});
  const auto tr = oc_approximation(fam("power", {2}), x);
  CHECK(tr.converged);
  CHECK(tr.nonincreasing);
  CHECK(tr.steps.back().distance <= 1e-6);
}

TEST_CASE("certificates are recomputed from the elements") {
  auto r = oc_failure_witness(fam("capped_finite", {1}), Domain::HalfLine);
  auto cv = r.certified.at(0);
  evaluate_certificate(fam("capped_finite", {1}), r.elements, cv);
  CHECK(cv.holds);
  cv.expected = 0.5;
  evaluate_certificate(fam("capped_finite", {1}), r.elements, cv);
  CHECK_FALSE(cv.holds);
}
