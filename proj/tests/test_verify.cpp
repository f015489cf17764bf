#include "doctest.h"

#include "cesorl/serialize.hpp"
#include "cesorl/verify.hpp"

using namespace cesorl;

TEST_CASE("an untouched report verifies") {
  const auto rep = oc_failure_witness(parse_phi("capped_infinite:1"), Domain::HalfLine);
  const auto r = verify_report(to_json(rep));
  CHECK(r.ok());
  CHECK(r.truncation_checked);
  CHECK(r.lines.size() == rep.certified.size());
}

TEST_CASE("tampered values are detected") {
  const auto rep = oc_failure_witness(parse_phi("exp_gap"), Domain::UnitInterval);
  auto j = to_json(rep);
  j["certified"][0]["expected"] = 0.5;
  CHECK_FALSE(verify_report(j).ok());

  auto k = to_json(rep);
  k["elements"][0]["function"]["pieces"][0][2] = 0.75;
  CHECK_FALSE(verify_report(k).ok());

  auto t = to_json(rep);
  t["truncation"]["modular_exact"] = "1/2";
  const auto r = verify_report(t);
  CHECK_FALSE(r.truncation_ok);
  CHECK_FALSE(r.ok());
}

TEST_CASE("reports without a series") {
  const auto rep = sm_failure_witness(parse_phi("shifted_power:1,1"), Domain::HalfLine);
  const auto r = verify_report(rep);
  CHECK(r.ok());
  CHECK_FALSE(r.truncation_checked);
}
