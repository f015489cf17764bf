#include "doctest.h"

#include <cmath>
#include <string>

#include "cesorl/error.hpp"
#include "cesorl/serialize.hpp"

using namespace cesorl;

TEST_CASE("non-finite numbers") {
  CHECK(number_to_json(kInf) == "inf");
  CHECK(number_to_json(-kInf) == "-inf");
  CHECK(number_to_json(std::nan("")) == "nan");
  CHECK(number_from_json(Json("inf"), "x") == kInf);
  CHECK(std::isnan(number_from_json(Json("nan"), "x")));
  CHECK(number_from_json(Json(0.25), "x") == 0.25);
  CHECK_THROWS_AS(number_from_json(Json("big"), "x"), ParseError);
}

TEST_CASE("parse errors carry line and column") {
  try {
    parse_json_text("{\n  \"a\": ,\n}", "f.json");
    FAIL("no exception");
  } catch (const ParseError& e) {
    const std::string what = e.what();
    CHECK(what.find("f.json:2:") != std::string::npos);
  }
}

TEST_CASE("Orlicz functions") {
  const auto phi = parse_phi("shifted_power:1,2");
  CHECK(phi(3.0) == 4.0);
  CHECK(phi_from_json(phi_to_json(phi)).tag() == phi.tag());
  CHECK(parse_phi(R"({"family": "power", "params": [3]})")(2.0) == 8.0);
  CHECK_THROWS_AS(parse_phi("unknown:1"), ConstructionError);
}

TEST_CASE("step functions") {
  const StepFunction f(Domain::UnitInterval, {{0, 0.25, 2}, {0.5, 1, 0.125}});
  CHECK(step_function_from_json(to_json(f)) == f);
  CHECK(parse_step_function("[[0, 0.25, 2], [0.5, 1, 0.125]]", Domain::UnitInterval) == f);
  CHECK(parse_step_function(R"([{"left": 0, "right": 0.25, "value": 2}, {"left": 0.5, "right": 1, "value": 0.125}])",
                            Domain::UnitInterval) == f);
  CHECK_THROWS_AS(parse_step_function("[[0, 2, 1]]", Domain::UnitInterval), ConstructionError);
}

TEST_CASE("extended values and norms") {
  const auto inf = ExtendedValue::infinite(Certificate::TailLowerBound, "shells", 12.5);
  const auto back = extended_from_json(to_json(inf));
  CHECK(back.certificate == Certificate::TailLowerBound);
  CHECK(back.value == 12.5);
  CHECK(back.reason == "shells");
  NormResult n;
  n.value = n.hi = 1.5;
  n.lo = 1.25;
  n.iterations = 3;
  n.status = NormStatus::Converged;
  const auto m = norm_result_from_json(to_json(n));
  CHECK(m.value == 1.5);
  CHECK(m.lo == 1.25);
  CHECK(m.status == NormStatus::Converged);
}

TEST_CASE("witness reports round-trip") {
  const auto rep = oc_failure_witness(parse_phi("exp_gap"), Domain::UnitInterval);
  const auto back = witness_report_from_json(parse_json_text(to_json(rep).dump()));
  CHECK(back.kind == rep.kind);
  CHECK(back.case_tag == rep.case_tag);
  CHECK(back.elements == rep.elements);
  CHECK(back.element_names == rep.element_names);
  REQUIRE(back.truncation);
  CHECK(back.truncation->modular_exact == rep.truncation->modular_exact);
  REQUIRE(back.certified.size() == rep.certified.size());
  for (std::size_t i = 0; i < rep.certified.size(); ++i) {
    CHECK(back.certified[i].expected == rep.certified[i].expected);
    CHECK(back.certified[i].holds == rep.certified[i].holds);
  }
  CHECK(to_json(back) == to_json(rep));
}
