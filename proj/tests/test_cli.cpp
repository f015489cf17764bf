#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cesorl/cli.hpp"
#include "cesorl/serialize.hpp"

using namespace cesorl;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "cesorl");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& text) {
  const auto p = std::filesystem::temp_directory_path() / ("cesorl_test_" + name);
  std::ofstream(p) << text;
  return p;
}

} // namespace

TEST_CASE("norm and modular") {
  const auto r = cli({"norm", "--phi", "power:2", "--f", "[[0,1,1]]", "--space", "cesaro", "--json"});
  REQUIRE(r.code == kExitOk);
  const auto j = parse_json_text(r.out);
  CHECK(j["value"].get<double>() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
  CHECK(j["status"] == "converged");
  const auto m = cli({"modular", "--json", "--phi", "power:2", "--f", "[[0,2,3]]", "--space", "plain"});
  CHECK(parse_json_text(m.out)["value"].get<double>() == 18.0);
  const auto text = cli({"norm", "--phi", "power:2", "--f", "[[0,1,3]]", "--space", "plain"});
  CHECK(text.out.find("= 3.000000") != std::string::npos);
}

TEST_CASE("errors exit with 1") {
  CHECK(cli({"norm", "--phi", "nope:2", "--f", "[[0,1,1]]"}).code == kExitError);
  CHECK(cli({"norm", "--phi", "power:2", "--f", "[[0,1"}).code == kExitError);
  CHECK(cli({"norm", "--phi", "power:2"}).code == kExitError);
  const auto bad = cli({"frobnicate"});
  CHECK(bad.code != kExitOk);
}

TEST_CASE("Delta_2 and witnesses") {
  const auto d = cli({"delta2", "--phi", "exp_gap", "--regime", "infinity", "--json"});
  CHECK(d.code == kExitOk);
  CHECK(parse_json_text(d.out)["verdict"] == "fails");
  const auto w = cli({"witness", "--theorem", "7", "--phi", "capped_infinite:1", "--domain", "halfline"});
  CHECK(w.code == kExitOk);
  CHECK(w.out.find("oc_failure case I(1)") != std::string::npos);
  CHECK(cli({"witness", "--theorem", "10", "--phi", "shifted_power:1,1", "--domain", "unit"}).code == kExitUndetermined);
}

TEST_CASE("saved reports verify and tampering is caught") {
  const auto w = cli({"witness", "--theorem", "7", "--phi", "exp_gap", "--domain", "unit", "--json"});
  REQUIRE(w.code == kExitOk);
  const auto good = temp_file("good.json", w.out);
  CHECK(cli({"verify", "--report", good.string()}).code == kExitOk);
  auto j = parse_json_text(w.out);
  j["certified"][0]["expected"] = 0.25;
  const auto bad = temp_file("bad.json", j.dump());
  CHECK(cli({"verify", "--report", bad.string()}).code == kExitError);
  std::filesystem::remove(good);
  std::filesystem::remove(bad);
}

TEST_CASE("config defaults and command-line precedence") {
  const auto cfg = temp_file("cfg.json", R"({"phi": "power:2", "f": [[0, 1, 3]], "space": "plain"})");
  const auto r = cli({"--config", cfg.string(), "norm", "--json"});
  REQUIRE(r.code == kExitOk);
  CHECK(parse_json_text(r.out)["value"].get<double>() == doctest::Approx(3.0).epsilon(1e-12));
  const auto o = cli({"--config", cfg.string(), "norm", "--json", "--f", "[[0,1,5]]"});
  CHECK(parse_json_text(o.out)["value"].get<double>() == doctest::Approx(5.0).epsilon(1e-12));
  std::filesystem::remove(cfg);
}
