#pragma once

#include <string>
#include <vector>

#include "cesorl/serialize.hpp"
#include "cesorl/witnesses.hpp"

namespace cesorl {

struct VerifyLine {
  std::string description;
  bool recorded = false;   // `holds` as stored in the report
  bool recomputed = false; // `holds` after re-evaluation
  std::string value;
};

struct VerifyResult {
  std::vector<VerifyLine> lines;
  bool truncation_checked = false;
  bool truncation_ok = true;
  std::string truncation_detail;

  bool ok() const;
};

/// Re-evaluates every certified value from the raw elements and, for series
/// witnesses, redoes the rational sum sum phi(u_n) / (2^n phi(u_n)).
VerifyResult verify_report(const WitnessReport& rep, const WitnessOptions& opt = {});
VerifyResult verify_report(const Json& report, const WitnessOptions& opt = {});

} // namespace cesorl
