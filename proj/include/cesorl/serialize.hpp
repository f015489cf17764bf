#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "cesorl/extended.hpp"
#include "cesorl/funcrep.hpp"
#include "cesorl/indices.hpp"
#include "cesorl/modular.hpp"
#include "cesorl/orlicz.hpp"
#include "cesorl/propcheck.hpp"
#include "cesorl/witnesses.hpp"

namespace cesorl {

using Json = nlohmann::json;

/// Non-finite doubles are written as the strings "inf", "-inf" and "nan".
Json number_to_json(double v);
double number_from_json(const Json& j, std::string_view field);

/// Parses JSON text; syntax errors become ParseError with line and column.
Json parse_json_text(std::string_view text, std::string_view source = "input");

Json phi_to_json(const OrliczFunction& phi);
OrliczFunction phi_from_json(const Json& j);

Json to_json(const StepFunction& f);
/// Accepts [[l, r, v], ...], [{"left", "right", "value"}, ...] or
/// {"domain": ..., "pieces": [...]}.  `fallback` is used when no domain is given.
StepFunction step_function_from_json(const Json& j, Domain fallback = Domain::HalfLine);
StepFunction parse_step_function(std::string_view text, Domain fallback = Domain::HalfLine);

Json to_json(const ExtendedValue& v);
ExtendedValue extended_from_json(const Json& j);
Json to_json(const NormResult& r);
NormResult norm_result_from_json(const Json& j);
Json to_json(const MembershipReport& r);
Json to_json(const Delta2Report& r);
Json to_json(const IndexEstimate& r);
Json to_json(const ConditionSReport& r);
Json to_json(const HardyReport& r);

Json to_json(const CertifiedValue& cv);
CertifiedValue certified_value_from_json(const Json& j);
Json to_json(const WitnessReport& r);
WitnessReport witness_report_from_json(const Json& j);
Json to_json(const ApproximationTrace& t);

Json to_json(const std::vector<Theorem7Row>& rows);
Json to_json(const MonotonicityReport& r);
Json to_json(const EmbeddingReport& r);
Json to_json(const LiftingReport& r);

} // namespace cesorl
