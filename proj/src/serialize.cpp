#include "cesorl/serialize.hpp"

#include <charconv>
#include <cmath>

#include "cesorl/error.hpp"

namespace cesorl {

namespace {

const Json& field(const Json& j, const char* name, std::string_view where) {
  if (!j.is_object()) throw ParseError(std::string(where) + ": expected an object");
  auto it = j.find(name);
  if (it == j.end()) throw ParseError(std::string(where) + ": missing field '" + name + "'");
  return *it;
}

std::string string_field(const Json& j, const char* name, std::string_view where) {
  const auto& v = field(j, name, where);
  if (!v.is_string()) throw ParseError(std::string(where) + "." + name + ": expected a string");
  return v.get<std::string>();
}

double number_field(const Json& j, const char* name, std::string_view where) {
  return number_from_json(field(j, name, where), std::string(where) + "." + name);
}

std::string string_or(const Json& j, const char* name, std::string fallback) {
  auto it = j.find(name);
  return it != j.end() && it->is_string() ? it->get<std::string>() : fallback;
}

Json optional_bool(const std::optional<bool>& b) { return b ? Json(*b) : Json(nullptr); }

Json numbers(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(number_to_json(x));
  return a;
}

Json ratio_points(const std::vector<RatioPoint>& pts) {
  Json a = Json::array();
  for (const auto& p : pts) a.push_back({number_to_json(p.u), number_to_json(p.ratio)});
  return a;
}

double parse_double(std::string_view s, std::string_view where) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (s == "inf" || s == "+inf") return kInf;
  if (s == "-inf") return -kInf;
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw ParseError(std::string(where) + ": '" + std::string(s) + "' is not a number");
  }
  return v;
}

} // namespace

Json number_to_json(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0.0 ? "inf" : "-inf";
  return v;
}

double number_from_json(const Json& j, std::string_view where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "nan") return std::nan("");
    return parse_double(s, where);
  }
  if (j.is_null()) return std::nan("");
  throw ParseError(std::string(where) + ": expected a number");
}

Json parse_json_text(std::string_view text, std::string_view source) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(std::string(source) + ":" + std::to_string(line) + ":" + std::to_string(col) +
                     ": malformed JSON (" + e.what() + ")");
  }
}

Json phi_to_json(const OrliczFunction& phi) {
  if (phi.family() == Family::Custom) throw ParseError("custom Orlicz functions cannot be serialized");
  Json flags = Json::object();
  const auto& f = phi.flags();
  flags["delta2_zero"] = optional_bool(f.delta2_zero);
  flags["delta2_infinity"] = optional_bool(f.delta2_infinity);
  flags["condition_s"] = optional_bool(f.condition_s);
  flags["positive"] = optional_bool(f.positive);
  flags["finite"] = optional_bool(f.finite);
  return {{"family", std::string(to_string(phi.family()))}, {"params", numbers(phi.params())}, {"flags", flags},
          {"tag", phi.tag()}};
}

OrliczFunction phi_from_json(const Json& j) {
  const auto family = family_from_string(string_field(j, "family", "phi"));
  std::vector<double> params;
  if (auto it = j.find("params"); it != j.end()) {
    if (!it->is_array()) throw ParseError("phi.params: expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      params.push_back(number_from_json((*it)[i], "phi.params[" + std::to_string(i) + "]"));
    }
  }
  OrliczFlags overrides;
  if (auto it = j.find("flags"); it != j.end() && it->is_object()) {
    auto read = [&](const char* name, std::optional<bool>& out) {
      auto f = it->find(name);
      if (f == it->end() || f->is_null()) return;
      if (!f->is_boolean()) throw ParseError(std::string("phi.flags.") + name + ": expected a boolean");
      out = f->get<bool>();
    };
    read("delta2_zero", overrides.delta2_zero);
    read("delta2_infinity", overrides.delta2_infinity);
    read("condition_s", overrides.condition_s);
    read("positive", overrides.positive);
    read("finite", overrides.finite);
  }
  return make_family(family, params, overrides);
}

OrliczFunction parse_phi(std::string_view spec) {
  std::size_t first = spec.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) throw ParseError("empty phi specification");
  if (spec[first] == '{') return phi_from_json(parse_json_text(spec, "phi"));
  spec.remove_prefix(first);
  while (!spec.empty() && (spec.back() == ' ' || spec.back() == '\n' || spec.back() == '\r')) spec.remove_suffix(1);
  const auto colon = spec.find(':');
  const auto family = family_from_string(spec.substr(0, colon));
  std::vector<double> params;
  if (colon != std::string_view::npos) {
    auto rest = spec.substr(colon + 1);
    int index = 0;
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      params.push_back(parse_double(rest.substr(0, comma), "phi parameter " + std::to_string(index++)));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
  }
  return make_family(family, params);
}

Json to_json(const StepFunction& f) {
  Json pieces = Json::array();
  for (const auto& p : f.pieces()) pieces.push_back({p.left, p.right, p.value});
  return {{"domain", std::string(to_string(f.domain()))}, {"pieces", pieces}};
}

StepFunction step_function_from_json(const Json& j, Domain fallback) {
  Domain domain = fallback;
  const Json* pieces = &j;
  if (j.is_object()) {
    if (auto it = j.find("domain"); it != j.end()) domain = domain_from_string(it->get<std::string>());
    pieces = &field(j, "pieces", "function");
  }
  if (!pieces->is_array()) throw ParseError("function.pieces: expected an array");
  std::vector<StepPiece> out;
  for (std::size_t i = 0; i < pieces->size(); ++i) {
    const auto& p = (*pieces)[i];
    const std::string where = "function.pieces[" + std::to_string(i) + "]";
    if (p.is_array()) {
      if (p.size() != 3) throw ParseError(where + ": expected [left, right, value]");
      out.push_back({number_from_json(p[0], where + "[0]"), number_from_json(p[1], where + "[1]"),
                     number_from_json(p[2], where + "[2]")});
    } else {
      out.push_back({number_field(p, "left", where), number_field(p, "right", where), number_field(p, "value", where)});
    }
  }
  return StepFunction(domain, std::move(out));
}

StepFunction parse_step_function(std::string_view text, Domain fallback) {
  return step_function_from_json(parse_json_text(text, "function"), fallback);
}

Json to_json(const ExtendedValue& v) {
  return {{"value", number_to_json(v.is_finite() ? v.value : kInf)},
          {"lower_bound", v.is_finite() ? Json(nullptr) : number_to_json(v.value)},
          {"abs_error", number_to_json(v.abs_error)},
          {"infinite", v.is_infinite()},
          {"certificate", std::string(to_string(v.certificate))},
          {"reason", v.reason}};
}

ExtendedValue extended_from_json(const Json& j) {
  ExtendedValue v;
  v.certificate = certificate_from_string(string_or(j, "certificate", "none"));
  v.reason = string_or(j, "reason", "");
  if (v.is_finite()) {
    v.value = number_field(j, "value", "value");
  } else {
    auto it = j.find("lower_bound");
    v.value = it != j.end() && !it->is_null() ? number_from_json(*it, "value.lower_bound") : kInf;
  }
  if (auto it = j.find("abs_error"); it != j.end()) v.abs_error = number_from_json(*it, "value.abs_error");
  return v;
}

Json to_json(const NormResult& r) {
  return {{"value", number_to_json(r.value)}, {"lo", number_to_json(r.lo)},   {"hi", number_to_json(r.hi)},
          {"iterations", r.iterations},       {"status", std::string(to_string(r.status))}, {"diagnostic", r.diagnostic}};
}

NormResult norm_result_from_json(const Json& j) {
  NormResult r;
  r.value = number_field(j, "value", "norm");
  r.lo = number_field(j, "lo", "norm");
  r.hi = number_field(j, "hi", "norm");
  r.iterations = j.value("iterations", 0);
  r.status = norm_status_from_string(string_field(j, "status", "norm"));
  r.diagnostic = string_or(j, "diagnostic", "");
  return r;
}

Json to_json(const MembershipReport& r) {
  return {{"kind", std::string(to_string(r.kind))},
          {"verdict", std::string(to_string(r.verdict))},
          {"scale", number_to_json(r.scale)},
          {"modular", to_json(r.modular)},
          {"reason", r.reason}};
}

Json to_json(const Delta2Report& r) {
  return {{"regime", std::string(to_string(r.regime))},
          {"verdict", std::string(to_string(r.verdict))},
          {"k_hat", number_to_json(r.k_hat)},
          {"u0", number_to_json(r.u0)},
          {"witness", ratio_points(r.witness)},
          {"grid", r.grid},
          {"note", r.note}};
}

Json to_json(const IndexEstimate& r) {
  Json curve = Json::array();
  for (const auto& [s, m] : r.curve) curve.push_back({number_to_json(s), number_to_json(m)});
  return {{"alpha_hat", number_to_json(r.alpha_hat)},
          {"beta_hat", number_to_json(r.beta_hat)},
          {"fit_residual", number_to_json(r.fit_residual)},
          {"determined", r.determined},
          {"note", r.note},
          {"curve", curve}};
}

Json to_json(const ConditionSReport& r) {
  return {{"verdict", std::string(to_string(r.verdict))}, {"estimate", number_to_json(r.estimate)}, {"note", r.note}};
}

Json to_json(const HardyReport& r) {
  Json witness = Json::array();
  for (const auto& [n, ratio] : r.witness) witness.push_back({number_to_json(n), number_to_json(ratio)});
  return {{"alpha_hat", number_to_json(r.alpha_hat)},
          {"c_hat", number_to_json(r.c_hat)},
          {"c_hat_half", number_to_json(r.c_hat_half)},
          {"stable", r.stable},
          {"bounded_consistent", r.bounded_consistent},
          {"ratios", numbers(r.ratios)},
          {"unbounded_detected", r.unbounded_detected},
          {"witness", witness},
          {"skipped", r.skipped}};
}

Json to_json(const CertifiedValue& cv) {
  Json j = {{"description", cv.description},
            {"quantity", std::string(to_string(cv.quantity))},
            {"element", cv.element},
            {"scale", number_to_json(cv.scale)},
            {"relation", std::string(to_string(cv.relation))},
            {"expected", number_to_json(cv.expected)},
            {"tolerance", number_to_json(cv.tolerance)},
            {"lo", number_to_json(cv.lo)},
            {"hi", number_to_json(cv.hi)},
            {"value", to_json(cv.value)},
            {"provenance", cv.provenance},
            {"holds", cv.holds}};
  j["norm"] = cv.norm ? to_json(*cv.norm) : Json(nullptr);
  return j;
}

CertifiedValue certified_value_from_json(const Json& j) {
  const std::string where = "certified";
  CertifiedValue cv;
  cv.description = string_or(j, "description", "");
  cv.quantity = quantity_from_string(string_field(j, "quantity", where));
  cv.element = field(j, "element", where).get<int>();
  cv.scale = number_field(j, "scale", where);
  cv.relation = relation_from_string(string_field(j, "relation", where));
  cv.expected = number_field(j, "expected", where);
  cv.tolerance = number_field(j, "tolerance", where);
  cv.lo = number_field(j, "lo", where);
  cv.hi = number_field(j, "hi", where);
  if (auto it = j.find("value"); it != j.end() && it->is_object()) cv.value = extended_from_json(*it);
  if (auto it = j.find("norm"); it != j.end() && it->is_object()) cv.norm = norm_result_from_json(*it);
  cv.provenance = string_or(j, "provenance", "");
  cv.holds = j.value("holds", false);
  return cv;
}

Json to_json(const WitnessReport& r) {
  Json elements = Json::array();
  for (std::size_t i = 0; i < r.elements.size(); ++i) {
    elements.push_back({{"name", i < r.element_names.size() ? r.element_names[i] : ""}, {"function", to_json(r.elements[i])}});
  }
  Json certified = Json::array();
  for (const auto& cv : r.certified) certified.push_back(to_json(cv));
  Json params = Json::object();
  for (const auto& [k, v] : r.parameters) params[k] = number_to_json(v);
  Json j = {{"kind", std::string(to_string(r.kind))},
            {"case", r.case_tag},
            {"domain", std::string(to_string(r.domain))},
            {"phi", r.phi_tag},
            {"elements", elements},
            {"certified", certified},
            {"parameters", params},
            {"nontrivial", optional_bool(r.nontrivial)},
            {"note", r.note},
            {"all_hold", r.all_hold()}};
  if (r.truncation) {
    Json terms = Json::array();
    for (const auto& t : r.truncation->terms) {
      terms.push_back({{"u", number_to_json(t.u)},
                       {"phi_u", number_to_json(t.phi_u)},
                       {"phi_2u", number_to_json(t.phi_2u)},
                       {"measure", t.measure},
                       {"left", number_to_json(t.left)},
                       {"right", number_to_json(t.right)}});
    }
    j["truncation"] = {{"n", r.truncation->n},
                       {"remainder", r.truncation->remainder},
                       {"modular_exact", r.truncation->modular_exact},
                       {"doubled_exact", r.truncation->doubled_exact},
                       {"terms", terms}};
  } else {
    j["truncation"] = nullptr;
  }
  return j;
}

WitnessReport witness_report_from_json(const Json& j) {
  const std::string where = "report";
  WitnessReport r;
  r.kind = witness_kind_from_string(string_field(j, "kind", where));
  r.case_tag = string_or(j, "case", "");
  r.domain = domain_from_string(string_field(j, "domain", where));
  r.phi_tag = string_field(j, "phi", where);
  const auto& elements = field(j, "elements", where);
  if (!elements.is_array()) throw ParseError("report.elements: expected an array");
  for (const auto& e : elements) {
    r.element_names.push_back(string_or(e, "name", ""));
    r.elements.push_back(step_function_from_json(field(e, "function", "report.elements[]"), r.domain));
  }
  if (auto it = j.find("certified"); it != j.end()) {
    for (const auto& cv : *it) r.certified.push_back(certified_value_from_json(cv));
  }
  if (auto it = j.find("parameters"); it != j.end() && it->is_object()) {
    for (auto p = it->begin(); p != it->end(); ++p) r.parameters[p.key()] = number_from_json(p.value(), p.key());
  }
  if (auto it = j.find("nontrivial"); it != j.end() && it->is_boolean()) r.nontrivial = it->get<bool>();
  r.note = string_or(j, "note", "");
  if (auto it = j.find("truncation"); it != j.end() && it->is_object()) {
    Truncation t;
    t.n = field(*it, "n", "report.truncation").get<int>();
    t.remainder = string_or(*it, "remainder", "");
    t.modular_exact = string_or(*it, "modular_exact", "");
    t.doubled_exact = string_or(*it, "doubled_exact", "");
    for (const auto& term : field(*it, "terms", "report.truncation")) {
      const std::string tw = "report.truncation.terms[]";
      t.terms.push_back({number_field(term, "u", tw), number_field(term, "phi_u", tw), number_field(term, "phi_2u", tw),
                         string_field(term, "measure", tw), number_field(term, "left", tw),
                         number_field(term, "right", tw)});
    }
    r.truncation = std::move(t);
  }
  return r;
}

Json to_json(const ApproximationTrace& t) {
  Json steps = Json::array();
  for (const auto& s : t.steps) {
    steps.push_back({{"n", number_to_json(s.n)},
                     {"distance", number_to_json(s.distance)},
                     {"tail_plain", number_to_json(s.tail_plain)}});
  }
  return {{"steps", steps}, {"nonincreasing", t.nonincreasing}, {"converged", t.converged}};
}

Json to_json(const std::vector<Theorem7Row>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) {
    out.push_back({{"phi", r.phi_tag},
                   {"domain", std::string(to_string(r.domain))},
                   {"delta2", std::string(to_string(r.delta2))},
                   {"delta2_note", r.delta2_note},
                   {"witness", std::string(to_string(r.witness))},
                   {"case", r.case_tag},
                   {"certified", r.certified},
                   {"consistent", r.consistent},
                   {"undetermined", r.undetermined},
                   {"alpha_hat", number_to_json(r.alpha_hat)},
                   {"hypothesis", r.hypothesis},
                   {"overridden", r.overridden},
                   {"witness_in_space", optional_bool(r.witness_in_space)},
                   {"no_linf_copy", "implied by the Delta_2 / order continuity equivalence; not tested"},
                   {"note", r.note}});
  }
  return out;
}

Json to_json(const MonotonicityReport& r) {
  Json curve = Json::array();
  for (const auto& p : r.curve) {
    curve.push_back({{"epsilon", number_to_json(p.epsilon)},
                     {"delta_hat", number_to_json(p.delta_hat)},
                     {"pairs", p.pairs},
                     {"witness_delta", number_to_json(p.witness_delta)}});
  }
  return {{"phi", r.phi_tag},
          {"domain", std::string(to_string(r.domain))},
          {"pairs", r.pairs},
          {"skipped", r.skipped},
          {"sm_gap_min", number_to_json(r.sm_gap_min)},
          {"witness_gap", r.witness_gap ? number_to_json(*r.witness_gap) : Json(nullptr)},
          {"um_curve", curve},
          {"llum_per_x", numbers(r.per_x_delta)},
          {"witness_source", r.witness_source},
          {"witness_y_norm", number_to_json(r.witness_y_norm)},
          {"positive", r.positive},
          {"delta2", r.delta2},
          {"note", r.note}};
}

Json to_json(const EmbeddingReport& r) {
  Json cert = nullptr;
  if (r.certificate) {
    cert = {{"k", number_to_json(r.certificate->k)},
            {"u0", number_to_json(r.certificate->u0)},
            {"case", r.certificate->case_tag}};
  }
  return {{"phi", r.phi_tag},
          {"psi", r.psi_tag},
          {"domain", std::string(to_string(r.domain))},
          {"certificate", cert},
          {"a_hat", number_to_json(r.a_hat)},
          {"a_hat_half", number_to_json(r.a_hat_half)},
          {"stable", r.stable},
          {"skipped", r.skipped},
          {"verdict", std::string(to_string(r.verdict))},
          {"note", r.note}};
}

Json to_json(const LiftingReport& r) {
  Json tails = nullptr;
  if (r.witness_tails) {
    tails = {{"n", numbers(r.witness_tails->n)},
             {"plain", numbers(r.witness_tails->plain)},
             {"ces", numbers(r.witness_tails->ces)},
             {"plain_vanishes", r.witness_tails->plain_vanishes},
             {"ces_vanishes", r.witness_tails->ces_vanishes}};
  }
  return {{"phi", r.phi_tag},
          {"domain", std::string(to_string(r.domain))},
          {"vacuous", r.vacuous},
          {"functions", r.functions},
          {"x_pass", r.x_pass},
          {"cx_pass", r.cx_pass},
          {"implication_violations", r.implication_violations},
          {"prop2_checked", r.prop2_checked},
          {"prop2_violations", r.prop2_violations},
          {"witness_case", r.witness_case},
          {"witness_tails", tails},
          {"pass", r.pass()},
          {"note", r.note}};
}

} // namespace cesorl
