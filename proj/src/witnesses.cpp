#include "cesorl/witnesses.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

#include "cesorl/cesaro.hpp"
#include "cesorl/error.hpp"
#include "cesorl/quadrature.hpp"

namespace cesorl {

using Rational = boost::multiprecision::cpp_rational;

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

Rational pow2(int e) {
  Rational r = 1;
  for (int i = 0; i < std::abs(e); ++i) r *= 2;
  return e >= 0 ? r : Rational(1) / r;
}

CertifiedValue make_cv(std::string description, Quantity q, int element, double scale, Relation rel,
                       double expected = 0.0, double tolerance = 0.0, std::string provenance = "quadrature") {
  CertifiedValue cv;
  cv.description = std::move(description);
  cv.quantity = q;
  cv.element = element;
  cv.scale = scale;
  cv.relation = rel;
  cv.expected = expected;
  cv.tolerance = tolerance;
  cv.provenance = std::move(provenance);
  return cv;
}

void certify(const OrliczFunction& phi, WitnessReport& rep, CertifiedValue cv, const WitnessOptions& opt) {
  evaluate_certificate(phi, rep.elements, cv, opt);
  rep.certified.push_back(std::move(cv));
}

/// rho_phi(x) and whether x lies in Ces_phi (rho(x / 2^k) < inf for some k).
void record_rho(const OrliczFunction& phi, WitnessReport& rep, const StepFunction& x, const WitnessOptions& opt) {
  try {
    const auto r = modular_rho(phi, x, opt.modular);
    rep.parameters["rho_x"] = r.as_double();
    const auto m = membership(phi, x, MembershipKind::CesSpace, opt.modular);
    rep.parameters["x_in_ces_space"] = m.verdict == Verdict::Yes ? 1.0 : 0.0;
    if (m.verdict != Verdict::Yes) {
      if (!rep.note.empty()) rep.note += "; ";
      rep.note += "x is not in Ces_phi here (C is unbounded on L^phi, so the hypothesis of the equivalence fails)";
    }
  } catch (const IndeterminateError& e) {
    rep.parameters["rho_x"] = std::nan("");
    rep.note += std::string(rep.note.empty() ? "" : "; ") + "rho(x) undetermined: " + e.what();
  }
}

/// x_N = sum_{n <= N} u_n chi_{A_n}, m(A_n) = 1 / (2^n phi(u_n)), intervals laid
/// out from 0 in order of decreasing u_n so that x_N is nonincreasing.
StepFunction build_series(const OrliczFunction& phi, Domain domain, const std::vector<double>& us, Truncation& tr) {
  const int n_terms = static_cast<int>(us.size());
  tr.n = n_terms;
  tr.remainder = pow2(-n_terms).str();
  std::vector<Rational> measure(us.size());
  Rational exact = 0;
  Rational doubled = 0;
  bool doubled_finite = true;
  tr.terms.resize(us.size());
  for (int n = 1; n <= n_terms; ++n) {
    const double u = us[n - 1];
    const double pu = phi(u);
    if (!(pu > 0.0) || !std::isfinite(pu)) throw ConstructionError("series term with phi(u_n) not in (0, inf)");
    measure[n - 1] = Rational(1) / (pow2(n) * Rational(pu));
    exact += Rational(pu) * measure[n - 1];
    const double p2 = phi(2.0 * u);
    if (std::isfinite(p2)) {
      doubled += Rational(p2) * measure[n - 1];
    } else {
      doubled_finite = false;
    }
    tr.terms[n - 1] = {u, pu, p2, measure[n - 1].str(), 0.0, 0.0};
  }
  tr.modular_exact = exact.str();
  tr.doubled_exact = doubled_finite ? doubled.str() : "";

  std::vector<int> order(us.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return us[a] > us[b]; });
  std::vector<StepPiece> pieces;
  Rational pos = 0;
  for (int i : order) {
    const double l = static_cast<double>(pos);
    pos += measure[i];
    const double r = static_cast<double>(pos);
    if (!(r > l)) throw ConstructionError("series interval below floating resolution; lower the truncation");
    tr.terms[i].left = l;
    tr.terms[i].right = r;
    pieces.push_back({l, r, us[i]});
  }
  if (domain == Domain::UnitInterval && pos > 1) throw ConstructionError("series support exceeds [0,1]");
  return StepFunction(domain, std::move(pieces));
}

void series_certificates(const OrliczFunction& phi, WitnessReport& rep, const WitnessOptions& opt, bool termwise) {
  const int n = rep.truncation->n;
  const double target = 1.0 - std::ldexp(1.0, -n);
  if (Rational(rep.truncation->modular_exact) != Rational(1) - pow2(-n)) {
    throw ConstructionError("exact truncated modular differs from 1 - 2^-N");
  }
  certify(phi, rep,
          make_cv("I_phi(x_N) = 1 - 2^-N; exact rational sum " + rep.truncation->modular_exact, Quantity::ModularI, 0,
                  1.0, Relation::Equal, target, 1e-12, "exact_sum"),
          opt);
  if (termwise) {
    certify(phi, rep,
            make_cv("I_phi(2 x_N) >= sum 2^n phi(u_n) m(B_n) = N, each term >= 1", Quantity::ModularI, 0, 2.0,
                    Relation::AtLeast, static_cast<double>(n), 1e-9 * n, "termwise"),
            opt);
    certify(phi, rep,
            make_cv("rho_phi(2 x_N) >= I_phi(2 x_N) >= N since x_N is nonincreasing", Quantity::ModularRho, 0, 2.0,
                    Relation::AtLeast, static_cast<double>(n), 1e-9 * n, "quadrature"),
            opt);
  } else {
    certify(phi, rep,
            make_cv("rho_phi(2 x_N) = inf: 2 u_n > b_phi on a set of positive measure", Quantity::ModularRho, 0, 2.0,
                    Relation::Infinite, 0.0, 0.0, "certificate"),
            opt);
  }
}

WitnessReport case_one(const OrliczFunction& phi, Domain domain, const WitnessOptions& opt) {
  WitnessReport rep;
  const double b = phi.b_phi();
  double u0 = 0.0;
  for (int k = 1; k <= 60; ++k) {
    const double u = b * (1.0 - std::ldexp(1.0, -k));
    if (u > 0.0 && phi(u) >= 1.0 && 2.0 * u > b) {
      u0 = u;
      break;
    }
  }
  if (!(u0 > 0.0)) throw ConstructionError("no u < b_phi with phi(u) >= 1 found on b(1 - 2^-k)");
  std::vector<double> us;
  for (int n = 1; n <= opt.truncation; ++n) us.push_back(b - (b - u0) * std::ldexp(1.0, -(n - 1)));
  rep.truncation.emplace();
  rep.elements.push_back(build_series(phi, domain, us, *rep.truncation));
  rep.element_names.push_back("x_N");
  rep.parameters["u_1"] = u0;
  rep.parameters["a_N"] = rep.elements[0].support_end();
  series_certificates(phi, rep, opt, false);
  return rep;
}

WitnessReport case_two(const OrliczFunction& phi, Domain domain, const WitnessOptions& opt) {
  WitnessReport rep;
  const double b = phi.b_phi();
  rep.elements.push_back(StepFunction::indicator(domain, 0.0, 1.0, b));
  rep.element_names.push_back("x");
  certify(phi, rep,
          make_cv("I_phi(x) = phi(b_phi)", Quantity::ModularI, 0, 1.0, Relation::Equal, phi.value_at_b(),
                  1e-12 * std::max(1.0, phi.value_at_b()), "exact_sum"),
          opt);
  if (domain == Domain::UnitInterval) {
    certify(phi, rep,
            make_cv("rho_phi(x) = phi(b_phi) since Cx = x on [0,1]", Quantity::ModularRho, 0, 1.0, Relation::Equal,
                    phi.value_at_b(), 1e-12 * std::max(1.0, phi.value_at_b()), "exact_sum"),
            opt);
  }
  certify(phi, rep,
          make_cv("rho_phi(2x) = inf: phi(2 b_phi) = inf", Quantity::ModularRho, 0, 2.0, Relation::Infinite, 0.0, 0.0,
                  "certificate"),
          opt);
  return rep;
}

WitnessReport case_three(const OrliczFunction& phi, const WitnessOptions& opt) {
  WitnessReport rep;
  const double a = phi.a_phi();
  const double p2a = phi(2.0 * a);
  double t = 1.0;
  int doublings = 0;
  while (p2a * t < opt.modular.divergence_threshold) {
    t *= 2.0;
    if (++doublings > 1000) throw ConstructionError("phi(2 a_phi) T never reaches M_div");
  }
  rep.elements.push_back(StepFunction::indicator(Domain::HalfLine, 0.0, t, a));
  rep.element_names.push_back("x_T");
  rep.parameters["T"] = t;
  rep.parameters["phi(2a)"] = p2a;
  certify(phi, rep,
          make_cv("rho_phi(x_T) = 0 since C x_T <= a_phi", Quantity::ModularRho, 0, 1.0, Relation::Equal, 0.0, 0.0,
                  "exact_sum"),
          opt);
  certify(phi, rep,
          make_cv("I_phi(2 x_T) = phi(2 a_phi) T >= M_div; grows without bound as T doubles", Quantity::ModularI, 0,
                  2.0, Relation::AtLeast, opt.modular.divergence_threshold, 0.0, "termwise"),
          opt);
  certify(phi, rep,
          make_cv("rho_phi(2 x_T) >= phi(2 a_phi) T", Quantity::ModularRho, 0, 2.0, Relation::AtLeast, p2a * t,
                  1e-9 * p2a * t, "quadrature"),
          opt);
  return rep;
}

WitnessReport case_four(const OrliczFunction& phi, Domain domain, const Delta2Report& d2, const WitnessOptions& opt) {
  WitnessReport rep;
  std::vector<double> us;
  for (const auto& w : d2.witness) {
    if (domain == Domain::UnitInterval && phi(w.u) < 1.0) continue;
    us.push_back(w.u);
    if (static_cast<int>(us.size()) == opt.truncation) break;
  }
  if (static_cast<int>(us.size()) < opt.truncation) {
    throw ConstructionError("Delta_2 witness has only " + std::to_string(us.size()) + " usable terms");
  }
  rep.truncation.emplace();
  rep.elements.push_back(build_series(phi, domain, us, *rep.truncation));
  rep.element_names.push_back("x_N");
  for (std::size_t i = 0; i < us.size(); ++i) {
    const auto& t = rep.truncation->terms[i];
    if (!(Rational(t.phi_2u) >= pow2(static_cast<int>(i) + 1) * Rational(t.phi_u))) {
      throw ConstructionError("witness term " + std::to_string(i + 1) + " violates phi(2u_n) >= 2^n phi(u_n)");
    }
  }
  if (Rational(rep.truncation->doubled_exact) < Rational(opt.truncation)) {
    throw ConstructionError("exact termwise bound below N");
  }
  series_certificates(phi, rep, opt, true);
  return rep;
}

double f_halfline(const OrliczFunction& phi, double t, const ModularOptions& mo) {
  return modular_rho(phi, StepFunction::indicator(Domain::HalfLine, 0.0, 1.0, t), mo).as_double();
}

/// Smallest root of a continuous nondecreasing f with f(lo) < target <= f(hi), by bisection.
template <class F>
double bisect_root(F&& f, double lo, double hi, double target, double tol) {
  while (hi - lo > tol * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    if (f(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

ModularOptions precise(const ModularOptions& mo) {
  ModularOptions p = mo;
  p.quad.rel_tol = 1e-13;
  p.quad.abs_tol = 1e-15;
  return p;
}

} // namespace

std::string_view to_string(WitnessKind k) {
  switch (k) {
  case WitnessKind::NonTriviality: return "nontriviality";
  case WitnessKind::OCFailure: return "oc_failure";
  case WitnessKind::SMFailure: return "sm_failure";
  case WitnessKind::NoWitnessFound: return "no_witness_found";
  case WitnessKind::Undetermined: return "undetermined";
  }
  return "undetermined";
}

WitnessKind witness_kind_from_string(std::string_view s) {
  for (auto k : {WitnessKind::NonTriviality, WitnessKind::OCFailure, WitnessKind::SMFailure,
                 WitnessKind::NoWitnessFound, WitnessKind::Undetermined}) {
    if (to_string(k) == s) return k;
  }
  throw ParseError("unknown witness kind '" + std::string(s) + "'");
}

std::string_view to_string(Quantity q) {
  switch (q) {
  case Quantity::ModularI: return "modular_I";
  case Quantity::ModularRho: return "modular_rho";
  case Quantity::NormPlain: return "norm_plain";
  case Quantity::NormCesaro: return "norm_cesaro";
  case Quantity::TailIntegral: return "tail_integral";
  case Quantity::CesaroSup: return "cesaro_sup";
  }
  return "modular_I";
}

Quantity quantity_from_string(std::string_view s) {
  for (auto q : {Quantity::ModularI, Quantity::ModularRho, Quantity::NormPlain, Quantity::NormCesaro,
                 Quantity::TailIntegral, Quantity::CesaroSup}) {
    if (to_string(q) == s) return q;
  }
  throw ParseError("unknown quantity '" + std::string(s) + "'");
}

std::string_view to_string(Relation r) {
  switch (r) {
  case Relation::Equal: return "equal";
  case Relation::AtLeast: return "at_least";
  case Relation::AtMost: return "at_most";
  case Relation::Infinite: return "infinite";
  case Relation::Finite: return "finite";
  }
  return "equal";
}

Relation relation_from_string(std::string_view s) {
  for (auto r : {Relation::Equal, Relation::AtLeast, Relation::AtMost, Relation::Infinite, Relation::Finite}) {
    if (to_string(r) == s) return r;
  }
  throw ParseError("unknown relation '" + std::string(s) + "'");
}

bool WitnessReport::all_hold() const {
  return std::all_of(certified.begin(), certified.end(), [](const CertifiedValue& c) { return c.holds; });
}

void evaluate_certificate(const OrliczFunction& phi, const std::vector<StepFunction>& elements, CertifiedValue& cv,
                          const WitnessOptions& opt) {
  if (cv.quantity != Quantity::TailIntegral && (cv.element < 0 || cv.element >= static_cast<int>(elements.size()))) {
    throw ParseError("certified value refers to missing element " + std::to_string(cv.element));
  }
  cv.norm.reset();
  try {
    switch (cv.quantity) {
    case Quantity::ModularI:
      cv.value = modular_I(phi, elements[cv.element].scaled(cv.scale), opt.modular);
      break;
    case Quantity::ModularRho:
      cv.value = modular_rho(phi, elements[cv.element].scaled(cv.scale), opt.modular);
      break;
    case Quantity::NormPlain:
    case Quantity::NormCesaro: {
      const auto n = luxemburg_norm(phi, elements[cv.element].scaled(cv.scale),
                                    cv.quantity == Quantity::NormPlain ? Space::Plain : Space::Cesaro, opt.norm);
      cv.norm = n;
      cv.value = n.status == NormStatus::Infinite
                     ? ExtendedValue::infinite(Certificate::TailLowerBound, n.diagnostic)
                     : ExtendedValue::finite(n.value, n.hi - n.lo);
      break;
    }
    case Quantity::TailIntegral:
      cv.value = tail_integral(phi, cv.scale, cv.lo, opt.modular);
      break;
    case Quantity::CesaroSup: {
      const auto g = cesaro_mean(elements[cv.element].scaled(cv.scale));
      double best = 0.0;
      constexpr int kSamples = 1000;
      for (int i = 0; i < kSamples; ++i) best = std::max(best, g(cv.lo + (cv.hi - cv.lo) * (i + 0.5) / kSamples));
      cv.value = ExtendedValue::finite(best);
      break;
    }
    }
  } catch (const IndeterminateError& e) {
    cv.value = ExtendedValue::finite(std::nan(""));
    cv.value.reason = e.what();
    cv.holds = false;
    return;
  }
  if (cv.provenance == "termwise" && cv.value.is_finite() && cv.value.value >= cv.expected - cv.tolerance) {
    cv.value = ExtendedValue::infinite(Certificate::TermwiseLowerBound,
                                       "termwise lower bound " + fmt(cv.value.value) + " of the untruncated series",
                                       cv.value.value);
  }
  const double v = cv.value.as_double();
  const double lower = cv.value.value; // established lower bound when infinite
  switch (cv.relation) {
  case Relation::Equal: cv.holds = cv.value.is_finite() && std::abs(v - cv.expected) <= cv.tolerance; break;
  case Relation::AtLeast: cv.holds = lower >= cv.expected - cv.tolerance; break;
  case Relation::AtMost: cv.holds = cv.value.is_finite() && v <= cv.expected + cv.tolerance; break;
  case Relation::Infinite: cv.holds = cv.value.is_infinite(); break;
  case Relation::Finite: cv.holds = cv.value.is_finite() && std::isfinite(v); break;
  }
}

WitnessReport nontriviality(const OrliczFunction& phi, Domain domain, const WitnessOptions& opt) {
  WitnessReport rep;
  rep.kind = WitnessKind::NonTriviality;
  rep.domain = domain;
  rep.phi_tag = phi.tag();
  if (domain == Domain::UnitInterval) {
    rep.case_tag = "unit";
    rep.elements.push_back(StepFunction::indicator(domain, 0.5, 1.0));
    rep.element_names.push_back("chi_[1/2,1)");
    certify(phi, rep,
            make_cv("chi_[1/2,1) lies in L^phi[0,1]", Quantity::NormPlain, 0, 1.0, Relation::Finite, 0.0, 0.0,
                    "bisection"),
            opt);
    certify(phi, rep,
            make_cv("chi_[1/2,1) lies in Ces_phi[0,1]", Quantity::NormCesaro, 0, 1.0, Relation::Finite, 0.0, 0.0,
                    "bisection"),
            opt);
    rep.nontrivial = true;
    return rep;
  }
  rep.case_tag = "halfline";
  const auto cs = condition_S(phi);
  rep.parameters["condition_S_estimate"] = cs.estimate;
  rep.parameters["condition_S_holds"] = cs.verdict == Outcome::Holds ? 1.0 : 0.0;
  double x0 = 0.0;
  ExtendedValue tail;
  try {
    for (int k = 0; k <= 60; ++k) {
      const double s = std::ldexp(1.0, k);
      tail = tail_integral(phi, 1.0, s, opt.modular);
      if (tail.is_finite()) {
        x0 = s;
        break;
      }
      if (tail.certificate != Certificate::PositiveMeasureAboveB) break;
    }
  } catch (const IndeterminateError& e) {
    rep.kind = WitnessKind::Undetermined;
    rep.note = std::string("tail integral undetermined: ") + e.what();
    return rep;
  }
  if (!(x0 > 0.0)) {
    rep.nontrivial = false;
    rep.note = "int_{x0}^inf phi(1/t) dt diverges: Ces_phi[0,inf) = {0}";
    CertifiedValue cv = make_cv("int_{x0}^inf phi(1/t) dt = inf", Quantity::TailIntegral, 0, 1.0,
                                Relation::Infinite, 0.0, 0.0, "certificate");
    cv.lo = std::ldexp(1.0, 60);
    for (int k = 0; k <= 60; ++k) {
      cv.lo = std::ldexp(1.0, k);
      if (1.0 / cv.lo <= phi.b_phi() && !(1.0 / cv.lo == phi.b_phi() && std::isinf(phi.value_at_b()))) break;
    }
    certify(phi, rep, cv, opt);
    rep.parameters["x0"] = cv.lo;
    return rep;
  }
  rep.nontrivial = true;
  rep.parameters["lambda0"] = 1.0;
  rep.parameters["x0"] = x0;
  rep.parameters["tail"] = tail.value;
  CertifiedValue cv =
      make_cv("int_{x0}^inf phi(1/t) dt < inf", Quantity::TailIntegral, 0, 1.0, Relation::Finite, 0.0, 0.0);
  cv.lo = x0;
  certify(phi, rep, cv, opt);
  CertifiedValue resc = make_cv("int_{2 x0}^inf phi(2/t) dt = 2 int_{x0}^inf phi(1/t) dt", Quantity::TailIntegral, 0,
                                2.0, Relation::Equal, 2.0 * tail.value, 1e-9 * std::max(1.0, 2.0 * tail.value));
  resc.lo = 2.0 * x0;
  certify(phi, rep, resc, opt);
  rep.elements.push_back(StepFunction::indicator(domain, 0.0, 1.0));
  rep.element_names.push_back("chi_[0,1)");
  const auto m = membership(phi, rep.elements[0], MembershipKind::CesSpace, opt.modular);
  rep.parameters["chi_in_ces_space"] = m.verdict == Verdict::Yes ? 1.0 : 0.0;
  return rep;
}

WitnessReport oc_failure_witness(const OrliczFunction& phi, Domain domain, const WitnessOptions& opt) {
  if (opt.truncation < 4) throw PreconditionError("truncation N must be >= 4");
  std::string tag = opt.force_case;
  const bool half = domain == Domain::HalfLine;
  const std::string prefix = half ? "I(" : "II(";
  std::optional<Delta2Report> d2;
  auto need_delta2 = [&] {
    if (!d2) {
      auto o = opt.delta2;
      o.witness_terms = std::max(o.witness_terms, opt.truncation + 16);
      d2 = delta2_test(phi, regime_for(domain), o);
    }
    return *d2;
  };
  if (tag.empty()) {
    if (!phi.finite_valued()) {
      tag = prefix + (std::isinf(phi.value_at_b()) ? "1)" : "2)");
    } else if (half && phi.a_phi() > 0.0) {
      tag = "I(3)";
    } else {
      const auto& r = need_delta2();
      if (r.verdict == Outcome::Fails) {
        tag = half ? "I(4)" : "II(3)";
      } else {
        WitnessReport rep;
        rep.kind = r.verdict == Outcome::Holds ? WitnessKind::NoWitnessFound : WitnessKind::Undetermined;
        rep.domain = domain;
        rep.phi_tag = phi.tag();
        rep.note = r.verdict == Outcome::Holds
                       ? std::string("phi satisfies Delta_2 for the domain convention; no degeneracy applies")
                       : "Delta_2 undetermined: " + r.note;
        return rep;
      }
    }
  }
  if (half != (tag.rfind("I(", 0) == 0)) throw PreconditionError("case " + tag + " does not match the domain");
  WitnessReport rep;
  if (tag == "I(1)" || tag == "II(1)") {
    if (phi.finite_valued() || !std::isinf(phi.value_at_b())) throw PreconditionError(tag + " needs b_phi < inf, phi(b_phi) = inf");
    rep = case_one(phi, domain, opt);
  } else if (tag == "I(2)" || tag == "II(2)") {
    if (phi.finite_valued() || std::isinf(phi.value_at_b())) throw PreconditionError(tag + " needs b_phi < inf, phi(b_phi) < inf");
    rep = case_two(phi, domain, opt);
  } else if (tag == "I(3)") {
    if (!half || !(phi.a_phi() > 0.0) || !phi.finite_valued()) throw PreconditionError("I(3) needs [0,inf), a_phi > 0, phi < inf");
    rep = case_three(phi, opt);
  } else if (tag == "I(4)" || tag == "II(3)") {
    if (!phi.finite_valued() || (half && phi.a_phi() > 0.0)) throw PreconditionError(tag + " needs phi < inf and phi > 0");
    const auto& r = need_delta2();
    if (r.verdict != Outcome::Fails) {
      WitnessReport u;
      u.kind = WitnessKind::Undetermined;
      u.domain = domain;
      u.phi_tag = phi.tag();
      u.case_tag = tag;
      u.note = "Delta_2 verdict is " + std::string(to_string(r.verdict)) + ", no escalating witness";
      return u;
    }
    rep = case_four(phi, domain, r, opt);
    rep.parameters["delta2_terms"] = static_cast<double>(r.witness.size());
  } else {
    throw PreconditionError("unknown case '" + tag + "' (expected I(1)..I(4) or II(1)..II(3))");
  }
  rep.kind = WitnessKind::OCFailure;
  rep.case_tag = tag;
  rep.domain = domain;
  rep.phi_tag = phi.tag();
  if (tag == "II(1)") {
    rep.note = "same construction as I(1); it shows Ces_phi[0,1] is not order continuous";
  }
  record_rho(phi, rep, rep.elements[0], opt);
  return rep;
}

WitnessReport sm_failure_witness(const OrliczFunction& phi, Domain domain, const WitnessOptions& opt) {
  WitnessReport rep;
  rep.domain = domain;
  rep.phi_tag = phi.tag();
  const double a = phi.a_phi();
  if (a == 0.0) {
    rep.kind = WitnessKind::NoWitnessFound;
    rep.note = "phi > 0: rho is superadditive on disjoint parts, so C_phi is strictly monotone";
    return rep;
  }
  if (!phi.finite_valued()) throw PreconditionError("strict monotonicity witnesses need phi < inf");
  const auto mo = precise(opt.modular);

  if (domain == Domain::HalfLine) {
    rep.case_tag = "(i)";
    double lo = 0.0, hi = 1.0;
    int e = 0;
    while (f_halfline(phi, hi, mo) < 1.0) {
      lo = hi;
      hi *= 2.0;
      if (++e > 60) throw ConstructionError("f(t) = rho(t chi_[0,1)) stays below 1 up to 2^60");
    }
    const double lambda = bisect_root([&](double t) { return f_halfline(phi, t, mo); }, lo, hi, 1.0, opt.root_tol);
    const double x1 = std::max(2.0 * lambda / a, 2.0);
    const auto u = StepFunction::indicator(domain, 0.0, 1.0, lambda);
    const auto v = u + StepFunction::indicator(domain, x1, x1 + 1.0, a / 2.0);
    rep.elements = {u, v};
    rep.element_names = {"u = y_lambda", "v = y_lambda + z"};
    rep.parameters["lambda"] = lambda;
    rep.parameters["x1"] = x1;
    rep.parameters["measure_u_ne_v"] = 1.0;
  } else {
    rep.case_tag = "(ii)";
    double prev = -kInf;
    for (int k = 0; k <= 40; ++k) {
      const double w = std::ldexp(1.0, k);
      if (w <= a) continue;
      const double lr = phi.log_value(w) - std::log(w);
      if (lr < prev - 1e-12) throw PreconditionError("phi(u)/u is not nondecreasing on the doubling grid");
      prev = lr;
    }
    if (!(prev > std::log(1e6))) {
      rep.kind = WitnessKind::Undetermined;
      rep.note = "lim phi(u)/u = inf not confirmed on the doubling grid (phi(2^40)/2^40 = " + fmt(std::exp(prev)) + ")";
      return rep;
    }
    double b0 = 0.0;
    if (opt.b0) {
      b0 = *opt.b0;
      if (!(b0 > a) || !(a * phi(b0) / b0 > 1.0)) throw PreconditionError("b0 must satisfy b0 > a_phi, a_phi phi(b0)/b0 > 1");
    } else {
      for (b0 = 2.0 * a; !(a * phi(b0) / b0 > 1.0); b0 *= 2.0) {
        if (b0 > 1e300) throw ConstructionError("no b0 with a_phi phi(b0)/b0 > 1");
      }
    }
    const double pb0 = phi(b0);
    auto f = [&](double s) {
      if (s <= 0.0) return 0.0;
      const auto q = integrate([&](double t) { return phi(std::min(s * b0 / t, b0)); }, s, s * b0 / a, mo.quad);
      return s * pb0 + q.value;
    };
    const double top = a / b0;
    if (!(f(top) > 1.0)) throw ConstructionError("f(a_phi / b0) <= 1");
    const double a1 = bisect_root(f, 0.0, top, 1.0, opt.root_tol);
    const double delta = 0.5 * (a1 * b0 / a + 1.0);
    const double start = 0.5 * (delta + 1.0);
    const double h = a - a1 * b0 / delta;
    const auto x1 = StepFunction::indicator(domain, 0.0, a1, b0);
    const auto x2 = x1 + StepFunction::indicator(domain, start, 1.0, h);
    rep.elements = {x1, x2};
    rep.element_names = {"x1", "x2"};
    rep.parameters["b0"] = b0;
    rep.parameters["a1"] = a1;
    rep.parameters["f(a1)"] = f(a1);
    rep.parameters["delta"] = delta;
    rep.parameters["measure_u_ne_v"] = 1.0 - start;
    CertifiedValue cap = make_cv("C x2 <= a_phi on [(delta+1)/2, 1) at 1000 sample points", Quantity::CesaroSup, 1,
                                 1.0, Relation::AtMost, a, 1e-12 * a, "sampled");
    cap.lo = start;
    cap.hi = 1.0;
    certify(phi, rep, cap, opt);
  }
  rep.kind = WitnessKind::SMFailure;
  WitnessOptions o = opt;
  o.modular = mo;
  for (int i = 0; i < 2; ++i) {
    const std::string name = rep.element_names[i];
    certify(phi, rep,
            make_cv("rho_phi(" + name + ") = 1", Quantity::ModularRho, i, 1.0, Relation::Equal, 1.0, 1e-8), o);
    certify(phi, rep,
            make_cv("||" + name + "||_Ces = 1", Quantity::NormCesaro, i, 1.0, Relation::Equal, 1.0, 1e-6, "bisection"),
            o);
  }
  if (!dominated_by(rep.elements[0], rep.elements[1], 0.0) || rep.elements[0] == rep.elements[1]) {
    throw ConstructionError("strict monotonicity witness is not an ordered pair of distinct elements");
  }
  return rep;
}

ApproximationTrace oc_approximation(const OrliczFunction& phi, const StepFunction& x, const NormOptions& opt,
                                    int max_k, double target) {
  ApproximationTrace trace;
  if (x.is_zero()) {
    trace.converged = true;
    return trace;
  }
  const auto m = membership(phi, x, MembershipKind::CPhi, opt.modular);
  if (m.verdict != Verdict::Yes) throw PreconditionError("x is not certified in C_phi: " + m.reason);
  for (int k = 1; k <= max_k; ++k) {
    const double n = std::ldexp(1.0, k);
    const auto rest = x.restricted_outside(1.0 / n, n);
    ApproximationStep step;
    step.n = n;
    if (!rest.is_zero()) {
      step.distance = luxemburg_norm(phi, rest, Space::Cesaro, opt).value;
      step.tail_plain = luxemburg_norm(phi, rest, Space::Plain, opt).value;
    }
    if (!trace.steps.empty() && step.distance > trace.steps.back().distance * (1.0 + 1e-9) + 1e-15) {
      trace.nonincreasing = false;
    }
    trace.steps.push_back(step);
    if (step.distance <= target) {
      trace.converged = true;
      break;
    }
  }
  if (!trace.nonincreasing) throw DiagnosticError("||x - x_n||_Ces increased along n = 2^k");
  return trace;
}

} // namespace cesorl
