#include "cesorl/verify.hpp"

#include <cmath>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

#include "cesorl/error.hpp"

namespace cesorl {

using Rational = boost::multiprecision::cpp_rational;

namespace {

std::string describe(const ExtendedValue& v) {
  std::ostringstream os;
  os.precision(15);
  if (v.is_finite()) {
    os << v.value;
  } else {
    os << "inf (" << to_string(v.certificate) << ")";
  }
  return os.str();
}

void check_truncation(const OrliczFunction& phi, const WitnessReport& rep, VerifyResult& out) {
  const auto& tr = *rep.truncation;
  out.truncation_checked = true;
  std::ostringstream detail;
  Rational sum = 0;
  Rational pow = 1;
  for (int n = 1; n <= static_cast<int>(tr.terms.size()); ++n) {
    const auto& t = tr.terms[static_cast<std::size_t>(n - 1)];
    pow *= 2;
    const double pu = phi(t.u);
    if (pu != t.phi_u) {
      out.truncation_ok = false;
      detail << "term " << n << ": phi(u) recomputes to " << pu << " not " << t.phi_u << "; ";
      continue;
    }
    const Rational m = Rational(1) / (pow * Rational(pu));
    if (m != Rational(t.measure)) {
      out.truncation_ok = false;
      detail << "term " << n << ": measure mismatch; ";
    }
    sum += Rational(pu) * m;
    if (!rep.elements.empty()) {
      const double mid = 0.5 * (t.left + t.right);
      if (rep.elements[0](mid) != t.u) {
        out.truncation_ok = false;
        detail << "term " << n << ": element value at the placed interval differs from u_n; ";
      }
    }
  }
  const Rational expected = Rational(1) - Rational(1) / pow;
  if (sum != expected || sum != Rational(tr.modular_exact) || Rational(tr.remainder) != Rational(1) / pow) {
    out.truncation_ok = false;
    detail << "exact sum " << sum.str() << " differs from 1 - 2^-" << tr.terms.size() << "; ";
  } else {
    detail << "exact sum " << sum.str() << " = 1 - 2^-" << tr.terms.size();
  }
  out.truncation_detail = detail.str();
}

} // namespace

bool VerifyResult::ok() const {
  for (const auto& l : lines) {
    if (l.recorded != l.recomputed) return false;
  }
  return truncation_ok;
}

VerifyResult verify_report(const WitnessReport& rep, const WitnessOptions& opt) {
  const auto phi = parse_phi(rep.phi_tag);
  VerifyResult out;
  for (const auto& stored : rep.certified) {
    CertifiedValue cv = stored;
    if (cv.element < 0 || cv.element >= static_cast<int>(rep.elements.size())) {
      throw ParseError("certified value '" + cv.description + "' refers to a missing element");
    }
    evaluate_certificate(phi, rep.elements, cv, opt);
    out.lines.push_back({cv.description, stored.holds, cv.holds, describe(cv.value)});
  }
  if (rep.truncation) check_truncation(phi, rep, out);
  return out;
}

VerifyResult verify_report(const Json& report, const WitnessOptions& opt) {
  return verify_report(witness_report_from_json(report), opt);
}

} // namespace cesorl
