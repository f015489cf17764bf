#include "cesorl/modular.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "cesorl/cesaro.hpp"
#include "cesorl/error.hpp"

namespace cesorl {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

bool above_b(const OrliczFunction& phi, double v) {
  return v > phi.b_phi() || (v == phi.b_phi() && std::isinf(phi.value_at_b()));
}

ExtendedValue above_b_certificate(const OrliczFunction& phi, double v, double lo, double hi) {
  return ExtendedValue::infinite(Certificate::PositiveMeasureAboveB,
                                 "argument " + fmt(v) + " reaches b_phi = " + fmt(phi.b_phi()) + " on [" + fmt(lo) +
                                     ", " + fmt(hi) + ")");
}

/// Sums dyadic shells J_0, J_1, ... that are known to be nonincreasing in k.
ExtendedValue shell_sum(const std::function<QuadratureResult(int)>& shell, const ModularOptions& opt,
                        const std::string& what) {
  double sum = 0.0;
  double err = 0.0;
  double prev = 0.0;
  double last_ratio = 0.0;
  int stall = 0;
  for (int k = 0; k < opt.max_shells; ++k) {
    const auto j = shell(k);
    if (!std::isfinite(j.value)) {
      return ExtendedValue::infinite(Certificate::TailLowerBound, what + ": shell " + std::to_string(k) + " overflows");
    }
    if (!j.converged) throw IndeterminateError(what + ": quadrature did not converge on shell " + std::to_string(k));
    sum += j.value;
    err += j.abs_error;
    if (sum > opt.divergence_threshold) {
      return ExtendedValue::infinite(Certificate::TailLowerBound,
                                     what + ": partial integral " + fmt(sum) + " exceeds M_div after " +
                                         std::to_string(k + 1) + " shells",
                                     sum);
    }
    if (j.value <= 0.0) return ExtendedValue::finite(sum, err);
    if (k > 0) {
      const double r = j.value / prev;
      if (r >= 1.0 - 1e-9) {
        if (++stall >= opt.stall_shells) {
          return ExtendedValue::infinite(Certificate::TailLowerBound,
                                         what + ": " + std::to_string(stall) + " consecutive shells of mass " +
                                             fmt(j.value) + " without decay",
                                         sum);
        }
      } else {
        stall = 0;
      }
      const double rmax = std::max(r, last_ratio);
      if (rmax < 1.0) {
        const double remainder = j.value * rmax / (1.0 - rmax);
        if (remainder <= std::max(opt.quad.abs_tol, opt.quad.rel_tol * sum)) {
          return ExtendedValue::finite(sum + remainder, err + remainder);
        }
      }
      last_ratio = r;
    }
    prev = j.value;
  }
  throw IndeterminateError(what + ": no decision after " + std::to_string(opt.max_shells) + " shells");
}

/// phi(g) overflowed on a piece although g < b_phi; certify with a termwise
/// bound phi(v) * m{g >= v} above M_div computed in log space.
ExtendedValue overflow_certificate(const OrliczFunction& phi, const HyperbolicPiece& p, double lo_v, double hi_v,
                                   const ModularOptions& opt) {
  for (int j = 1; j <= 64; ++j) {
    const double v = lo_v + (hi_v - lo_v) * (1.0 - std::ldexp(1.0, -j));
    double m = p.right - p.left;
    if (p.b != 0.0) {
      const double t = p.b / (v - p.a);
      m = p.b < 0.0 ? p.right - t : t - p.left;
    }
    if (!(m > 0.0)) continue;
    if (phi.log_value(v) + std::log(m) > std::log(opt.divergence_threshold)) {
      return ExtendedValue::infinite(Certificate::TermwiseLowerBound,
                                     "phi(" + fmt(v) + ") * " + fmt(m) + " exceeds M_div (beyond floating range)",
                                     opt.divergence_threshold);
    }
  }
  throw IndeterminateError("phi overflows on [" + fmt(p.left) + ", " + fmt(p.right) + ") without a certificate");
}

ExtendedValue piece_integral(const OrliczFunction& phi, const HyperbolicPiece& p, const ModularOptions& opt) {
  const double len = p.right - p.left;
  if (p.b == 0.0) {
    if (above_b(phi, p.a)) return above_b_certificate(phi, p.a, p.left, p.right);
    const double v = phi(p.a);
    if (v == 0.0) return ExtendedValue::finite(0.0);
    if (std::isinf(v)) return overflow_certificate(phi, p, p.a * (1.0 - 1e-15), p.a, opt);
    return ExtendedValue::finite(v * len, 4.0 * kEps * v * len);
  }
  const double gl = p.left > 0.0 ? p(p.left) : kInf;
  const double gr = p(p.right);
  const double sup = std::max(gl, gr);
  const double inf = std::min(gl, gr);
  if (sup > phi.b_phi()) return above_b_certificate(phi, sup, p.left, p.right);
  if (sup <= phi.a_phi()) return ExtendedValue::finite(0.0);

  auto integrand = [&](double t) { return phi(std::min(p(t), sup)); };
  if (sup == phi.b_phi() && phi.infinite_at_b() && p.left > 0.0) {
    // g touches b_phi only at an endpoint: integrate dyadic shells toward it.
    const bool at_right = gr >= gl;
    auto shell = [&](int k) {
      const double d_hi = std::ldexp(len, -k), d_lo = d_hi / 2.0;
      return at_right ? integrate(integrand, p.right - d_hi, p.right - d_lo, opt.quad)
                      : integrate(integrand, p.left + d_lo, p.left + d_hi, opt.quad);
    };
    return shell_sum(shell, opt, "argument approaching b_phi at t = " + fmt(at_right ? p.right : p.left));
  }
  std::vector<double> cuts;
  auto add_level = [&](double u) {
    if (u == p.a) return;
    const double t = p.b / (u - p.a);
    if (t > p.left && t < p.right) cuts.push_back(t);
  };
  add_level(phi.a_phi());
  for (double k : phi.kinks()) add_level(k);

  if (p.left == 0.0) {
    // a + b/t with b > 0 is unbounded at 0: integrate dyadic shells toward 0.
    std::vector<double> outer;
    for (double c : cuts) outer.push_back(c);
    auto shell = [&](int k) {
      const double hi = std::ldexp(p.right, -k);
      return integrate_split(integrand, hi / 2.0, hi, outer, opt.quad);
    };
    return shell_sum(shell, opt, "piece at 0");
  }

  const auto r = integrate_split(integrand, p.left, p.right, cuts, opt.quad);
  if (!std::isfinite(r.value)) return overflow_certificate(phi, p, inf, sup, opt);
  if (!r.converged) {
    throw IndeterminateError("quadrature did not converge on [" + fmt(p.left) + ", " + fmt(p.right) + ")");
  }
  return ExtendedValue::finite(r.value, r.abs_error);
}

} // namespace

ExtendedValue modular_I(const OrliczFunction& phi, const StepFunction& f, const ModularOptions& opt) {
  double sum = 0.0;
  double err = 0.0;
  for (const auto& p : f.pieces()) {
    const double len = p.right - p.left;
    if (above_b(phi, p.value)) return above_b_certificate(phi, p.value, p.left, p.right);
    const double v = phi(p.value);
    if (v == 0.0) continue;
    if (std::isinf(v) || std::isinf(v * len)) {
      if (phi.log_value(p.value) + std::log(len) > std::log(opt.divergence_threshold)) {
        return ExtendedValue::infinite(Certificate::TermwiseLowerBound,
                                       "phi(" + fmt(p.value) + ") * " + fmt(len) +
                                           " exceeds M_div (beyond floating range)",
                                       opt.divergence_threshold);
      }
      throw IndeterminateError("phi(" + fmt(p.value) + ") overflows");
    }
    sum += v * len;
    err += 2.0 * kEps * v * len;
  }
  err += kEps * sum * static_cast<double>(f.pieces().size());
  return ExtendedValue::finite(sum, err);
}

ExtendedValue tail_integral(const OrliczFunction& phi, double mass, double start, const ModularOptions& opt) {
  if (mass == 0.0) return ExtendedValue::finite(0.0);
  if (!(mass > 0.0) || !(start > 0.0)) throw DomainError("tail integral needs mass >= 0 and start > 0");
  const double top = mass / start;
  if (above_b(phi, top)) return above_b_certificate(phi, top, start, start * top / phi.b_phi());
  if (top <= phi.a_phi()) return ExtendedValue::finite(0.0);
  auto integrand = [&](double u) { return phi(std::min(u, top)) * mass / (u * u); };
  std::vector<double> kinks(phi.kinks().begin(), phi.kinks().end());
  if (phi.a_phi() > 0.0) {
    const auto r = integrate_split(integrand, phi.a_phi(), top, kinks, opt.quad);
    if (!r.converged) throw IndeterminateError("tail quadrature did not converge");
    return ExtendedValue::finite(r.value, r.abs_error);
  }
  auto shell = [&](int k) {
    const double hi = std::ldexp(top, -k);
    return integrate_split(integrand, hi / 2.0, hi, kinks, opt.quad);
  };
  return shell_sum(shell, opt, "tail S/t from t0 = " + fmt(start));
}

ExtendedValue modular_I(const OrliczFunction& phi, const PiecewiseHyperbolic& g, const ModularOptions& opt) {
  ExtendedValue total = ExtendedValue::finite(0.0);
  for (const auto& p : g.pieces()) {
    total = total + piece_integral(phi, p, opt);
    if (total.is_infinite()) return total;
  }
  if (g.tail()) total = total + tail_integral(phi, g.tail()->mass, g.tail()->start, opt);
  return total;
}

ExtendedValue modular_rho(const OrliczFunction& phi, const StepFunction& x, const ModularOptions& opt) {
  return modular_I(phi, cesaro_mean(x), opt);
}

std::string_view to_string(Space s) { return s == Space::Plain ? "plain" : "cesaro"; }

Space space_from_string(std::string_view s) {
  if (s == "plain" || s == "orlicz") return Space::Plain;
  if (s == "cesaro" || s == "ces") return Space::Cesaro;
  throw ParseError("unknown space '" + std::string(s) + "' (expected plain or cesaro)");
}

std::string_view to_string(NormStatus s) {
  switch (s) {
  case NormStatus::Converged: return "converged";
  case NormStatus::Zero: return "zero";
  case NormStatus::Infinite: return "infinite";
  }
  return "converged";
}

NormStatus norm_status_from_string(std::string_view s) {
  for (auto v : {NormStatus::Converged, NormStatus::Zero, NormStatus::Infinite}) {
    if (to_string(v) == s) return v;
  }
  throw ParseError("unknown norm status '" + std::string(s) + "'");
}

namespace {

NormResult bisect_norm(const std::function<ExtendedValue(double)>& modular_at, const NormOptions& opt) {
  NormResult out;
  auto inside = [&](double lambda) {
    ++out.iterations;
    return modular_at(lambda).as_double() <= 1.0;
  };
  double lo = 0.0;
  double hi = 1.0;
  if (inside(1.0)) {
    int e = 0;
    while (true) {
      const double half = std::ldexp(1.0, e - 1);
      if (e - 1 < -1020) {
        lo = 0.0;
        break;
      }
      if (!inside(half)) {
        lo = half;
        break;
      }
      hi = half;
      --e;
    }
  } else {
    int e = 0;
    while (true) {
      if (e + 1 > opt.max_exponent) {
        const auto last = modular_at(std::ldexp(1.0, opt.max_exponent));
        out.status = NormStatus::Infinite;
        out.value = out.hi = kInf;
        out.lo = std::ldexp(1.0, opt.max_exponent);
        out.diagnostic = last.is_infinite()
                             ? "modular(f / 2^" + std::to_string(opt.max_exponent) + ") is infinite (" +
                                   std::string(to_string(last.certificate)) + "): " + last.reason
                             : "modular(f / 2^" + std::to_string(opt.max_exponent) + ") = " + fmt(last.value) + " > 1";
        return out;
      }
      lo = std::ldexp(1.0, e);
      hi = std::ldexp(1.0, e + 1);
      if (inside(hi)) break;
      ++e;
    }
  }
  while (hi - lo > opt.rel_width * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    if (inside(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  out.status = NormStatus::Converged;
  out.lo = lo;
  out.hi = hi;
  out.value = hi;
  return out;
}

} // namespace

NormResult luxemburg_norm(const OrliczFunction& phi, const StepFunction& f, Space space, const NormOptions& opt) {
  if (f.is_zero()) return {};
  if (space == Space::Plain) {
    return bisect_norm([&](double lambda) { return modular_I(phi, f.scaled(1.0 / lambda), opt.modular); }, opt);
  }
  const auto g = cesaro_mean(f);
  return bisect_norm([&](double lambda) { return modular_I(phi, g.scaled(1.0 / lambda), opt.modular); }, opt);
}

NormResult luxemburg_norm(const OrliczFunction& phi, const PiecewiseHyperbolic& g, const NormOptions& opt) {
  if (g.pieces().empty() && (!g.tail() || g.tail()->mass == 0.0)) return {};
  return bisect_norm([&](double lambda) { return modular_I(phi, g.scaled(1.0 / lambda), opt.modular); }, opt);
}

std::string_view to_string(MembershipKind k) {
  switch (k) {
  case MembershipKind::OrliczClass: return "orlicz_class";
  case MembershipKind::OrliczSpace: return "orlicz_space";
  case MembershipKind::CesSpace: return "ces_space";
  case MembershipKind::CPhi: return "c_phi";
  }
  return "orlicz_class";
}

MembershipKind membership_kind_from_string(std::string_view s) {
  for (auto k : {MembershipKind::OrliczClass, MembershipKind::OrliczSpace, MembershipKind::CesSpace,
                 MembershipKind::CPhi}) {
    if (to_string(k) == s) return k;
  }
  throw ParseError("unknown membership kind '" + std::string(s) + "'");
}

std::string_view to_string(Verdict v) {
  switch (v) {
  case Verdict::Yes: return "yes";
  case Verdict::No: return "no";
  case Verdict::Undetermined: return "undetermined";
  }
  return "undetermined";
}

MembershipReport membership(const OrliczFunction& phi, const StepFunction& x, MembershipKind which,
                            const ModularOptions& opt) {
  MembershipReport rep;
  rep.kind = which;
  if (x.is_zero()) {
    rep.verdict = Verdict::Yes;
    rep.modular = ExtendedValue::finite(0.0);
    rep.reason = "zero function";
    return rep;
  }
  const bool cesaro = which == MembershipKind::CesSpace || which == MembershipKind::CPhi;
  const auto g = cesaro_mean(x);
  ModularOptions mopt = opt;
  // rho(kx) grows like k^p for large k; only shell stalls may signal divergence here.
  if (which == MembershipKind::CPhi) mopt.divergence_threshold = std::numeric_limits<double>::max();
  auto modular_at = [&](double k) {
    return cesaro ? modular_I(phi, g.scaled(k), mopt) : modular_I(phi, x.scaled(k), mopt);
  };
  try {
    switch (which) {
    case MembershipKind::OrliczClass:
      rep.modular = modular_at(1.0);
      rep.verdict = rep.modular.is_finite() ? Verdict::Yes : Verdict::No;
      rep.reason = rep.modular.is_finite() ? "I_phi(x) finite" : rep.modular.reason;
      return rep;
    case MembershipKind::OrliczSpace:
    case MembershipKind::CesSpace:
      for (int e = 0; e <= 60; ++e) {
        rep.scale = std::ldexp(1.0, -e);
        rep.modular = modular_at(rep.scale);
        if (rep.modular.is_finite()) {
          rep.verdict = Verdict::Yes;
          rep.reason = "modular finite at x / 2^" + std::to_string(e);
          return rep;
        }
      }
      rep.verdict = Verdict::No;
      rep.reason = "modular infinite at x / 2^k for k = 0..60: " + rep.modular.reason;
      return rep;
    case MembershipKind::CPhi: {
      const int kmax = phi.finite_valued() ? 10 : 60;
      for (int e = 0; e <= kmax; ++e) {
        rep.scale = std::ldexp(1.0, e);
        rep.modular = modular_at(rep.scale);
        if (phi.finite_valued() && rep.modular.certificate == Certificate::TermwiseLowerBound) {
          // A bounded argument of a finite phi: the term only left the floating range.
          rep.reason = "rho(" + fmt(rep.scale) + " x) beyond floating range; escalation stopped";
          break;
        }
        if (rep.modular.is_infinite()) {
          rep.verdict = Verdict::No;
          rep.reason = "rho(" + fmt(rep.scale) + " x) infinite: " + rep.modular.reason;
          return rep;
        }
      }
      if (phi.finite_valued()) {
        rep.verdict = Verdict::Yes;
        const std::string stop = rep.reason;
        rep.reason = "phi finite and rho(kx) finite, tail test included, for k = 1.." + fmt(rep.scale);
        if (!stop.empty()) rep.reason += "; " + stop;
      } else {
        rep.verdict = Verdict::Undetermined;
        rep.reason = "rho(kx) finite up to k = 2^60 although b_phi < inf";
      }
      return rep;
    }
    }
  } catch (const IndeterminateError& e) {
    rep.verdict = Verdict::Undetermined;
    rep.reason = e.what();
  }
  return rep;
}

} // namespace cesorl
