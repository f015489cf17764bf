#include "cesorl/indices.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cesorl/error.hpp"

namespace cesorl {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

/// ln(phi(2u) / phi(u)); +inf when phi(2u) = inf or phi(u) = 0 < phi(2u).
double log_ratio(const OrliczFunction& phi, double u) {
  const double hi = phi.log_value(2.0 * u);
  const double lo = phi.log_value(u);
  if (std::isinf(hi) && hi > 0.0) return kInf;
  if (std::isinf(lo)) return std::isinf(hi) ? std::nan("") : kInf;
  return hi - lo;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g;
  if (!(hi > lo) || n < 2) return g;
  g.reserve(static_cast<std::size_t>(n));
  const double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < n; ++i) g.push_back(std::exp(a + (b - a) * i / (n - 1)));
  g.front() = lo;
  g.back() = hi;
  return g;
}

Delta2Report trivial_failure(Regime regime, std::vector<double> us, std::string note) {
  Delta2Report rep;
  rep.regime = regime;
  rep.verdict = Outcome::Fails;
  for (double u : us) rep.witness.push_back({u, kInf});
  rep.note = std::move(note);
  return rep;
}

/// One-sided sampler; `toward` lists the grid ordered from the split point outward.
Delta2Report sample_regime(const OrliczFunction& phi, Regime regime, std::vector<double> toward,
                           const Delta2Options& opt) {
  Delta2Report rep;
  rep.regime = regime;
  std::vector<double> lr;
  lr.reserve(toward.size());
  for (double u : toward) {
    const double v = log_ratio(phi, u);
    lr.push_back(v);
    if (!std::isnan(v)) rep.curve.push_back({u, std::exp(v)});
  }
  // Greedy search for ratio_n >= 2^n moving outward.
  int n = 1;
  for (std::size_t i = 0; i < toward.size() && n <= opt.witness_terms; ++i) {
    if (std::isnan(lr[i])) continue;
    if (lr[i] >= n * std::log(2.0) * (1.0 + 1e-12)) {
      rep.witness.push_back({toward[i], std::exp(lr[i])});
      ++n;
    }
  }
  if (static_cast<int>(rep.witness.size()) >= opt.witness_terms) {
    rep.verdict = Outcome::Fails;
    return rep;
  }
  rep.witness.clear();
  const std::size_t outer = toward.size() - toward.size() / 8;
  double inner_max = -kInf, outer_max = -kInf;
  for (std::size_t i = 0; i < toward.size(); ++i) {
    if (std::isnan(lr[i])) continue;
    (i < outer ? inner_max : outer_max) = std::max(i < outer ? inner_max : outer_max, lr[i]);
  }
  if (std::isfinite(inner_max) && outer_max <= inner_max + 1e-9 * std::max(1.0, std::abs(inner_max))) {
    rep.verdict = Outcome::Holds;
    rep.k_hat = std::exp(std::max(inner_max, outer_max));
    rep.u0 = toward.front();
  } else {
    rep.verdict = Outcome::Undetermined;
    rep.note = "ratios neither bounded nor escalating to 2^" + std::to_string(opt.witness_terms);
  }
  return rep;
}

Delta2Report regime_zero(const OrliczFunction& phi, const Delta2Options& opt) {
  if (phi.a_phi() > 0.0) {
    std::vector<double> us;
    for (int n = 1; n <= opt.witness_terms; ++n) us.push_back(phi.a_phi() * (0.5 + std::ldexp(1.0, -n - 1)));
    return trivial_failure(Regime::Zero, us, "phi vanishes on (0, a_phi] and phi(2u) > 0 for u > a_phi / 2");
  }
  const double lo = std::ldexp(1.0, -40);
  const double hi = std::min(1.0, phi.b_phi() / 4.0);
  auto g = log_grid(lo, hi, opt.grid_points);
  std::reverse(g.begin(), g.end());
  auto rep = sample_regime(phi, Regime::Zero, g, opt);
  rep.grid = "[" + fmt(lo) + ", " + fmt(hi) + "], " + std::to_string(opt.grid_points) + " log points";
  return rep;
}

Delta2Report regime_infinity(const OrliczFunction& phi, const Delta2Options& opt) {
  if (!phi.finite_valued()) {
    std::vector<double> us;
    const double b = phi.b_phi();
    for (int n = 1; us.size() < static_cast<std::size_t>(opt.witness_terms) && n < 1000; ++n) {
      const double u = b * (1.0 - std::ldexp(1.0, -n - 1));
      if (u > phi.a_phi() && u < b) us.push_back(u);
    }
    return trivial_failure(Regime::Infinity, us, "b_phi < inf: phi(2u) = inf while phi(u) < inf near b_phi");
  }
  const double lo = std::max(1.0, 2.0 * phi.a_phi());
  const double hi = std::ldexp(1.0, 40);
  auto rep = sample_regime(phi, Regime::Infinity, log_grid(lo, hi, opt.grid_points), opt);
  rep.grid = "[" + fmt(lo) + ", " + fmt(hi) + "], " + std::to_string(opt.grid_points) + " log points";
  return rep;
}

void cross_check(const OrliczFunction& phi, const Delta2Report& rep) {
  const auto& declared = rep.regime == Regime::Zero ? phi.flags().delta2_zero : phi.flags().delta2_infinity;
  if (!declared || rep.verdict == Outcome::Undetermined) return;
  if (*declared != (rep.verdict == Outcome::Holds)) {
    throw DiagnosticError(phi.tag() + " declares Delta_2(" + std::string(to_string(rep.regime)) + ") = " +
                          (*declared ? "true" : "false") + " but the sampler found " +
                          std::string(to_string(rep.verdict)));
  }
}

} // namespace

std::string_view to_string(Regime r) {
  switch (r) {
  case Regime::Zero: return "zero";
  case Regime::Infinity: return "inf";
  case Regime::AllArgs: return "all";
  }
  return "all";
}

Regime regime_from_string(std::string_view s) {
  if (s == "zero" || s == "0") return Regime::Zero;
  if (s == "inf" || s == "infinity") return Regime::Infinity;
  if (s == "all" || s == "allargs") return Regime::AllArgs;
  throw ParseError("unknown regime '" + std::string(s) + "' (expected zero, inf or all)");
}

Regime regime_for(Domain d) { return d == Domain::UnitInterval ? Regime::Infinity : Regime::AllArgs; }

std::string_view to_string(Outcome o) {
  switch (o) {
  case Outcome::Holds: return "holds";
  case Outcome::Fails: return "fails";
  case Outcome::Undetermined: return "undetermined";
  }
  return "undetermined";
}

Outcome outcome_from_string(std::string_view s) {
  for (auto o : {Outcome::Holds, Outcome::Fails, Outcome::Undetermined}) {
    if (to_string(o) == s) return o;
  }
  throw ParseError("unknown outcome '" + std::string(s) + "'");
}

Delta2Report delta2_test(const OrliczFunction& phi, Regime regime, const Delta2Options& opt) {
  if (regime == Regime::Zero || regime == Regime::Infinity) {
    auto rep = regime == Regime::Zero ? regime_zero(phi, opt) : regime_infinity(phi, opt);
    if (opt.cross_check) cross_check(phi, rep);
    return rep;
  }
  auto zero = regime_zero(phi, opt);
  auto inf = regime_infinity(phi, opt);
  if (opt.cross_check) {
    cross_check(phi, zero);
    cross_check(phi, inf);
  }
  Delta2Report rep;
  rep.regime = Regime::AllArgs;
  rep.grid = "zero: " + zero.grid + "; inf: " + inf.grid;
  rep.curve = zero.curve;
  std::reverse(rep.curve.begin(), rep.curve.end());
  rep.curve.insert(rep.curve.end(), inf.curve.begin(), inf.curve.end());
  if (zero.verdict == Outcome::Fails || inf.verdict == Outcome::Fails) {
    const auto& f = zero.verdict == Outcome::Fails ? zero : inf;
    rep.verdict = Outcome::Fails;
    rep.witness = f.witness;
    rep.note = std::string(f.regime == Regime::Zero ? "Delta_2(0)" : "Delta_2(inf)") + " fails" +
               (f.note.empty() ? "" : ": " + f.note);
  } else if (zero.verdict == Outcome::Holds && inf.verdict == Outcome::Holds) {
    rep.verdict = Outcome::Holds;
    rep.k_hat = std::max(zero.k_hat, inf.k_hat);
    rep.u0 = 1.0;
  } else {
    rep.verdict = Outcome::Undetermined;
    rep.note = zero.verdict == Outcome::Undetermined ? "zero: " + zero.note : "inf: " + inf.note;
  }
  return rep;
}

IndexEstimate matuszewska_indices(const OrliczFunction& phi, int grid_points) {
  IndexEstimate est;
  std::vector<double> us;
  for (double u : log_grid(std::ldexp(1.0, -30), std::ldexp(1.0, 30), grid_points)) {
    if (u > phi.a_phi() && u < phi.b_phi()) us.push_back(u);
  }
  if (us.empty()) throw PreconditionError("no sample point with 0 < phi < inf in [2^-30, 2^30]");
  auto log_m = [&](double s) {
    double best = -kInf;
    for (double u : us) {
      const double v = phi.log_value(s * u) - phi.log_value(u);
      if (!std::isnan(v)) best = std::max(best, v);
    }
    return best;
  };
  auto fit = [&](int sign, double& slope, double& residual) {
    std::vector<double> xs, ys;
    for (int j = 1; j <= 10; ++j) {
      const double s = std::ldexp(1.0, sign * j);
      const double lm = log_m(s);
      est.curve.push_back({s, std::exp(lm)});
      if (!std::isfinite(lm)) {
        slope = sign > 0 ? kInf : 0.0;
        residual = kInf;
        return false;
      }
      xs.push_back(std::log(s));
      ys.push_back(lm);
    }
    const double n = static_cast<double>(xs.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      mx += xs[i] / n;
      my += ys[i] / n;
    }
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxx += (xs[i] - mx) * (xs[i] - mx);
      sxy += (xs[i] - mx) * (ys[i] - my);
    }
    slope = sxy / sxx;
    double ss = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double r = ys[i] - (my + slope * (xs[i] - mx));
      ss += r * r;
    }
    residual = std::sqrt(ss / n);
    return true;
  };
  double ra = 0.0, rb = 0.0;
  const bool ok_a = fit(-1, est.alpha_hat, ra);
  bool ok_b = true;
  if (phi.finite_valued()) {
    ok_b = fit(1, est.beta_hat, rb);
  } else {
    est.beta_hat = kInf;
    est.note = "b_phi < inf: upper index is infinite";
  }
  est.fit_residual = std::max(ra, phi.finite_valued() ? rb : 0.0);
  if (!ok_a || !ok_b || est.fit_residual > 0.05) {
    est.determined = false;
    if (!est.note.empty()) est.note += "; ";
    est.note += "ln M(s) is not linear in ln s (residual " + fmt(est.fit_residual) + ")";
  }
  return est;
}

ConditionSReport condition_S(const OrliczFunction& phi) {
  ConditionSReport rep;
  if (phi.a_phi() > 0.0) {
    rep.note = "a_phi > 0: t phi'(t) / phi(t) is undefined near 0";
    return rep;
  }
  const double lo = std::ldexp(1.0, -40);
  double best = kInf;
  for (double t : log_grid(lo, 10.0 * lo, 64)) {
    const double h = std::ldexp(t, -20);
    const double d = (phi.log_value(t + h) - phi.log_value(t - h)) / (2.0 * h);
    best = std::min(best, t * d);
  }
  rep.estimate = best;
  if (std::isnan(best)) {
    rep.note = "phi not evaluable near 0";
    return rep;
  }
  rep.verdict = best > 1.01 ? Outcome::Holds : Outcome::Fails;
  rep.note = "min of t phi'(t)/phi(t) on [2^-40, 10 * 2^-40]";
  return rep;
}

HardyReport hardy_probe(const OrliczFunction& phi, const std::vector<StepFunction>& corpus, const NormOptions& opt) {
  if (corpus.empty()) throw PreconditionError("hardy_probe needs a nonempty corpus");
  HardyReport rep;
  rep.alpha_hat = matuszewska_indices(phi).alpha_hat;
  const std::size_t half = (corpus.size() + 1) / 2;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& x = corpus[i];
    if (x.is_zero()) {
      ++rep.skipped;
      continue;
    }
    try {
      const auto plain = luxemburg_norm(phi, x, Space::Plain, opt);
      const auto ces = luxemburg_norm(phi, x, Space::Cesaro, opt);
      const double r = ces.status == NormStatus::Infinite ? kInf : ces.value / plain.value;
      rep.ratios.push_back(r);
      rep.c_hat = std::max(rep.c_hat, r);
      if (i < half) rep.c_hat_half = std::max(rep.c_hat_half, r);
    } catch (const IndeterminateError&) {
      ++rep.skipped;
    }
  }
  rep.stable = std::isfinite(rep.c_hat) && rep.c_hat <= rep.c_hat_half * 1.05;
  rep.bounded_consistent = rep.alpha_hat > 1.0 + 0.01 && rep.stable;
  if (rep.alpha_hat <= 1.0 + 0.01) {
    const Domain d = corpus.front().domain();
    double prev = 0.0;
    bool escalating = true;
    for (int k = 0; k <= 10; ++k) {
      const double n = std::ldexp(1.0, k);
      const auto x = StepFunction::indicator(d, 0.0, 1.0 / n);
      const auto plain = luxemburg_norm(phi, x, Space::Plain, opt);
      const auto ces = luxemburg_norm(phi, x, Space::Cesaro, opt);
      const double r = ces.status == NormStatus::Infinite ? kInf : ces.value / plain.value;
      rep.witness.push_back({n, r});
      if (k > 0 && !(r > prev) && !std::isinf(r)) escalating = false;
      prev = r;
    }
    rep.unbounded_detected =
        escalating && (std::isinf(rep.witness.back().second) ||
                       rep.witness.back().second > 2.0 * rep.witness.front().second);
  }
  return rep;
}

} // namespace cesorl
