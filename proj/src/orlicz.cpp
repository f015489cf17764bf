#include "cesorl/orlicz.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "cesorl/error.hpp"
#include "cesorl/extended.hpp"

namespace cesorl {

namespace {

constexpr double kNegInf = -kInf;

std::string param_error(std::string_view family, std::string_view what) {
  return std::string(family) + ": " + std::string(what);
}

double exp_gap_value(double u) {
  if (u < 1e-3) return u * u * (0.5 + u * (1.0 / 6.0 + u * (1.0 / 24.0 + u / 120.0)));
  return std::expm1(u) - u;
}

double exp_gap_log(double u) {
  if (u == 0.0) return kNegInf;
  if (u < 1e-3) return 2.0 * std::log(u) + std::log(0.5 + u * (1.0 / 6.0 + u * (1.0 / 24.0 + u / 120.0)));
  if (u < 700.0) return std::log(std::expm1(u) - u);
  return u + std::log1p(-(1.0 + u) * std::exp(-u));
}

void require_params(std::string_view name, std::span<const double> params, std::size_t lo, std::size_t hi) {
  if (params.size() < lo || params.size() > hi) {
    std::ostringstream os;
    os << "expected " << lo;
    if (hi != lo) os << ".." << hi;
    os << " parameter(s), got " << params.size();
    throw ConstructionError(param_error(name, os.str()));
  }
  for (double p : params) {
    if (!std::isfinite(p)) throw ConstructionError(param_error(name, "parameters must be finite"));
  }
}

} // namespace

std::string_view to_string(Family f) {
  switch (f) {
  case Family::Power: return "power";
  case Family::ShiftedPower: return "shifted_power";
  case Family::ExpGap: return "exp_gap";
  case Family::FlatZeroExp: return "flat_zero_exp";
  case Family::CappedFinite: return "capped_finite";
  case Family::CappedInfinite: return "capped_infinite";
  case Family::PiecewiseLinear: return "piecewise_linear_convex";
  case Family::Custom: return "custom";
  }
  return "custom";
}

Family family_from_string(std::string_view name) {
  if (name == "capped_inf") return Family::CappedInfinite;
  if (name == "pwl") return Family::PiecewiseLinear;
  for (auto f : {Family::Power, Family::ShiftedPower, Family::ExpGap, Family::FlatZeroExp,
                 Family::CappedFinite, Family::CappedInfinite, Family::PiecewiseLinear, Family::Custom}) {
    if (to_string(f) == name) return f;
  }
  throw ConstructionError("unknown Orlicz family '" + std::string(name) + "'");
}

double OrliczFunction::operator()(double u) const {
  if (!(u >= 0.0)) throw DomainError("Orlicz function evaluated at negative or NaN argument");
  if (u == 0.0) return 0.0;
  if (u > b_phi_) return kInf;
  return value_(u);
}

double OrliczFunction::log_value(double u) const {
  if (!(u >= 0.0)) throw DomainError("Orlicz function evaluated at negative or NaN argument");
  if (u == 0.0) return kNegInf;
  if (u > b_phi_) return kInf;
  if (log_value_) return log_value_(u);
  return std::log(value_(u));
}

bool OrliczFunction::finite_valued() const { return std::isinf(b_phi_); }

bool OrliczFunction::infinite_at_b() const { return std::isfinite(b_phi_) && std::isinf(value_at_b_); }

std::string OrliczFunction::tag() const {
  std::ostringstream os;
  os << to_string(family_);
  for (std::size_t i = 0; i < params_.size(); ++i) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, params_[i]);
    os << (i == 0 ? ':' : ',') << std::string_view(buf, static_cast<std::size_t>(res.ptr - buf));
  }
  return os.str();
}

OrliczFunction OrliczFunction::custom(Evaluator value, double a_phi, double b_phi, OrliczFlags flags,
                                      std::vector<double> kinks, Evaluator log_value) {
  if (!value) throw ConstructionError("custom Orlicz function needs an evaluator");
  if (!(a_phi >= 0.0) || !std::isfinite(a_phi)) throw ConstructionError("a_phi must be finite and >= 0");
  if (!(b_phi > 0.0) || b_phi < a_phi) throw ConstructionError("b_phi must be positive and >= a_phi");
  OrliczFunction phi;
  phi.value_ = std::move(value);
  phi.log_value_ = std::move(log_value);
  phi.a_phi_ = a_phi;
  phi.b_phi_ = b_phi;
  phi.value_at_b_ = std::isfinite(b_phi) ? phi.value_(b_phi) : kInf;
  phi.flags_ = flags;
  phi.family_ = Family::Custom;
  std::sort(kinks.begin(), kinks.end());
  phi.kinks_ = std::move(kinks);
  validate_axioms(phi);
  return phi;
}

OrliczFunction make_family(Family family, std::span<const double> params, OrliczFlags overrides) {
  OrliczFunction phi;
  phi.family_ = family;
  phi.params_.assign(params.begin(), params.end());
  const auto name = to_string(family);
  OrliczFlags& fl = phi.flags_;

  switch (family) {
  case Family::Power: {
    require_params(name, params, 1, 1);
    const double p = params[0];
    if (p < 1.0) throw ConstructionError(param_error(name, "exponent p must be >= 1"));
    phi.value_ = [p](double u) { return p == 1.0 ? u : std::pow(u, p); };
    phi.log_value_ = [p](double u) { return p * std::log(u); };
    phi.a_phi_ = 0.0;
    phi.b_phi_ = kInf;
    fl = {true, true, p > 1.0, true, true};
    break;
  }
  case Family::ShiftedPower: {
    require_params(name, params, 2, 2);
    const double a = params[0];
    const double p = params[1];
    if (a < 0.0) throw ConstructionError(param_error(name, "shift a must be >= 0"));
    if (p < 1.0) throw ConstructionError(param_error(name, "exponent p must be >= 1"));
    phi.value_ = [a, p](double u) {
      if (u <= a) return 0.0;
      return p == 1.0 ? u - a : std::pow(u - a, p);
    };
    phi.log_value_ = [a, p](double u) { return u <= a ? kNegInf : p * std::log(u - a); };
    phi.a_phi_ = a;
    phi.b_phi_ = kInf;
    if (a > 0.0) {
      fl = {false, true, std::nullopt, false, true};
      phi.kinks_ = {a};
    } else {
      fl = {true, true, p > 1.0, true, true};
    }
    break;
  }
  case Family::ExpGap: {
    require_params(name, params, 0, 0);
    phi.value_ = exp_gap_value;
    phi.log_value_ = exp_gap_log;
    phi.a_phi_ = 0.0;
    phi.b_phi_ = kInf;
    fl = {true, false, true, true, true};
    break;
  }
  case Family::FlatZeroExp: {
    require_params(name, params, 0, 1);
    const double knee = params.empty() ? 0.5 : params[0];
    if (!(knee > 0.0) || knee > 0.5) {
      throw ConstructionError(param_error(name, "knee u* must lie in (0, 1/2] for convexity"));
    }
    const double at_knee = std::exp(-1.0 / knee);
    const double slope = at_knee / (knee * knee);
    phi.value_ = [=](double u) { return u <= knee ? std::exp(-1.0 / u) : at_knee + slope * (u - knee); };
    phi.log_value_ = [=](double u) { return u <= knee ? -1.0 / u : std::log(at_knee + slope * (u - knee)); };
    phi.a_phi_ = 0.0;
    phi.b_phi_ = kInf;
    phi.kinks_ = {knee};
    fl = {false, true, true, true, true};
    break;
  }
  case Family::CappedFinite: {
    require_params(name, params, 1, 1);
    const double b = params[0];
    if (!(b > 0.0)) throw ConstructionError(param_error(name, "cap b must be > 0"));
    phi.value_ = [](double u) { return u; };
    phi.log_value_ = [](double u) { return std::log(u); };
    phi.a_phi_ = 0.0;
    phi.b_phi_ = b;
    phi.kinks_ = {b};
    fl = {true, false, false, true, false};
    break;
  }
  case Family::CappedInfinite: {
    require_params(name, params, 1, 1);
    const double b = params[0];
    if (!(b > 0.0)) throw ConstructionError(param_error(name, "cap b must be > 0"));
    phi.value_ = [b](double u) { return u >= b ? kInf : u / (b - u); };
    phi.log_value_ = [b](double u) { return u >= b ? kInf : std::log(u) - std::log(b - u); };
    phi.a_phi_ = 0.0;
    phi.b_phi_ = b;
    phi.kinks_ = {b};
    fl = {true, false, false, true, false};
    break;
  }
  case Family::PiecewiseLinear: {
    if (params.size() < 2 || params.size() % 2 != 0) {
      throw ConstructionError(param_error(name, "expected breakpoint pairs u1,v1,u2,v2,..."));
    }
    require_params(name, params, 2, params.size());
    std::vector<double> us{0.0};
    std::vector<double> vs{0.0};
    for (std::size_t i = 0; i < params.size(); i += 2) {
      if (!(params[i] > us.back())) throw ConstructionError(param_error(name, "breakpoints must increase"));
      us.push_back(params[i]);
      vs.push_back(params[i + 1]);
    }
    std::vector<double> slopes;
    for (std::size_t i = 1; i < us.size(); ++i) {
      const double s = (vs[i] - vs[i - 1]) / (us[i] - us[i - 1]);
      if (s < 0.0) throw ConstructionError(param_error(name, "values must be nondecreasing"));
      if (!slopes.empty() && s < slopes.back() * (1.0 - 1e-14)) {
        throw ConstructionError(param_error(name, "slopes must be nondecreasing (convexity)"));
      }
      slopes.push_back(s);
    }
    if (!(slopes.back() > 0.0)) throw ConstructionError(param_error(name, "phi would vanish identically"));
    auto eval = [us, vs, slopes](double u) {
      const auto it = std::upper_bound(us.begin(), us.end(), u);
      const std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(it - us.begin()) - 1, slopes.size() - 1);
      return vs[i] + slopes[i] * (u - us[i]);
    };
    phi.value_ = eval;
    phi.log_value_ = [eval](double u) { return std::log(eval(u)); };
    std::size_t last_zero = 0;
    for (std::size_t i = 1; i < vs.size(); ++i) {
      if (vs[i] == 0.0) last_zero = i;
    }
    phi.a_phi_ = us[last_zero];
    phi.b_phi_ = kInf;
    phi.kinks_.assign(us.begin() + 1, us.end());
    const bool pos = phi.a_phi_ == 0.0;
    fl = {pos, true, pos ? std::optional<bool>(false) : std::nullopt, pos, true};
    break;
  }
  case Family::Custom:
    throw ConstructionError("use OrliczFunction::custom for custom evaluators");
  }

  phi.value_at_b_ = std::isfinite(phi.b_phi_) ? phi.value_(phi.b_phi_) : kInf;

  if (overrides.delta2_zero) fl.delta2_zero = overrides.delta2_zero;
  if (overrides.delta2_infinity) fl.delta2_infinity = overrides.delta2_infinity;
  if (overrides.condition_s) fl.condition_s = overrides.condition_s;
  if (overrides.positive) fl.positive = overrides.positive;
  if (overrides.finite) fl.finite = overrides.finite;

  validate_axioms(phi);
  return phi;
}

OrliczFunction make_family(std::string_view name, std::span<const double> params, OrliczFlags overrides) {
  return make_family(family_from_string(name), params, overrides);
}

void validate_axioms(const OrliczFunction& phi, int grid_points) {
  const std::string who = phi.tag();
  auto fail = [&](const std::string& what) { throw ConstructionError(who + ": " + what); };

  if (phi(0.0) != 0.0) fail("phi(0) != 0");

  // Log grid on [2^-30, 2^30], clipped to [0, b_phi], with extra points crowding b_phi.
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(grid_points) + 64);
  for (int i = 0; i < grid_points; ++i) {
    const double e = -30.0 + 60.0 * i / (grid_points - 1);
    const double u = std::exp2(e);
    if (u <= phi.b_phi()) grid.push_back(u);
  }
  const double b = phi.b_phi();
  if (std::isfinite(b)) {
    for (int k = 1; k <= 50; ++k) grid.push_back(b * (1.0 - std::exp2(-k)));
    grid.push_back(b);
  }
  for (double k : phi.kinks()) {
    if (k > 0.0 && k <= b) grid.push_back(k);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  std::vector<double> values(grid.size());
  bool any_positive = false;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    values[i] = phi(grid[i]);
    if (std::isnan(values[i]) || values[i] < 0.0) fail("phi negative or NaN");
    if (values[i] > 0.0) any_positive = true;
  }
  if (!any_positive) fail("phi vanishes identically on the sampled grid");

  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (values[i] < values[i - 1] * (1.0 - 1e-13)) fail("phi is not nondecreasing");
  }

  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    const double f0 = values[i - 1], f1 = values[i], f2 = values[i + 1];
    if (!std::isfinite(f2)) continue;
    const double u0 = grid[i - 1], u1 = grid[i], u2 = grid[i + 1];
    const double chord = ((u2 - u1) * f0 + (u1 - u0) * f2) / (u2 - u0);
    if (f1 > chord + 1e-12 * std::max(1.0, chord)) fail("phi is not convex on sampled triple");
  }

  if (std::isfinite(b)) {
    const double at_b = phi(b);
    const double near_b = phi(b * (1.0 - std::exp2(-50)));
    if (std::isfinite(at_b)) {
      if (std::abs(near_b - at_b) > 1e-6 * std::max(1.0, at_b)) fail("phi is not left continuous at b_phi");
    } else {
      const double mid = phi(b * 0.5);
      if (!(near_b > 1e6 * std::max(1.0, mid))) fail("phi(b_phi) = inf but phi stays bounded below b_phi");
    }
  }
}

DetectedParams detect_params(const OrliczFunction& phi) {
  constexpr double kLo = 0x1p-60;
  constexpr double kHi = 0x1p60;
  auto is_zero = [&](double u) { return phi.log_value(u) == -kInf; };
  auto is_finite = [&](double u) { return phi.log_value(u) < kInf; };

  DetectedParams out;
  if (!is_zero(kLo)) {
    out.a_hat = 0.0;
  } else {
    double lo = kLo, hi = 2.0 * kLo;
    while (is_zero(hi)) {
      lo = hi;
      hi *= 2.0;
      if (hi > kHi) throw DiagnosticError(phi.tag() + ": phi vanishes on the whole probe range");
    }
    while (hi - lo > 0x1p-48 * hi) {
      const double mid = 0.5 * (lo + hi);
      (is_zero(mid) ? lo : hi) = mid;
    }
    out.a_hat = 0.5 * (lo + hi);
  }

  if (is_finite(kHi)) {
    out.b_hat = kInf;
  } else {
    if (!is_finite(kLo)) throw DiagnosticError(phi.tag() + ": phi is infinite on the whole probe range");
    double lo = kLo, hi = kHi;
    while (hi - lo > 0x1p-48 * hi) {
      const double mid = 0.5 * (lo + hi);
      (is_finite(mid) ? lo : hi) = mid;
    }
    out.b_hat = 0.5 * (lo + hi);
  }

  auto agrees = [](double detected, double stored) {
    if (std::isinf(stored) || std::isinf(detected)) return detected == stored;
    if (stored == 0.0) return detected == 0.0;
    return std::abs(detected - stored) <= 0x1p-40 * stored;
  };
  if (!agrees(out.a_hat, phi.a_phi())) {
    std::ostringstream os;
    os << phi.tag() << ": detected a_phi " << out.a_hat << " disagrees with declared " << phi.a_phi();
    throw DiagnosticError(os.str());
  }
  if (!agrees(out.b_hat, phi.b_phi())) {
    std::ostringstream os;
    os << phi.tag() << ": detected b_phi " << out.b_hat << " disagrees with declared " << phi.b_phi();
    throw DiagnosticError(os.str());
  }
  return out;
}

} // namespace cesorl
