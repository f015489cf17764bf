#include "cesorl/funcrep.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cesorl/error.hpp"
#include "cesorl/extended.hpp"

namespace cesorl {

std::string_view to_string(Domain d) { return d == Domain::UnitInterval ? "unit" : "halfline"; }

Domain domain_from_string(std::string_view s) {
  if (s == "unit" || s == "unit_interval" || s == "[0,1]") return Domain::UnitInterval;
  if (s == "halfline" || s == "half_line" || s == "[0,inf)") return Domain::HalfLine;
  throw ParseError("unknown domain '" + std::string(s) + "' (expected unit or halfline)");
}

double domain_end(Domain d) { return d == Domain::UnitInterval ? 1.0 : kInf; }

StepFunction::StepFunction(Domain domain, std::vector<StepPiece> pieces) : domain_(domain), pieces_(std::move(pieces)) {
  const double end = domain_end(domain_);
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    auto& p = pieces_[i];
    if (!std::isfinite(p.left) || !std::isfinite(p.right) || !std::isfinite(p.value)) {
      throw ConstructionError("step piece with non-finite data");
    }
    if (p.left < 0.0 || !(p.left < p.right)) {
      std::ostringstream os;
      os << "step piece [" << p.left << ", " << p.right << ") is empty or starts below 0";
      throw ConstructionError(os.str());
    }
    if (p.right > end) throw ConstructionError("step piece leaves the unit interval");
    if (i > 0 && p.left < pieces_[i - 1].right) throw ConstructionError("step pieces overlap or are unsorted");
    p.value = std::abs(p.value);
  }
  normalize();
}

StepFunction StepFunction::indicator(Domain domain, double left, double right, double value) {
  return StepFunction(domain, {{left, right, value}});
}

void StepFunction::normalize() {
  std::vector<StepPiece> out;
  out.reserve(pieces_.size());
  for (const auto& p : pieces_) {
    if (p.value == 0.0) continue;
    if (!out.empty() && out.back().right == p.left && out.back().value == p.value) {
      out.back().right = p.right;
    } else {
      out.push_back(p);
    }
  }
  pieces_ = std::move(out);
}

double StepFunction::operator()(double t) const {
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), t,
                             [](double x, const StepPiece& p) { return x < p.right; });
  if (it != pieces_.end() && it->left <= t) return it->value;
  return 0.0;
}

double StepFunction::max_value() const {
  double m = 0.0;
  for (const auto& p : pieces_) m = std::max(m, p.value);
  return m;
}

double StepFunction::support_measure() const {
  double m = 0.0;
  for (const auto& p : pieces_) m += p.right - p.left;
  return m;
}

double StepFunction::integral() const {
  double s = 0.0;
  for (const auto& p : pieces_) s += p.value * (p.right - p.left);
  return s;
}

double StepFunction::support_end() const { return pieces_.empty() ? 0.0 : pieces_.back().right; }

StepFunction StepFunction::scaled(double k) const {
  StepFunction out(domain_);
  if (k == 0.0) return out;
  out.pieces_ = pieces_;
  for (auto& p : out.pieces_) p.value *= std::abs(k);
  out.normalize();
  return out;
}

StepFunction StepFunction::restricted(double lo, double hi) const {
  StepFunction out(domain_);
  for (const auto& p : pieces_) {
    const double l = std::max(p.left, lo);
    const double r = std::min(p.right, hi);
    if (l < r) out.pieces_.push_back({l, r, p.value});
  }
  out.normalize();
  return out;
}

StepFunction StepFunction::restricted_outside(double lo, double hi) const {
  StepFunction out(domain_);
  for (const auto& p : pieces_) {
    if (p.left < lo) out.pieces_.push_back({p.left, std::min(p.right, lo), p.value});
    if (p.right > hi) out.pieces_.push_back({std::max(p.left, hi), p.right, p.value});
  }
  out.normalize();
  return out;
}

namespace {

template <class Op>
StepFunction combine(const StepFunction& f, const StepFunction& g, Op op) {
  if (f.domain() != g.domain()) throw DomainError("step functions live on different domains");
  std::vector<double> knots;
  for (const auto* h : {&f, &g}) {
    for (const auto& p : h->pieces()) {
      knots.push_back(p.left);
      knots.push_back(p.right);
    }
  }
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
  std::vector<StepPiece> out;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double l = knots[i], r = knots[i + 1];
    const double v = op(f(l), g(l));
    if (v != 0.0) out.push_back({l, r, v});
  }
  return StepFunction(f.domain(), std::move(out));
}

} // namespace

StepFunction operator+(const StepFunction& f, const StepFunction& g) {
  return combine(f, g, [](double x, double y) { return x + y; });
}

StepFunction abs_difference(const StepFunction& f, const StepFunction& g) {
  return combine(f, g, [](double x, double y) { return std::abs(x - y); });
}

bool dominated_by(const StepFunction& f, const StepFunction& g, double rel_slack) {
  bool ok = true;
  combine(f, g, [&](double x, double y) {
    if (x > y * (1.0 + rel_slack)) ok = false;
    return 0.0;
  });
  return ok;
}

double distribution(const StepFunction& f, double lambda) {
  if (!(lambda > 0.0)) throw DomainError("distribution needs lambda > 0");
  double m = 0.0;
  for (const auto& p : f.pieces()) {
    if (p.value > lambda) m += p.right - p.left;
  }
  return m;
}

StepFunction rearrangement(const StepFunction& f) {
  std::vector<StepPiece> sorted = f.pieces();
  std::stable_sort(sorted.begin(), sorted.end(), [](const StepPiece& a, const StepPiece& b) { return a.value > b.value; });
  std::vector<StepPiece> out;
  out.reserve(sorted.size());
  double pos = 0.0;
  for (const auto& p : sorted) {
    const double len = p.right - p.left;
    out.push_back({pos, pos + len, p.value});
    pos += len;
  }
  return StepFunction(f.domain(), std::move(out));
}

StepFunction dilate(const StepFunction& f, double s) {
  if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("dilation needs a finite s > 0");
  const double end = domain_end(f.domain());
  std::vector<StepPiece> out;
  for (const auto& p : f.pieces()) {
    const double l = p.left * s;
    const double r = std::min(p.right * s, end);
    if (l < r) out.push_back({l, r, p.value});
  }
  return StepFunction(f.domain(), std::move(out));
}

std::string to_csv(const StepFunction& f) {
  std::ostringstream os;
  os.precision(17);
  os << "left,right,value\n";
  for (const auto& p : f.pieces()) os << p.left << ',' << p.right << ',' << p.value << '\n';
  return os.str();
}

PiecewiseHyperbolic::PiecewiseHyperbolic(Domain domain, std::vector<HyperbolicPiece> pieces,
                                         std::optional<HyperbolicTail> tail)
    : domain_(domain), pieces_(std::move(pieces)), tail_(tail) {
  if (tail_ && domain_ == Domain::UnitInterval) throw ConstructionError("hyperbolic tail needs the half line");
  auto at = [](const HyperbolicPiece& p, double t) { return p.b == 0.0 ? p.a : p(t); };
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const auto& p = pieces_[i];
    if (!(p.left >= 0.0) || !(p.left < p.right) || !std::isfinite(p.right)) {
      throw ConstructionError("hyperbolic piece with empty or invalid interval");
    }
    if (i > 0 && p.left < pieces_[i - 1].right) throw ConstructionError("hyperbolic pieces overlap");
    const double vr = at(p, p.right);
    const double vl = p.left > 0.0 ? at(p, p.left) : (p.b == 0.0 ? p.a : (p.b > 0.0 ? kInf : -kInf));
    const double scale = std::max({1.0, std::abs(p.a), std::abs(vr)});
    if (vl < -1e-12 * scale || vr < -1e-12 * scale) throw ConstructionError("hyperbolic piece takes negative values");
    if (i > 0 && pieces_[i - 1].right == p.left && p.left > 0.0) {
      const auto& q = pieces_[i - 1];
      const double prev = at(q, p.left);
      const double scale = std::max({1.0, std::abs(prev), std::abs(vl), std::abs(q.a), std::abs(q.b) / p.left});
      if (std::abs(prev - vl) > 1e-12 * scale) {
        throw ConstructionError("hyperbolic pieces are discontinuous at an internal knot");
      }
    }
  }
  if (tail_) {
    if (!(tail_->start > 0.0) || !(tail_->mass >= 0.0)) throw ConstructionError("invalid hyperbolic tail");
    if (!pieces_.empty() && pieces_.back().right == tail_->start) {
      const auto& q = pieces_.back();
      const double prev = at(q, tail_->start);
      const double next = tail_->mass / tail_->start;
      const double scale = std::max({1.0, std::abs(prev), std::abs(next), std::abs(q.a), std::abs(q.b) / tail_->start});
      if (std::abs(prev - next) > 1e-12 * scale) {
        throw ConstructionError("hyperbolic tail is discontinuous at its start");
      }
    }
  }
}

double PiecewiseHyperbolic::operator()(double t) const {
  if (!(t > 0.0)) throw DomainError("Cesaro mean evaluated at t <= 0");
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), t,
                             [](double x, const HyperbolicPiece& p) { return x < p.right; });
  if (it != pieces_.end() && it->left <= t) return it->b == 0.0 ? it->a : (*it)(t);
  if (tail_ && t >= tail_->start) return tail_->mass / t;
  return 0.0;
}

PiecewiseHyperbolic PiecewiseHyperbolic::scaled(double k) const {
  PiecewiseHyperbolic out = *this;
  for (auto& p : out.pieces_) {
    p.a *= k;
    p.b *= k;
    p.mass *= k;
  }
  if (out.tail_) out.tail_->mass *= k;
  return out;
}

double PiecewiseHyperbolic::sup_on(double lo, double hi) const {
  double best = 0.0;
  for (const auto& p : pieces_) {
    const double l = std::max(p.left, lo);
    const double r = std::min(p.right, hi);
    if (!(l < r)) continue;
    if (p.b == 0.0) {
      best = std::max(best, p.a);
    } else if (l == 0.0) {
      if (p.b > 0.0) return kInf;
      best = std::max(best, p(r));
    } else {
      best = std::max({best, p(l), p(r)});
    }
  }
  if (tail_) {
    const double l = std::max(tail_->start, lo);
    if (l < hi) best = std::max(best, tail_->mass / l);
  }
  return best;
}

} // namespace cesorl
