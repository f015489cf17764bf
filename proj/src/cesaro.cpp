#include "cesorl/cesaro.hpp"

#include <vector>

namespace cesorl {

PiecewiseHyperbolic cesaro_mean(const StepFunction& x) {
  std::vector<HyperbolicPiece> pieces;
  pieces.reserve(2 * x.pieces().size() + 1);
  double t = 0.0;
  double mass = 0.0;
  for (const auto& p : x.pieces()) {
    if (p.left > t) pieces.push_back({t, p.left, 0.0, mass, mass});
    pieces.push_back({p.left, p.right, p.value, mass - p.value * p.left, mass});
    mass += p.value * (p.right - p.left);
    t = p.right;
  }
  if (x.domain() == Domain::UnitInterval) {
    if (t < 1.0) pieces.push_back({t, 1.0, 0.0, mass, mass});
    return PiecewiseHyperbolic(Domain::UnitInterval, std::move(pieces), std::nullopt);
  }
  if (mass == 0.0) return PiecewiseHyperbolic(Domain::HalfLine, {}, std::nullopt);
  return PiecewiseHyperbolic(Domain::HalfLine, std::move(pieces), HyperbolicTail{t, mass});
}

double eval_C(const PiecewiseHyperbolic& g, double t) { return g(t); }

} // namespace cesorl
