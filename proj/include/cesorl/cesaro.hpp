#pragma once

#include "cesorl/funcrep.hpp"

namespace cesorl {

/// (Cx)(t) = (1/t) * integral_0^t |x(s)| ds, exact on step functions.
///
/// On a piece where x = c with accumulated mass S at its left end t0 the
/// image is c + (S - c t0) / t.  Gaps contribute S / t.  On the half line
/// the result ends with the tail S_total / t.
PiecewiseHyperbolic cesaro_mean(const StepFunction& x);

/// Pointwise evaluation of a Cesaro image; t <= 0 is a DomainError.
double eval_C(const PiecewiseHyperbolic& g, double t);

} // namespace cesorl
