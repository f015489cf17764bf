#pragma once

#include <string>

#include "cesorl/extended.hpp"
#include "cesorl/funcrep.hpp"
#include "cesorl/orlicz.hpp"
#include "cesorl/quadrature.hpp"

namespace cesorl {

struct ModularOptions {
  QuadratureOptions quad;
  double divergence_threshold = 1e6; // M_div
  int stall_shells = 64;             // shells without decay before a tail is declared divergent
  int max_shells = 2048;
};

/// I_phi(f) = sum phi(c_k) m(A_k), exact up to the rounding of each term.
ExtendedValue modular_I(const OrliczFunction& phi, const StepFunction& f, const ModularOptions& opt = {});

/// I_phi(g) by per-piece adaptive quadrature; the tail S/t is integrated
/// after the substitution u = S/t.  Throws IndeterminateError when neither
/// convergence nor divergence can be established.
ExtendedValue modular_I(const OrliczFunction& phi, const PiecewiseHyperbolic& g, const ModularOptions& opt = {});

/// int_{t0}^inf phi(S/t) dt = int_0^{S/t0} phi(u) S / u^2 du.
ExtendedValue tail_integral(const OrliczFunction& phi, double mass, double start, const ModularOptions& opt = {});

/// rho_phi(x) = I_phi(C|x|).
ExtendedValue modular_rho(const OrliczFunction& phi, const StepFunction& x, const ModularOptions& opt = {});

enum class Space { Plain, Cesaro };
std::string_view to_string(Space s);
Space space_from_string(std::string_view s);

enum class NormStatus { Converged, Zero, Infinite };
std::string_view to_string(NormStatus s);
NormStatus norm_status_from_string(std::string_view s);

struct NormResult {
  double value = 0.0; // equals hi
  double lo = 0.0;
  double hi = 0.0;
  int iterations = 0;
  NormStatus status = NormStatus::Zero;
  std::string diagnostic;
};

struct NormOptions {
  ModularOptions modular;
  double rel_width = 1e-12; // stop once hi - lo <= rel_width * max(1, hi)
  int max_exponent = 60;    // bracket search over 2^-max .. 2^max
};

/// Luxemburg norm inf{lambda > 0 : modular(f / lambda) <= 1} by bisection.
NormResult luxemburg_norm(const OrliczFunction& phi, const StepFunction& f, Space space, const NormOptions& opt = {});
NormResult luxemburg_norm(const OrliczFunction& phi, const PiecewiseHyperbolic& g, const NormOptions& opt = {});

enum class MembershipKind { OrliczClass, OrliczSpace, CesSpace, CPhi };
std::string_view to_string(MembershipKind k);
MembershipKind membership_kind_from_string(std::string_view s);

enum class Verdict { Yes, No, Undetermined };
std::string_view to_string(Verdict v);

struct MembershipReport {
  MembershipKind kind = MembershipKind::OrliczClass;
  Verdict verdict = Verdict::Undetermined;
  double scale = 1.0; // the k (or 1/lambda) at which the verdict was settled
  ExtendedValue modular;
  std::string reason;
};

MembershipReport membership(const OrliczFunction& phi, const StepFunction& x, MembershipKind which,
                            const ModularOptions& opt = {});

} // namespace cesorl
