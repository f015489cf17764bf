#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cesorl {

enum class Family {
  Power,          // u^p, p >= 1
  ShiftedPower,   // ((u - a)_+)^p
  ExpGap,         // e^u - u - 1
  FlatZeroExp,    // e^{-1/u} up to u*, tangent line above
  CappedFinite,   // u on [0, b], inf above
  CappedInfinite, // u / (b - u) on [0, b), inf from b on
  PiecewiseLinear,
  Custom,
};

std::string_view to_string(Family f);
Family family_from_string(std::string_view name);

/// Analytic facts a constructor may declare.  The samplers in indices.hpp
/// must reproduce them; a disagreement is reported as a DiagnosticError.
struct OrliczFlags {
  std::optional<bool> delta2_zero;
  std::optional<bool> delta2_infinity;
  std::optional<bool> condition_s;
  std::optional<bool> positive; // a_phi == 0
  std::optional<bool> finite;   // b_phi == inf
};

/// Convex, nondecreasing, left-continuous phi : [0, inf) -> [0, inf] with phi(0) = 0.
///
/// Values above b_phi are +inf.  Instances are immutable and cheap to copy.
class OrliczFunction {
public:
  using Evaluator = std::function<double(double)>;

  /// Wraps a black-box evaluator.  The axioms are checked on a sampled grid
  /// and a ConstructionError is thrown on the first violation.
  static OrliczFunction custom(Evaluator value, double a_phi, double b_phi, OrliczFlags flags = {},
                               std::vector<double> kinks = {}, Evaluator log_value = {});

  double operator()(double u) const;

  /// ln phi(u); -inf where phi vanishes, +inf above b_phi.  Families supply
  /// closed forms that stay accurate where phi itself under- or overflows.
  double log_value(double u) const;

  double a_phi() const { return a_phi_; }
  double b_phi() const { return b_phi_; }
  double value_at_b() const { return value_at_b_; }

  /// phi > 0 on (0, inf), i.e. a_phi = 0.
  bool positive() const { return a_phi_ == 0.0; }
  /// phi < inf everywhere, i.e. b_phi = inf.
  bool finite_valued() const;
  /// b_phi < inf and phi(b_phi) = inf.
  bool infinite_at_b() const;

  const OrliczFlags& flags() const { return flags_; }
  Family family() const { return family_; }
  const std::vector<double>& params() const { return params_; }
  /// Arguments where phi is not smooth; quadrature splits at them.
  std::span<const double> kinks() const { return kinks_; }

  /// "power:2", "shifted_power:1,1", "custom", ...
  std::string tag() const;

private:
  OrliczFunction() = default;
  friend OrliczFunction make_family(Family, std::span<const double>, OrliczFlags);

  Evaluator value_;
  Evaluator log_value_;
  double a_phi_ = 0.0;
  double b_phi_ = 0.0;
  double value_at_b_ = 0.0;
  OrliczFlags flags_;
  Family family_ = Family::Custom;
  std::vector<double> params_;
  std::vector<double> kinks_;
};

/// Builds a named family.  `overrides` replaces individual declared flags.
OrliczFunction make_family(Family family, std::span<const double> params, OrliczFlags overrides = {});
OrliczFunction make_family(std::string_view name, std::span<const double> params, OrliczFlags overrides = {});

/// Checks phi(0) = 0, monotonicity, midpoint convexity on adjacent sampled
/// triples and left continuity at b_phi.  Throws ConstructionError.
void validate_axioms(const OrliczFunction& phi, int grid_points = 1024);

struct DetectedParams {
  double a_hat = 0.0;
  double b_hat = 0.0;
};

/// Recovers a_phi and b_phi by bisection on the monotone predicates
/// phi(u) = 0 and phi(u) < inf.  Throws DiagnosticError if they disagree
/// with the stored values beyond a relative 2^-40.
DetectedParams detect_params(const OrliczFunction& phi);

/// Parses "name:p1,p2,..." or a JSON object {"family", "params", "flags"}.
/// Defined in serialize.cpp.
OrliczFunction parse_phi(std::string_view spec);

} // namespace cesorl
