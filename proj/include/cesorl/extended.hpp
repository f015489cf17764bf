#pragma once

#include <limits>
#include <string>
#include <string_view>

namespace cesorl {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Evidence attached to an infinite modular value.
enum class Certificate {
  None,
  /// The argument exceeds b_phi (or equals it with phi(b_phi) = inf) on a set of positive measure.
  PositiveMeasureAboveB,
  /// Partial integrals of a tail grow without decay or exceed the divergence threshold.
  TailLowerBound,
  /// A sum of termwise lower bounds, each at least one, or exceeding the threshold.
  TermwiseLowerBound,
};

std::string_view to_string(Certificate c);
Certificate certificate_from_string(std::string_view s);

/// Nonnegative real or certified +inf.
///
/// Finite values carry an absolute error bound.  Infinite values carry a
/// certificate; `value` then holds the largest lower bound that was
/// established before divergence was declared (possibly +inf).
struct ExtendedValue {
  double value = 0.0;
  double abs_error = 0.0;
  Certificate certificate = Certificate::None;
  std::string reason;

  static ExtendedValue finite(double v, double err = 0.0) { return {v, err, Certificate::None, {}}; }
  static ExtendedValue infinite(Certificate c, std::string why, double lower_bound = kInf) {
    return {lower_bound, 0.0, c, std::move(why)};
  }

  [[nodiscard]] bool is_finite() const { return certificate == Certificate::None; }
  [[nodiscard]] bool is_infinite() const { return !is_finite(); }

  /// Value usable in comparisons: +inf when infinite.
  [[nodiscard]] double as_double() const { return is_finite() ? value : kInf; }
};

/// Saturating sum; the first certificate wins.
ExtendedValue operator+(const ExtendedValue& lhs, const ExtendedValue& rhs);

} // namespace cesorl
