#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cesorl {

/// The two underlying measure spaces, [0,1] and [0,inf).
enum class Domain { UnitInterval, HalfLine };

std::string_view to_string(Domain d);
Domain domain_from_string(std::string_view s);

/// Right end of the domain: 1 or +inf.
double domain_end(Domain d);

struct StepPiece {
  double left = 0.0;
  double right = 0.0;
  double value = 0.0;

  friend bool operator==(const StepPiece&, const StepPiece&) = default;
};

/// Finite simple function sum_k c_k chi_[l_k, r_k) with c_k >= 0.
///
/// Values are stored as |c_k|; zero pieces are dropped and touching pieces
/// with equal values are merged, so equal functions compare equal.
class StepFunction {
public:
  StepFunction() = default;
  explicit StepFunction(Domain domain) : domain_(domain) {}
  /// Throws ConstructionError on unsorted/overlapping/empty pieces, non-finite
  /// data, or pieces leaving the domain.
  StepFunction(Domain domain, std::vector<StepPiece> pieces);

  static StepFunction indicator(Domain domain, double left, double right, double value = 1.0);

  Domain domain() const { return domain_; }
  const std::vector<StepPiece>& pieces() const { return pieces_; }
  bool is_zero() const { return pieces_.empty(); }

  double operator()(double t) const;
  double max_value() const;
  double support_measure() const;
  double integral() const;
  /// Right end of the last piece (0 for the zero function).
  double support_end() const;

  StepFunction scaled(double k) const;
  /// f * chi_[lo, hi)
  StepFunction restricted(double lo, double hi) const;
  /// f * chi_{complement of [lo, hi)}
  StepFunction restricted_outside(double lo, double hi) const;

  friend StepFunction operator+(const StepFunction& f, const StepFunction& g);
  /// |f - g|, pointwise.
  friend StepFunction abs_difference(const StepFunction& f, const StepFunction& g);
  /// f <= g everywhere (up to a relative slack).
  friend bool dominated_by(const StepFunction& f, const StepFunction& g, double rel_slack);

  friend bool operator==(const StepFunction&, const StepFunction&) = default;

private:
  void normalize();

  Domain domain_ = Domain::HalfLine;
  std::vector<StepPiece> pieces_;
};

/// d_f(lambda) = m{t : |f(t)| > lambda}.
double distribution(const StepFunction& f, double lambda);

/// Nonincreasing rearrangement f*, supported on [0, m(supp f)).
StepFunction rearrangement(const StepFunction& f);

/// D_s f(t) = f(t/s) chi_I(t/s), clipped to the domain.
StepFunction dilate(const StepFunction& f, double s);

/// Rows "left,right,value" with a header.
std::string to_csv(const StepFunction& f);

/// t -> a + b / t on [left, right).
///
/// `mass` is the value a * left + b (the accumulated integral at `left` for
/// a Cesaro image); evaluation uses (mass + a (t - left)) / t, which avoids
/// the cancellation in a + b / t when left >> right - left.
struct HyperbolicPiece {
  double left = 0.0;
  double right = 0.0;
  double a = 0.0;
  double b = 0.0;
  double mass = 0.0;

  static HyperbolicPiece from_coefficients(double left, double right, double a, double b) {
    return {left, right, a, b, a * left + b};
  }
  double operator()(double t) const { return left > 0.0 ? (mass + a * (t - left)) / t : a + b / t; }
};

struct HyperbolicTail {
  double start = 0.0; // t0
  double mass = 0.0;  // S: t -> S / t on [t0, inf)
};

/// Functions of the form a_k + b_k / t on consecutive intervals, optionally
/// followed by S / t on [t0, inf).  This is exactly the image of a step
/// function under the Cesaro operator.
class PiecewiseHyperbolic {
public:
  PiecewiseHyperbolic() = default;
  /// Validates continuity at internal knots and nonnegativity on each piece.
  PiecewiseHyperbolic(Domain domain, std::vector<HyperbolicPiece> pieces, std::optional<HyperbolicTail> tail);

  Domain domain() const { return domain_; }
  const std::vector<HyperbolicPiece>& pieces() const { return pieces_; }
  const std::optional<HyperbolicTail>& tail() const { return tail_; }

  /// Exact evaluation; 0 beyond the represented range.  Throws DomainError for t <= 0.
  double operator()(double t) const;

  PiecewiseHyperbolic scaled(double k) const;

  /// sup of the function on [lo, hi), using monotonicity of every piece.
  double sup_on(double lo, double hi) const;

private:
  Domain domain_ = Domain::HalfLine;
  std::vector<HyperbolicPiece> pieces_;
  std::optional<HyperbolicTail> tail_;
};

} // namespace cesorl
