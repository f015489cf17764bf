#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cesorl/extended.hpp"
#include "cesorl/funcrep.hpp"
#include "cesorl/indices.hpp"
#include "cesorl/modular.hpp"
#include "cesorl/orlicz.hpp"

namespace cesorl {

enum class WitnessKind { NonTriviality, OCFailure, SMFailure, NoWitnessFound, Undetermined };
std::string_view to_string(WitnessKind k);
WitnessKind witness_kind_from_string(std::string_view s);

/// What a certified value measures, evaluated at scale * elements[element].
enum class Quantity {
  ModularI,
  ModularRho,
  NormPlain,
  NormCesaro,
  TailIntegral, // int_{start}^inf phi(scale / t) dt with start = lo
  CesaroSup,    // max of C(element) over sample points in [lo, hi)
};
std::string_view to_string(Quantity q);
Quantity quantity_from_string(std::string_view s);

enum class Relation { Equal, AtLeast, AtMost, Infinite, Finite };
std::string_view to_string(Relation r);
Relation relation_from_string(std::string_view s);

struct CertifiedValue {
  std::string description;
  Quantity quantity = Quantity::ModularI;
  int element = 0;
  double scale = 1.0;
  Relation relation = Relation::Equal;
  double expected = 0.0;
  double tolerance = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  ExtendedValue value;             // modular/tail/sup outcome, or the norm as a finite value
  std::optional<NormResult> norm;  // set for NormPlain / NormCesaro
  std::string provenance;          // "exact_sum", "quadrature", "termwise", "bisection", "sampled"
  bool holds = false;
};

/// Exact record of a truncated series sum_n u_n chi_{A_n} with
/// m(A_n) = 1 / (2^n phi(u_n)); rationals are written as "p/q".
struct SeriesTerm {
  double u = 0.0;
  double phi_u = 0.0;
  double phi_2u = 0.0;
  std::string measure; // exact rational
  double left = 0.0;   // interval as placed in the step function
  double right = 0.0;
};

struct Truncation {
  int n = 0;
  std::string remainder;        // exact rational 2^-N
  std::string modular_exact;    // exact rational I_phi(x_N)
  std::string doubled_exact;    // exact rational lower bound sum phi(2u_n) m(A_n) (termwise cases)
  std::vector<SeriesTerm> terms;
};

struct WitnessReport {
  WitnessKind kind = WitnessKind::NoWitnessFound;
  std::string case_tag;
  Domain domain = Domain::HalfLine;
  std::string phi_tag;
  std::vector<StepFunction> elements;
  std::vector<std::string> element_names;
  std::vector<CertifiedValue> certified;
  std::optional<Truncation> truncation;
  std::map<std::string, double> parameters;
  std::optional<bool> nontrivial;
  std::string note;

  bool all_hold() const;
};

struct WitnessOptions {
  ModularOptions modular;
  NormOptions norm;
  Delta2Options delta2;
  int truncation = 30;
  std::string force_case;          // empty: dispatch as the proof does
  std::optional<double> b0;        // strict monotonicity witness on [0,1]
  double root_tol = 1e-12;
};

WitnessReport nontriviality(const OrliczFunction& phi, Domain domain, const WitnessOptions& opt = {});

/// Failure of order continuity: x with I_phi(x) <= 1 and rho_phi(2x) = inf.
/// Case tags: "I(1)".."I(4)" on [0,inf), "II(1)".."II(3)" on [0,1].
WitnessReport oc_failure_witness(const OrliczFunction& phi, Domain domain, const WitnessOptions& opt = {});

/// Failure of strict monotonicity when a_phi > 0: 0 <= u <= v, u != v, ||u|| = ||v|| = 1.
WitnessReport sm_failure_witness(const OrliczFunction& phi, Domain domain, const WitnessOptions& opt = {});

struct ApproximationStep {
  double n = 0.0;
  double distance = 0.0;  // ||x - x chi_[1/n, n)||_Ces
  double tail_plain = 0.0; // ||x chi_{[0,1/n) u [n,inf)}||_phi
};

struct ApproximationTrace {
  std::vector<ApproximationStep> steps;
  bool nonincreasing = true;
  bool converged = false;
};

/// ||x - x_n||_Ces for x_n = x chi_[1/n, n), n = 2, 4, ...; requires x in C_phi.
ApproximationTrace oc_approximation(const OrliczFunction& phi, const StepFunction& x, const NormOptions& opt = {},
                                    int max_k = 48, double target = 1e-6);

/// Recomputes one certified value from the raw element and sets `holds`.
void evaluate_certificate(const OrliczFunction& phi, const std::vector<StepFunction>& elements, CertifiedValue& cv,
                          const WitnessOptions& opt = {});

} // namespace cesorl
