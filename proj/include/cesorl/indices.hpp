#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cesorl/funcrep.hpp"
#include "cesorl/modular.hpp"
#include "cesorl/orlicz.hpp"

namespace cesorl {

enum class Regime { Zero, Infinity, AllArgs };
std::string_view to_string(Regime r);
Regime regime_from_string(std::string_view s);

/// The regime matching the Delta_2 convention of a domain: Delta_2(inf) on
/// [0,1], Delta_2 for all arguments on [0,inf).
Regime regime_for(Domain d);

enum class Outcome { Holds, Fails, Undetermined };
std::string_view to_string(Outcome o);
Outcome outcome_from_string(std::string_view s);

struct RatioPoint {
  double u = 0.0;
  double ratio = 0.0; // phi(2u) / phi(u), possibly +inf
};

struct Delta2Report {
  Regime regime = Regime::AllArgs;
  Outcome verdict = Outcome::Undetermined;
  double k_hat = 0.0; // Holds: sampled sup of phi(2u)/phi(u)
  double u0 = 0.0;    // Holds: end of the sampled range next to the split point
  std::vector<RatioPoint> witness; // Fails: ratio_n >= 2^n, n = 1, 2, ...
  std::string grid;
  std::string note;
  std::vector<RatioPoint> curve; // every sampled (u, ratio), for plotting
};

struct Delta2Options {
  int grid_points = 1 << 12;
  int witness_terms = 64;
  bool cross_check = true; // DiagnosticError when a declared flag is contradicted
};

Delta2Report delta2_test(const OrliczFunction& phi, Regime regime, const Delta2Options& opt = {});

struct IndexEstimate {
  double alpha_hat = 0.0;
  double beta_hat = 0.0;
  double fit_residual = 0.0;
  bool determined = true;
  std::string note;
  std::vector<std::pair<double, double>> curve; // (s, M(s))
};

/// Slopes of ln M(s) against ln s, M(s) = sup_u phi(su) / phi(u), on
/// s = 2^-1..2^-10 (alpha) and s = 2..2^10 (beta).
IndexEstimate matuszewska_indices(const OrliczFunction& phi, int grid_points = 1024);

struct ConditionSReport {
  Outcome verdict = Outcome::Undetermined;
  double estimate = 0.0; // min of t phi'(t) / phi(t) over the smallest sampled decade
  std::string note;
};

ConditionSReport condition_S(const OrliczFunction& phi);

struct HardyReport {
  double alpha_hat = 0.0;
  double c_hat = 0.0;      // max ||x||_Ces / ||x||_phi over the corpus
  double c_hat_half = 0.0; // same over the first half
  bool stable = false; // c_hat grows by less than 5% from the first half to the full corpus
  bool bounded_consistent = false;
  std::vector<double> ratios;
  std::vector<std::pair<double, double>> witness; // (n, ||chi_[0,1/n)||_Ces / ||chi_[0,1/n)||_phi)
  bool unbounded_detected = false;
  int skipped = 0;
};

/// Empirical constant of C on L^phi over a corpus of step functions.
HardyReport hardy_probe(const OrliczFunction& phi, const std::vector<StepFunction>& corpus,
                        const NormOptions& opt = {});

} // namespace cesorl
