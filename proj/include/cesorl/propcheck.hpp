#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cesorl/funcrep.hpp"
#include "cesorl/indices.hpp"
#include "cesorl/modular.hpp"
#include "cesorl/orlicz.hpp"
#include "cesorl/witnesses.hpp"

namespace cesorl {

inline constexpr std::uint64_t kDefaultSeed = 0x5EED;

struct CorpusOptions {
  int size = 1000;
  int max_pieces = 16;
  std::uint64_t seed = kDefaultSeed;
};

/// Random nonnegative step functions: up to max_pieces pieces, endpoints
/// log-uniform and rounded to multiples of 2^-32, values log-uniform in
/// [2^-4, 2^4].  About a quarter of them start at 0.
std::vector<StepFunction> random_corpus(Domain domain, const CorpusOptions& opt = {});

struct DominatedPair {
  StepFunction small; // 0 <= small <= large, small != large
  StepFunction large;
};

/// Pairs y <= x obtained by scaling the pieces of a random x by factors in
/// [0, 0.95] (three quarters of the pieces) or 1; the heaviest piece is
/// always scaled down.
std::vector<DominatedPair> dominated_pairs(Domain domain, const CorpusOptions& opt = {});

/// chi_[0,eps) for eps = 1, 2^-10, 2^-20 and step approximations of
/// t^{-1/2} chi_[eps,1) with two pieces per octave, eps = 2^-20, 2^-40, 2^-60.
std::vector<StepFunction> hardy_shapes(Domain domain);

/// The seven named families: power 2, shifted_power (1,1), exp_gap,
/// flat_zero_exp, capped_finite 1, capped_infinite 1, piecewise linear (1,1),(2,3).
std::vector<OrliczFunction> named_families();

struct Theorem7Row {
  std::string phi_tag;
  Domain domain = Domain::HalfLine;
  Outcome delta2 = Outcome::Undetermined;
  std::string delta2_note;
  WitnessKind witness = WitnessKind::Undetermined;
  std::string case_tag;
  bool certified = false;   // every certificate of the witness holds
  bool consistent = false;  // Delta_2 holds <=> no witness, and witnesses certify
  bool undetermined = false;
  double alpha_hat = 0.0;
  bool hypothesis = false;  // alpha_hat > 1 and the Hardy probe is stable
  bool overridden = false;
  std::optional<bool> witness_in_space;
  std::string note;
};

struct Theorem7Options {
  WitnessOptions witness;
  /// Run rows whose Hardy hypothesis is not confirmed instead of throwing.
  bool override_hypothesis = false;
  int hardy_corpus = 16;
  std::uint64_t seed = kDefaultSeed;
};

/// One row per phi: Delta_2 verdict against OC-witness existence.  Throws
/// PreconditionError when the hypothesis fails and no override is given.
std::vector<Theorem7Row> theorem7_suite(const std::vector<OrliczFunction>& phis, Domain domain,
                                        const Theorem7Options& opt = {});

struct EpsilonPoint {
  double epsilon = 0.0;
  double delta_hat = kInf; // inf when no pair qualified
  int pairs = 0;
  double witness_delta = kInf; // from the constructed failure pair, when one exists
};

struct MonotonicityReport {
  std::string phi_tag;
  Domain domain = Domain::HalfLine;
  int pairs = 0;
  int skipped = 0;
  double sm_gap_min = kInf;          // min ||x|| - ||y|| over the corpus, ||x||_Ces = 1
  std::optional<double> witness_gap; // | ||v|| - ||u|| | for the a_phi > 0 witness pair
  std::vector<EpsilonPoint> curve;
  std::vector<double> per_x_delta;   // LLUM: min over y of 1 - ||x - y|| for each fixed x
  std::string witness_source;        // which construction produced the UM failure pair
  double witness_y_norm = 0.0;
  bool positive = false;
  bool delta2 = false;
  std::string note;
};

struct MonotonicityOptions {
  CorpusOptions corpus{200, 16, kDefaultSeed};
  std::vector<double> eps_grid{0.1, 0.25, 0.5};
  int llum_x = 8;
  int llum_y = 16;
  NormOptions norm;
  WitnessOptions witness;
};

MonotonicityReport monotonicity_suite(const OrliczFunction& phi, Domain domain, const MonotonicityOptions& opt = {});

/// "epsilon,delta_hat,pairs,witness_delta" rows.
std::string monotonicity_csv(const MonotonicityReport& rep);

struct MajorizationCertificate {
  double k = 1.0;
  double u0 = 0.0; // 0 on [0,inf): psi(u) <= phi(k u) for all u
  std::string case_tag; // "(i)" or "(ii)"
};

enum class EmbeddingVerdict { Embedded, Inconclusive };
std::string_view to_string(EmbeddingVerdict v);

struct EmbeddingReport {
  std::string phi_tag;
  std::string psi_tag;
  Domain domain = Domain::HalfLine;
  std::optional<MajorizationCertificate> certificate;
  double a_hat = 0.0;      // max ||x||_Ces(psi) / ||x||_Ces(phi)
  double a_hat_half = 0.0; // same over the first half of the corpus
  bool stable = false;     // a_hat grows by less than 5% from the first half to the full corpus
  int skipped = 0;
  EmbeddingVerdict verdict = EmbeddingVerdict::Inconclusive;
  std::string note;
};

/// Searches k, u0 in {1, 2, ..., 2^10} with psi(u) <= phi(k u) on a log grid
/// ([2^-40, 2^40] on [0,inf), [u0, 2^40] on [0,1]).
std::optional<MajorizationCertificate> find_majorization(const OrliczFunction& phi, const OrliczFunction& psi,
                                                         Domain domain);

EmbeddingReport embedding_suite(const OrliczFunction& phi, const OrliczFunction& psi, Domain domain,
                                const std::vector<StepFunction>& corpus, const NormOptions& opt = {},
                                std::optional<MajorizationCertificate> certificate = std::nullopt);

struct TailProbe {
  std::vector<double> n;     // A_n = [0,1/n) u [n,inf), or the union of series terms m >= n
  std::vector<double> plain; // ||f chi_{A_n}||_phi
  std::vector<double> ces;   // ||f chi_{A_n}||_Ces
  bool plain_vanishes = false;
  bool ces_vanishes = false;
};

struct LiftingReport {
  std::string phi_tag;
  Domain domain = Domain::HalfLine;
  bool vacuous = false;
  int functions = 0;
  int x_pass = 0;
  int cx_pass = 0;
  int implication_violations = 0; // X side passes but CX side does not
  int prop2_checked = 0;          // ||f* chi_[0,1/n)||_Ces >= ||f* chi_[0,1/n)||_phi on [0,1]
  int prop2_violations = 0;
  std::optional<TailProbe> witness_tails; // OC-failure series, when phi admits one
  std::string witness_case;
  std::string note;
  bool pass() const { return implication_violations == 0 && prop2_violations == 0; }
};

LiftingReport fact_lifting_probe(const OrliczFunction& phi, Domain domain, const std::vector<StepFunction>& corpus,
                                 const NormOptions& opt = {}, const WitnessOptions& wopt = {});

} // namespace cesorl
