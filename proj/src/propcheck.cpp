#include "cesorl/propcheck.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "cesorl/error.hpp"

namespace cesorl {

namespace {

double u01(std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

double log_uniform(std::mt19937_64& g, double lo_exp, double hi_exp) {
  return std::exp2(lo_exp + (hi_exp - lo_exp) * u01(g));
}

double quantize(double t) { return std::ldexp(std::round(std::ldexp(t, 32)), -32); }

StepFunction random_step(Domain domain, int max_pieces, std::mt19937_64& g) {
  const bool unit = domain == Domain::UnitInterval;
  while (true) {
    const int k = 1 + static_cast<int>(u01(g) * max_pieces);
    std::vector<double> pts;
    for (int i = 0; i <= k; ++i) {
      double t = unit ? log_uniform(g, -24.0, 0.0) : log_uniform(g, -12.0, 12.0);
      t = quantize(t);
      if (t > 0.0) pts.push_back(t);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (u01(g) < 0.25 && !pts.empty()) pts.front() = 0.0;
    if (pts.size() < 2) continue;
    std::vector<StepPiece> pieces;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      const bool gap = u01(g) < 0.2;
      const double v = log_uniform(g, -4.0, 4.0);
      if (!gap) pieces.push_back({pts[i], pts[i + 1], v});
    }
    if (pieces.empty()) continue;
    return StepFunction(domain, std::move(pieces));
  }
}

StepFunction scale_down(const StepFunction& x, std::mt19937_64& g) {
  auto pieces = x.pieces();
  std::size_t heaviest = 0;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const auto& p = pieces[i];
    const auto& h = pieces[heaviest];
    if (p.value * (p.right - p.left) > h.value * (h.right - h.left)) heaviest = i;
  }
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const bool keep = i != heaviest && u01(g) < 0.25;
    if (!keep) pieces[i].value *= 0.95 * u01(g);
  }
  return StepFunction(x.domain(), std::move(pieces));
}

std::optional<double> ces_norm(const OrliczFunction& phi, const StepFunction& f, const NormOptions& opt,
                               Space space = Space::Cesaro) {
  try {
    const auto r = luxemburg_norm(phi, f, space, opt);
    if (r.status == NormStatus::Zero) return 0.0;
    if (r.status == NormStatus::Infinite) return std::nullopt;
    return r.value;
  } catch (const IndeterminateError&) {
    return std::nullopt;
  }
}

/// Union of the series terms with index >= n (1-based) as placed in x_N.
StepFunction series_tail(const StepFunction& x, const Truncation& tr, int n) {
  StepFunction out(x.domain());
  for (int m = std::max(n, 1); m <= static_cast<int>(tr.terms.size()); ++m) {
    const auto& t = tr.terms[static_cast<std::size_t>(m - 1)];
    out = out + x.restricted(t.left, t.right);
  }
  return out;
}

bool vanishes(const std::vector<double>& seq) {
  if (seq.empty()) return true;
  for (std::size_t i = 1; i < seq.size(); ++i) {
    if (seq[i] > seq[i - 1] * (1.0 + 1e-9) + 1e-300) return false;
  }
  return seq.back() == 0.0 || seq.back() <= 0.1 * seq.front();
}

} // namespace

std::vector<StepFunction> random_corpus(Domain domain, const CorpusOptions& opt) {
  std::mt19937_64 g(opt.seed);
  std::vector<StepFunction> out;
  out.reserve(static_cast<std::size_t>(std::max(opt.size, 0)));
  for (int i = 0; i < opt.size; ++i) out.push_back(random_step(domain, opt.max_pieces, g));
  return out;
}

std::vector<DominatedPair> dominated_pairs(Domain domain, const CorpusOptions& opt) {
  std::mt19937_64 g(opt.seed ^ 0x9E3779B97F4A7C15ULL);
  std::vector<DominatedPair> out;
  while (static_cast<int>(out.size()) < opt.size) {
    auto x = random_step(domain, opt.max_pieces, g);
    auto y = scale_down(x, g);
    if (y == x) continue;
    out.push_back({std::move(y), std::move(x)});
  }
  return out;
}

std::vector<StepFunction> hardy_shapes(Domain domain) {
  std::vector<StepFunction> out;
  for (int k : {0, 10, 20}) out.push_back(StepFunction::indicator(domain, 0.0, std::ldexp(1.0, -k)));
  for (int octaves : {20, 40, 60}) {
    std::vector<StepPiece> pieces;
    for (int j = 2 * octaves - 1; j >= 0; --j) {
      const double l = std::exp2(-0.5 * (j + 1));
      const double r = std::exp2(-0.5 * j);
      pieces.push_back({l, r, 1.0 / std::sqrt(std::sqrt(l * r))});
    }
    out.emplace_back(domain, std::move(pieces));
  }
  return out;
}

std::vector<OrliczFunction> named_families() {
  const double two[] = {2.0};
  const double shift[] = {1.0, 1.0};
  const double one[] = {1.0};
  const double pwl[] = {1.0, 1.0, 2.0, 3.0};
  return {make_family(Family::Power, two),        make_family(Family::ShiftedPower, shift),
          make_family(Family::ExpGap, {}),        make_family(Family::FlatZeroExp, {}),
          make_family(Family::CappedFinite, one), make_family(Family::CappedInfinite, one),
          make_family(Family::PiecewiseLinear, pwl)};
}

std::vector<Theorem7Row> theorem7_suite(const std::vector<OrliczFunction>& phis, Domain domain,
                                        const Theorem7Options& opt) {
  std::vector<Theorem7Row> rows;
  for (const auto& phi : phis) {
    Theorem7Row row;
    row.phi_tag = phi.tag();
    row.domain = domain;

    const auto corpus = random_corpus(domain, {opt.hardy_corpus, 8, opt.seed});
    try {
      const auto hp = hardy_probe(phi, corpus, opt.witness.norm);
      row.alpha_hat = hp.alpha_hat;
      row.hypothesis = hp.bounded_consistent;
    } catch (const Error& e) {
      row.note = std::string("Hardy probe failed: ") + e.what();
    }
    if (!row.hypothesis) {
      if (!opt.override_hypothesis) {
        throw PreconditionError(row.phi_tag + ": boundedness of C on L^phi is not confirmed (alpha_hat = " +
                                std::to_string(row.alpha_hat) + "); pass the override to run anyway");
      }
      row.overridden = true;
    }

    const auto d2 = delta2_test(phi, regime_for(domain), opt.witness.delta2);
    row.delta2 = d2.verdict;
    row.delta2_note = d2.note;
    const auto w = oc_failure_witness(phi, domain, opt.witness);
    row.witness = w.kind;
    row.case_tag = w.case_tag;
    row.certified = w.all_hold();
    if (auto it = w.parameters.find("x_in_ces_space"); it != w.parameters.end()) row.witness_in_space = it->second != 0.0;
    if (!w.note.empty()) row.note += (row.note.empty() ? "" : "; ") + w.note;

    if (d2.verdict == Outcome::Undetermined || w.kind == WitnessKind::Undetermined) {
      row.undetermined = true;
      row.consistent = false;
    } else {
      const bool holds = d2.verdict == Outcome::Holds;
      const bool none = w.kind == WitnessKind::NoWitnessFound;
      row.consistent = holds == none && (none || row.certified);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

MonotonicityReport monotonicity_suite(const OrliczFunction& phi, Domain domain, const MonotonicityOptions& opt) {
  MonotonicityReport rep;
  rep.phi_tag = phi.tag();
  rep.domain = domain;
  rep.positive = phi.positive();
  Delta2Options d2opt = opt.witness.delta2;
  d2opt.cross_check = false;
  rep.delta2 = delta2_test(phi, regime_for(domain), d2opt).verdict == Outcome::Holds;
  rep.note = "UM is tested in the form ||x - y|| <= 1 - delta(eps) for 0 <= y <= x, ||x|| = 1, ||y|| >= eps";
  for (double e : opt.eps_grid) rep.curve.push_back({e, kInf, 0, kInf});

  auto record = [&](double ratio_y, double delta, bool witness) {
    for (auto& pt : rep.curve) {
      if (ratio_y < pt.epsilon) continue;
      pt.delta_hat = std::min(pt.delta_hat, delta);
      if (witness) {
        pt.witness_delta = std::min(pt.witness_delta, delta);
      } else {
        ++pt.pairs;
      }
    }
  };

  for (const auto& pr : dominated_pairs(domain, opt.corpus)) {
    const auto nx = ces_norm(phi, pr.large, opt.norm);
    if (!nx || *nx == 0.0) {
      ++rep.skipped;
      continue;
    }
    const auto ny = ces_norm(phi, pr.small, opt.norm);
    const auto nd = ces_norm(phi, abs_difference(pr.large, pr.small), opt.norm);
    if (!ny || !nd) {
      ++rep.skipped;
      continue;
    }
    ++rep.pairs;
    rep.sm_gap_min = std::min(rep.sm_gap_min, (*nx - *ny) / *nx);
    record(*ny / *nx, 1.0 - *nd / *nx, false);
  }

  if (!opt.eps_grid.empty()) {
    const double eps = *std::min_element(opt.eps_grid.begin(), opt.eps_grid.end());
    std::mt19937_64 g(opt.corpus.seed + 1);
    for (int i = 0; i < opt.llum_x; ++i) {
      const auto x = random_step(domain, opt.corpus.max_pieces, g);
      const auto nx = ces_norm(phi, x, opt.norm);
      double best = kInf;
      if (nx && *nx > 0.0) {
        for (int j = 0; j < opt.llum_y; ++j) {
          const auto y = scale_down(x, g);
          const auto ny = ces_norm(phi, y, opt.norm);
          const auto nd = ces_norm(phi, abs_difference(x, y), opt.norm);
          if (ny && nd && *ny / *nx >= eps) best = std::min(best, 1.0 - *nd / *nx);
        }
      }
      rep.per_x_delta.push_back(best);
    }
  }

  if (phi.a_phi() > 0.0) {
    const auto sm = sm_failure_witness(phi, domain, opt.witness);
    if (sm.kind == WitnessKind::SMFailure) {
      const auto nu = ces_norm(phi, sm.elements[0], opt.norm);
      const auto nv = ces_norm(phi, sm.elements[1], opt.norm);
      if (nu && nv) rep.witness_gap = std::abs(*nv - *nu);
      if (domain == Domain::HalfLine) {
        // v' = y_lambda + a chi_[s, s+L): C v' <= a_phi beyond s, so ||v'|| = 1,
        // while ||a chi_[s, s+L)|| -> 1 as L grows and v' - z' = y_lambda.
        const double a = phi.a_phi();
        const double lambda = sm.parameters.at("lambda");
        const double s = 2.0 * std::max(lambda / a, 1.0);
        const auto& u = sm.elements[0];
        double len = 1.0;
        for (int i = 0; i < 40; ++i, len *= 2.0) {
          const auto z = StepFunction::indicator(domain, s, s + len, a);
          const auto v = u + z;
          const auto nz = ces_norm(phi, z, opt.norm);
          const auto nvp = ces_norm(phi, v, opt.norm);
          const auto nd = ces_norm(phi, u, opt.norm);
          if (!nz || !nvp || !nd) break;
          rep.witness_y_norm = *nz / *nvp;
          if (rep.witness_y_norm >= 0.9 || i == 39) {
            record(rep.witness_y_norm, 1.0 - *nd / *nvp, true);
            rep.witness_source = "y_lambda + a chi_[" + std::to_string(s) + ", " + std::to_string(s + len) + ")";
            break;
          }
        }
      } else {
        const auto& x1 = sm.elements[0];
        const auto& x2 = sm.elements[1];
        const auto z = abs_difference(x2, x1);
        const auto n2 = ces_norm(phi, x2, opt.norm);
        const auto nz = ces_norm(phi, z, opt.norm);
        const auto n1 = ces_norm(phi, x1, opt.norm);
        if (n2 && nz && n1) {
          rep.witness_y_norm = *nz / *n2;
          record(rep.witness_y_norm, 1.0 - *n1 / *n2, true);
          rep.witness_source = "x2 - x1 from the strict monotonicity witness";
        }
      }
    }
  } else if (!rep.delta2) {
    const auto w = oc_failure_witness(phi, domain, opt.witness);
    if (w.kind == WitnessKind::OCFailure && w.truncation) {
      const auto& x = w.elements[0];
      const int n_terms = w.truncation->n;
      const auto nx = ces_norm(phi, x, opt.norm);
      double best = kInf, best_y = 0.0;
      int best_split = 0;
      for (int split : {n_terms / 4, n_terms / 2, 3 * n_terms / 4}) {
        const auto tail = series_tail(x, *w.truncation, split + 1);
        const auto head = abs_difference(x, tail);
        const auto nt = ces_norm(phi, tail, opt.norm);
        const auto nh = ces_norm(phi, head, opt.norm);
        if (!nx || !nt || !nh || *nx == 0.0) continue;
        const double d = 1.0 - *nh / *nx;
        record(*nt / *nx, d, true);
        if (d < best) {
          best = d;
          best_y = *nt / *nx;
          best_split = split;
        }
      }
      rep.witness_y_norm = best_y;
      rep.witness_source = "x_N from case " + w.case_tag + " split after term " + std::to_string(best_split);
    }
  }
  return rep;
}

std::string monotonicity_csv(const MonotonicityReport& rep) {
  std::ostringstream os;
  os.precision(17);
  os << "epsilon,delta_hat,pairs,witness_delta\n";
  for (const auto& pt : rep.curve) os << pt.epsilon << ',' << pt.delta_hat << ',' << pt.pairs << ',' << pt.witness_delta << '\n';
  return os.str();
}

std::string_view to_string(EmbeddingVerdict v) { return v == EmbeddingVerdict::Embedded ? "embedded" : "inconclusive"; }

std::optional<MajorizationCertificate> find_majorization(const OrliczFunction& phi, const OrliczFunction& psi,
                                                         Domain domain) {
  auto dominated_on = [&](double k, double lo) {
    constexpr int kPoints = 1024;
    const double a = std::log2(lo), b = 40.0;
    for (int i = 0; i < kPoints; ++i) {
      const double u = std::exp2(a + (b - a) * i / (kPoints - 1));
      const double lhs = psi(u);
      const double rhs = phi(k * u);
      if (std::isinf(rhs)) continue;
      if (std::isinf(lhs) || lhs > rhs * (1.0 + 1e-12) + 1e-300) return false;
    }
    return true;
  };
  for (int i = 0; i <= 10; ++i) {
    const double k = std::ldexp(1.0, i);
    if (domain == Domain::HalfLine) {
      if (dominated_on(k, std::ldexp(1.0, -40))) return MajorizationCertificate{k, 0.0, "(i)"};
      continue;
    }
    for (int j = 0; j <= 10; ++j) {
      const double u0 = std::ldexp(1.0, j);
      if (dominated_on(k, u0)) return MajorizationCertificate{k, u0, "(ii)"};
    }
  }
  return std::nullopt;
}

EmbeddingReport embedding_suite(const OrliczFunction& phi, const OrliczFunction& psi, Domain domain,
                                const std::vector<StepFunction>& corpus, const NormOptions& opt,
                                std::optional<MajorizationCertificate> certificate) {
  EmbeddingReport rep;
  rep.phi_tag = phi.tag();
  rep.psi_tag = psi.tag();
  rep.domain = domain;
  rep.certificate = certificate ? certificate : find_majorization(phi, psi, domain);
  const std::size_t half = corpus.size() / 2;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto np = ces_norm(phi, corpus[i], opt);
    const auto nq = ces_norm(psi, corpus[i], opt);
    if (!np || !nq || *np == 0.0) {
      ++rep.skipped;
      continue;
    }
    const double r = *nq / *np;
    rep.a_hat = std::max(rep.a_hat, r);
    if (i < std::max<std::size_t>(half, 1)) rep.a_hat_half = std::max(rep.a_hat_half, r);
  }
  rep.stable = rep.a_hat > 0.0 && std::isfinite(rep.a_hat) && rep.a_hat <= rep.a_hat_half * 1.05;
  if (rep.certificate && rep.stable) {
    rep.verdict = EmbeddingVerdict::Embedded;
  } else {
    rep.verdict = EmbeddingVerdict::Inconclusive;
    rep.note = !rep.certificate ? "no k, u0 in {1, ..., 2^10} with psi(u) <= phi(k u) on the grid"
                                : "A_hat is not stable under corpus doubling";
  }
  return rep;
}

LiftingReport fact_lifting_probe(const OrliczFunction& phi, Domain domain, const std::vector<StepFunction>& corpus,
                                 const NormOptions& opt, const WitnessOptions& wopt) {
  LiftingReport rep;
  rep.phi_tag = phi.tag();
  rep.domain = domain;
  if (corpus.empty()) {
    rep.vacuous = true;
    rep.note = "empty corpus: the implication holds vacuously";
    return rep;
  }
  int skipped = 0;
  for (const auto& x : corpus) {
    std::vector<double> plain, ces;
    bool ok = true;
    for (int k = 1; k <= 40 && ok; k += 3) {
      const double n = std::ldexp(1.0, k);
      const auto part = domain == Domain::UnitInterval ? x.restricted(0.0, 1.0 / n) : x.restricted_outside(1.0 / n, n);
      const auto np = ces_norm(phi, part, opt, Space::Plain);
      const auto nc = ces_norm(phi, part, opt);
      if (!np || !nc) {
        ok = false;
        break;
      }
      plain.push_back(*np);
      ces.push_back(*nc);
    }
    if (!ok) {
      ++skipped;
      continue;
    }
    ++rep.functions;
    const bool xp = vanishes(plain);
    const bool cp = vanishes(ces);
    rep.x_pass += xp;
    rep.cx_pass += cp;
    if (xp && !cp) ++rep.implication_violations;

    if (domain == Domain::UnitInterval) {
      const auto fs = rearrangement(x);
      for (int k = 0; k <= 40; k += 4) {
        const auto part = fs.restricted(0.0, std::ldexp(1.0, -k));
        const auto np = ces_norm(phi, part, opt, Space::Plain);
        const auto nc = ces_norm(phi, part, opt);
        if (!np || !nc) continue;
        ++rep.prop2_checked;
        if (*nc < *np * (1.0 - 1e-9)) ++rep.prop2_violations;
      }
    }
  }
  if (skipped > 0) rep.note = std::to_string(skipped) + " functions skipped (norm infinite or undetermined)";

  try {
    const auto w = oc_failure_witness(phi, domain, wopt);
    if (w.kind == WitnessKind::OCFailure && w.truncation) {
      rep.witness_case = w.case_tag;
      TailProbe tp;
      const int n_terms = w.truncation->n;
      for (int n : {1, n_terms / 4, n_terms / 2, 3 * n_terms / 4, n_terms - 1}) {
        const auto part = series_tail(w.elements[0], *w.truncation, n);
        const auto np = ces_norm(phi, part, opt, Space::Plain);
        const auto nc = ces_norm(phi, part, opt);
        tp.n.push_back(n);
        tp.plain.push_back(np.value_or(kInf));
        tp.ces.push_back(nc.value_or(kInf));
      }
      tp.plain_vanishes = vanishes(tp.plain);
      tp.ces_vanishes = vanishes(tp.ces);
      rep.witness_tails = std::move(tp);
    }
  } catch (const Error& e) {
    rep.note += (rep.note.empty() ? "" : "; ") + std::string("witness probe skipped: ") + e.what();
  }
  return rep;
}

} // namespace cesorl
