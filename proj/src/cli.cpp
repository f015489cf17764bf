#include "cesorl/cli.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "cesorl/cesaro.hpp"
#include "cesorl/error.hpp"
#include "cesorl/indices.hpp"
#include "cesorl/modular.hpp"
#include "cesorl/propcheck.hpp"
#include "cesorl/serialize.hpp"
#include "cesorl/verify.hpp"
#include "cesorl/witnesses.hpp"

namespace cesorl {

namespace {

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0.0 ? "inf" : "-inf";
  char buf[64];
  const double a = std::abs(v);
  if (a == 0.0 || (a >= 1e-4 && a < 1e9)) {
    std::snprintf(buf, sizeof buf, "%.6f", v);
  } else {
    std::snprintf(buf, sizeof buf, "%.6e", v);
  }
  return buf;
}

std::string ext(const ExtendedValue& v) {
  if (v.is_finite()) return num(v.value) + " (+/- " + num(v.abs_error) + ")";
  return "inf [" + std::string(to_string(v.certificate)) + "] " + v.reason;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

/// Inline JSON or a path to a JSON file.
std::string inline_or_file(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (arg[first] == '[' || arg[first] == '{')) return arg;
  return read_file(arg);
}

struct Settings {
  std::string phi;
  std::string psi;
  std::string domain = "halfline";
  std::string f;
  std::string space = "cesaro";
  std::string regime;
  std::string csv;
  std::string config;
  std::string report;
  std::string suite;
  std::string case_tag;
  std::vector<double> eps{0.1, 0.25, 0.5};
  bool json = false;
  bool override_hypothesis = false;
  int theorem = 7;
  int truncation = 30;
  int corpus_size = 0;
  double b0 = 0.0;
  std::uint64_t seed = kDefaultSeed;
};

void apply_config(Settings& s, const CLI::App& app, const CLI::App& sub) {
  const auto text = read_file(s.config);
  const auto cfg = parse_json_text(text, s.config);
  if (!cfg.is_object()) throw ParseError(s.config + ": expected a JSON object");
  auto given = [&](const char* opt) {
    for (const CLI::App* a : {&app, &sub}) {
      try {
        if (a->count(opt) > 0) return true;
      } catch (const CLI::OptionNotFound&) {
      }
    }
    return false;
  };
  auto str = [&](const char* key, const char* opt, std::string& out) {
    auto it = cfg.find(key);
    if (it == cfg.end() || given(opt)) return;
    out = it->is_string() ? it->get<std::string>() : it->dump();
  };
  str("phi", "--phi", s.phi);
  str("psi", "--psi", s.psi);
  str("domain", "--domain", s.domain);
  str("space", "--space", s.space);
  str("regime", "--regime", s.regime);
  if (auto it = cfg.find("f"); it != cfg.end() && !given("--f")) s.f = it->is_string() ? it->get<std::string>() : it->dump();
  if (auto it = cfg.find("truncation"); it != cfg.end() && !given("--truncation")) s.truncation = it->get<int>();
  if (auto it = cfg.find("corpus_size"); it != cfg.end() && !given("--corpus-size")) s.corpus_size = it->get<int>();
  if (auto it = cfg.find("seed"); it != cfg.end() && !given("--seed")) s.seed = it->get<std::uint64_t>();
  if (auto it = cfg.find("b0"); it != cfg.end() && !given("--b0")) s.b0 = number_from_json(*it, "b0");
  if (auto it = cfg.find("eps"); it != cfg.end() && !given("--eps")) {
    s.eps.clear();
    for (const auto& e : *it) s.eps.push_back(number_from_json(e, "eps"));
  }
}

OrliczFunction need_phi(const std::string& spec, const char* what = "--phi") {
  if (spec.empty()) throw PreconditionError(std::string(what) + " is required");
  return parse_phi(spec);
}

StepFunction need_f(const Settings& s, Domain d) {
  if (s.f.empty()) throw PreconditionError("--f is required");
  return parse_step_function(inline_or_file(s.f), d);
}

void write_csv(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << text;
}

void print_witness(std::ostream& out, const WitnessReport& r) {
  out << "phi " << r.phi_tag << " on " << to_string(r.domain) << ": " << to_string(r.kind);
  if (!r.case_tag.empty()) out << " case " << r.case_tag;
  out << '\n';
  for (std::size_t i = 0; i < r.elements.size(); ++i) {
    out << "  element " << (i < r.element_names.size() ? r.element_names[i] : std::to_string(i)) << ": "
        << r.elements[i].pieces().size() << " pieces on [0, " << num(r.elements[i].support_end()) << ")\n";
  }
  for (const auto& cv : r.certified) {
    out << "  [" << (cv.holds ? "ok" : "FAILED") << "] " << cv.description << ": " << ext(cv.value) << '\n';
  }
  for (const auto& [k, v] : r.parameters) out << "  " << k << " = " << num(v) << '\n';
  if (r.truncation) out << "  exact I_phi(x_N) = " << r.truncation->modular_exact << '\n';
  if (r.nontrivial) out << "  nontrivial: " << (*r.nontrivial ? "yes" : "no") << '\n';
  if (!r.note.empty()) out << "  note: " << r.note << '\n';
}

int witness_exit(const WitnessReport& r) {
  if (!r.all_hold()) return kExitError;
  return r.kind == WitnessKind::Undetermined ? kExitUndetermined : kExitOk;
}

std::uint64_t env_seed(std::uint64_t fallback) {
  const char* s = std::getenv("CESORL_SEED");
  if (s == nullptr || *s == '\0') return fallback;
  char* end = nullptr;
  const auto v = std::strtoull(s, &end, 0);
  if (end == s || *end != '\0') throw ParseError(std::string("CESORL_SEED is not an integer: ") + s);
  return v;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Settings s;
  CLI::App app{"Orlicz modulars, Luxemburg norms and Cesaro-Orlicz witnesses"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--config", s.config, "JSON file with default option values");
  app.add_flag("--json", s.json, "print JSON instead of text");

  auto add_phi = [&](CLI::App* c) {
    c->add_option("--phi", s.phi, "Orlicz function: name:p1,p2 or JSON {family, params, flags}");
    c->add_option("--domain", s.domain, "unit or halfline");
  };
  auto* norm = app.add_subcommand("norm", "Luxemburg norm of a step function");
  auto* modular = app.add_subcommand("modular", "I_phi or rho_phi of a step function");
  for (auto* c : {norm, modular}) {
    add_phi(c);
    c->add_option("--f", s.f, "step function: JSON text or file");
    c->add_option("--space", s.space, "plain or cesaro");
  }
  auto* delta2 = app.add_subcommand("delta2", "Delta_2 test by ratio sampling");
  add_phi(delta2);
  delta2->add_option("--regime", s.regime, "zero, inf or all (default: the domain convention)");
  delta2->add_option("--csv", s.csv, "write the sampled ratio curve");
  auto* indices = app.add_subcommand("indices", "Matuszewska index estimates and condition (S)");
  add_phi(indices);
  indices->add_option("--csv", s.csv, "write the M(s) curve");
  auto* nontrivial = app.add_subcommand("nontrivial", "is Ces_phi nontrivial");
  add_phi(nontrivial);
  auto* hardy = app.add_subcommand("hardy", "empirical norm of C on L^phi over a random corpus");
  add_phi(hardy);
  hardy->add_option("--corpus-size", s.corpus_size, "number of random step functions");
  hardy->add_option("--seed", s.seed, "corpus seed");
  auto* witness = app.add_subcommand("witness", "explicit witness constructions");
  add_phi(witness);
  witness->add_option("--theorem", s.theorem, "7 (order continuity) or 10 (strict monotonicity)")
      ->check(CLI::IsMember({7, 10}));
  witness->add_option("--case", s.case_tag, "force a construction case, e.g. I(1) or II(3)");
  witness->add_option("--truncation", s.truncation, "number of series terms");
  witness->add_option("--b0", s.b0, "b0 for the [0,1] strict monotonicity construction");
  auto* suite = app.add_subcommand("suite", "property suites");
  add_phi(suite);
  suite->add_option("--name", s.suite, "theorem7, monotonicity, embedding or fact")
      ->required()
      ->check(CLI::IsMember({"theorem7", "monotonicity", "embedding", "fact"}));
  suite->add_option("--psi", s.psi, "second Orlicz function (embedding)");
  suite->add_option("--corpus-size", s.corpus_size, "number of random step functions or pairs");
  suite->add_option("--seed", s.seed, "corpus seed (default: CESORL_SEED or 0x5EED)");
  suite->add_option("--eps", s.eps, "epsilon grid (monotonicity)");
  suite->add_option("--csv", s.csv, "write the (epsilon, delta_hat) curve (monotonicity)");
  suite->add_option("--truncation", s.truncation, "series terms for witness constructions");
  suite->add_flag("--override", s.override_hypothesis,
                  "run theorem7 rows even when boundedness of C on L^phi is not confirmed");
  auto* verify = app.add_subcommand("verify", "recompute the certified values of a witness report");
  verify->add_option("--report", s.report, "report JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitError;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    try {
      s.seed = env_seed(s.seed);
      if (sub->count("--seed") > 0) sub->get_option("--seed")->results(s.seed);
    } catch (const CLI::OptionNotFound&) {
    }
    if (!s.config.empty()) apply_config(s, app, *sub);
    const Domain domain = domain_from_string(s.domain);
    Json j;
    int code = kExitOk;
    std::ostringstream text;

    if (sub == norm || sub == modular) {
      const auto phi = need_phi(s.phi);
      const auto f = need_f(s, domain);
      const auto space = space_from_string(s.space);
      if (sub == norm) {
        const auto r = luxemburg_norm(phi, f, space);
        j = to_json(r);
        text << "||f||_" << (space == Space::Plain ? "phi" : "Ces(phi)") << " = " << num(r.value) << " (status "
             << to_string(r.status) << ", " << r.iterations << " modular evaluations)\n";
        if (!r.diagnostic.empty()) text << "  " << r.diagnostic << '\n';
      } else {
        const auto v = space == Space::Plain ? modular_I(phi, f) : modular_rho(phi, f);
        j = to_json(v);
        text << (space == Space::Plain ? "I_phi(f) = " : "rho_phi(f) = ") << ext(v) << '\n';
      }
    } else if (sub == delta2) {
      const auto phi = need_phi(s.phi);
      const auto regime = s.regime.empty() ? regime_for(domain) : regime_from_string(s.regime);
      const auto r = delta2_test(phi, regime);
      j = to_json(r);
      text << "Delta_2(" << to_string(regime) << ") for " << phi.tag() << ": " << to_string(r.verdict) << '\n';
      if (r.verdict == Outcome::Holds) text << "  K_hat = " << num(r.k_hat) << ", u0 = " << num(r.u0) << '\n';
      if (r.verdict == Outcome::Fails) {
        text << "  witness u_n with phi(2u_n)/phi(u_n) >= 2^n, " << r.witness.size() << " terms, first "
             << num(r.witness.front().u) << '\n';
      }
      if (!r.grid.empty()) text << "  grid " << r.grid << '\n';
      if (!r.note.empty()) text << "  " << r.note << '\n';
      if (!s.csv.empty()) {
        std::ostringstream c;
        c.precision(17);
        c << "u,ratio\n";
        for (const auto& p : r.curve) c << p.u << ',' << p.ratio << '\n';
        write_csv(s.csv, c.str());
      }
      if (r.verdict == Outcome::Undetermined) code = kExitUndetermined;
    } else if (sub == indices) {
      const auto phi = need_phi(s.phi);
      const auto est = matuszewska_indices(phi);
      const auto cs = condition_S(phi);
      j = {{"indices", to_json(est)}, {"condition_S", to_json(cs)}};
      text << "alpha_hat = " << num(est.alpha_hat) << ", beta_hat = " << num(est.beta_hat)
           << " (fit residual " << num(est.fit_residual) << ")\n";
      if (!est.note.empty()) text << "  " << est.note << '\n';
      text << "condition (S): " << to_string(cs.verdict) << " (estimate " << num(cs.estimate) << ")\n";
      if (!cs.note.empty()) text << "  " << cs.note << '\n';
      if (!s.csv.empty()) {
        std::ostringstream c;
        c.precision(17);
        c << "s,M\n";
        for (const auto& [x, m] : est.curve) c << x << ',' << m << '\n';
        write_csv(s.csv, c.str());
      }
      if (!est.determined) code = kExitUndetermined;
    } else if (sub == nontrivial) {
      const auto r = nontriviality(need_phi(s.phi), domain);
      j = to_json(r);
      print_witness(text, r);
      code = witness_exit(r);
    } else if (sub == hardy) {
      const auto phi = need_phi(s.phi);
      auto corpus = hardy_shapes(domain);
      for (auto& x : random_corpus(domain, {s.corpus_size > 0 ? s.corpus_size : 100, 16, s.seed})) {
        corpus.push_back(std::move(x));
      }
      const auto r = hardy_probe(phi, corpus);
      j = to_json(r);
      text << "alpha_hat = " << num(r.alpha_hat) << ", C_hat = " << num(r.c_hat) << " (first half "
           << num(r.c_hat_half) << ", " << (r.stable ? "stable" : "not stable") << ", " << r.skipped << " skipped)\n";
      if (r.unbounded_detected) text << "  ratios of chi_[0,1/n) grow without bound\n";
      if (!r.bounded_consistent) code = kExitUndetermined;
    } else if (sub == witness) {
      const auto phi = need_phi(s.phi);
      WitnessOptions opt;
      opt.truncation = s.truncation;
      opt.force_case = s.case_tag;
      if (s.b0 > 0.0) opt.b0 = s.b0;
      const auto r = s.theorem == 7 ? oc_failure_witness(phi, domain, opt) : sm_failure_witness(phi, domain, opt);
      j = to_json(r);
      print_witness(text, r);
      code = witness_exit(r);
    } else if (sub == suite) {
      const int size = s.corpus_size;
      if (s.suite == "theorem7") {
        Theorem7Options opt;
        opt.override_hypothesis = s.override_hypothesis;
        opt.seed = s.seed;
        opt.witness.truncation = s.truncation;
        const auto phis = s.phi.empty() ? named_families() : std::vector<OrliczFunction>{parse_phi(s.phi)};
        const auto rows = theorem7_suite(phis, domain, opt);
        j = to_json(rows);
        for (const auto& r : rows) {
          text << r.phi_tag << " on " << to_string(r.domain) << ": Delta_2 " << to_string(r.delta2) << ", "
               << to_string(r.witness) << (r.case_tag.empty() ? "" : " " + r.case_tag) << ", "
               << (r.undetermined ? "undetermined" : r.consistent ? "consistent" : "INCONSISTENT")
               << (r.overridden ? " (hypothesis overridden)" : "") << '\n';
          if (r.undetermined) code = std::max(code, kExitUndetermined);
          if (!r.undetermined && !r.consistent) code = kExitError;
        }
      } else if (s.suite == "monotonicity") {
        MonotonicityOptions opt;
        if (size > 0) opt.corpus.size = size;
        opt.corpus.seed = s.seed;
        opt.eps_grid = s.eps;
        opt.witness.truncation = s.truncation;
        const auto r = monotonicity_suite(need_phi(s.phi), domain, opt);
        j = to_json(r);
        text << r.phi_tag << " on " << to_string(r.domain) << ": " << r.pairs << " pairs (" << r.skipped
             << " skipped), min SM gap " << num(r.sm_gap_min) << '\n';
        if (r.witness_gap) text << "  witness pair gap " << num(*r.witness_gap) << '\n';
        for (const auto& p : r.curve) {
          text << "  eps " << num(p.epsilon) << ": delta_hat " << num(p.delta_hat) << " over " << p.pairs
               << " pairs";
          if (std::isfinite(p.witness_delta)) text << ", witness " << num(p.witness_delta);
          text << '\n';
        }
        if (!r.witness_source.empty()) text << "  failure pair: " << r.witness_source << '\n';
        if (!s.csv.empty()) write_csv(s.csv, monotonicity_csv(r));
      } else if (s.suite == "embedding") {
        const auto phi = need_phi(s.phi);
        const auto psi = need_phi(s.psi, "--psi");
        const auto corpus = random_corpus(domain, {size > 0 ? size : 100, 16, s.seed});
        const auto r = embedding_suite(phi, psi, domain, corpus);
        j = to_json(r);
        text << "Ces(" << r.phi_tag << ") into Ces(" << r.psi_tag << ") on " << to_string(domain) << ": "
             << to_string(r.verdict) << ", A_hat = " << num(r.a_hat) << " (first half " << num(r.a_hat_half) << ")\n";
        if (r.certificate) {
          text << "  certificate " << r.certificate->case_tag << ": k = " << num(r.certificate->k)
               << ", u0 = " << num(r.certificate->u0) << '\n';
        }
        if (!r.note.empty()) text << "  " << r.note << '\n';
        if (r.verdict == EmbeddingVerdict::Inconclusive) code = kExitUndetermined;
      } else {
        const auto phi = need_phi(s.phi);
        const auto corpus = random_corpus(domain, {size > 0 ? size : 100, 16, s.seed});
        WitnessOptions wopt;
        wopt.truncation = s.truncation;
        const auto r = fact_lifting_probe(phi, domain, corpus, {}, wopt);
        j = to_json(r);
        text << r.phi_tag << " on " << to_string(domain) << ": " << r.functions << " functions, X side "
             << r.x_pass << " pass, CX side " << r.cx_pass << " pass, " << r.implication_violations
             << " implication violations";
        if (domain == Domain::UnitInterval) text << ", " << r.prop2_violations << "/" << r.prop2_checked << " rearrangement violations";
        text << '\n';
        if (r.witness_tails) {
          text << "  case " << r.witness_case << " tails: plain " << (r.witness_tails->plain_vanishes ? "vanish" : "do not vanish")
               << ", Cesaro " << (r.witness_tails->ces_vanishes ? "vanish" : "do not vanish") << '\n';
        }
        if (!r.note.empty()) text << "  " << r.note << '\n';
        if (!r.pass()) code = kExitError;
      }
    } else if (sub == verify) {
      const auto report = parse_json_text(read_file(s.report), s.report);
      const auto r = verify_report(report);
      Json lines = Json::array();
      for (const auto& l : r.lines) {
        lines.push_back({{"description", l.description}, {"recorded", l.recorded}, {"recomputed", l.recomputed}, {"value", l.value}});
        text << (l.recorded == l.recomputed ? "  match   " : "  MISMATCH") << " [" << (l.recomputed ? "holds" : "fails")
             << "] " << l.description << ": " << l.value << '\n';
      }
      if (r.truncation_checked) text << "  truncation: " << r.truncation_detail << '\n';
      text << (r.ok() ? "report verified\n" : "report does not verify\n");
      j = {{"lines", lines}, {"truncation_checked", r.truncation_checked}, {"truncation_ok", r.truncation_ok},
           {"truncation_detail", r.truncation_detail}, {"ok", r.ok()}};
      if (!r.ok()) code = kExitError;
    }

    if (s.json) {
      out << j.dump(2) << '\n';
    } else {
      out << text.str();
    }
    return code;
  } catch (const IndeterminateError& e) {
    err << "undetermined: " << e.what() << '\n';
    return kExitUndetermined;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

} // namespace cesorl
