#include "torcx/cli.hpp"

#include "torcx/error.hpp"
#include "torcx/form_io.hpp"
#include "torcx/reports.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

namespace torcx {

using json = nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

bool use_exact(const Config& cfg, const RunOptions& opt) { return opt.exact.value_or(cfg.exact); }
std::uint64_t seed_of(const Config& cfg, const RunOptions& opt) { return opt.seed.value_or(cfg.seed); }

json header(const Config& cfg, const RunOptions& opt, const std::string& command, bool exact_used) {
  json h;
  h["tool"] = "torcx";
  h["version"] = kVersion;
  h["command"] = command;
  h["config_hash"] = config_hash(cfg.raw);
  h["scenario"] = cfg.name;
  h["system"] = cfg.sys().name;
  h["box"] = {{"H", cfg.box.H}, {"X", cfg.box.X}};
  h["tolerances"] = cfg.tol.to_json();
  h["precision"] = {{"arithmetic", exact_used ? "exact" : "float"},
                    {"requested", use_exact(cfg, opt) ? "exact" : "float"},
                    {"input_digits", cfg.sys().digits}};
  h["seed"] = seed_of(cfg, opt);
  h["label"] = "empirical: finite-box evidence";
  return h;
}

std::int64_t get_i64(const json& j, const char* key, std::int64_t def) {
  if (!j.contains(key)) return def;
  if (!j[key].is_number_integer()) throw ConfigError(std::string(key) + ": expected an integer");
  return j[key].get<std::int64_t>();
}

BigInt big_from_json(const json& j) {
  if (j.is_number_integer()) return BigInt(j.get<long>());
  if (j.is_string()) {
    try {
      return BigInt(j.get<std::string>(), 10);
    } catch (const std::invalid_argument&) {
    }
  }
  throw ConfigError("expected an integer or decimal integer string, got " + j.dump());
}

/// Hint entries: integers, or {"factorial_powers": {base, m_max, mu?, T?}} giving T base^{mu m!}.
std::vector<BigInt> hints_from_json(const json& j) {
  std::vector<BigInt> out;
  if (j.is_null()) return out;
  if (!j.is_array()) throw ConfigError("hints: expected an array");
  for (const auto& h : j) {
    if (h.is_object() && h.contains("factorial_powers")) {
      const auto& f = h["factorial_powers"];
      const auto base = static_cast<unsigned long>(get_i64(f, "base", 10));
      const int m_max = static_cast<int>(get_i64(f, "m_max", 4));
      const auto mu = static_cast<unsigned long>(get_i64(f, "mu", 1));
      const BigInt T = f.contains("T") ? big_from_json(f["T"]) : BigInt(1);
      if (base < 2 || m_max < 1 || m_max > 7 || mu < 1) throw ConfigError("hints: factorial_powers out of range");
      unsigned long fact = 1;
      for (int m = 1; m <= m_max; ++m) {
        fact *= static_cast<unsigned long>(m);
        BigInt v;
        mpz_ui_pow_ui(v.get_mpz_t(), base, mu * fact);
        out.push_back(T * v);
      }
    } else {
      out.push_back(big_from_json(h));
    }
  }
  return out;
}

SDAOptions sda_options(const json& d, int mu, int threads) {
  SDAOptions o;
  o.mu = mu;
  o.Q_max = get_i64(d, "Q_max", o.Q_max);
  o.ell_target = static_cast<int>(get_i64(d, "ell_target", o.ell_target));
  if (d.contains("C")) o.C = rational_from_json(d["C"]);
  o.hints = hints_from_json(d.value("hints", json()));
  o.threads = threads;
  if (o.Q_max < 1 || o.ell_target < 1) throw ConfigError("diophantine: Q_max and ell_target must be >= 1");
  return o;
}

std::vector<HighPrecisionReal> real_parts(const std::vector<ComplexInput>& v) {
  std::vector<HighPrecisionReal> out;
  for (const auto& c : v) out.push_back(c.re);
  return out;
}

bool all_real(const std::vector<ComplexInput>& v) {
  return std::all_of(v.begin(), v.end(), [](const auto& c) { return c.is_real(); });
}

DiophantineVerdict verdict_from_sda(const SDASearch& s, int digits, std::size_t hints) {
  DiophantineVerdict v;
  v.tag = s.found ? DiophantineVerdict::Tag::LiouvilleWitnessed : DiophantineVerdict::Tag::NoWitnessFound;
  if (s.found) v.witness = s.witness;
  v.precision_digits = digits;
  v.Q_max = s.Q_max;
  v.ell_target = s.ell_target;
  v.hints = hints;
  return v;
}

/// Diophantine classification of linear a0: rational lower bound or a Liouville search.
json linear_verdict(const std::vector<ComplexInput>& a0, const json& d, int digits, int threads,
                    SDASearch* search_out = nullptr) {
  json j;
  if (!all_real(a0)) {
    DiophantineVerdict v;
    v.tag = DiophantineVerdict::Tag::NonReal;
    v.precision_digits = digits;
    j["verdict"] = to_json(v);
    return j;
  }
  const auto alpha = real_parts(a0);
  const auto det = detect_rational(alpha);
  j["rational_detection"] = {{"rational", det.rational}, {"precision_limited", det.precision_limited},
                             {"digits", det.digits}};
  if (det.rational) {
    DiophantineVerdict v;
    v.tag = DiophantineVerdict::Tag::Rational;
    v.q0 = det.value->q0;
    v.precision_digits = digits;
    j["verdict"] = to_json(v);
    j["lower_bound"] = to_json(rational_lowerbound(*det.value));
    return j;
  }
  const auto opt = sda_options(d, 1, threads);
  const auto s = sda_search(alpha, opt);
  j["verdict"] = to_json(verdict_from_sda(s, digits, opt.hints.size()));
  j["sda"] = to_json(s);
  if (alpha.size() > 1) {
    j["components"] = json::array();
    for (std::size_t k = 0; k < alpha.size(); ++k) {
      const auto c = sda_search({alpha[k]}, opt);
      j["components"].push_back({{"index", k + 1}, {"found", c.found}, {"max_level", c.max_level},
                                 {"terms", to_json(c)["terms"]}});
    }
  }
  if (search_out) *search_out = s;
  return j;
}

json homogeneous_verdict(const LoadedSystem::Homogeneous& h, const json& d, int threads) {
  HomogeneousOptions o;
  o.H = get_i64(d, "H", o.H);
  o.X = get_i64(d, "X", o.X);
  o.lambda_max = d.value("lambda_max", o.lambda_max);
  o.sda = sda_options(d, h.mu, threads);
  std::vector<HighPrecisionReal> re, im;
  for (const auto& c : h.c) {
    re.push_back(c.re);
    im.push_back(c.im);
  }
  const auto r = characterize_homogeneous(re, im, h.rho, h.mu, o);
  json j;
  j["verdict"] = to_json(r.verdict);
  j["rho"] = r.rho;
  j["mu"] = r.mu;
  j["beta_nonzero"] = r.beta_nonzero;
  if (r.sda) j["sda"] = to_json(*r.sda);
  j["scan"] = to_json(r.scan);
  j["paths_agree"] = r.paths_agree;
  j["note"] = r.note;
  return j;
}

template <class S>
TrigPForm<S> random_form(std::mt19937_64& rng, int n, int N, int p, std::int64_t H, std::int64_t X, int modes) {
  auto uni = [&](std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng); };
  TrigPForm<S> u(n, N, p);
  const auto Ks = all_multi_indices(n, p);
  for (int m = 0; m < modes; ++m) {
    Frequency f{IntVec(n), IntVec(N)};
    for (auto& e : f.eta) e = uni(-H, H);
    for (auto& e : f.xi) e = uni(-X, X);
    ConstPForm<S> c(n, p);
    for (const auto& K : Ks)
      c.set(K, ScalarTraits<S>::from_gauss(GaussRational(Rational(uni(-5, 5), uni(1, 4)), Rational(uni(-5, 5), uni(1, 4)))));
    u.add_slice(f, c);
  }
  return u;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("'" + path + "': " + e.what());
  }
}

std::string resolve(const Config& cfg, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_absolute() ? p : (std::filesystem::path(cfg.base_dir) / path).string();
}

template <class S>
CommandResult solve_in(const Config& cfg, const RunOptions& opt, json report) {
  CommandResult res;
  const auto& spec = cfg.sys().spec;
  const auto& s = cfg.solve;
  TrigPForm<S> f(spec.n, spec.N, 1);
  std::optional<TrigPForm<S>> manufactured;
  auto parse_form = [&](const json& j) {
    try {
      if constexpr (ScalarTraits<S>::exact) return exact_trig_form_from_json(j);
      else return trig_form_from_json(j);
    } catch (const DomainError& e) {
      throw ConfigError(std::string("right-hand side: ") + e.what());
    }
  };
  if (!opt.f_path.empty()) {
    f = parse_form(read_json_file(opt.f_path));
  } else if (s.contains("f")) {
    f = parse_form(s["f"]);
  } else if (s.contains("f_file")) {
    f = parse_form(read_json_file(resolve(cfg, s["f_file"].get<std::string>())));
  } else if (s.contains("manufactured")) {
    const auto& m = s["manufactured"];
    const int p = static_cast<int>(get_i64(m, "p", 0));
    if (p < 0 || p >= spec.n) throw ConfigError("/solve/manufactured/p: need 0 <= p < n");
    std::mt19937_64 rng(seed_of(cfg, opt));
    manufactured = random_form<S>(rng, spec.n, spec.N, p, get_i64(m, "H", cfg.box.H), get_i64(m, "X", cfg.box.X),
                                  static_cast<int>(get_i64(m, "modes", 6)));
    f = apply_operator<S>(spec, nullptr, *manufactured);
  } else {
    throw ConfigError("/solve: needs f, f_file or manufactured (or --f)");
  }
  if (f.n() != spec.n || f.N() != spec.N) throw ConfigError("right-hand side does not match the system");
  SolverOptions so;
  so.eps = cfg.tol.eps;
  so.eps_int = cfg.tol.eps_int;
  so.compat_eps = cfg.tol.compat_eps;
  so.threads = opt.threads;
  report["rhs"] = {{"degree", f.degree()}, {"terms", f.slices().size()}, {"manufactured", manufactured.has_value()}};
  try {
    const auto r = solve_constant(spec, f, so);
    json sj;
    sj["residual_inf"] = r.residual_inf;
    sj["residual_ok"] = r.residual_inf <= cfg.tol.residual;
    sj["growth_fit"] = to_json(r.growth);
    sj["bound_violations"] = r.bound_violations;
    sj["integral_sector"] = json::array();
    for (const auto& xi : r.sector) sj["integral_sector"].push_back(xi);
    sj["solution_terms"] = r.u.slices().size();
    report["solve"] = sj;
    report["compatibility"] = {{"ok", true}, {"offenders", json::array()}};
    res.files["solution.json"] = to_json(r.u).dump(2) + "\n";
    std::ostringstream sum;
    sum << "solve: residual " << r.residual_inf << (r.growth.blowup_suspected ? ", blow-up suspected" : "");
    res.summary = sum.str();
  } catch (const CompatibilityError& e) {
    report["compatibility"] = {{"ok", false}, {"offenders", e.offenders()}};
    res.exit_code = kExitCompatibility;
    std::string s2 = std::string("compatibility failure: ") + e.what();
    for (const auto& o : e.offenders()) s2 += "\n  " + o;
    res.summary = s2;
  }
  res.report = std::move(report);
  return res;
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + p.string() + "'");
  out << text;
}

}  // namespace

CommandResult cmd_analyze(const Config& cfg, const RunOptions& opt) {
  const auto& sys = cfg.sys();
  const bool exact = use_exact(cfg, opt) && sys.spec.exact_capable();
  CommandResult res;
  json report = header(cfg, opt, "analyze", exact);
  const auto& a = cfg.analyze;
  DivisorScanOptions so;
  const std::string mode = a.value("mode", "full");
  if (mode != "full" && mode != "nearest") throw ConfigError("/analyze/mode: expected \"full\" or \"nearest\"");
  so.mode = mode == "full" ? DivisorScanOptions::Mode::Full : DivisorScanOptions::Mode::Nearest;
  so.exact = exact;
  so.keep_records = a.value("scatter", true);
  so.lambda_max = cfg.tol.lambda_max;
  so.eps_zero = cfg.tol.eps_zero;
  so.threads = opt.threads;
  const auto scan = divisor_scan(sys.spec, cfg.box, so);
  report["scan"] = to_json(scan);
  if (so.keep_records) res.files["scatter.csv"] = scatter_csv(scan);
  const json d = a.value("diophantine", json::object());
  std::string verdict = "unclassified";
  if (sys.linear) {
    report["diophantine"] = linear_verdict(*sys.linear, d, sys.digits, opt.threads);
    verdict = report["diophantine"]["verdict"]["tag"];
  } else if (sys.homogeneous) {
    report["diophantine"] = homogeneous_verdict(*sys.homogeneous, d, opt.threads);
    verdict = report["diophantine"]["verdict"]["tag"];
  } else {
    report["diophantine"] = {{"verdict", nullptr}, {"note", "no Diophantine classifier for this symbol family"}};
  }
  res.report = std::move(report);
  res.summary = "analyze: scan " + scan.verdict + ", verdict " + verdict;
  return res;
}

CommandResult cmd_solve(const Config& cfg, const RunOptions& opt) {
  const bool exact = use_exact(cfg, opt) && cfg.sys().spec.exact_capable();
  json report = header(cfg, opt, "solve", exact);
  return exact ? solve_in<GaussRational>(cfg, opt, report) : solve_in<Complex>(cfg, opt, report);
}

CommandResult cmd_witness(const Config& cfg, const RunOptions& opt) {
  const auto& sys = cfg.sys();
  CommandResult res;
  json report = header(cfg, opt, "witness", true);
  const auto& w = cfg.witness;
  WitnessSequence ws;
  if (w.contains("delta")) ws.delta = rational_from_json(w["delta"]);
  if (w.contains("terms")) {
    if (!w["terms"].is_array()) throw ConfigError("/witness/terms: expected an array");
    for (const auto& t : w["terms"]) {
      WitnessTerm term;
      for (const auto& v : t.at("eta")) term.freq.eta.push_back(big_from_json(v));
      for (const auto& v : t.at("xi")) term.freq.xi.push_back(big_from_json(v));
      term.level = t.at("level").get<int>();
      ws.terms.push_back(std::move(term));
    }
    report["sequence_source"] = "config";
  } else {
    if (!sys.linear || !all_real(*sys.linear)) {
      res.exit_code = kExitNoWitness;
      res.summary = "witness: no sequence given and the system has no real linear a0 to search";
      report["sequence_source"] = nullptr;
      res.report = std::move(report);
      return res;
    }
    const json d = w.value("diophantine", cfg.analyze.value("diophantine", json::object()));
    SDASearch s;
    report["diophantine"] = linear_verdict(*sys.linear, d, sys.digits, opt.threads, &s);
    report["sequence_source"] = "sda_search";
    if (s.found) {
      // candidate denominators: the hints when given, else the search terms
      std::vector<BigInt> qs;
      for (const auto& h : hints_from_json(d.value("hints", json()))) qs.push_back(h);
      if (qs.empty())
        for (const auto& t : s.witness.terms) qs.push_back(t.q);
      std::sort(qs.begin(), qs.end());
      std::vector<BigFrequency> probes;
      for (const auto& q : qs) {
        BigFrequency f;
        for (const auto& a : *sys.linear) {
          const Rational x = q * a.value().re;
          f.eta.push_back(-BigInt(floor(x + Rational(1, 2))));
        }
        f.xi = {q};
        probes.push_back(std::move(f));
      }
      json probed = json::array();
      int last = 0;
      for (const auto& pr : probe_divisors(sys.spec, probes)) {
        int level = 0;
        if (pr.size > 1)
          while (level < 64 && pr.below(level + 1)) ++level;
        probed.push_back({{"xi", big_json(pr.freq.xi)}, {"eta", big_json(pr.freq.eta)},
                          {"log10_norm", pr.log10_norm}, {"log10_size", pr.log10_size}, {"level", level}});
        if (level > last) {
          ws.terms.push_back({pr.freq, level});
          last = level;
        }
      }
      report["probes"] = probed;
    }
    if (ws.terms.empty()) {
      res.exit_code = kExitNoWitness;
      res.summary = "witness: no valid small-divisor sequence (verdict " +
                    report["diophantine"]["verdict"]["tag"].get<std::string>() + ")";
      res.report = std::move(report);
      return res;
    }
  }
  const int p = static_cast<int>(get_i64(w, "p", 0));
  Witness wit;
  try {
    wit = build_witness(sys.spec, ws, p);
  } catch (const DomainError& e) {
    res.exit_code = kExitNoWitness;
    res.summary = std::string("witness: invalid sequence: ") + e.what();
    report["error"] = e.what();
    res.report = std::move(report);
    return res;
  }
  BlowupOptions bo;
  bo.lambda_cap = w.value("lambda_cap", bo.lambda_cap);
  if (w.contains("lambda_hat")) bo.lambda_hat = w["lambda_hat"].get<double>();
  if (w.contains("C_hat")) bo.C_hat = w["C_hat"].get<double>();
  const auto rep = demonstrate_blowup(sys.spec, wit, ws, bo);
  report["witness"] = to_json(wit);
  report["witness"]["forced_coeffs"] = to_json(rep)["forced_coeffs"];
  report["blowup"] = to_json(rep);
  report["blowup"].erase("forced_coeffs");
  res.files["witness_f.json"] = to_json(wit.f_unit).dump(2) + "\n";
  std::ostringstream sum;
  sum << "witness: " << wit.checks.size() << " terms, lambda needed " << rep.lambda_needed
      << ", last exceedance " << rep.last_exceedance;
  res.summary = sum.str();
  res.report = std::move(report);
  return res;
}

CommandResult cmd_reduce(const Config& cfg, const RunOptions& opt) {
  const auto& sys = cfg.sys();
  if (!sys.profile) throw ConfigError("/system: reduce needs a coefficient profile (coefficients or named)");
  const bool exact = use_exact(cfg, opt) && sys.spec.exact_capable();
  CommandResult res;
  json report = header(cfg, opt, "reduce", exact);
  const auto& r = cfg.reduce;
  const std::int64_t X = get_i64(r, "X", cfg.box.X);
  const auto cprof = convert_profile<Complex>(*sys.profile);

  NormalFormData<Complex> nf;
  try {
    if (exact) {
      const auto ne = decompose(*sys.profile, sys.spec, X, 1e-10, opt.threads);
      report["normal_form"] = {{"residual", decomposition_residual(ne)}};
      nf = to_complex(ne);
    } else {
      nf = decompose(cprof, sys.spec, X, cfg.tol.eps, opt.threads);
      report["normal_form"] = {{"residual", decomposition_residual(nf)}};
    }
  } catch (const ClosednessError& e) {
    report["closedness"] = {{"ok", false}, {"offenders", e.offenders()}};
    res.exit_code = kExitClosedness;
    std::string s = std::string("closedness failure: ") + e.what();
    for (const auto& o : e.offenders()) s += "\n  " + o;
    res.summary = s;
    res.report = std::move(report);
    return res;
  }
  report["closedness"] = {{"ok", true}, {"offenders", json::array()}};
  json means = json::array();
  for (const auto& m : sys.profile->means()) means.push_back(to_json(m));
  std::int64_t bw = 0;
  for (const auto& [xi, s] : nf.slices) bw = std::max(bw, s.C.bandwidth());
  auto& nfj = report["normal_form"];
  nfj["n"] = nf.n;
  nfj["N"] = nf.N;
  nfj["X"] = nf.X;
  nfj["means"] = means;
  nfj["decoupled"] = nf.decoupled;
  nfj["constant_profile"] = sys.profile->is_constant();
  nfj["slices"] = nf.slices.size();
  nfj["max_C_bandwidth"] = bw;

  ConditionDOptions dopt;
  dopt.grid = static_cast<int>(get_i64(r, "grid", dopt.grid));
  dopt.threads = opt.threads;
  const auto cd = check_condition_D(nf, dopt);
  report["condition_D"] = to_json(cd);

  if (r.value("conjugation", true)) {
    ConjugationOptions co;
    co.trials = static_cast<int>(get_i64(r, "trials", co.trials));
    co.H = get_i64(r, "H", cfg.box.H);
    co.X = get_i64(r, "conjugation_X", std::min<std::int64_t>(X, cfg.box.X));
    co.modes = static_cast<int>(get_i64(r, "modes", co.modes));
    co.seed = seed_of(cfg, opt);
    co.threads = opt.threads;
    if (r.contains("degrees")) co.degrees = r["degrees"].get<std::vector<int>>();
    const auto conj = verify_conjugation(cprof, sys.spec, co, cd.verdict);
    report["conjugation"] = to_json(conj);
    report["conjugation"]["residual_ok"] = conj.max_residual <= r.value("residual_tol", 1e-8);
  } else {
    report["conjugation"] = nullptr;
  }
  if (nf.decoupled) {
    ClassifyOptions ko;
    ko.X = get_i64(r, "classify_X", ko.X);
    const auto cls = classify_decoupled(cprof, sys.spec, ko);
    report["classification"] = to_json(cls);
  } else {
    report["classification"] = nullptr;
  }
  json notes = json::array();
  if (report["classification"].is_object() && report["classification"]["reduction_applies"].get<bool>() && !cd.verdict)
    notes.push_back("every index is in L but neither condition D bound is polynomial on this box");
  if (sys.profile->is_constant()) notes.push_back("constant profile: C_xi = 0 and Psi is the identity");
  report["notes"] = notes;
  std::ostringstream sum;
  sum << "reduce: condition D " << (cd.verdict ? "pass" : "fail");
  if (report["conjugation"].is_object()) sum << ", conjugation residual " << report["conjugation"]["max_residual"].get<double>();
  if (report["classification"].is_object()) sum << ", L = " << report["classification"]["L_set"].dump();
  res.summary = sum.str();
  res.report = std::move(report);
  return res;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral solver and solvability reports for L = d_t + c(t, D_x) on tori", "torcx"};
  app.require_subcommand(1);
  std::string config_path, out_dir = "torcx-out";
  RunOptions ro;
  bool flag_exact = false, flag_float = false;
  std::uint64_t seed = 0;
  for (const char* name : {"analyze", "solve", "witness", "reduce"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "config file (JSON)");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--threads", ro.threads, "worker threads (0 = hardware)")->check(CLI::NonNegativeNumber);
    auto* fe = sub->add_flag("--exact", flag_exact, "exact rational arithmetic");
    auto* ff = sub->add_flag("--float", flag_float, "floating-point arithmetic");
    fe->excludes(ff);
    sub->add_option("--seed", seed, "seed for randomized trials");
    if (std::string(name) == "solve") sub->add_option("--f", ro.f_path, "right-hand side TrigPForm JSON");
  }
  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitConfig;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  auto* sub = app.get_subcommand(command);
  if (flag_exact) ro.exact = true;
  if (flag_float) ro.exact = false;
  if (sub->count("--seed")) ro.seed = seed;
  if (config_path.empty()) {
    err << "config error: --config PATH is required\n";
    return kExitConfig;
  }
  try {
    const Config cfg = load_config(config_path);
    CommandResult r = command == "analyze"   ? cmd_analyze(cfg, ro)
                      : command == "solve"   ? cmd_solve(cfg, ro)
                      : command == "witness" ? cmd_witness(cfg, ro)
                                             : cmd_reduce(cfg, ro);
    r.report["exit_code"] = r.exit_code;
    const std::filesystem::path dir(out_dir);
    std::filesystem::create_directories(dir);
    write_file(dir / (command + ".json"), r.report.dump(2) + "\n");
    for (const auto& [name, text] : r.files) write_file(dir / name, text);
    (r.exit_code == kExitOk ? out : err) << r.summary << "\n";
    return r.exit_code;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const nlohmann::json::exception& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace torcx
