#include "torcx/reports.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace torcx {

using json = nlohmann::json;

namespace {

std::string growth_tag(const GrowthClass& g) { return g.is_log() ? "log" : "superlog"; }

json sign_json(const SignReport& s) {
  return {{"changes_sign", s.changes_sign}, {"certified", s.certified}, {"min", s.min}, {"max", s.max}};
}

json growth_json(const GrowthClass& g) {
  return {{"tag", growth_tag(g)}, {"C", g.C}, {"inner_max", g.inner_max}, {"outer_max", g.outer_max}};
}

json rational_json(const std::optional<Rational>& q) {
  if (!q) return nullptr;
  return to_string(*q);
}

}  // namespace

json big_json(const BigInt& v) { return v.get_str(); }

json big_json(const std::vector<BigInt>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.get_str());
  return a;
}

json to_json(const DivisorRecord& r) {
  return {{"eta", r.eta}, {"xi", r.xi}, {"norm", r.norm}, {"size", r.size}};
}

json to_json(const DivisorScan& s) {
  json j;
  j["mode"] = s.mode == DivisorScanOptions::Mode::Full ? "full" : "nearest";
  j["exact"] = s.exact;
  j["examined"] = s.examined;
  j["nonzero"] = s.nonzero;
  j["zero_slices"] = s.zero_slices;
  j["lambda_hat"] = s.lambda_hat;
  j["C_hat"] = s.C_hat;
  j["min_divisor"] = s.min_divisor;
  j["min_record"] = to_json(s.min_record);
  if (s.exact_min_norm_sq) j["exact_min_norm_sq"] = to_string(*s.exact_min_norm_sq);
  j["worst_local_exponent"] = s.worst_local_exponent;
  j["plausibly_holds"] = s.plausibly_holds;
  j["verdict"] = s.verdict;
  j["offenders"] = json::array();
  for (const auto& r : s.offenders) j["offenders"].push_back(to_json(r));
  j["shells"] = json::array();
  for (const auto& sh : s.shells) {
    json o{{"k", sh.k}, {"count", sh.count}, {"min", to_json(sh.min)}};
    if (sh.min_norm_sq) o["min_norm_sq"] = to_string(*sh.min_norm_sq);
    j["shells"].push_back(o);
  }
  if (!s.probes.empty()) {
    j["probes"] = json::array();
    for (const auto& p : s.probes)
      j["probes"].push_back({{"eta", big_json(p.freq.eta)},
                             {"xi", big_json(p.freq.xi)},
                             {"log10_norm", p.log10_norm},
                             {"log10_size", p.log10_size},
                             {"zero", p.zero}});
  }
  return j;
}

std::string scatter_csv(const DivisorScan& s) {
  std::vector<std::pair<std::int64_t, double>> rows;
  rows.reserve(s.records.size());
  for (const auto& r : s.records) rows.emplace_back(r.size, r.norm);
  std::sort(rows.begin(), rows.end());
  std::ostringstream out;
  out.precision(17);
  out << "size,norm\n";
  for (const auto& [size, norm] : rows) out << size << ',' << norm << '\n';
  return out.str();
}

json to_json(const SDASearch& s) {
  json terms = json::array();
  for (const auto& t : s.witness.terms)
    terms.push_back({{"level", t.level},
                     {"p", big_json(t.p)},
                     {"q", big_json(t.q)},
                     {"bound", to_string(t.bound)},
                     {"log10_bound", t.log10_bound},
                     {"from_hint", t.from_hint}});
  return {{"found", s.found},
          {"mu", s.witness.mu},
          {"terms", terms},
          {"max_level", s.max_level},
          {"best_q", big_json(s.best_q)},
          {"best_exponent", s.best_exponent},
          {"max_exponent", s.max_exponent},
          {"Q_max", s.Q_max},
          {"ell_target", s.ell_target},
          {"hints_tried", s.hints_tried},
          {"digits", s.digits}};
}

json to_json(const DiophantineVerdict& v) {
  json j;
  j["tag"] = to_string(v.tag);
  if (v.q0) j["q0"] = big_json(*v.q0);
  if (v.tag == DiophantineVerdict::Tag::SDAWitnessed || v.mu != 1) j["mu"] = v.mu;
  j["witness"] = json::array();
  if (v.witness)
    for (const auto& t : v.witness->terms)
      j["witness"].push_back({{"p", big_json(t.p)}, {"q", big_json(t.q)}, {"bound", to_string(t.bound)}});
  j["precision_digits"] = v.precision_digits;
  j["search_bounds"] = {{"Q_max", v.Q_max}, {"ell_target", v.ell_target}, {"hints", v.hints}};
  j["solvable"] = v.solvable();
  return j;
}

json to_json(const RationalLowerBound& b) {
  json j{{"q0", big_json(b.q0)},
         {"C0", rational_json(b.C0)},
         {"C0_coarse", rational_json(b.C0_coarse)},
         {"argmin_r", b.argmin_r}};
  if (b.mu > 0) {
    j["mu"] = b.mu;
    j["D"] = rational_json(b.D);
    j["D_sharp"] = rational_json(b.D_sharp);
  }
  return j;
}

json to_json(const HomogeneousScan& s) {
  auto rec = [](const HomogeneousRecord& r) {
    return json{{"eta", r.eta}, {"xi", r.xi}, {"value", r.value}, {"size", r.size},
                {"local_exponent", r.local_exponent}};
  };
  json off = json::array();
  for (const auto& r : s.offenders) off.push_back(rec(r));
  return {{"H", s.H},
          {"X", s.X},
          {"examined", s.examined},
          {"zero_slices", s.zero_slices},
          {"min_record", rec(s.min_record)},
          {"lambda_hat", s.lambda_hat},
          {"C_hat", s.C_hat},
          {"worst_local_exponent", s.worst_local_exponent},
          {"plausibly_holds", s.plausibly_holds},
          {"offenders", off}};
}

json to_json(const GrowthFit& g) {
  json shells = json::array();
  for (const auto& [k, v] : g.shells) shells.push_back({{"k", k}, {"log2_max", v}});
  return {{"exponent", g.exponent},
          {"exponent_half", g.exponent_half},
          {"blowup_suspected", g.blowup_suspected},
          {"shells", shells}};
}

json to_json(const Witness& w) {
  json terms = json::array();
  for (const auto& c : w.checks)
    terms.push_back({{"level", c.level},
                     {"size", big_json(c.size)},
                     {"log10_size", c.log10_size},
                     {"log10_divisor", c.log10_divisor},
                     {"log10_amplitude", c.log10_amplitude},
                     {"log10_coeff", c.log10_coeff},
                     {"divisor_ok", c.divisor_ok},
                     {"decay_ok", c.decay_ok},
                     {"compat_ok", c.compat_ok},
                     {"representable", c.representable}});
  return {{"p", w.p},
          {"pivot", w.pivot},
          {"K", w.K.to_string()},
          {"delta", to_string(w.delta)},
          {"terms", terms},
          {"omitted", w.omitted},
          {"compat_ok", w.compat_ok}};
}

json to_json(const BlowupReport& r) {
  json terms = json::array();
  for (const auto& t : r.terms) {
    json o{{"level", t.level},
           {"log10_size", t.log10_size},
           {"log10_forced", t.log10_forced},
           {"local_exponent", t.local_exponent}};
    if (r.p >= 1) {
      o["log10_margin"] = t.log10_margin;
      o["kernel_identity"] = t.kernel_identity;
      o["pinned"] = t.pinned;
    }
    terms.push_back(o);
  }
  json j{{"p", r.p},
         {"forced_coeffs", terms},
         {"lambda_needed", r.lambda_needed},
         {"exceeds_cap", r.exceeds_cap},
         {"fit_lambda", r.fit_lambda},
         {"fit_log10_C", r.fit_log10_C},
         {"last_exceedance", r.last_exceedance},
         {"solve_confirms", r.solve_confirms}};
  if (r.p >= 1) j["margin_monotone"] = r.margin_monotone;
  return j;
}

json to_json(const PolyBoundFit& f) {
  return {{"C", f.C},
          {"kappa", f.kappa},
          {"kappa_inner", f.kappa_inner},
          {"kappa_outer", f.kappa_outer},
          {"super_polynomial", f.super_polynomial},
          {"pass", f.pass}};
}

json to_json(const ConditionDReport& r) {
  json per = json::array();
  for (const auto& pt : r.per_xi) {
    json o{{"xi", pt.xi}, {"sup_exp_im", std::exp(pt.log_sup)}, {"sup_im", pt.log_sup}};
    if (pt.log_partial) o["partial_im"] = *pt.log_partial;
    per.push_back(o);
  }
  json j{{"X", r.X},
         {"grid", r.grid},
         {"per_xi", per},
         {"im_identically_zero", r.im_identically_zero},
         {"fit", to_json(r.definition)},
         {"verdict", r.verdict ? "pass" : "fail"},
         {"source", r.source}};
  if (r.partial) {
    j["partial_fit"] = to_json(*r.partial);
    j["max_partial_S"] = r.max_partial();
  }
  return j;
}

json to_json(const ConjugationReport& r) {
  json trials = json::array();
  for (const auto& t : r.trials)
    trials.push_back({{"p", t.p},
                      {"grid", t.grid},
                      {"residual", t.residual},
                      {"residual_half", t.residual_half},
                      {"scale", t.scale}});
  json j{{"trials", trials},
         {"max_residual", r.max_residual},
         {"max_residual_half", r.max_residual_half},
         {"truncation_dominated", r.truncation_dominated},
         {"seed", r.seed}};
  j["condition_D"] = r.condition_D ? json(*r.condition_D) : json(nullptr);
  return j;
}

json to_json(const DecoupledClassification& c) {
  json per = json::object();
  for (const auto& ic : c.per_j)
    per[std::to_string(ic.j)] = {{"condition", ic.condition()},
                                 {"in_L", ic.in_L()},
                                 {"details",
                                  {{"p", growth_json(ic.p)},
                                   {"alpha", growth_json(ic.alpha)},
                                   {"beta", growth_json(ic.beta)},
                                   {"a", sign_json(ic.a)},
                                   {"b", sign_json(ic.b)}}}};
  return {{"per_j", per}, {"L_set", c.L}, {"reduction_applies", c.reduction_applies}, {"X", c.X}};
}

}  // namespace torcx
