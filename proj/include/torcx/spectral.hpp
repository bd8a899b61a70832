#pragma once

#include "torcx/operator.hpp"
#include "torcx/parallel.hpp"
#include "torcx/wedge.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace torcx {

struct SolverOptions {
  double eps = 1e-10;          // float zero tests, relative to the largest coefficient
  double eps_int = 1e-9;       // float integrality tolerance for c_xi0
  double compat_eps = 1e-9;    // float ||L^F|| <= eps ||L|| ||F||
  PivotPolicy pivot;
  int threads = 0;
  std::optional<double> lambda_hat;  // from a divisor scan
  std::optional<double> C_hat;
};

/// Integer vector k with c_xi0 = k, or nullopt when c_xi0 is not integral.
/// A nonzero imaginary part makes xi non-integral.
template <class S>
std::optional<IntVec> integral_vector(const std::vector<S>& c, double eps_int = 1e-9) {
  IntVec k;
  for (const auto& v : c) {
    if constexpr (ScalarTraits<S>::exact) {
      if (sgn(v.im) != 0 || v.re.get_den() != 1) return std::nullopt;
      if (!v.re.get_num().fits_slong_p()) return std::nullopt;
      k.push_back(v.re.get_num().get_si());
    } else {
      const double r = std::nearbyint(v.real());
      if (std::abs(v.imag()) > eps_int || std::abs(v.real() - r) > eps_int) return std::nullopt;
      k.push_back(static_cast<std::int64_t>(r));
    }
  }
  return k;
}

template <class S>
std::vector<S> symbol_values(const SystemSpec& spec, const IntVec& xi) {
  std::vector<S> p;
  for (const auto& s : spec.symbols) p.push_back(symbol_value<S>(s, xi));
  return p;
}

/// The xi-slice of f as a form with eta shifted by k: h^(eta + k) = f^(eta).
template <class S>
TrigPForm<S> shifted_slice(const TrigPForm<S>& f, const IntVec& xi, const IntVec& k) {
  TrigPForm<S> h(f.n(), f.N(), f.degree());
  for (const auto& [fr, s] : f.slices()) {
    if (fr.xi != xi) continue;
    Frequency g = fr;
    for (std::size_t j = 0; j < k.size(); ++j) g.eta[j] += k[j];
    h.set_slice(g, s);
  }
  return h;
}

struct CompatibilityReport {
  bool ok = true;
  double wedge_residual = 0.0;      // max ||L^ ^ f^|| over the support
  double exactness_residual = 0.0;  // max period / closedness defect on the sector
  std::vector<std::string> offenders;
  std::vector<IntVec> sector;       // support xi with integral c_xi0
};

/// f in E^p: L^ ^ f^ = 0 everywhere and f^(t, xi) e^{i psi_xi} exact for xi in Z.
template <class S>
CompatibilityReport compatibility_check(const TrigPForm<S>& f, const SystemSpec& spec,
                                        const SolverOptions& opt = {}) {
  CompatibilityReport r;
  const double scale = f.max_abs();
  WedgeTolerance wt{opt.compat_eps};
  for (const auto& [fr, s] : f.slices()) {
    const auto L = eval_symbol_slice<S>(spec, fr.eta, fr.xi);
    const auto LF = wedge(L, s);
    r.wedge_residual = std::max(r.wedge_residual, LF.max_abs());
    bool good;
    if constexpr (ScalarTraits<S>::exact)
      good = LF.is_literal_zero();
    else
      good = LF.max_abs() <= wt.compat_eps * std::max(L.max_abs(), 1.0) * scale;
    if (!good) r.offenders.push_back("L^f != 0 at " + fr.to_string());
  }
  for (const auto& xi : xi_support(f)) {
    auto k = integral_vector(symbol_values<S>(spec, xi), opt.eps_int);
    if (!k) continue;
    r.sector.push_back(xi);
    const auto h = shifted_slice(f, xi, *k);
    if (h.degree() > h.n()) continue;
    const auto ex = is_exact(h, opt.eps);
    r.exactness_residual = std::max({r.exactness_residual, ex.closed_residual, ex.mean_residual});
    if (!ex.exact)
      r.offenders.push_back("not exact on the integral sector at xi=" + to_string(xi) +
                            " (c_xi0=" + to_string(*k) + ")");
  }
  r.ok = r.offenders.empty();
  return r;
}

/// Per-xi solve on the integral sector: h = f e^{i psi}, d_t v = h, u = v e^{-i psi}.
template <class S>
std::vector<std::pair<Frequency, ConstPForm<S>>> solve_sector_slice(const TrigPForm<S>& f,
                                                                    const IntVec& xi,
                                                                    const IntVec& k,
                                                                    const SolverOptions& opt) {
  const auto h = shifted_slice(f, xi, k);
  std::vector<std::pair<Frequency, ConstPForm<S>>> out;
  if (h.is_literal_zero()) return out;
  const auto ex = is_exact(h, opt.eps);
  if (!ex.exact)
    throw CompatibilityError("exactness fails on the integral sector at xi=" + to_string(xi),
                             ex.offenders);
  for (const auto& [g, v] : ex.primitive->slices()) {
    Frequency fr = g;
    for (std::size_t j = 0; j < k.size(); ++j) fr.eta[j] -= k[j];
    out.emplace_back(fr, v);
  }
  return out;
}

/// Solution on the sector frequencies of f only.
template <class S>
TrigPForm<S> solve_integral_sector(const SystemSpec& spec, const TrigPForm<S>& f,
                                   const SolverOptions& opt = {}) {
  if (f.degree() < 1) throw DomainError("right-hand side must have degree >= 1");
  TrigPForm<S> u(f.n(), f.N(), f.degree() - 1);
  for (const auto& xi : xi_support(f)) {
    auto k = integral_vector(symbol_values<S>(spec, xi), opt.eps_int);
    if (!k) continue;
    for (auto& [fr, s] : solve_sector_slice(f, xi, *k, opt)) u.add_slice(fr, s);
  }
  return u;
}

/// Least-squares fit of log2(max ||u^||) against shell index over dyadic shells
/// 2^{k-1} < |(eta, xi)| <= 2^k.
struct GrowthFit {
  std::vector<std::pair<int, double>> shells;  // (k, log2 of the shell max)
  double exponent = 0.0;                       // over every shell
  double exponent_half = 0.0;                  // over shells with 2^k <= R/2
  bool blowup_suspected = false;
};

inline int shell_index(std::int64_t s) {
  int k = 0;
  while ((std::int64_t{1} << k) < s) ++k;
  return k;
}

GrowthFit fit_growth(const std::vector<std::pair<int, double>>& shells,
                     std::optional<double> lambda_hat);

template <class S>
struct SolveResult {
  TrigPForm<S> u;
  double residual_inf = 0.0;
  GrowthFit growth;
  std::vector<IntVec> sector;
  std::size_t bound_checked = 0;     // frequencies tested against C^-1 |.|^lambda ||f^||
  std::size_t bound_violations = 0;
  double worst_bound_ratio = 0.0;    // max ||u^|| / (C^-1 |.|^lambda ||f^||)
};

/// Solve L^p u = f on the support of f. Sector slices go through
/// solve_integral_sector; every other frequency is a wedge division by L^.
template <class S>
SolveResult<S> solve_constant(const SystemSpec& spec, const TrigPForm<S>& f,
                              const SolverOptions& opt = {}) {
  if (f.degree() < 1) throw DomainError("right-hand side must have degree >= 1");
  const auto rep = compatibility_check(f, spec, opt);
  if (!rep.ok) throw CompatibilityError("right-hand side is not in E^p", rep.offenders);

  const auto xis = xi_support(f);
  std::map<IntVec, std::vector<const std::pair<const Frequency, ConstPForm<S>>*>> by_xi;
  for (const auto& kv : f.slices()) by_xi[kv.first.xi].push_back(&kv);
  using Piece = std::vector<std::pair<Frequency, ConstPForm<S>>>;
  WedgeTolerance wt{opt.compat_eps};
  auto pieces = parallel_map<Piece>(xis.size(), opt.threads, [&](std::size_t i) {
    const IntVec& xi = xis[i];
    const auto p = symbol_values<S>(spec, xi);
    if (auto k = integral_vector(p, opt.eps_int)) return solve_sector_slice(f, xi, *k, opt);
    Piece out;
    for (const auto* it : by_xi.at(xi)) {
      const auto L = eval_symbol_slice<S>(spec, it->first.eta, xi);
      if (L.is_literal_zero())
        throw DomainError("L^ vanishes outside the integral sector at " + it->first.to_string());
      out.emplace_back(it->first, wedge_divide(L, it->second, opt.pivot, wt));
    }
    return out;
  });

  SolveResult<S> res;
  res.sector = rep.sector;
  res.u = TrigPForm<S>(f.n(), f.N(), f.degree() - 1);
  for (auto& piece : pieces)
    for (auto& [fr, s] : piece) res.u.add_slice(fr, s);
  res.residual_inf = max_diff(apply_operator(spec, res.u), f);

  std::map<int, double> shell_max;
  for (const auto& [fr, s] : res.u.slices()) {
    const auto sz = fr.sup_norm();
    if (sz == 0) continue;
    const int k = shell_index(sz);
    shell_max[k] = std::max(shell_max[k], s.max_abs());
  }
  std::vector<std::pair<int, double>> shells;
  for (const auto& [k, m] : shell_max)
    if (m > 0) shells.emplace_back(k, std::log2(m));
  res.growth = fit_growth(shells, opt.lambda_hat);

  if (opt.lambda_hat && opt.C_hat && *opt.C_hat > 0) {
    for (const auto& [fr, s] : f.slices()) {
      if (std::find(rep.sector.begin(), rep.sector.end(), fr.xi) != rep.sector.end()) continue;
      const double sz = static_cast<double>(fr.sup_norm());
      const double bound = std::pow(sz, *opt.lambda_hat) / *opt.C_hat * s.max_abs();
      const double got = res.u.slice(fr).max_abs();
      ++res.bound_checked;
      const double ratio = bound > 0 ? got / bound : 0.0;
      res.worst_bound_ratio = std::max(res.worst_bound_ratio, ratio);
      if (ratio > 1.0 + 1e-12) ++res.bound_violations;
    }
  }
  return res;
}

}  // namespace torcx
