#pragma once

#include "torcx/symbol.hpp"
#include "torcx/trig_form.hpp"
#include "torcx/trig_poly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace torcx {

template <class S>
S symbol_value(const ToroidalSymbol& p, const IntVec& xi) {
  if constexpr (ScalarTraits<S>::exact) {
    auto v = p.exact(xi);
    if (!v) throw DomainError("symbol '" + p.description + "' has no exact value at xi=" + to_string(xi));
    return *v;
  } else {
    return p(xi);
  }
}

/// Coefficients c_j(t) of L_j = D_{t_j} + c_j(t) P_j(D_x).
template <class S>
struct CoefficientProfile {
  std::vector<TrigPoly<S>> c;

  static CoefficientProfile constant_one(int n) {
    CoefficientProfile p;
    for (int j = 0; j < n; ++j) p.c.push_back(TrigPoly<S>::constant(n, ScalarTraits<S>::one()));
    return p;
  }
  int n() const { return static_cast<int>(c.size()); }
  /// Every c_j depends on t_j alone.
  bool decoupled() const {
    for (int j = 1; j <= n(); ++j)
      if (!c[j - 1].depends_only_on(j)) return false;
    return true;
  }
  bool is_constant() const {
    for (const auto& cj : c)
      for (const auto& [eta, v] : cj.coeffs())
        for (auto e : eta)
          if (e != 0) return false;
    return true;
  }
  std::int64_t bandwidth() const {
    std::int64_t b = 0;
    for (const auto& cj : c) b = std::max(b, cj.bandwidth());
    return b;
  }
  std::vector<S> means() const {
    std::vector<S> m;
    for (const auto& cj : c) m.push_back(cj.mean());
    return m;
  }
};

template <class S>
CoefficientProfile<S> convert_profile(const CoefficientProfile<GaussRational>& p) {
  CoefficientProfile<S> out;
  for (const auto& cj : p.c) out.c.push_back(convert_poly<S>(cj));
  return out;
}

/// Offending pairs (j, k) where p_j(xi) d_k c_j != p_k(xi) d_j c_k (tolerance in float mode).
template <class S>
std::vector<std::pair<int, int>> closedness_defects(const SystemSpec& spec,
                                                    const CoefficientProfile<S>& prof,
                                                    const IntVec& xi, double rel_tol = 1e-10) {
  std::vector<std::pair<int, int>> bad;
  std::vector<S> p;
  for (const auto& s : spec.symbols) p.push_back(symbol_value<S>(s, xi));
  double scale = 0.0;
  for (int j = 0; j < spec.n; ++j)
    scale = std::max(scale, ScalarTraits<S>::abs(p[j]) * prof.c[j].max_abs() *
                                static_cast<double>(std::max<std::int64_t>(prof.c[j].bandwidth(), 1)));
  for (int j = 1; j <= spec.n; ++j)
    for (int k = j + 1; k <= spec.n; ++k) {
      const auto d = prof.c[j - 1].derivative(k) * p[j - 1] - prof.c[k - 1].derivative(j) * p[k - 1];
      for (const auto& [eta, v] : d.coeffs())
        if (!ScalarTraits<S>::is_zero(v, scale, rel_tol)) {
          bad.emplace_back(j, k);
          break;
        }
    }
  return bad;
}

/// Distinct xi values in the support, ordered.
template <class S>
std::vector<IntVec> xi_support(const TrigPForm<S>& u) {
  std::vector<IntVec> out;
  for (const auto& [f, s] : u.slices())
    if (out.empty() || out.back() != f.xi) {
      if (std::find(out.begin(), out.end(), f.xi) == out.end()) out.push_back(f.xi);
    }
  std::sort(out.begin(), out.end());
  return out;
}

/// L^p u = d_t u + i sum_j c_j(t) p_j(D_x) dt_j ^ u, assembled on Fourier coefficients.
/// Exact in rational mode.
template <class S>
TrigPForm<S> apply_operator(const SystemSpec& spec, const CoefficientProfile<S>* prof,
                            const TrigPForm<S>& u) {
  using T = ScalarTraits<S>;
  if (u.n() != spec.n || u.N() != spec.N) throw DomainError("form does not match the system");
  if (prof && prof->n() != spec.n) throw DomainError("profile does not match the system");
  TrigPForm<S> out(u.n(), u.N(), u.degree() + 1);
  if (u.degree() + 1 > u.n()) return out;
  IntVec cur_xi;
  std::vector<S> p;
  bool have = false;
  for (const auto& [f, s] : u.slices()) {
    if (!have || f.xi != cur_xi) {
      cur_xi = f.xi;
      p.clear();
      for (const auto& sym : spec.symbols) p.push_back(symbol_value<S>(sym, cur_xi));
      have = true;
    }
    if (!f.eta_is_zero()) out.add_slice(f, wedge(eta_one_form<S>(f.eta), s));
    for (int j = 1; j <= spec.n; ++j) {
      if (T::is_literal_zero(p[j - 1])) continue;
      const auto term = wedge(ConstPForm<S>::basis(spec.n, MultiIndex{j}, T::i() * p[j - 1]), s);
      if (term.is_literal_zero()) continue;
      if (!prof) {
        out.add_slice(f, term);
        continue;
      }
      for (const auto& [eta_c, cv] : prof->c[j - 1].coeffs()) {
        Frequency g = f;
        for (int k = 0; k < spec.n; ++k) g.eta[k] += eta_c[k];
        out.add_slice(g, term * cv);
      }
    }
  }
  return out;
}

/// Constant-coefficient operator, (L^p u)^(eta, xi) = L^(eta, xi) ^ u^(eta, xi).
template <class S>
TrigPForm<S> apply_operator(const SystemSpec& spec, const TrigPForm<S>& u) {
  return apply_operator<S>(spec, nullptr, u);
}

}  // namespace torcx
