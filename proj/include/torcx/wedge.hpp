#pragma once

#include "torcx/const_form.hpp"

#include <optional>

namespace torcx {

/// How wedge_divide picks the index mu it divides by.
struct PivotPolicy {
  enum class Mode { GlobalMax, Fixed };
  Mode mode = Mode::GlobalMax;
  int fixed_mu = 1;  // used when mode == Fixed

  static PivotPolicy global_max() { return {}; }
  static PivotPolicy fixed(int mu) { return {Mode::Fixed, mu}; }
};

struct WedgeTolerance {
  double compat_eps = 1e-9;  // float mode: ||L^F|| <= eps ||L|| ||F||
};

/// Index mu (1-based) maximizing |L_mu|; smallest index on ties. L must be nonzero.
template <class S>
int max_pivot(const ConstPForm<S>& L) {
  using T = ScalarTraits<S>;
  std::optional<typename T::Magnitude> best;
  int mu = 0;
  for (const auto& [K, v] : L.terms()) {
    auto m = T::magnitude(v);
    if (!best || m > *best) {
      best = m;
      mu = K[0];
    }
  }
  if (mu == 0) throw DomainError("pivot requested for the zero 1-form");
  return mu;
}

template <class S>
double wedge_residual(const ConstPForm<S>& L, const ConstPForm<S>& F) {
  return wedge(L, F).max_abs();
}

/// True iff L ^ F vanishes (exactly, or within the relative tolerance in float mode).
template <class S>
bool wedge_compat(const ConstPForm<S>& L, const ConstPForm<S>& F, WedgeTolerance tol = {}) {
  if (L.degree() != 1) throw DomainError("wedge_compat: L must be a 1-form");
  const auto LF = wedge(L, F);
  if constexpr (ScalarTraits<S>::exact) {
    return LF.is_literal_zero();
  } else {
    return LF.max_abs() <= tol.compat_eps * L.max_abs() * F.max_abs();
  }
}

template <class S>
struct WedgeDivision {
  ConstPForm<S> U;
  int pivot = 0;
};

/// Particular solution U0 of L ^ U = F, U0 = (L_mu)^{-1} i_{e_mu} F.
template <class S>
WedgeDivision<S> wedge_divide_ex(const ConstPForm<S>& L, const ConstPForm<S>& F,
                                 PivotPolicy policy = {}, WedgeTolerance tol = {}) {
  if (L.degree() != 1) throw DomainError("wedge_divide: L must be a 1-form");
  if (L.dim() != F.dim()) throw DomainError("wedge_divide: ambient dimension mismatch");
  if (F.degree() < 1) throw DomainError("wedge_divide: F must have degree >= 1");
  if (L.is_literal_zero() || L.is_zero(0.0, 0.0))
    throw DomainError("wedge_divide: L is the zero 1-form");
  if (!wedge_compat(L, F, tol))
    throw PreconditionError("wedge_divide: L ^ F != 0", wedge_residual(L, F));

  int mu = 0;
  if (policy.mode == PivotPolicy::Mode::Fixed) {
    mu = policy.fixed_mu;
    if (mu < 1 || mu > L.dim()) throw DomainError("fixed pivot out of range");
    if (ScalarTraits<S>::is_literal_zero(L.coeff(MultiIndex{mu})))
      throw DomainError("fixed pivot has L_mu = 0");
  } else {
    mu = max_pivot(L);
  }
  const S inv = ScalarTraits<S>::one() / L.coeff(MultiIndex{mu});
  return {interior(mu, F) * inv, mu};
}

template <class S>
ConstPForm<S> wedge_divide(const ConstPForm<S>& L, const ConstPForm<S>& F,
                           PivotPolicy policy = {}, WedgeTolerance tol = {}) {
  return wedge_divide_ex(L, F, policy, tol).U;
}

/// U0 + L ^ W. For p = 0 the space of W is {0}, so W is ignored.
template <class S>
ConstPForm<S> wedge_general(const ConstPForm<S>& L, const ConstPForm<S>& F,
                            const std::optional<ConstPForm<S>>& W, PivotPolicy policy = {},
                            WedgeTolerance tol = {}) {
  ConstPForm<S> U = wedge_divide(L, F, policy, tol);
  const int p = F.degree() - 1;
  if (p == 0 || !W) return U;
  if (W->degree() != p - 1 || W->dim() != L.dim())
    throw DomainError("wedge_general: W must have degree p-1");
  return U + wedge(L, *W);
}

}  // namespace torcx
