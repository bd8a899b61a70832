#pragma once

#include "torcx/operator.hpp"
#include "torcx/parallel.hpp"
#include "torcx/symbol.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace torcx {

/// One frequency of the decomposition c(t, xi) = c_xi0 + d_t C_xi(t).
template <class S>
struct NormalFormSlice {
  IntVec xi;
  std::vector<S> p;   // p_j(xi)
  std::vector<S> c0;  // c_j0 p_j(xi)
  TrigPoly<S> C;      // zero mean
};

template <class S>
struct NormalFormData {
  int n = 0;
  int N = 0;
  std::int64_t X = 0;
  CoefficientProfile<S> profile;
  std::vector<S> means;  // c_j0
  bool decoupled = false;
  // decoupled only: primitives of a_j - a_j0 and b_j - b_j0 vanishing at t_j = 0
  std::vector<TrigPoly<S>> A;
  std::vector<TrigPoly<S>> B;
  std::map<IntVec, NormalFormSlice<S>> slices;

  const NormalFormSlice<S>& at(const IntVec& xi) const {
    auto it = slices.find(xi);
    if (it == slices.end())
      throw DomainError("xi=" + to_string(xi) + " lies outside the decomposed box |xi| <= " +
                        std::to_string(X));
    return it->second;
  }
};

/// Primitive of the zero-mean part of a poly in t_j alone, vanishing at t_j = 0.
template <class S>
TrigPoly<S> primitive_at_zero(const TrigPoly<S>& f, int j) {
  using T = ScalarTraits<S>;
  TrigPoly<S> out(f.n());
  S shift = T::zero();
  for (const auto& [eta, v] : f.coeffs()) {
    if (eta[j - 1] == 0) continue;
    const S w = v / (T::i() * T::from_int(eta[j - 1]));
    out.add(eta, w);
    shift -= w;
  }
  out.add(IntVec(f.n(), 0), shift);
  return out;
}

namespace detail {

template <class S>
double poly_scale(const TrigPoly<S>& m) {
  return std::max(m.max_abs() * static_cast<double>(std::max<std::int64_t>(m.bandwidth(), 1)), 1.0);
}

template <class S>
NormalFormSlice<S> decompose_at(const SystemSpec& spec, const CoefficientProfile<S>& prof,
                                const IntVec& xi, double rel_tol) {
  using T = ScalarTraits<S>;
  const int n = spec.n;
  NormalFormSlice<S> s;
  s.xi = xi;
  s.C = TrigPoly<S>(n);
  std::vector<TrigPoly<S>> m;
  double scale = 1.0;
  for (int j = 0; j < n; ++j) {
    s.p.push_back(symbol_value<S>(spec.symbols[j], xi));
    m.push_back(prof.c[j] * s.p[j]);
    s.c0.push_back(m[j].mean());
    scale = std::max(scale, poly_scale(m[j]));
  }
  std::map<IntVec, bool> support;
  for (const auto& mj : m)
    for (const auto& [eta, v] : mj.coeffs()) support[eta] = true;
  std::vector<std::string> bad;
  for (const auto& [eta, unused] : support) {
    int k = -1;
    for (int j = 0; j < n && k < 0; ++j)
      if (eta[j] != 0) k = j;
    if (k < 0) continue;
    const S Ck = m[k].coeff(eta) / (T::i() * T::from_int(eta[k]));
    for (int j = 0; j < n; ++j) {
      const S d = m[j].coeff(eta) - T::i() * T::from_int(eta[j]) * Ck;
      if (!T::is_zero(d, scale, rel_tol))
        bad.push_back("(xi=" + to_string(xi) + ", j=" + std::to_string(k + 1) +
                      ", k=" + std::to_string(j + 1) + ")");
    }
    s.C.add(eta, Ck);
  }
  if (!bad.empty())
    throw ClosednessError("c(t, xi) is not closed at xi=" + to_string(xi), std::move(bad));
  return s;
}

}  // namespace detail

/// c(t, xi) = c_xi0 + d_t C_xi with C_xi of zero mean, for every |xi|_inf <= X.
/// ClosednessError lists (xi, j, k) wherever p_j d_k c_j != p_k d_j c_k.
template <class S>
NormalFormData<S> decompose(const CoefficientProfile<S>& prof, const SystemSpec& spec,
                            std::int64_t X, double rel_tol = 1e-10, int threads = 0) {
  if (prof.n() != spec.n) throw DomainError("profile has " + std::to_string(prof.n()) +
                                            " coefficients for n=" + std::to_string(spec.n));
  if (X < 0) throw DomainError("decompose: X must be >= 0");
  NormalFormData<S> nf;
  nf.n = spec.n;
  nf.N = spec.N;
  nf.X = X;
  nf.profile = prof;
  nf.means = prof.means();
  nf.decoupled = prof.decoupled();

  std::vector<IntVec> xs;
  for_each_lattice_point(spec.N, X, [&](const IntVec& xi) { xs.push_back(xi); });
  std::vector<std::string> bad;
  for (const auto& xi : xs)
    for (auto [j, k] : closedness_defects(spec, prof, xi, rel_tol))
      bad.push_back("(xi=" + to_string(xi) + ", j=" + std::to_string(j) + ", k=" + std::to_string(k) + ")");
  if (!bad.empty()) throw ClosednessError("coefficient profile is not closed on the box", std::move(bad));

  auto out = parallel_map<NormalFormSlice<S>>(xs.size(), threads, [&](std::size_t i) {
    return detail::decompose_at(spec, prof, xs[i], rel_tol);
  });
  for (auto& s : out) nf.slices.emplace(s.xi, std::move(s));

  if (nf.decoupled)
    for (int j = 1; j <= nf.n; ++j) {
      nf.A.push_back(primitive_at_zero(real_part(prof.c[j - 1]), j));
      nf.B.push_back(primitive_at_zero(imag_part(prof.c[j - 1]), j));
    }
  return nf;
}

/// max |p_j c_j - c_j0 p_j - d_j C| over stored coefficients; 0 exactly in rational mode.
template <class S>
double decomposition_residual(const NormalFormData<S>& nf) {
  double r = 0.0;
  for (const auto& [xi, s] : nf.slices)
    for (int j = 1; j <= nf.n; ++j) {
      auto d = nf.profile.c[j - 1] * s.p[j - 1] - s.C.derivative(j);
      d.add(IntVec(nf.n, 0), -s.c0[j - 1]);
      r = std::max(r, d.max_abs());
    }
  return r;
}

template <class S>
NormalFormData<Complex> to_complex(const NormalFormData<S>& nf) {
  if constexpr (std::is_same_v<S, Complex>) {
    return nf;
  } else {
    NormalFormData<Complex> out;
    out.n = nf.n;
    out.N = nf.N;
    out.X = nf.X;
    out.profile = convert_profile<Complex>(nf.profile);
    for (const auto& m : nf.means) out.means.push_back(m.to_complex());
    out.decoupled = nf.decoupled;
    for (const auto& a : nf.A) out.A.push_back(convert_poly<Complex>(a));
    for (const auto& b : nf.B) out.B.push_back(convert_poly<Complex>(b));
    for (const auto& [xi, s] : nf.slices) {
      NormalFormSlice<Complex> c;
      c.xi = s.xi;
      for (const auto& v : s.p) c.p.push_back(v.to_complex());
      for (const auto& v : s.c0) c.c0.push_back(v.to_complex());
      c.C = convert_poly<Complex>(s.C);
      out.slices.emplace(xi, std::move(c));
    }
    return out;
  }
}

/// Constant profile c_j = c_j0.
template <class S>
CoefficientProfile<S> mean_profile(const CoefficientProfile<S>& prof) {
  CoefficientProfile<S> out;
  for (const auto& cj : prof.c) out.c.push_back(TrigPoly<S>::constant(prof.n(), cj.mean()));
  return out;
}

/// System whose symbols are c_j0 p_j: its constant-coefficient operator is the normal form.
SystemSpec normal_form_spec(const SystemSpec& spec, const std::vector<GaussRational>& means);

// ---------------------------------------------------------------- condition D

struct PolyBoundFit {
  double C = 1.0;
  double kappa = 0.0;
  double kappa_inner = 0.0;  // envelope slope in log-log over 1 <= |xi| <= X/4
  double kappa_outer = 0.0;  // over X/2 <= |xi| <= X
  bool super_polynomial = false;
  bool pass = true;
};

struct ConditionDPoint {
  IntVec xi;
  std::int64_t size = 0;          // |xi|_inf
  double log_sup = 0.0;           // sup_t Im C_xi(t)
  std::optional<double> log_partial;  // sum_j sup_zeta int_0^zeta Im M_j(s, xi) ds
};

struct ConditionDReport {
  std::int64_t X = 0;
  int grid = 0;
  std::vector<ConditionDPoint> per_xi;
  bool im_identically_zero = false;  // Im C_xi literally 0 for every xi
  PolyBoundFit definition;           // sup_t exp(Im C_xi) <= C |xi|^kappa
  std::optional<PolyBoundFit> partial;  // decoupled product of partial-integral sups
  bool verdict = false;
  std::string source;  // which bound carried the verdict
  double max_partial() const;
};

struct ConditionDOptions {
  int grid = 1024;       // per-axis points for one-dimensional sups
  int grid_nd = 32;      // minimum per-axis points for general profiles
  double zero_tol = 1e-14;
  int threads = 0;
};

namespace detail {
// sup over T^n of a real trig poly given by complex coefficients; sums of one-variable
// parts use points_1d per axis, anything else a grid of at least points_nd per axis
double grid_sup(const std::map<IntVec, Complex>& coeffs, int n, int points_1d, int points_nd);
// sup over zeta in [0, 2 pi] of int_0^zeta f, f a poly in t_j alone
double partial_integral_sup(const std::map<IntVec, Complex>& coeffs, int j, int points);
PolyBoundFit fit_poly_bound(const std::vector<std::pair<std::int64_t, double>>& pts, std::int64_t X);

template <class S>
std::map<IntVec, Complex> cleaned(const TrigPoly<S>& p, double zero_tol) {
  std::map<IntVec, Complex> out;
  const double cut = zero_tol * std::max(p.max_abs(), 1.0);
  for (const auto& [eta, v] : p.coeffs()) {
    const Complex z = ScalarTraits<S>::to_complex(v);
    if (ScalarTraits<S>::exact ? !ScalarTraits<S>::is_literal_zero(v) : std::abs(z) > cut) out.emplace(eta, z);
  }
  return out;
}
}  // namespace detail

/// Condition D at box scale. Always evaluates sup_t exp(Im C_xi) for the zero-mean C_xi;
/// decoupled profiles also get the partial-integral bound prod_j sup_zeta exp(int_0^zeta Im M_j).
/// The verdict passes when either bound is polynomial.
template <class S>
ConditionDReport check_condition_D(const NormalFormData<S>& nf, const ConditionDOptions& opt = {}) {
  ConditionDReport rep;
  rep.X = nf.X;
  rep.grid = opt.grid;
  std::vector<const NormalFormSlice<S>*> items;
  for (const auto& [xi, s] : nf.slices) items.push_back(&s);
  auto pts = parallel_map<ConditionDPoint>(items.size(), opt.threads, [&](std::size_t i) {
    const auto& s = *items[i];
    ConditionDPoint pt;
    pt.xi = s.xi;
    for (auto v : s.xi) pt.size = std::max<std::int64_t>(pt.size, std::llabs(v));
    const auto im = detail::cleaned(imag_part(s.C), opt.zero_tol);
    pt.log_sup = im.empty() ? 0.0 : detail::grid_sup(im, nf.n, opt.grid, opt.grid_nd);
    if (nf.decoupled) {
      double total = 0.0;
      for (int j = 1; j <= nf.n; ++j) {
        const auto imM = detail::cleaned(imag_part(nf.profile.c[j - 1] * s.p[j - 1]), opt.zero_tol);
        if (!imM.empty()) total += detail::partial_integral_sup(imM, j, opt.grid);
      }
      pt.log_partial = total;
    }
    return pt;
  });
  rep.im_identically_zero = true;
  std::vector<std::pair<std::int64_t, double>> def, part;
  for (auto& pt : pts) {
    if (pt.log_sup != 0.0) rep.im_identically_zero = false;
    if (pt.size > 0) {
      def.emplace_back(pt.size, pt.log_sup);
      if (pt.log_partial) part.emplace_back(pt.size, *pt.log_partial);
    }
    rep.per_xi.push_back(std::move(pt));
  }
  rep.definition = detail::fit_poly_bound(def, nf.X);
  if (nf.decoupled) rep.partial = detail::fit_poly_bound(part, nf.X);
  if (rep.definition.pass) {
    rep.verdict = true;
    rep.source = "sup_t exp(Im C_xi)";
  } else if (rep.partial && rep.partial->pass) {
    rep.verdict = true;
    rep.source = "decoupled partial integrals";
  } else {
    rep.source = "none";
  }
  return rep;
}

// ---------------------------------------------------------------- Psi

enum class PsiDirection { Forward, Inverse };

struct PsiOptions {
  int cap_factor = 4;      // output bandwidth <= cap_factor * max(H of u, X of the decomposition)
  double eps = 1e-13;      // relative size of coefficients counted as bandwidth
  double prune = 1e-15;    // coefficients below prune * max are dropped
  int threads = 0;
};

struct PsiStats {
  int max_grid = 0;
  std::int64_t max_output_bandwidth = 0;
  double max_tail = 0.0;   // largest relative coefficient outside the kept band
};

/// Forward multiplies u^(t, xi) by e^{-i C_xi(t)}, inverse by e^{+i C_xi(t)}.
/// ResourceError when a product needs more than cap_factor times the box bandwidth.
TrigPForm<Complex> psi_apply(const NormalFormData<Complex>& nf, const TrigPForm<Complex>& u,
                             PsiDirection dir, const PsiOptions& opt = {}, PsiStats* stats = nullptr);

/// Effective bandwidth of e^{sign i C} (coefficients above eps relative to the largest).
std::int64_t exp_bandwidth(const TrigPoly<Complex>& C, int sign, std::int64_t cap, double eps = 1e-13);

// ---------------------------------------------------------------- conjugation

struct ConjugationOptions {
  int trials = 20;
  std::vector<int> degrees;  // empty = 0..n-1
  std::int64_t H = 8;
  std::int64_t X = 8;
  int modes = 4;
  std::uint64_t seed = 1;
  int grid = 0;  // per-axis grid; 0 picks the smallest power of two that resolves Psi^{-1} u
  int threads = 0;
};

struct ConjugationTrial {
  int p = 0;
  int grid = 0;
  double residual = 0.0;       // |Psi L0 Psi^{-1} u - L u|_inf on coefficients
  double residual_half = 0.0;  // same on the half-resolution grid
  double scale = 0.0;          // |L u|_inf
};

struct ConjugationReport {
  std::vector<ConjugationTrial> trials;
  double max_residual = 0.0;
  double max_residual_half = 0.0;
  bool truncation_dominated = false;  // halving the grid does not improve the residual
  std::optional<bool> condition_D;
  std::uint64_t seed = 0;
};

/// Psi o L0^p o Psi^{-1} against L^p on random trig p-forms.
ConjugationReport verify_conjugation(const CoefficientProfile<Complex>& prof, const SystemSpec& spec,
                                     const ConjugationOptions& opt = {},
                                     std::optional<bool> condition_D = std::nullopt);

/// Residual of the conjugation identity for one form on a fixed per-axis grid.
double conjugation_residual(const NormalFormData<Complex>& nf, const SystemSpec& spec,
                            const TrigPForm<Complex>& u, int grid);

// ---------------------------------------------------------------- class L

struct SignReport {
  bool changes_sign = false;
  bool certified = false;  // grid verdict confirmed by interval bounds
  double min = 0.0;
  double max = 0.0;
};

/// Sign behaviour of a real trig poly in t_j on a grid, with Lipschitz-interval confirmation
/// for bandwidth <= 64.
SignReport sign_report(const TrigPoly<Complex>& f, int j, int points = 1024);

struct IndexClass {
  int j = 0;
  GrowthClass p;
  GrowthClass alpha;
  GrowthClass beta;
  SignReport a;
  SignReport b;
  bool cond_i = false;
  bool cond_ii = false;
  bool cond_iii = false;
  bool in_L() const { return cond_i || cond_ii || cond_iii; }
  std::string condition() const;
};

struct DecoupledClassification {
  std::vector<IndexClass> per_j;
  std::vector<int> L;
  bool reduction_applies = false;
  std::int64_t X = 0;
};

struct ClassifyOptions {
  std::int64_t X = 4096;
  double margin = 0.25;
  int points = 1024;
};

/// Membership of each j in the class L (log-growth conditions (i)-(iii)).
/// DomainError unless every c_j depends on t_j alone.
DecoupledClassification classify_decoupled(const CoefficientProfile<Complex>& prof,
                                           const SystemSpec& spec, const ClassifyOptions& opt = {});

}  // namespace torcx
