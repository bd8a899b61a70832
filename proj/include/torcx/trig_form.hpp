#pragma once

#include "torcx/const_form.hpp"
#include "torcx/wedge.hpp"

#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace torcx {

using IntVec = std::vector<std::int64_t>;

/// Joint frequency (eta, xi) in Z^n x Z^N.
struct Frequency {
  IntVec eta;
  IntVec xi;

  /// |(eta, xi)| in the sup norm.
  std::int64_t sup_norm() const {
    std::int64_t m = 0;
    for (auto v : eta) m = std::max(m, static_cast<std::int64_t>(std::llabs(v)));
    for (auto v : xi) m = std::max(m, static_cast<std::int64_t>(std::llabs(v)));
    return m;
  }
  bool eta_is_zero() const {
    for (auto v : eta)
      if (v != 0) return false;
    return true;
  }
  Frequency negated() const {
    Frequency f = *this;
    for (auto& v : f.eta) v = -v;
    for (auto& v : f.xi) v = -v;
    return f;
  }
  std::string to_string() const;

  auto operator<=>(const Frequency&) const = default;
  bool operator==(const Frequency&) const = default;
};

std::string to_string(const IntVec& v);

/// Truncation box: |eta|_inf <= H, |xi|_inf <= X.
struct FrequencyBox {
  std::int64_t H = 0;
  std::int64_t X = 0;

  FrequencyBox() = default;
  FrequencyBox(std::int64_t h, std::int64_t x) : H(h), X(x) {
    if (h < 0 || x < 0) throw DomainError("frequency box bounds must be >= 0");
  }
  bool contains(const Frequency& f) const {
    for (auto v : f.eta)
      if (std::llabs(v) > H) return false;
    for (auto v : f.xi)
      if (std::llabs(v) > X) return false;
    return true;
  }
};

/// Enumerate every integer vector in [-B, B]^d in lexicographic order.
template <class Fn>
void for_each_lattice_point(int d, std::int64_t B, Fn&& fn) {
  IntVec v(d, -B);
  if (d == 0) {
    fn(v);
    return;
  }
  while (true) {
    fn(v);
    int i = d - 1;
    while (i >= 0 && v[i] == B) {
      v[i] = -B;
      --i;
    }
    if (i < 0) return;
    ++v[i];
  }
}

/// p-form on T^{n+N} with finitely many Fourier modes:
/// u = sum_K sum_{eta,xi} u_K(eta,xi) e^{i(eta.t + xi.x)} dt_K.
template <class S>
class TrigPForm {
 public:
  using Traits = ScalarTraits<S>;
  using Slice = ConstPForm<S>;

  TrigPForm() = default;
  TrigPForm(int n, int N, int degree) : n_(n), N_(N), degree_(degree) {
    if (n < 0 || N < 0 || degree < 0) throw DomainError("negative dimension or degree");
  }

  int n() const { return n_; }
  int N() const { return N_; }
  int degree() const { return degree_; }
  const std::map<Frequency, Slice>& slices() const { return slices_; }
  bool is_literal_zero() const { return slices_.empty(); }

  Slice slice(const Frequency& f) const {
    auto it = slices_.find(f);
    return it == slices_.end() ? Slice(n_, degree_) : it->second;
  }

  void set_slice(const Frequency& f, Slice s) {
    check_freq(f);
    if (s.dim() != n_ || s.degree() != degree_) throw DomainError("slice shape mismatch");
    if (s.is_literal_zero())
      slices_.erase(f);
    else
      slices_[f] = std::move(s);
  }

  void add(const Frequency& f, const MultiIndex& K, const S& value) {
    check_freq(f);
    auto it = slices_.find(f);
    if (it == slices_.end()) it = slices_.emplace(f, Slice(n_, degree_)).first;
    it->second.add_to(K, value);
    if (it->second.is_literal_zero()) slices_.erase(it);
  }

  void add_slice(const Frequency& f, const Slice& s) {
    check_freq(f);
    auto it = slices_.find(f);
    if (it == slices_.end()) {
      set_slice(f, s);
      return;
    }
    it->second += s;
    if (it->second.is_literal_zero()) slices_.erase(it);
  }

  S coeff(const Frequency& f, const MultiIndex& K) const {
    auto it = slices_.find(f);
    return it == slices_.end() ? Traits::zero() : it->second.coeff(K);
  }

  std::size_t term_count() const {
    std::size_t c = 0;
    for (const auto& [f, s] : slices_) c += s.terms().size();
    return c;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& [f, s] : slices_) m = std::max(m, s.max_abs());
    return m;
  }

  bool is_zero(double scale = 1.0, double rel_tol = 1e-10) const {
    for (const auto& [f, s] : slices_)
      if (!s.is_zero(scale, rel_tol)) return false;
    return true;
  }

  /// Smallest box containing the support.
  FrequencyBox support_box() const {
    FrequencyBox b;
    for (const auto& [f, s] : slices_) {
      for (auto v : f.eta) b.H = std::max<std::int64_t>(b.H, std::llabs(v));
      for (auto v : f.xi) b.X = std::max<std::int64_t>(b.X, std::llabs(v));
    }
    return b;
  }

  /// Hermitian symmetry coeff(-eta,-xi) = conj(coeff(eta,xi)), within tolerance.
  bool is_real(double rel_tol = 1e-12) const {
    const double scale = max_abs();
    for (const auto& [f, s] : slices_) {
      const Slice mirror = slice(f.negated());
      for (const auto& K : all_multi_indices(n_, degree_)) {
        const S d = mirror.coeff(K) - Traits::conj(s.coeff(K));
        if (!Traits::is_zero(d, scale, rel_tol)) return false;
      }
    }
    return true;
  }

  TrigPForm& operator+=(const TrigPForm& o) {
    check_same(o);
    for (const auto& [f, s] : o.slices_) add_slice(f, s);
    return *this;
  }
  TrigPForm& operator-=(const TrigPForm& o) {
    check_same(o);
    for (const auto& [f, s] : o.slices_) add_slice(f, -s);
    return *this;
  }
  TrigPForm& operator*=(const S& c) {
    for (auto it = slices_.begin(); it != slices_.end();) {
      it->second *= c;
      if (it->second.is_literal_zero())
        it = slices_.erase(it);
      else
        ++it;
    }
    return *this;
  }
  friend TrigPForm operator+(TrigPForm a, const TrigPForm& b) { return a += b; }
  friend TrigPForm operator-(TrigPForm a, const TrigPForm& b) { return a -= b; }
  friend TrigPForm operator*(TrigPForm a, const S& c) { return a *= c; }
  friend bool operator==(const TrigPForm& a, const TrigPForm& b) {
    return a.n_ == b.n_ && a.N_ == b.N_ && a.degree_ == b.degree_ && a.slices_ == b.slices_;
  }

  /// Drop coefficients with |c| <= rel_tol * max_abs (float cleanup).
  void prune(double rel_tol) {
    const double cut = rel_tol * max_abs();
    std::map<Frequency, Slice> kept;
    for (const auto& [f, s] : slices_) {
      Slice t(n_, degree_);
      for (const auto& [K, v] : s.terms())
        if (Traits::abs(v) > cut) t.set(K, v);
      if (!t.is_literal_zero()) kept.emplace(f, std::move(t));
    }
    slices_ = std::move(kept);
  }

 private:
  void check_freq(const Frequency& f) const {
    if (static_cast<int>(f.eta.size()) != n_ || static_cast<int>(f.xi.size()) != N_)
      throw DomainError("frequency " + f.to_string() + " has wrong dimensions");
  }
  void check_same(const TrigPForm& o) const {
    if (o.n_ != n_ || o.N_ != N_ || o.degree_ != degree_) throw DomainError("form shape mismatch");
  }

  int n_ = 0;
  int N_ = 0;
  int degree_ = 0;
  std::map<Frequency, Slice> slices_;
};

/// Largest coefficient of a - b.
template <class S>
double max_diff(const TrigPForm<S>& a, const TrigPForm<S>& b) {
  return (a - b).max_abs();
}

template <class S>
TrigPForm<S> convert_trig(const TrigPForm<GaussRational>& u) {
  TrigPForm<S> out(u.n(), u.N(), u.degree());
  for (const auto& [f, s] : u.slices()) out.set_slice(f, convert_form<S>(s));
  return out;
}

/// i sum_j eta_j dt_j.
template <class S>
ConstPForm<S> eta_one_form(const IntVec& eta) {
  using T = ScalarTraits<S>;
  ConstPForm<S> L(static_cast<int>(eta.size()), 1);
  for (std::size_t j = 0; j < eta.size(); ++j)
    if (eta[j] != 0) L.set(MultiIndex{static_cast<int>(j) + 1}, T::i() * T::from_int(eta[j]));
  return L;
}

/// d_t u; frequency-wise (d_t u)^ = (i sum eta_j dt_j) ^ u^.
template <class S>
TrigPForm<S> exterior_derivative(const TrigPForm<S>& u) {
  TrigPForm<S> out(u.n(), u.N(), u.degree() + 1);
  if (u.degree() + 1 > u.n()) return out;
  for (const auto& [f, s] : u.slices()) {
    if (f.eta_is_zero()) continue;
    out.set_slice(f, wedge(eta_one_form<S>(f.eta), s));
  }
  return out;
}

template <class S>
struct ExactnessResult {
  bool exact = false;
  double closed_residual = 0.0;  // max |d_t g|
  double mean_residual = 0.0;    // max |g(0, xi)|
  std::vector<std::string> offenders;
  std::optional<TrigPForm<S>> primitive;
};

/// g = d_t v for some trig form v iff d_t g = 0 and every eta = 0 coefficient
/// vanishes. The primitive is built frequency by frequency by wedge division.
template <class S>
ExactnessResult<S> is_exact(const TrigPForm<S>& g, double rel_tol = 1e-10) {
  if (g.degree() < 1) throw DomainError("is_exact: degree must be >= 1");
  ExactnessResult<S> r;
  const double scale = g.max_abs();
  const auto dg = exterior_derivative(g);
  r.closed_residual = dg.max_abs();
  for (const auto& [f, s] : dg.slices())
    if (!s.is_zero(scale, rel_tol)) r.offenders.push_back("d_t at " + f.to_string());
  for (const auto& [f, s] : g.slices()) {
    if (!f.eta_is_zero()) continue;
    r.mean_residual = std::max(r.mean_residual, s.max_abs());
    if (!s.is_zero(scale, rel_tol)) r.offenders.push_back("period at " + f.to_string());
  }
  r.exact = r.offenders.empty();
  if (!r.exact) return r;

  TrigPForm<S> v(g.n(), g.N(), g.degree() - 1);
  WedgeTolerance tol;
  tol.compat_eps = std::max(tol.compat_eps, rel_tol);
  for (const auto& [f, s] : g.slices()) {
    if (f.eta_is_zero()) continue;
    v.set_slice(f, wedge_divide(eta_one_form<S>(f.eta), s, PivotPolicy{}, tol));
  }
  r.primitive = std::move(v);
  return r;
}

}  // namespace torcx
