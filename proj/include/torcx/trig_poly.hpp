#pragma once

#include "torcx/scalar.hpp"
#include "torcx/trig_form.hpp"

#include <cmath>
#include <map>

namespace torcx {

/// Trigonometric polynomial on T^n: sum_eta c(eta) e^{i eta.t}.
template <class S>
class TrigPoly {
 public:
  using Traits = ScalarTraits<S>;

  TrigPoly() = default;
  explicit TrigPoly(int n) : n_(n) {}

  static TrigPoly constant(int n, S value) {
    TrigPoly p(n);
    p.add(IntVec(n, 0), std::move(value));
    return p;
  }

  int n() const { return n_; }
  const std::map<IntVec, S>& coeffs() const { return coeffs_; }
  bool is_literal_zero() const { return coeffs_.empty(); }

  S coeff(const IntVec& eta) const {
    auto it = coeffs_.find(eta);
    return it == coeffs_.end() ? Traits::zero() : it->second;
  }
  S mean() const { return coeff(IntVec(n_, 0)); }

  void add(const IntVec& eta, const S& v) {
    if (static_cast<int>(eta.size()) != n_) throw DomainError("trig poly frequency has wrong length");
    auto it = coeffs_.find(eta);
    if (it == coeffs_.end()) {
      if (!Traits::is_literal_zero(v)) coeffs_.emplace(eta, v);
      return;
    }
    it->second += v;
    if (Traits::is_literal_zero(it->second)) coeffs_.erase(it);
  }

  /// max |eta|_inf over the support.
  std::int64_t bandwidth() const {
    std::int64_t b = 0;
    for (const auto& [eta, v] : coeffs_)
      for (auto e : eta) b = std::max<std::int64_t>(b, std::llabs(e));
    return b;
  }

  /// Depends on t_j alone (every support frequency is a multiple of e_j).
  bool depends_only_on(int j) const {
    for (const auto& [eta, v] : coeffs_)
      for (int k = 0; k < n_; ++k)
        if (k != j - 1 && eta[k] != 0) return false;
    return true;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& [eta, v] : coeffs_) m = std::max(m, Traits::abs(v));
    return m;
  }

  /// d/dt_k (k is 1-based).
  TrigPoly derivative(int k) const {
    TrigPoly d(n_);
    for (const auto& [eta, v] : coeffs_)
      if (eta[k - 1] != 0) d.add(eta, Traits::i() * Traits::from_int(eta[k - 1]) * v);
    return d;
  }

  Complex operator()(const std::vector<double>& t) const {
    Complex s{};
    for (const auto& [eta, v] : coeffs_) {
      double phase = 0.0;
      for (int k = 0; k < n_; ++k) phase += static_cast<double>(eta[k]) * t[k];
      s += Traits::to_complex(v) * std::polar(1.0, phase);
    }
    return s;
  }

  /// c(-eta) = conj c(eta).
  bool is_real(double tol = 0.0) const {
    for (const auto& [eta, v] : coeffs_) {
      IntVec m = eta;
      for (auto& e : m) e = -e;
      if (Traits::abs(coeff(m) - Traits::conj(v)) > tol) return false;
    }
    return true;
  }

  TrigPoly& operator+=(const TrigPoly& o) {
    for (const auto& [eta, v] : o.coeffs_) add(eta, v);
    return *this;
  }
  TrigPoly& operator-=(const TrigPoly& o) {
    for (const auto& [eta, v] : o.coeffs_) add(eta, -v);
    return *this;
  }
  TrigPoly& operator*=(const S& s) {
    std::map<IntVec, S> out;
    for (const auto& [eta, v] : coeffs_) {
      S w = v * s;
      if (!Traits::is_literal_zero(w)) out.emplace(eta, std::move(w));
    }
    coeffs_ = std::move(out);
    return *this;
  }
  friend TrigPoly operator+(TrigPoly a, const TrigPoly& b) { return a += b; }
  friend TrigPoly operator-(TrigPoly a, const TrigPoly& b) { return a -= b; }
  friend TrigPoly operator*(TrigPoly a, const S& s) { return a *= s; }
  friend TrigPoly operator*(const TrigPoly& a, const TrigPoly& b) {
    TrigPoly out(a.n_);
    for (const auto& [ea, va] : a.coeffs_)
      for (const auto& [eb, vb] : b.coeffs_) {
        IntVec e(ea.size());
        for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
        out.add(e, va * vb);
      }
    return out;
  }
  friend bool operator==(const TrigPoly& a, const TrigPoly& b) {
    return a.n_ == b.n_ && a.coeffs_ == b.coeffs_;
  }

 private:
  int n_ = 0;
  std::map<IntVec, S> coeffs_;
};

template <class S>
TrigPoly<S> convert_poly(const TrigPoly<GaussRational>& p) {
  TrigPoly<S> out(p.n());
  for (const auto& [eta, v] : p.coeffs()) out.add(eta, ScalarTraits<S>::from_gauss(v));
  return out;
}

/// Re P as a trig poly: coefficients (c(eta) + conj c(-eta)) / 2.
template <class S>
TrigPoly<S> real_part(const TrigPoly<S>& p) {
  using T = ScalarTraits<S>;
  TrigPoly<S> out(p.n());
  const S half = T::one() / T::from_int(2);
  for (const auto& [eta, v] : p.coeffs()) {
    IntVec m = eta;
    for (auto& e : m) e = -e;
    out.add(eta, v * half);
    out.add(m, T::conj(v) * half);
  }
  return out;
}

/// Im P: coefficients (c(eta) - conj c(-eta)) / 2i.
template <class S>
TrigPoly<S> imag_part(const TrigPoly<S>& p) {
  using T = ScalarTraits<S>;
  TrigPoly<S> out(p.n());
  const S k = T::one() / (T::from_int(2) * T::i());
  for (const auto& [eta, v] : p.coeffs()) {
    IntVec m = eta;
    for (auto& e : m) e = -e;
    out.add(eta, v * k);
    out.add(m, -(T::conj(v) * k));
  }
  return out;
}

/// a0 + sum_k (a_k cos(k t_j) + b_k sin(k t_j)) as a trig poly in t_j on T^n.
inline TrigPoly<GaussRational> fourier_1d(int n, int j, const Rational& a0,
                                          const std::vector<Rational>& a,
                                          const std::vector<Rational>& b = {}) {
  TrigPoly<GaussRational> p(n);
  p.add(IntVec(n, 0), GaussRational(a0));
  const Rational half(1, 2);
  for (std::size_t k = 0; k < std::max(a.size(), b.size()); ++k) {
    const Rational ak = k < a.size() ? a[k] : Rational(0);
    const Rational bk = k < b.size() ? b[k] : Rational(0);
    IntVec e(n, 0);
    e[j - 1] = static_cast<std::int64_t>(k) + 1;
    // cos = (e^{i} + e^{-i})/2, sin = (e^{i} - e^{-i})/(2i)
    p.add(e, GaussRational(ak * half, -bk * half));
    e[j - 1] = -e[j - 1];
    p.add(e, GaussRational(ak * half, bk * half));
  }
  return p;
}

}  // namespace torcx
