#pragma once

#include "torcx/error.hpp"
#include "torcx/multi_index.hpp"
#include "torcx/scalar.hpp"

#include <algorithm>
#include <map>
#include <span>
#include <string>

namespace torcx {

/// Constant p-form sum_K F_K dt_K in the exterior algebra of C^n.
/// Absent keys are zero; exact zeros are never stored.
template <class S>
class ConstPForm {
 public:
  using Traits = ScalarTraits<S>;

  ConstPForm() = default;
  ConstPForm(int n, int degree) : n_(n), degree_(degree) {
    if (n < 0 || degree < 0) throw DomainError("negative dimension or degree");
  }

  static ConstPForm basis(int n, const MultiIndex& K, S coeff = Traits::one()) {
    ConstPForm f(n, static_cast<int>(K.size()));
    f.set(K, std::move(coeff));
    return f;
  }

  /// 1-form sum_j coeffs[j-1] dt_j.
  static ConstPForm one_form(std::span<const S> coeffs) {
    const int n = static_cast<int>(coeffs.size());
    ConstPForm f(n, 1);
    for (int j = 1; j <= n; ++j) f.set(MultiIndex{j}, coeffs[j - 1]);
    return f;
  }

  int dim() const { return n_; }
  int degree() const { return degree_; }
  const std::map<MultiIndex, S>& terms() const { return coeffs_; }
  bool is_literal_zero() const { return coeffs_.empty(); }

  S coeff(const MultiIndex& K) const {
    auto it = coeffs_.find(K);
    return it == coeffs_.end() ? Traits::zero() : it->second;
  }

  void set(const MultiIndex& K, S value) {
    check_key(K);
    if (Traits::is_literal_zero(value))
      coeffs_.erase(K);
    else
      coeffs_[K] = std::move(value);
  }

  void add_to(const MultiIndex& K, const S& value) {
    check_key(K);
    auto it = coeffs_.find(K);
    if (it == coeffs_.end()) {
      if (!Traits::is_literal_zero(value)) coeffs_.emplace(K, value);
      return;
    }
    it->second += value;
    if (Traits::is_literal_zero(it->second)) coeffs_.erase(it);
  }

  /// Largest coefficient modulus (0 for the zero form).
  double max_abs() const {
    double m = 0.0;
    for (const auto& [k, v] : coeffs_) m = std::max(m, Traits::abs(v));
    return m;
  }

  /// Exact zero in rational mode; every |coeff| <= tol * scale in float mode.
  bool is_zero(double scale = 1.0, double rel_tol = 1e-10) const {
    for (const auto& [k, v] : coeffs_)
      if (!Traits::is_zero(v, scale, rel_tol)) return false;
    return true;
  }

  ConstPForm& operator+=(const ConstPForm& o) {
    check_same(o);
    for (const auto& [k, v] : o.coeffs_) add_to(k, v);
    return *this;
  }
  ConstPForm& operator-=(const ConstPForm& o) {
    check_same(o);
    for (const auto& [k, v] : o.coeffs_) add_to(k, -v);
    return *this;
  }
  ConstPForm& operator*=(const S& s) {
    if (Traits::is_literal_zero(s)) {
      coeffs_.clear();
      return *this;
    }
    for (auto it = coeffs_.begin(); it != coeffs_.end();) {
      it->second *= s;
      if (Traits::is_literal_zero(it->second))
        it = coeffs_.erase(it);
      else
        ++it;
    }
    return *this;
  }

  friend ConstPForm operator+(ConstPForm a, const ConstPForm& b) { return a += b; }
  friend ConstPForm operator-(ConstPForm a, const ConstPForm& b) { return a -= b; }
  friend ConstPForm operator*(ConstPForm a, const S& s) { return a *= s; }
  friend ConstPForm operator*(const S& s, ConstPForm a) { return a *= s; }
  friend ConstPForm operator-(ConstPForm a) { return a *= -Traits::one(); }
  friend bool operator==(const ConstPForm& a, const ConstPForm& b) {
    return a.n_ == b.n_ && a.degree_ == b.degree_ && a.coeffs_ == b.coeffs_;
  }

  std::string to_string() const {
    if (coeffs_.empty()) return "0";
    std::string s;
    for (const auto& [k, v] : coeffs_) {
      if (!s.empty()) s += " + ";
      const Complex z = Traits::to_complex(v);
      s += "(" + std::to_string(z.real()) + "," + std::to_string(z.imag()) + ")dt" + k.to_string();
    }
    return s;
  }

 private:
  void check_key(const MultiIndex& K) const {
    if (static_cast<int>(K.size()) != degree_)
      throw DomainError("multi-index " + K.to_string() + " has wrong length for a " +
                        std::to_string(degree_) + "-form");
    if (K.max_entry() > n_) throw DomainError("multi-index " + K.to_string() + " exceeds n");
  }
  void check_same(const ConstPForm& o) const {
    if (o.n_ != n_ || o.degree_ != degree_) throw DomainError("form shape mismatch");
  }

  int n_ = 0;
  int degree_ = 0;
  std::map<MultiIndex, S> coeffs_;
};

/// Exterior product. The result is the zero form of degree deg(a)+deg(b)
/// (which may exceed n, in which case it is identically zero).
template <class S>
ConstPForm<S> wedge(const ConstPForm<S>& a, const ConstPForm<S>& b) {
  if (a.dim() != b.dim()) throw DomainError("wedge: ambient dimension mismatch");
  ConstPForm<S> out(a.dim(), a.degree() + b.degree());
  if (a.degree() + b.degree() > a.dim()) return out;
  for (const auto& [ka, va] : a.terms())
    for (const auto& [kb, vb] : b.terms()) {
      auto [sign, k] = merge_sign(ka, kb);
      if (sign == 0) continue;
      S prod = va * vb;
      if (sign < 0) prod = -prod;
      out.add_to(k, prod);
    }
  return out;
}

/// Interior product with the dual basis vector e_mu.
template <class S>
ConstPForm<S> interior(int mu, const ConstPForm<S>& f) {
  if (f.degree() == 0) throw DomainError("interior product of a 0-form");
  ConstPForm<S> out(f.dim(), f.degree() - 1);
  for (const auto& [J, v] : f.terms()) {
    if (!J.contains(mu)) continue;
    out.add_to(J.without(mu), wedge_sign(mu, J) > 0 ? v : -v);
  }
  return out;
}

template <class S>
ConstPForm<S> convert_form(const ConstPForm<GaussRational>& f) {
  ConstPForm<S> out(f.dim(), f.degree());
  for (const auto& [k, v] : f.terms()) out.set(k, ScalarTraits<S>::from_gauss(v));
  return out;
}

}  // namespace torcx
