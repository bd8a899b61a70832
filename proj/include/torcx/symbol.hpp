#pragma once

#include "torcx/const_form.hpp"
#include "torcx/scalar.hpp"
#include "torcx/trig_form.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace torcx {

enum class SymbolKind { Polynomial, Homogeneous, Logarithmic, Tabulated, Constant, Composite };

std::string to_string(SymbolKind k);

/// One monomial coeff * xi^exponents of a polynomial symbol.
struct Monomial {
  GaussRational coeff;
  std::vector<int> exponents;
};

/// Toroidal symbol p : Z^N -> C with declared order m.
class ToroidalSymbol {
 public:
  using FloatEval = std::function<Complex(std::span<const std::int64_t>)>;
  using ExactEval = std::function<std::optional<GaussRational>(std::span<const std::int64_t>)>;
  using BigEval = std::function<std::optional<GaussRational>(std::span<const BigInt>)>;

  ToroidalSymbol(int N, double order, SymbolKind kind, FloatEval f, ExactEval e = {},
                 BigEval b = {});

  static ToroidalSymbol polynomial(int N, std::vector<Monomial> terms);
  /// a * xi_axis (axis is 1-based), exact.
  static ToroidalSymbol linear(int N, GaussRational a, int axis = 1);
  static ToroidalSymbol constant(int N, GaussRational value);
  /// c |xi|^{rho/mu} for xi != 0 and 0 at xi = 0; |xi| Euclidean. Requires gcd(rho, mu) = 1.
  static ToroidalSymbol homogeneous(int N, Complex c, int rho, int mu,
                                    std::optional<GaussRational> exact_c = std::nullopt);
  /// scale * log(1 + |xi|).
  static ToroidalSymbol logarithmic(int N, double scale = 1.0);
  /// Dense table over [-X, X]^N in lexicographic order; evaluation outside throws.
  static ToroidalSymbol tabulated(int N, std::int64_t X, std::vector<Complex> values,
                                  double order = 0.0);
  static ToroidalSymbol tabulated_exact(int N, std::int64_t X, std::vector<GaussRational> values,
                                        double order = 0.0);
  /// Arbitrary pure evaluator.
  static ToroidalSymbol custom(int N, double order, FloatEval f, ExactEval e = {});

  friend ToroidalSymbol operator+(const ToroidalSymbol& a, const ToroidalSymbol& b);
  friend ToroidalSymbol operator*(const GaussRational& s, const ToroidalSymbol& a);

  int N() const { return N_; }
  double order() const { return order_; }
  SymbolKind kind() const { return kind_; }
  bool has_exact() const { return static_cast<bool>(exact_); }
  bool has_big() const { return static_cast<bool>(big_); }

  Complex operator()(std::span<const std::int64_t> xi) const;
  Complex operator()(std::initializer_list<std::int64_t> xi) const {
    return (*this)(std::span<const std::int64_t>(xi.begin(), xi.size()));
  }
  /// Exact value, or nullopt where the symbol is not exactly representable.
  std::optional<GaussRational> exact(std::span<const std::int64_t> xi) const;
  /// Exact value at a big-integer frequency (polynomial and constant kinds).
  std::optional<GaussRational> exact_big(std::span<const BigInt> xi) const;

  /// Homogeneous metadata (valid when kind() == Homogeneous).
  Complex hom_c() const { return hom_c_; }
  int hom_rho() const { return rho_; }
  int hom_mu() const { return mu_; }

  /// Largest |p(xi)| / <xi>^m over the box |xi| <= X (enumerated or sampled).
  double order_constant(std::int64_t X) const;

  std::string description;

 private:
  int N_ = 1;
  double order_ = 0.0;
  SymbolKind kind_ = SymbolKind::Composite;
  FloatEval eval_;
  ExactEval exact_;
  BigEval big_;
  Complex hom_c_{};
  int rho_ = 0;
  int mu_ = 1;
};

/// n symbols in N frequency variables: L_j = D_{t_j} + p_j(D_x).
struct SystemSpec {
  int n = 0;
  int N = 0;
  std::vector<ToroidalSymbol> symbols;

  SystemSpec(int n_, int N_, std::vector<ToroidalSymbol> s);
  bool exact_capable() const;
};

/// eta_j + p_j(xi) for every j.
template <class S>
std::vector<S> slice_values(const SystemSpec& spec, const IntVec& eta, const IntVec& xi);

template <>
std::vector<Complex> slice_values<Complex>(const SystemSpec& spec, const IntVec& eta,
                                           const IntVec& xi);
template <>
std::vector<GaussRational> slice_values<GaussRational>(const SystemSpec& spec, const IntVec& eta,
                                                       const IntVec& xi);

/// L^(eta, xi) = i sum_j (eta_j + p_j(xi)) dt_j.
template <class S>
ConstPForm<S> eval_symbol_slice(const SystemSpec& spec, const IntVec& eta, const IntVec& xi) {
  const auto v = slice_values<S>(spec, eta, xi);
  ConstPForm<S> L(spec.n, 1);
  for (int j = 0; j < spec.n; ++j) L.set(MultiIndex{j + 1}, ScalarTraits<S>::i() * v[j]);
  return L;
}

/// max_j |L_j| of a 1-form (the leading i is unimodular).
template <class S>
double slice_norm(const ConstPForm<S>& L) {
  if (L.degree() != 1) throw DomainError("slice_norm: expected a 1-form");
  return L.max_abs();
}

/// Exact max_j |L_j|^2.
Rational slice_norm_sq(const ConstPForm<GaussRational>& L);

struct GrowthClass {
  enum class Tag { Log, SuperLog };
  Tag tag = Tag::Log;
  double C = 0.0;          // sup |phi| / log|xi| over the sample
  std::int64_t n0 = 2;
  double inner_max = 0.0;  // sup of the ratio over n0 <= |xi| <= sqrt(X)
  double outer_max = 0.0;  // sup of the ratio over sqrt(X) <= |xi| <= X
  std::size_t samples = 0;
  bool is_log() const { return tag == Tag::Log; }
};

/// Heuristic log-vs-superlog test on the ratio |phi(xi)| / log|xi|: log iff the
/// ratio's sup over the outer range does not exceed (1 + margin) times its sup
/// over the inner range. Finite-scale evidence only.
GrowthClass classify_growth(const std::function<double(std::span<const std::int64_t>)>& phi,
                            int N, std::int64_t X, double margin = 0.25, std::int64_t n0 = 2);
GrowthClass classify_growth(const ToroidalSymbol& phi, std::int64_t X, double margin = 0.25,
                            std::int64_t n0 = 2);

}  // namespace torcx
