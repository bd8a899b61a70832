#include "torcx/symbol.hpp"

#include "torcx/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace torcx {

std::string to_string(SymbolKind k) {
  switch (k) {
    case SymbolKind::Polynomial: return "polynomial";
    case SymbolKind::Homogeneous: return "homogeneous";
    case SymbolKind::Logarithmic: return "logarithmic";
    case SymbolKind::Tabulated: return "tabulated";
    case SymbolKind::Constant: return "constant";
    case SymbolKind::Composite: return "composite";
  }
  return "unknown";
}

ToroidalSymbol::ToroidalSymbol(int N, double order, SymbolKind kind, FloatEval f, ExactEval e,
                               BigEval b)
    : N_(N), order_(order), kind_(kind), eval_(std::move(f)), exact_(std::move(e)),
      big_(std::move(b)) {
  if (N < 0) throw DomainError("symbol dimension must be >= 0");
  if (!eval_) throw DomainError("symbol needs an evaluator");
}

namespace {

void check_dim(int N, std::size_t got) {
  if (static_cast<int>(got) != N)
    throw DomainError("symbol expects " + std::to_string(N) + " frequency components, got " +
                      std::to_string(got));
}

template <class Int>
Rational monomial_value(const std::vector<int>& e, std::span<const Int> xi) {
  BigInt v = 1;
  for (std::size_t k = 0; k < e.size(); ++k) v *= pow(BigInt(xi[k]), static_cast<unsigned long>(e[k]));
  return Rational(v);
}

BigInt squared_norm(std::span<const BigInt> xi) {
  BigInt s = 0;
  for (const auto& v : xi) s += v * v;
  return s;
}

/// s^{rho/(2 mu)} when it is rational, else nullopt.
std::optional<Rational> exact_root_power(const BigInt& s, int rho, int mu) {
  if (sgn(s) == 0) return Rational(0);
  BigInt r;
  if (mpz_root(r.get_mpz_t(), s.get_mpz_t(), 2UL * static_cast<unsigned long>(mu)) == 0)
    return std::nullopt;
  if (rho >= 0) return Rational(pow(r, static_cast<unsigned long>(rho)));
  return Rational(BigInt(1), pow(r, static_cast<unsigned long>(-rho)));
}

std::size_t table_index(std::span<const std::int64_t> xi, std::int64_t X) {
  std::size_t idx = 0;
  const auto side = static_cast<std::size_t>(2 * X + 1);
  for (auto v : xi) {
    if (v < -X || v > X)
      throw DomainError("tabulated symbol evaluated outside its box at component " +
                        std::to_string(v));
    idx = idx * side + static_cast<std::size_t>(v + X);
  }
  return idx;
}

std::size_t table_size(int N, std::int64_t X) {
  std::size_t n = 1;
  for (int k = 0; k < N; ++k) n *= static_cast<std::size_t>(2 * X + 1);
  return n;
}

double euclid(std::span<const std::int64_t> xi) {
  long double s = 0;
  for (auto v : xi) s += static_cast<long double>(v) * static_cast<long double>(v);
  return static_cast<double>(std::sqrt(s));
}

/// Frequencies used for growth and order estimates: the whole box when small,
/// else rays along the axes and the diagonal.
std::vector<IntVec> sample_box(int N, std::int64_t X, std::int64_t min_norm) {
  std::vector<IntVec> out;
  if (N == 0) {
    out.emplace_back();
    return out;
  }
  double total = std::pow(2.0 * static_cast<double>(X) + 1.0, N);
  if (total <= 2e5) {
    for_each_lattice_point(N, X, [&](const IntVec& v) {
      if (euclid(v) >= static_cast<double>(min_norm)) out.push_back(v);
    });
    return out;
  }
  std::vector<std::int64_t> ts;
  const std::int64_t lo = std::max<std::int64_t>(min_norm, 1);
  if (X - lo <= 20000) {
    for (std::int64_t t = lo; t <= X; ++t) ts.push_back(t);
  } else {
    const int steps = 4000;
    const double a = std::log(static_cast<double>(lo)), b = std::log(static_cast<double>(X));
    for (int s = 0; s <= steps; ++s) {
      auto t = static_cast<std::int64_t>(std::llround(std::exp(a + (b - a) * s / steps)));
      if (ts.empty() || t != ts.back()) ts.push_back(std::min(t, X));
    }
  }
  std::vector<IntVec> dirs;
  for (int k = 0; k < N; ++k) {
    IntVec e(N, 0);
    e[k] = 1;
    dirs.push_back(e);
    e[k] = -1;
    dirs.push_back(e);
  }
  dirs.emplace_back(N, 1);
  dirs.emplace_back(N, -1);
  for (const auto& d : dirs)
    for (auto t : ts) {
      IntVec v(N);
      for (int k = 0; k < N; ++k) v[k] = d[k] * t;
      out.push_back(std::move(v));
    }
  return out;
}

}  // namespace

ToroidalSymbol ToroidalSymbol::polynomial(int N, std::vector<Monomial> terms) {
  int deg = 0;
  for (const auto& m : terms) {
    if (static_cast<int>(m.exponents.size()) != N)
      throw DomainError("monomial exponent vector has wrong length");
    int d = 0;
    for (int e : m.exponents) {
      if (e < 0) throw DomainError("negative exponent in polynomial symbol");
      d += e;
    }
    deg = std::max(deg, d);
  }
  auto shared = std::make_shared<const std::vector<Monomial>>(std::move(terms));
  FloatEval f = [shared, N](std::span<const std::int64_t> xi) {
    check_dim(N, xi.size());
    Complex s{};
    for (const auto& m : *shared) {
      double v = 1.0;
      for (std::size_t k = 0; k < m.exponents.size(); ++k)
        v *= std::pow(static_cast<double>(xi[k]), m.exponents[k]);
      s += m.coeff.to_complex() * v;
    }
    return s;
  };
  ExactEval e = [shared, N](std::span<const std::int64_t> xi) -> std::optional<GaussRational> {
    check_dim(N, xi.size());
    GaussRational s;
    for (const auto& m : *shared) s += m.coeff * GaussRational(monomial_value(m.exponents, xi));
    return s;
  };
  BigEval b = [shared, N](std::span<const BigInt> xi) -> std::optional<GaussRational> {
    check_dim(N, xi.size());
    GaussRational s;
    for (const auto& m : *shared) s += m.coeff * GaussRational(monomial_value(m.exponents, xi));
    return s;
  };
  ToroidalSymbol sym(N, deg, SymbolKind::Polynomial, f, e, b);
  sym.description = "polynomial";
  return sym;
}

ToroidalSymbol ToroidalSymbol::linear(int N, GaussRational a, int axis) {
  if (axis < 1 || axis > N) throw DomainError("linear symbol axis out of range");
  std::vector<int> ex(N, 0);
  ex[axis - 1] = 1;
  return polynomial(N, {Monomial{std::move(a), ex}});
}

ToroidalSymbol ToroidalSymbol::constant(int N, GaussRational value) {
  const Complex z = value.to_complex();
  FloatEval f = [z, N](std::span<const std::int64_t> xi) {
    check_dim(N, xi.size());
    return z;
  };
  ExactEval e = [value, N](std::span<const std::int64_t> xi) -> std::optional<GaussRational> {
    check_dim(N, xi.size());
    return value;
  };
  BigEval b = [value, N](std::span<const BigInt> xi) -> std::optional<GaussRational> {
    check_dim(N, xi.size());
    return value;
  };
  ToroidalSymbol sym(N, 0.0, SymbolKind::Constant, f, e, b);
  sym.description = "constant";
  return sym;
}

ToroidalSymbol ToroidalSymbol::homogeneous(int N, Complex c, int rho, int mu,
                                           std::optional<GaussRational> exact_c) {
  if (mu < 1) throw DomainError("homogeneous symbol needs mu >= 1");
  if (std::gcd(rho, mu) != 1) throw DomainError("homogeneous symbol needs gcd(rho, mu) = 1");
  const double kappa = static_cast<double>(rho) / mu;
  FloatEval f = [c, kappa, N](std::span<const std::int64_t> xi) {
    check_dim(N, xi.size());
    const double r = euclid(xi);
    if (r == 0.0) return Complex{};
    return c * std::pow(r, kappa);
  };
  ExactEval e;
  BigEval b;
  if (exact_c) {
    GaussRational ec = *exact_c;
    b = [ec, rho, mu, N](std::span<const BigInt> xi) -> std::optional<GaussRational> {
      check_dim(N, xi.size());
      auto r = exact_root_power(squared_norm(xi), rho, mu);
      if (!r) return std::nullopt;
      return ec * GaussRational(*r);
    };
    e = [b](std::span<const std::int64_t> xi) -> std::optional<GaussRational> {
      std::vector<BigInt> big;
      for (auto v : xi) big.emplace_back(static_cast<long>(v));
      return b(big);
    };
  }
  ToroidalSymbol sym(N, kappa, SymbolKind::Homogeneous, f, e, b);
  sym.hom_c_ = c;
  sym.rho_ = rho;
  sym.mu_ = mu;
  sym.description = "homogeneous kappa=" + std::to_string(rho) + "/" + std::to_string(mu);
  return sym;
}

ToroidalSymbol ToroidalSymbol::logarithmic(int N, double scale) {
  FloatEval f = [scale, N](std::span<const std::int64_t> xi) {
    check_dim(N, xi.size());
    return Complex{scale * std::log1p(euclid(xi)), 0.0};
  };
  // log(1 + |xi|) is rational only at xi = 0
  ExactEval e = [N](std::span<const std::int64_t> xi) -> std::optional<GaussRational> {
    check_dim(N, xi.size());
    for (auto v : xi)
      if (v != 0) return std::nullopt;
    return GaussRational{};
  };
  ToroidalSymbol sym(N, 0.0, SymbolKind::Logarithmic, f, e);
  sym.description = "logarithmic";
  return sym;
}

ToroidalSymbol ToroidalSymbol::tabulated(int N, std::int64_t X, std::vector<Complex> values,
                                         double order) {
  if (values.size() != table_size(N, X)) throw DomainError("tabulated symbol: wrong table size");
  auto shared = std::make_shared<const std::vector<Complex>>(std::move(values));
  FloatEval f = [shared, N, X](std::span<const std::int64_t> xi) {
    check_dim(N, xi.size());
    return (*shared)[table_index(xi, X)];
  };
  ToroidalSymbol sym(N, order, SymbolKind::Tabulated, f);
  sym.description = "tabulated";
  return sym;
}

ToroidalSymbol ToroidalSymbol::tabulated_exact(int N, std::int64_t X,
                                               std::vector<GaussRational> values, double order) {
  if (values.size() != table_size(N, X)) throw DomainError("tabulated symbol: wrong table size");
  auto shared = std::make_shared<const std::vector<GaussRational>>(std::move(values));
  FloatEval f = [shared, N, X](std::span<const std::int64_t> xi) {
    check_dim(N, xi.size());
    return (*shared)[table_index(xi, X)].to_complex();
  };
  ExactEval e = [shared, N, X](std::span<const std::int64_t> xi) -> std::optional<GaussRational> {
    check_dim(N, xi.size());
    return (*shared)[table_index(xi, X)];
  };
  BigEval b = [e](std::span<const BigInt> xi) -> std::optional<GaussRational> {
    std::vector<std::int64_t> small;
    for (const auto& v : xi) {
      if (!v.fits_slong_p()) throw DomainError("tabulated symbol evaluated outside its box");
      small.push_back(v.get_si());
    }
    return e(small);
  };
  ToroidalSymbol sym(N, order, SymbolKind::Tabulated, f, e, b);
  sym.description = "tabulated";
  return sym;
}

ToroidalSymbol ToroidalSymbol::custom(int N, double order, FloatEval f, ExactEval e) {
  ToroidalSymbol sym(N, order, SymbolKind::Composite, std::move(f), std::move(e));
  sym.description = "custom";
  return sym;
}

ToroidalSymbol operator+(const ToroidalSymbol& a, const ToroidalSymbol& b) {
  if (a.N_ != b.N_) throw DomainError("symbol sum: dimension mismatch");
  ToroidalSymbol::FloatEval f = [a, b](std::span<const std::int64_t> xi) { return a(xi) + b(xi); };
  ToroidalSymbol::ExactEval e;
  if (a.exact_ && b.exact_)
    e = [a, b](std::span<const std::int64_t> xi) -> std::optional<GaussRational> {
      auto x = a.exact(xi), y = b.exact(xi);
      if (!x || !y) return std::nullopt;
      return *x + *y;
    };
  ToroidalSymbol::BigEval g;
  if (a.big_ && b.big_)
    g = [a, b](std::span<const BigInt> xi) -> std::optional<GaussRational> {
      auto x = a.exact_big(xi), y = b.exact_big(xi);
      if (!x || !y) return std::nullopt;
      return *x + *y;
    };
  ToroidalSymbol sym(a.N_, std::max(a.order_, b.order_), SymbolKind::Composite, f, e, g);
  sym.description = "(" + a.description + ") + (" + b.description + ")";
  return sym;
}

ToroidalSymbol operator*(const GaussRational& s, const ToroidalSymbol& a) {
  const Complex z = s.to_complex();
  ToroidalSymbol::FloatEval f = [z, a](std::span<const std::int64_t> xi) { return z * a(xi); };
  ToroidalSymbol::ExactEval e;
  if (a.exact_)
    e = [s, a](std::span<const std::int64_t> xi) -> std::optional<GaussRational> {
      auto x = a.exact(xi);
      if (!x) return std::nullopt;
      return s * *x;
    };
  ToroidalSymbol::BigEval g;
  if (a.big_)
    g = [s, a](std::span<const BigInt> xi) -> std::optional<GaussRational> {
      auto x = a.exact_big(xi);
      if (!x) return std::nullopt;
      return s * *x;
    };
  ToroidalSymbol sym(a.N_, a.order_, a.kind_ == SymbolKind::Composite ? SymbolKind::Composite : a.kind_,
                     f, e, g);
  sym.hom_c_ = z * a.hom_c_;
  sym.rho_ = a.rho_;
  sym.mu_ = a.mu_;
  sym.description = to_string(s) + " * (" + a.description + ")";
  return sym;
}

Complex ToroidalSymbol::operator()(std::span<const std::int64_t> xi) const { return eval_(xi); }

std::optional<GaussRational> ToroidalSymbol::exact(std::span<const std::int64_t> xi) const {
  if (!exact_) return std::nullopt;
  return exact_(xi);
}

std::optional<GaussRational> ToroidalSymbol::exact_big(std::span<const BigInt> xi) const {
  if (!big_) return std::nullopt;
  return big_(xi);
}

double ToroidalSymbol::order_constant(std::int64_t X) const {
  double C = 0.0;
  for (const auto& xi : sample_box(N_, X, 0)) {
    double r2 = 1.0;
    for (auto v : xi) r2 += static_cast<double>(v) * static_cast<double>(v);
    const double bound = std::pow(r2, order_ / 2.0);
    C = std::max(C, std::abs((*this)(xi)) / bound);
  }
  if (!std::isfinite(C)) throw DomainError("symbol order bound is not finite on the box");
  return C;
}

SystemSpec::SystemSpec(int n_, int N_, std::vector<ToroidalSymbol> s)
    : n(n_), N(N_), symbols(std::move(s)) {
  if (n < 1) throw DomainError("system needs n >= 1");
  if (static_cast<int>(symbols.size()) != n) throw DomainError("system needs exactly n symbols");
  for (const auto& p : symbols)
    if (p.N() != N) throw DomainError("symbol frequency dimension does not match N");
}

bool SystemSpec::exact_capable() const {
  return std::all_of(symbols.begin(), symbols.end(), [](const auto& p) { return p.has_exact(); });
}

template <>
std::vector<Complex> slice_values<Complex>(const SystemSpec& spec, const IntVec& eta,
                                           const IntVec& xi) {
  if (static_cast<int>(eta.size()) != spec.n) throw DomainError("eta has wrong length");
  std::vector<Complex> v(spec.n);
  for (int j = 0; j < spec.n; ++j) v[j] = static_cast<double>(eta[j]) + spec.symbols[j](xi);
  return v;
}

template <>
std::vector<GaussRational> slice_values<GaussRational>(const SystemSpec& spec, const IntVec& eta,
                                                       const IntVec& xi) {
  if (static_cast<int>(eta.size()) != spec.n) throw DomainError("eta has wrong length");
  std::vector<GaussRational> v(spec.n);
  for (int j = 0; j < spec.n; ++j) {
    auto p = spec.symbols[j].exact(xi);
    if (!p)
      throw DomainError("symbol " + std::to_string(j + 1) + " has no exact value at xi=" +
                        to_string(xi));
    v[j] = GaussRational(Rational(static_cast<long>(eta[j]))) + *p;
  }
  return v;
}

Rational slice_norm_sq(const ConstPForm<GaussRational>& L) {
  if (L.degree() != 1) throw DomainError("slice_norm: expected a 1-form");
  Rational m = 0;
  for (const auto& [K, v] : L.terms()) m = std::max(m, v.norm_sq());
  return m;
}

GrowthClass classify_growth(const std::function<double(std::span<const std::int64_t>)>& phi, int N,
                            std::int64_t X, double margin, std::int64_t n0) {
  if (X < 16) throw DomainError("classify_growth needs X >= 16");
  if (n0 < 2 || n0 * n0 > X) throw DomainError("classify_growth needs 2 <= n0 <= sqrt(X)");
  if (N < 1) throw DomainError("classify_growth needs N >= 1");
  GrowthClass g;
  g.n0 = n0;
  const double split = std::sqrt(static_cast<double>(X));
  for (const auto& xi : sample_box(N, X, n0)) {
    const double r = euclid(xi);
    const double ratio = std::abs(phi(xi)) / std::log(r);
    ++g.samples;
    g.C = std::max(g.C, ratio);
    if (r <= split) g.inner_max = std::max(g.inner_max, ratio);
    if (r >= split) g.outer_max = std::max(g.outer_max, ratio);
  }
  g.tag = g.outer_max <= (1.0 + margin) * g.inner_max ? GrowthClass::Tag::Log
                                                      : GrowthClass::Tag::SuperLog;
  return g;
}

GrowthClass classify_growth(const ToroidalSymbol& phi, std::int64_t X, double margin,
                            std::int64_t n0) {
  return classify_growth([&](std::span<const std::int64_t> xi) { return std::abs(phi(xi)); },
                         phi.N(), X, margin, n0);
}

}  // namespace torcx
