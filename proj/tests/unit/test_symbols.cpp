#include "gen.hpp"
#include "torcx/symbol.hpp"

#include <doctest.h>

#include <cmath>

using namespace torcx;
using Q = GaussRational;

namespace {
Q rat(long a, long b = 1) { return Q(Rational(a, b)); }
}  // namespace

TEST_CASE("eval_symbol_slice examples") {
  SystemSpec s1(1, 1, {ToroidalSymbol::linear(1, rat(1))});
  const auto L1 = eval_symbol_slice<Q>(s1, {2}, {-2});
  CHECK(L1.is_literal_zero());
  CHECK(slice_norm(L1) == 0.0);

  SystemSpec s2(2, 1, {ToroidalSymbol::constant(1, Q{}), ToroidalSymbol::constant(1, Q{})});
  const auto L2 = eval_symbol_slice<Q>(s2, {3, -1}, {0});
  CHECK(L2.coeff({1}) == Q(Rational(0), Rational(3)));
  CHECK(L2.coeff({2}) == Q(Rational(0), Rational(-1)));
  CHECK(slice_norm(L2) == 3.0);

  SystemSpec s3(2, 1, {ToroidalSymbol::linear(1, rat(1, 2)), ToroidalSymbol::linear(1, rat(1, 3))});
  const auto L3 = eval_symbol_slice<Q>(s3, {-1, -1}, {2});
  CHECK(L3.coeff({1}) == Q{});
  CHECK(L3.coeff({2}) == Q(Rational(0), Rational(-1, 3)));
  CHECK(slice_norm_sq(L3) == Rational(1, 9));

  const auto Lf = eval_symbol_slice<Complex>(s3, {-1, -1}, {2});
  CHECK(std::abs(slice_norm(Lf) - 1.0 / 3.0) < 1e-15);
}

TEST_CASE("slice_norm examples") {
  ConstPForm<Q> L(2, 1);
  L.set({1}, Q(Rational(0), Rational(1, 2)));
  L.set({2}, Q(Rational(0), Rational(-7, 4)));
  CHECK(slice_norm(L) == 1.75);
  CHECK(slice_norm(ConstPForm<Q>(2, 1)) == 0.0);
  CHECK_THROWS_AS(slice_norm(ConstPForm<Q>(2, 2)), DomainError);
}

TEST_CASE("slice vanishes exactly when every component does") {
  std::mt19937_64 rng(21);
  SystemSpec s(2, 1, {ToroidalSymbol::linear(1, rat(1, 2)), ToroidalSymbol::linear(1, rat(1, 3))});
  int zeros = 0;
  for (std::int64_t xi = -12; xi <= 12; ++xi)
    for (std::int64_t a = -6; a <= 6; ++a)
      for (std::int64_t b = -4; b <= 4; ++b) {
        const auto v = slice_values<Q>(s, {a, b}, {xi});
        const auto L = eval_symbol_slice<Q>(s, {a, b}, {xi});
        const bool all_zero = v[0].is_zero() && v[1].is_zero();
        CHECK((slice_norm_sq(L) == 0) == all_zero);
        zeros += all_zero;
      }
  // xi in 6Z with eta = -(xi/2, xi/3)
  CHECK(zeros == 5);
}

TEST_CASE("homogeneous symbols") {
  const auto h = ToroidalSymbol::homogeneous(1, Complex(2.0, 0.0), 1, 2, rat(2));
  CHECK(h({0}) == Complex{});
  CHECK(std::abs(h({9}) - Complex(6.0, 0.0)) < 1e-14);
  CHECK(*h.exact(std::vector<std::int64_t>{-9}) == rat(6));
  CHECK_FALSE(h.exact(std::vector<std::int64_t>{2}).has_value());
  CHECK_THROWS_AS(ToroidalSymbol::homogeneous(1, 1.0, 2, 4), DomainError);

  // p(2 xi) = 2^kappa p(xi) on the lattice of perfect squares, kappa = 1/2: xi = 2 m^2
  const auto g = ToroidalSymbol::homogeneous(1, Complex(1.0, 0.0), 1, 2, rat(1));
  for (std::int64_t m = 1; m <= 30; ++m) {
    const std::vector<std::int64_t> a{2 * m * m}, b{4 * m * m};
    CHECK_FALSE(g.exact(a).has_value());
    CHECK(*g.exact(b) == rat(2 * m));
  }
  // kappa = 1 exactly: p(2 xi) = 2 p(xi)
  const auto k1 = ToroidalSymbol::homogeneous(2, Complex(0.0, 1.0), 1, 1, Q(Rational(0), Rational(1)));
  for (std::int64_t a = -5; a <= 5; ++a) {
    const std::vector<std::int64_t> x{3 * a, 4 * a}, y{6 * a, 8 * a};
    REQUIRE(k1.exact(x).has_value());
    CHECK(*k1.exact(y) == Q(2L) * *k1.exact(x));
  }
}

TEST_CASE("tabulated symbols are confined to their box") {
  std::vector<Complex> vals(5);
  for (int k = 0; k < 5; ++k) vals[k] = Complex(k - 2.0, 0.0);
  const auto t = ToroidalSymbol::tabulated(1, 2, vals);
  CHECK(t({-2}) == Complex(-2.0, 0.0));
  CHECK(t({2}) == Complex(2.0, 0.0));
  CHECK_THROWS_AS(t({3}), DomainError);
  CHECK_THROWS_AS(ToroidalSymbol::tabulated(1, 2, {Complex{}}), DomainError);
}

TEST_CASE("symbol sum and scale stay exact") {
  const auto a = ToroidalSymbol::linear(1, rat(1, 2));
  const auto b = ToroidalSymbol::constant(1, rat(3));
  const auto c = a + rat(2) * b;
  const std::vector<std::int64_t> xi{5};
  CHECK(*c.exact(xi) == rat(17, 2));
  const std::vector<BigInt> big{ipow10(30)};
  CHECK(c.exact_big(big)->re == Rational(ipow10(30) / 2 + 6));
}

TEST_CASE("order bound holds over the box") {
  const auto p = ToroidalSymbol::polynomial(2, {Monomial{rat(3), {2, 0}}, Monomial{rat(-1), {1, 1}}});
  CHECK(p.order() == 2.0);
  const double C = p.order_constant(10);
  CHECK(C <= 4.5);
  for_each_lattice_point(2, 10, [&](const IntVec& xi) {
    const double bracket = 1.0 + double(xi[0] * xi[0] + xi[1] * xi[1]);
    CHECK(std::abs(p(xi)) <= C * bracket * (1 + 1e-12));
  });
  CHECK(ToroidalSymbol::logarithmic(1).order_constant(1000) < 7.0);
}

TEST_CASE("classify_growth") {
  CHECK(classify_growth(ToroidalSymbol::logarithmic(1), 1000).is_log());
  CHECK_FALSE(classify_growth(ToroidalSymbol::linear(1, rat(1)), 1000).is_log());
  CHECK(classify_growth(ToroidalSymbol::constant(1, rat(5)), 1000).is_log());
  CHECK(classify_growth(ToroidalSymbol::constant(1, Q{}), 16).is_log());
  CHECK_FALSE(classify_growth(ToroidalSymbol::linear(1, rat(1)), 16).is_log());
  CHECK(classify_growth(ToroidalSymbol::logarithmic(1), 16).is_log());
  // xi^(1/2) and log^2 are super-logarithmic
  CHECK_FALSE(classify_growth(ToroidalSymbol::homogeneous(1, 1.0, 1, 2), 10000).is_log());
  CHECK_FALSE(classify_growth([](std::span<const std::int64_t> x) {
                const double l = std::log(1.0 + std::abs(double(x[0])));
                return l * l;
              }, 1, 10000).is_log());
  // N = 2 goes through the enumerated box, N = 3 through rays
  CHECK(classify_growth(ToroidalSymbol::logarithmic(2), 64).is_log());
  CHECK_FALSE(classify_growth(ToroidalSymbol::homogeneous(3, 1.0, 1, 1), 1000).is_log());
  CHECK_THROWS_AS(classify_growth(ToroidalSymbol::logarithmic(1), 8), DomainError);
}
