#include "gen.hpp"
#include "torcx/divisor_scan.hpp"
#include "torcx/spectral.hpp"

#include <doctest.h>

#include <cmath>

using namespace torcx;
using Q = GaussRational;

namespace {

Q rat(long a, long b = 1) { return Q(Rational(a, b)); }

Frequency fq(IntVec eta, IntVec xi) { return {std::move(eta), std::move(xi)}; }

// p1 = xi^2, p2 = i xi + xi: c_xi0 is non-real for xi != 0
SystemSpec gaussian_poly_system() {
  return SystemSpec(2, 1,
                    {ToroidalSymbol::polynomial(1, {Monomial{rat(1), {2}}}),
                     ToroidalSymbol::polynomial(1, {Monomial{Q(Rational(1), Rational(1)), {1}}})});
}

SystemSpec random_rational_system(std::mt19937_64& rng, int n, int N) {
  std::vector<ToroidalSymbol> s;
  for (int j = 0; j < n; ++j) {
    std::vector<Monomial> terms;
    for (int a = 1; a <= N; ++a) {
      std::vector<int> ex(N, 0);
      ex[a - 1] = 1;
      terms.push_back({Q(Rational(gen::uniform(rng, -3, 3), gen::uniform(rng, 1, 4))), ex});
    }
    s.push_back(ToroidalSymbol::polynomial(N, terms));
  }
  return SystemSpec(n, N, std::move(s));
}

}  // namespace

TEST_CASE("integral_vector") {
  CHECK(*integral_vector<Q>({rat(2), rat(-1)}) == IntVec{2, -1});
  CHECK_FALSE(integral_vector<Q>({rat(1, 2)}).has_value());
  CHECK_FALSE(integral_vector<Q>({Q(Rational(1), Rational(1))}).has_value());
  CHECK(*integral_vector<Complex>({Complex(3.0 + 1e-12, 0.0)}) == IntVec{3});
  CHECK_FALSE(integral_vector<Complex>({Complex(3.0, 1e-6)}).has_value());
}

TEST_CASE("compatibility_check examples") {
  std::mt19937_64 rng(5);
  const auto spec = gaussian_poly_system();
  for (int p = 0; p <= 1; ++p) {
    const auto u = gen::trig_form<Q>(rng, 2, 1, p, 4, 4, 6);
    CHECK(compatibility_check(apply_operator(spec, u), spec).ok);
  }
  // n = 1, p1 = 0: every xi is in the sector and a constant dt is not exact
  SystemSpec zero(1, 1, {ToroidalSymbol::constant(1, Q{})});
  TrigPForm<Q> f(1, 1, 1);
  f.set_slice(fq({0}, {3}), ConstPForm<Q>::basis(1, {1}, rat(1)));
  const auto rep = compatibility_check(f, zero);
  CHECK_FALSE(rep.ok);
  REQUIRE(rep.sector.size() == 1);
  CHECK(rep.offenders.size() == 1);

  // L^ ^ f^ != 0
  TrigPForm<Q> g(2, 1, 1);
  g.set_slice(fq({1, 0}, {1}), ConstPForm<Q>::basis(2, {2}, rat(1)));
  CHECK_FALSE(compatibility_check(g, spec).ok);
}

TEST_CASE("manufactured round trip, n=2 N=1, u = e^{i(t1+x)}") {
  const auto spec = gaussian_poly_system();
  TrigPForm<Complex> u(2, 1, 0);
  u.set_slice(fq({1, 0}, {1}), ConstPForm<Complex>::basis(2, {}, Complex(1.0, 0.0)));
  const auto f = apply_operator(spec, u);
  const auto res = solve_constant(spec, f);
  CHECK(res.residual_inf <= 1e-10);
  CHECK(max_diff(res.u, u) <= 1e-12);
}

TEST_CASE("f = 0 gives u = 0") {
  const auto spec = gaussian_poly_system();
  const auto res = solve_constant(spec, TrigPForm<Q>(2, 1, 1));
  CHECK(res.u.is_literal_zero());
  CHECK(res.residual_inf == 0.0);
}

TEST_CASE("n=1, alpha = 1/2: kernel frequencies go through the sector branch") {
  SystemSpec spec(1, 1, {ToroidalSymbol::linear(1, rat(1, 2))});
  // (eta, xi) = (1, -2): eta + xi/2 = 0 and c_xi0 = -1 is integral; a constant
  // after the shift is not exact, so e^{i(t - 2x)} dt is rejected
  TrigPForm<Q> f(1, 1, 1);
  f.set_slice(fq({1}, {-2}), ConstPForm<Q>::basis(1, {1}, rat(1)));
  CHECK_THROWS_AS(solve_constant(spec, f), CompatibilityError);
  CHECK_THROWS_AS(solve_integral_sector(spec, f), CompatibilityError);

  // e^{i(2t - 2x)} dt is exact after the shift: u^ = 1 / i
  TrigPForm<Q> g(1, 1, 1);
  g.set_slice(fq({2}, {-2}), ConstPForm<Q>::basis(1, {1}, rat(1)));
  const auto res = solve_constant(spec, g);
  REQUIRE(res.sector.size() == 1);
  CHECK(res.u.slice(fq({2}, {-2})).coeff(MultiIndex{}) == Q(Rational(0), Rational(-1)));
  CHECK(res.residual_inf == 0.0);
}

TEST_CASE("phase shift rejection, c_xi0 = dt1") {
  SystemSpec spec(1, 1, {ToroidalSymbol::linear(1, rat(1))});
  TrigPForm<Q> f(1, 1, 1);
  f.set_slice(fq({-1}, {1}), ConstPForm<Q>::basis(1, {1}, Q(Rational(0), Rational(1))));
  const auto rep = compatibility_check(f, spec);
  CHECK_FALSE(rep.ok);
  CHECK_THROWS_AS(solve_constant(spec, f), CompatibilityError);
}

TEST_CASE("sector-only manufactured round trip") {
  std::mt19937_64 rng(17);
  // integer symbols: every xi is in the sector
  SystemSpec spec(2, 1,
                  {ToroidalSymbol::linear(1, rat(2)),
                   ToroidalSymbol::polynomial(1, {Monomial{rat(1), {2}}, Monomial{rat(-1), {0}}})});
  for (int trial = 0; trial < 20; ++trial) {
    const int p = static_cast<int>(gen::uniform(rng, 0, 1));
    const auto u = gen::trig_form<Q>(rng, 2, 1, p, 5, 3, 5);
    const auto f = apply_operator(spec, u);
    const auto res = solve_constant(spec, f);
    CHECK(res.residual_inf == 0.0);
    CHECK(res.sector.size() == xi_support(f).size());
    CHECK(apply_operator(spec, res.u) == f);
  }
}

TEST_CASE("round trip property, random systems, exact and float") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = static_cast<int>(gen::uniform(rng, 1, 3));
    const int N = static_cast<int>(gen::uniform(rng, 1, 2));
    const int p = static_cast<int>(gen::uniform(rng, 0, n - 1));
    const auto spec = random_rational_system(rng, n, N);
    const auto u = gen::trig_form<Q>(rng, n, N, p, 8, 8, 6);
    const auto f = apply_operator(spec, u);
    const auto res = solve_constant(spec, f);
    CHECK(apply_operator(spec, res.u) == f);

    const auto uf = convert_trig<Complex>(u);
    const auto ff = apply_operator(spec, uf);
    const auto rf = solve_constant(spec, ff);
    CHECK(rf.residual_inf <= 1e-10);
  }
}

TEST_CASE("solution bound from a divisor scan") {
  std::mt19937_64 rng(3);
  const auto spec = gaussian_poly_system();
  const FrequencyBox box{8, 8};
  const auto scan = divisor_scan(spec, box);
  CHECK(scan.violations == 0);
  SolverOptions opt;
  opt.lambda_hat = scan.lambda_hat;
  opt.C_hat = scan.C_hat;
  for (int p = 0; p <= 1; ++p) {
    const auto u = gen::trig_form<Complex>(rng, 2, 1, p, 8, 8, 30);
    const auto f = apply_operator(spec, u);
    const auto res = solve_constant(spec, f, opt);
    CHECK(res.residual_inf <= 1e-10);
    CHECK(res.bound_checked > 0);
    CHECK(res.bound_violations == 0);
    CHECK(res.worst_bound_ratio <= 1.0);
  }
}

TEST_CASE("parallel solve matches serial") {
  std::mt19937_64 rng(8);
  const auto spec = random_rational_system(rng, 3, 2);
  const auto u = gen::trig_form<Complex>(rng, 3, 2, 1, 6, 6, 40);
  const auto f = apply_operator(spec, u);
  SolverOptions one, four;
  one.threads = 1;
  four.threads = 4;
  const auto a = solve_constant(spec, f, one), b = solve_constant(spec, f, four);
  CHECK(a.u == b.u);
  CHECK(a.residual_inf == b.residual_inf);
}

TEST_CASE("growth fit") {
  // coefficients 2^{3k}: exponent 3 in log2 per shell
  std::vector<std::pair<int, double>> s;
  for (int k = 1; k <= 6; ++k) s.emplace_back(k, 3.0 * k);
  const auto g = fit_growth(s, 0.5);
  CHECK(g.exponent == doctest::Approx(3.0));
  CHECK(g.blowup_suspected);
  CHECK_FALSE(fit_growth(s, 2.0).blowup_suspected);
  CHECK(shell_index(1) == 0);
  CHECK(shell_index(2) == 1);
  CHECK(shell_index(5) == 3);
}
