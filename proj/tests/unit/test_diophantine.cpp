#include "gen.hpp"
#include "torcx/diophantine.hpp"
#include "torcx/error.hpp"

#include <doctest.h>

#include <cmath>

using namespace torcx;

namespace {

HighPrecisionReal scaled_liouville(const Rational& r, int mu, int digits) {
  return HighPrecisionReal::root(r, mu, digits + 10) * HighPrecisionReal::liouville(digits);
}

std::vector<HighPrecisionReal> sda_example(int mu, int digits) {
  // (r1^{1/mu} L, r2^{1/mu} L) with r1 = 3/2, r2 = 3 * 2^{mu-1}
  return {scaled_liouville(Rational(3, 2), mu, digits),
          scaled_liouville(Rational(3 * (1L << (mu - 1))), mu, digits)};
}

}  // namespace

TEST_CASE("interval constructors enclose the value") {
  const auto phi = HighPrecisionReal::golden(40);
  CHECK(phi.hi - phi.lo <= Rational(BigInt(1), ipow10(40)));
  CHECK(phi.to_double() == doctest::Approx((1 + std::sqrt(5.0)) / 2));
  // phi^2 = phi + 1
  const auto sq = pow(phi, 2);
  const auto p1 = phi + HighPrecisionReal::exact(1);
  CHECK(sq.lo <= p1.hi);
  CHECK(p1.lo <= sq.hi);

  const auto r = HighPrecisionReal::root(Rational(2), 2, 30);
  CHECK(r.lo * r.lo < 2);
  CHECK(r.hi * r.hi > 2);
  CHECK(HighPrecisionReal::root(Rational(9, 4), 2, 5).is_exact());
  CHECK(HighPrecisionReal::root(Rational(9, 4), 2, 5).lo == Rational(3, 2));

  const auto L = HighPrecisionReal::liouville(30);
  CHECK(L.contains(liouville_partial_sum(5)));
  CHECK(L.lo == liouville_partial_sum(4));

  const auto d = HighPrecisionReal::parse("0.333");
  CHECK(d.digits == 3);
  CHECK(d.contains(Rational(1, 3)));
  CHECK(HighPrecisionReal::parse("2/7").is_exact());
  CHECK(HighPrecisionReal::parse("-0.5").contains(Rational(-1, 2)));
}

TEST_CASE("liouville_truncations") {
  const auto t = liouville_truncations(5);
  REQUIRE(t.size() == 5);
  CHECK(t[0].p == 1);
  CHECK(t[0].q == 10);
  CHECK(t[1].p == 11);
  CHECK(t[1].q == 100);
  CHECK(t[2].p == 110001);
  CHECK(t[2].q == 1000000);
  for (const auto& x : t) {
    // the bound encloses the true tail, known here through a longer truncation
    CHECK(Rational(liouville_partial_sum(6) - Rational(x.p, x.q)) < x.bound);
    CHECK(x.certified);
    CHECK(Rational(x.p, x.q) == liouville_partial_sum(x.ell));
  }
  CHECK_THROWS_AS(liouville_truncations(6), ResourceError);
}

TEST_CASE("continued fractions") {
  const auto phi = continued_fraction(HighPrecisionReal::golden(50), 12);
  const long fib[] = {1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233};
  REQUIRE(phi.convergents.size() == 12);
  for (int k = 0; k < 12; ++k) {
    CHECK(phi.convergents[k].p == fib[k + 1]);
    CHECK(phi.convergents[k].q == fib[k]);
  }
  const auto half = continued_fraction(HighPrecisionReal::exact(Rational(1, 2)), 10);
  CHECK(half.terminated);
  REQUIRE(half.convergents.size() == 2);
  CHECK(half.convergents.back().p == 1);
  CHECK(half.convergents.back().q == 2);

  // Liouville at 30 digits: truncations 11/100 and 110001/10^6 are convergents
  const auto L = continued_fraction(HighPrecisionReal::liouville(30), 60);
  CHECK(L.precision_exhausted);
  bool saw2 = false, saw3 = false;
  for (const auto& c : L.convergents) {
    saw2 = saw2 || (c.p == 11 && c.q == 100);
    saw3 = saw3 || (c.p == 110001 && c.q == 1000000);
  }
  CHECK(saw2);
  CHECK(saw3);
  CHECK_THROWS_AS(continued_fraction(HighPrecisionReal::exact(1), 0), DomainError);
}

TEST_CASE("convergent quality on random reals") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const Rational r(gen::uniform(rng, 1, 1000000), gen::uniform(rng, 1, 1000000));
    const auto x = HighPrecisionReal::root(r, static_cast<int>(gen::uniform(rng, 2, 3)), 60);
    const auto cf = continued_fraction(x, 30);
    for (std::size_t k = 0; k + 1 < cf.convergents.size(); ++k) {
      const auto& c = cf.convergents[k];
      const auto& d = cf.convergents[k + 1];
      const Rational err = abs(x.mid() - Rational(c.p, c.q));
      CHECK(err < Rational(BigInt(1), c.q * d.q));
      CHECK(err < Rational(BigInt(1), c.q * c.q));
    }
  }
}

TEST_CASE("simplest_rational") {
  CHECK(simplest_rational(Rational(3, 10), Rational(4, 10)) == Rational(1, 3));
  CHECK(simplest_rational(Rational(-4, 10), Rational(-3, 10)) == Rational(-1, 3));
  CHECK(simplest_rational(Rational(-1), Rational(1)) == 0);
  CHECK(simplest_rational(Rational(5, 2), Rational(7, 2)) == 3);
}

TEST_CASE("detect_rational") {
  auto d = detect_rational({HighPrecisionReal::exact(Rational(1, 2)), HighPrecisionReal::exact(Rational(1, 3))});
  CHECK(d.rational);
  CHECK_FALSE(d.precision_limited);
  CHECK(d.value->q0 == 6);
  CHECK(detect_rational({HighPrecisionReal::exact(0), HighPrecisionReal::exact(0)}).value->q0 == 1);

  const auto g = detect_rational({HighPrecisionReal::golden(50)});
  CHECK_FALSE(g.rational);
  CHECK(g.precision_limited);
  CHECK(g.expansions[0].convergents.size() > 20);

  const auto t = detect_rational({HighPrecisionReal::parse("0.33333333333333333333")});
  CHECK(t.rational);
  CHECK(t.precision_limited);
  CHECK(t.value->components[0] == Rational(1, 3));
  CHECK_FALSE(detect_rational({HighPrecisionReal::liouville(50)}).rational);
}

TEST_CASE("rational_lowerbound") {
  auto half = rational_lowerbound(make_rational_vector({Rational(1, 2)}));
  CHECK(*half.C0 == Rational(1, 2));
  CHECK(*half.C0_coarse == Rational(1, 2));

  auto a = rational_lowerbound(make_rational_vector({Rational(1, 2), Rational(1, 3)}), 1);
  CHECK(a.q0 == 6);
  CHECK(*a.C0 == Rational(1, 3));
  CHECK(*a.C0_coarse == Rational(1, 12));
  CHECK(*a.D == *a.C0_coarse);

  // brute-force oracle: min over r = xi mod 6 of max_j dist(r a_j, Z)
  Rational brute = 10;
  for (long xi = 1; xi <= 1000; ++xi) {
    if (xi % 6 == 0) continue;
    const Rational m = std::max(dist_to_integer(Rational(xi, 2)), dist_to_integer(Rational(xi, 3)));
    brute = std::min(brute, m);
  }
  CHECK(brute == *a.C0);

  const auto i = rational_lowerbound(make_rational_vector({Rational(2), Rational(-5)}));
  CHECK(i.q0 == 1);
  CHECK_FALSE(i.C0.has_value());

  const auto m2 = rational_lowerbound(make_rational_vector({Rational(1, 2), Rational(1, 3)}), 2);
  CHECK(*m2.D == Rational(1, 252));
  CHECK(*m2.D_sharp == Rational(1, 9));
}

TEST_CASE("sda_search: golden ratio control") {
  SDAOptions o;
  o.Q_max = 10000;
  const auto s = sda_search({HighPrecisionReal::golden(50)}, o);
  CHECK_FALSE(s.found);
  REQUIRE(s.witness.terms.size() == 2);
  CHECK(s.witness.terms[0].q == 1);
  CHECK(s.witness.terms[1].q == 2);
  CHECK(s.best_q == 6765);
  CHECK(s.best_exponent == doctest::Approx(2.0).epsilon(0.06));
  const auto md = min_scaled_distance(HighPrecisionReal::golden(50), 10000);
  CHECK(md.q == 1);
  CHECK(md.certified_lower >= 0.38);
}

TEST_CASE("sda_search: Liouville constant with truncation denominators") {
  SDAOptions o;
  o.Q_max = 1000;
  o.hints = liouville_denominators(4);
  const auto s = sda_search({HighPrecisionReal::liouville(200)}, o);
  CHECK(s.found);
  for (const auto& t : s.witness.terms)
    CHECK(t.bound < Rational(BigInt(1), pow(t.q, static_cast<unsigned long>(t.level))));
}

TEST_CASE("sda_search: the mu = 2 example vector") {
  SDAOptions o;
  o.mu = 2;
  o.Q_max = 2000;
  o.hints = liouville_denominators(6, 2, 6);
  // 6000 digits certify the third level at q = 6 * 10^{1440}
  const auto hi = sda_search(sda_example(2, 6000), o);
  CHECK(hi.found);
  REQUIRE(hi.witness.terms.size() == 3);
  CHECK(hi.witness.terms[2].q == 6 * ipow10(1440));
  const BigInt P = Rational(liouville_partial_sum(6) * ipow10(720)).get_num();
  CHECK(hi.witness.terms[2].p[0] == 3 * P);
  CHECK(hi.witness.terms[2].p[1] == 6 * P);
  CHECK(hi.witness.terms[2].from_hint);

  const auto lo = sda_search(sda_example(2, 50), o);
  CHECK_FALSE(lo.found);
  CHECK(lo.max_level == 2);

  // mu = 1: the same vector shows no Liouville witness with its own denominators
  SDAOptions o1;
  o1.Q_max = 2000;
  o1.hints = liouville_denominators(6);
  CHECK_FALSE(sda_search(sda_example(2, 6000), o1).found);
}

TEST_CASE("characterize_homogeneous") {
  HomogeneousOptions opt;
  opt.H = 200;
  opt.X = 2000;
  opt.sda.Q_max = 1000;
  auto ex = [](std::initializer_list<Rational> v) {
    std::vector<HighPrecisionReal> out;
    for (const auto& x : v) out.push_back(HighPrecisionReal::exact(x));
    return out;
  };
  const auto zero2 = ex({0, 0});

  const auto r = characterize_homogeneous(ex({Rational(1, 2), Rational(2, 3)}), zero2, 1, 2, opt);
  CHECK(r.verdict.tag == DiophantineVerdict::Tag::Rational);
  CHECK(*r.verdict.q0 == 6);
  CHECK(r.verdict.solvable());

  const auto b = characterize_homogeneous(zero2, ex({1, 1}), 1, 1, opt);
  CHECK(b.verdict.tag == DiophantineVerdict::Tag::NonReal);
  CHECK(b.scan.plausibly_holds);
  CHECK(b.paths_agree);

  CHECK_THROWS_AS(characterize_homogeneous(zero2, zero2, 2, 4, opt), DomainError);
  CHECK_THROWS_AS(characterize_homogeneous(zero2, zero2, 0, 1, opt), DomainError);

  const auto g = characterize_homogeneous({HighPrecisionReal::golden(50)}, ex({0}), 1, 1, opt);
  CHECK(g.verdict.tag == DiophantineVerdict::Tag::NoWitnessFound);
  CHECK(g.paths_agree);
  CHECK(g.verdict.precision_digits == 50);
}

TEST_CASE("homogeneous scan sees the integral sector as zeros") {
  // c = -1, kappa = 1/2: eta = xi^{1/2} vanishes exactly on perfect squares
  const auto s = homogeneous_scan({Complex(-1.0, 0.0)}, 0.5, 100, 400);
  CHECK(s.zero_slices == 20);
  CHECK(s.plausibly_holds);
}
