#include "gen.hpp"
#include "torcx/diophantine.hpp"
#include "torcx/divisor_scan.hpp"
#include "torcx/witness.hpp"

#include <doctest.h>

#include <cmath>

using namespace torcx;
using Q = GaussRational;

namespace {

Q rat(long a, long b = 1) { return Q(Rational(a, b)); }

SystemSpec rational_a0() {
  return SystemSpec(2, 1, {ToroidalSymbol::linear(1, rat(1, 2)), ToroidalSymbol::linear(1, rat(1, 3))});
}

SystemSpec liouville_a0(int L = 5) {
  return SystemSpec(1, 1, {ToroidalSymbol::linear(1, Q(liouville_partial_sum(L)))});
}

BigFrequency big(BigVec eta, BigVec xi) { return {std::move(eta), std::move(xi)}; }

}  // namespace

TEST_CASE("rational a0: scan minimum is the rational lower bound") {
  const auto spec = rational_a0();
  DivisorScanOptions opt;
  opt.exact = true;
  const auto full = divisor_scan(spec, {12, 12}, opt);
  opt.mode = DivisorScanOptions::Mode::Nearest;
  const auto near = divisor_scan(spec, {12, 12}, opt);
  REQUIRE(full.exact_min_norm_sq.has_value());
  CHECK(*full.exact_min_norm_sq == Rational(1, 9));
  CHECK(*near.exact_min_norm_sq == *full.exact_min_norm_sq);
  CHECK(full.zero_slices == 4);  // xi = +-6, +-12
  CHECK(full.violations == 0);
  CHECK(full.plausibly_holds);
  const auto lb = rational_lowerbound(make_rational_vector({Rational(1, 2), Rational(1, 3)}));
  CHECK(*lb.C0 * *lb.C0 == *full.exact_min_norm_sq);
}

TEST_CASE("every record respects the fitted bound") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    SystemSpec spec(2, 1,
                    {ToroidalSymbol::linear(1, Q(Rational(gen::uniform(rng, -5, 5), gen::uniform(rng, 1, 7)))),
                     ToroidalSymbol::linear(1, Q(Rational(gen::uniform(rng, -5, 5), gen::uniform(rng, 1, 7))))});
    DivisorScanOptions opt;
    opt.keep_records = true;
    const auto s = divisor_scan(spec, {6, 6}, opt);
    CHECK(s.violations == 0);
    for (const auto& r : s.records)
      CHECK(r.norm >= s.C_hat * std::pow(static_cast<double>(r.size), -s.lambda_hat) * (1 - 1e-12));
  }
}

TEST_CASE("golden ratio: q ||q phi|| stays above 0.38") {
  const double phi = (1 + std::sqrt(5.0)) / 2;
  SystemSpec spec(1, 1, {ToroidalSymbol::custom(1, 1.0, [phi](std::span<const std::int64_t> x) {
                          return Complex(phi * static_cast<double>(x[0]), 0.0);
                        })});
  DivisorScanOptions opt;
  opt.mode = DivisorScanOptions::Mode::Nearest;
  opt.keep_records = true;
  const auto s = divisor_scan(spec, {20000, 10000}, opt);
  double worst = INFINITY;
  for (const auto& r : s.records)
    if (r.xi[0] > 0) worst = std::min(worst, static_cast<double>(r.xi[0]) * r.norm);
  CHECK(worst >= 0.38);
  CHECK(worst == doctest::Approx(0.381966).epsilon(1e-5));
  CHECK(s.plausibly_holds);
}

TEST_CASE("Liouville a0: probes at the truncation denominators") {
  const auto spec = liouville_a0();
  const auto tr = liouville_truncations(4);
  std::vector<BigFrequency> probes;
  for (const auto& t : tr) probes.push_back(big({-t.p}, {t.q}));
  const auto pr = probe_divisors(spec, probes);
  for (int ell = 2; ell <= 4; ++ell) {
    const auto& r = pr[ell - 1];
    // ||L^|| = q (L_5 - L_ell) = 10^{-ell ell!} (1 + ...) sits just above q^{-ell}
    CHECK_FALSE(r.below(ell));
    CHECK(r.below(ell - 1));
    CHECK(r.log10_norm == doctest::Approx(-ell * std::tgamma(ell + 1.0)).epsilon(1e-9));
  }
  CHECK_THROWS_AS(liouville_truncations(6), ResourceError);
}

TEST_CASE("scan is deterministic across thread counts") {
  const auto spec = rational_a0();
  DivisorScanOptions a, b;
  a.threads = 1;
  b.threads = 3;
  const auto s1 = divisor_scan(spec, {10, 30}, a), s2 = divisor_scan(spec, {10, 30}, b);
  CHECK(s1.lambda_hat == s2.lambda_hat);
  CHECK(s1.C_hat == s2.C_hat);
  CHECK(s1.min_record.eta == s2.min_record.eta);
  CHECK(s1.offenders.size() == s2.offenders.size());
}

TEST_CASE("Liouville witness, p = 0") {
  const auto spec = liouville_a0();
  const auto tr = liouville_truncations(4);
  WitnessSequence ws;
  for (int ell = 2; ell <= 4; ++ell) ws.terms.push_back({big({-tr[ell - 1].p}, {tr[ell - 1].q}), ell - 1});
  const auto w = build_witness(spec, ws, 0);
  REQUIRE(w.checks.size() == 3);
  for (const auto& c : w.checks) {
    CHECK(c.decay_ok);
    CHECK(c.compat_ok);
  }
  CHECK(w.omitted == 1);  // 10^24 does not fit int64
  CHECK(w.compat_ok);

  const auto rep = demonstrate_blowup(spec, w, ws);
  CHECK(rep.solve_confirms);
  CHECK(rep.lambda_needed == doctest::Approx(0.75));
  CHECK_FALSE(rep.exceeds_cap);
  CHECK(rep.last_exceedance > 3.0);

  WitnessSequence bad = ws;
  bad.terms[2].level = 4;  // strict bound fails at the truncation frequency
  CHECK_THROWS_AS(build_witness(spec, bad, 0), DomainError);
  CHECK_THROWS_AS(build_witness(spec, WitnessSequence{}, 0), DomainError);
  WitnessSequence wide = ws;
  wide.delta = Rational(1, 2);
  CHECK_THROWS_AS(build_witness(spec, wide, 0), DomainError);
}

TEST_CASE("planted small divisors, p = 1") {
  // n = 2, N = 1, tabulated on [-40, 40]; p1 has divisors 2^{-l} size^{-l} at xi_l
  const std::int64_t X = 40;
  const std::vector<std::int64_t> xs{8, 16, 32};
  std::vector<Q> t1, t2;
  for (std::int64_t xi = -X; xi <= X; ++xi) {
    t1.push_back(Q(Rational(static_cast<long>(xi), 2) + Rational(1, 3)));
    t2.push_back(Q(Rational(static_cast<long>(xi), 3) + Rational(1, 5)));
  }
  WitnessSequence ws;
  for (int l = 1; l <= 3; ++l) {
    const std::int64_t xi = xs[l - 1];
    const Rational eps = Rational(1, 2) / pow(Rational(xi), static_cast<unsigned long>(l));
    t1[xi + X] = Q(Rational(-3) + eps);
    t2[xi + X] = Q(Rational(-1) + eps / 2);
    ws.terms.push_back({big({3, 1}, {xi}), l});
  }
  SystemSpec spec(2, 1, {ToroidalSymbol::tabulated_exact(1, X, t1), ToroidalSymbol::tabulated_exact(1, X, t2)});
  const auto w = build_witness(spec, ws, 1);
  CHECK(w.pivot == 1);
  CHECK(w.K == MultiIndex{2});
  CHECK(w.compat_ok);
  for (const auto& c : w.checks) CHECK(c.decay_ok);

  BlowupOptions opt;
  opt.lambda_hat = 0.5;
  const auto rep = demonstrate_blowup(spec, w, ws, opt);
  CHECK(rep.solve_confirms);
  CHECK(rep.margin_monotone);
  for (const auto& t : rep.terms) {
    CHECK(t.kernel_identity);
    CHECK(t.pinned);
  }
}
