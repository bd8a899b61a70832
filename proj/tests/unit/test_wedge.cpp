#include "gen.hpp"
#include "torcx/wedge.hpp"

#include <doctest.h>

using namespace torcx;
using Q = GaussRational;

namespace {
ConstPForm<Q> dt(int n, std::initializer_list<int> K, long c = 1) {
  return ConstPForm<Q>::basis(n, MultiIndex(K), Q(c));
}
}  // namespace

TEST_CASE("wedge_compat examples") {
  CHECK(wedge_compat(dt(2, {1}), dt(2, {1, 2})));
  CHECK_FALSE(wedge_compat(dt(3, {1}), dt(3, {2, 3})));
  const auto L = dt(2, {1}) + dt(2, {2});
  CHECK(wedge_compat(L, dt(2, {1, 2})));
  CHECK_THROWS_AS(wedge_compat(dt(2, {1, 2}), dt(2, {1, 2})), DomainError);
}

TEST_CASE("wedge_divide examples") {
  CHECK(wedge_divide(dt(2, {1}), dt(2, {1, 2})) == dt(2, {2}));
  CHECK(wedge_divide(dt(2, {1}, 2), dt(2, {1}, 2)) == ConstPForm<Q>::basis(2, {}, Q(1L)));

  const auto L = dt(2, {1}) + dt(2, {2});
  const auto U = wedge_divide(L, dt(2, {1, 2}));
  CHECK(U == dt(2, {2}));
  CHECK(wedge(L, U) == dt(2, {1, 2}));
  CHECK(wedge_divide_ex(L, dt(2, {1, 2})).pivot == 1);

  CHECK_THROWS_AS(wedge_divide(ConstPForm<Q>(2, 1), dt(2, {1, 2})), DomainError);
  try {
    wedge_divide(dt(3, {1}), dt(3, {2, 3}));
    FAIL("expected PreconditionError");
  } catch (const PreconditionError& e) {
    CHECK(e.residual() == doctest::Approx(1.0));
  }
}

TEST_CASE("defining identity, exhaustive small grid, n <= 3") {
  for (int n = 1; n <= 3; ++n)
    for (int p = 0; p <= n - 1; ++p) {
      const auto one = all_multi_indices(n, 1);
      const auto top = all_multi_indices(n, p + 1);
      for_each_lattice_point(n, 1, [&](const IntVec& lc) {
        ConstPForm<Q> L(n, 1);
        for (int j = 0; j < n; ++j) L.set(one[j], Q(static_cast<long>(lc[j])));
        if (L.is_literal_zero()) return;
        for_each_lattice_point(static_cast<int>(top.size()), 1, [&](const IntVec& fc) {
          ConstPForm<Q> F(n, p + 1);
          for (std::size_t k = 0; k < top.size(); ++k) F.set(top[k], Q(static_cast<long>(fc[k])));
          if (!wedge_compat(L, F)) return;
          CHECK(wedge(L, wedge_divide(L, F)) == F);
        });
      });
    }
}

TEST_CASE("pivot is the largest-modulus component") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = static_cast<int>(gen::uniform(rng, 1, 5));
    const auto L = gen::const_form<Complex>(rng, n, 1, 0.9);
    if (L.is_literal_zero()) continue;
    const int p = static_cast<int>(gen::uniform(rng, 0, n - 1));
    const auto F = wedge(L, gen::const_form<Complex>(rng, n, p));
    const auto r = wedge_divide_ex(L, F);
    for (const auto& [K, v] : L.terms()) CHECK(std::abs(v) <= std::abs(L.coeff({r.pivot})));
    CHECK((wedge(L, r.U) - F).max_abs() <= 1e-12 * (1.0 + F.max_abs()));
  }
}

TEST_CASE("fixed pivot and mixed pivots") {
  // any single mu with L_mu != 0 works
  const int n = 3;
  const auto L = dt(n, {1}) + dt(n, {2}) + dt(n, {3});
  const auto F = wedge(L, dt(n, {1}));
  for (int mu = 1; mu <= 3; ++mu)
    CHECK(wedge(L, wedge_divide(L, F, PivotPolicy::fixed(mu))) == F);
  CHECK_THROWS_AS(wedge_divide(dt(n, {1}), dt(n, {1, 2}), PivotPolicy::fixed(2)), DomainError);

  // choosing mu = 2 for J = (1,2) and mu = 1 for J = (1,3) breaks the identity
  ConstPForm<Q> mixed(n, 1);
  mixed.add_to(MultiIndex{1}, Q(static_cast<long>(wedge_sign(2, {1, 2}))) * F.coeff({1, 2}));
  mixed.add_to(MultiIndex{3}, Q(static_cast<long>(wedge_sign(1, {1, 3}))) * F.coeff({1, 3}));
  CHECK_FALSE(wedge(L, mixed) == F);
}

TEST_CASE("wedge_general parametrizes the solution space") {
  std::mt19937_64 rng(32);
  const auto L = dt(2, {1}, 2);
  const auto F0 = dt(2, {1}, 2);
  // p = 0: W is ignored
  CHECK(wedge_general(L, F0, std::optional<ConstPForm<Q>>{}) == wedge_divide(L, F0));
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 4, p = 2;
    auto Lr = gen::const_form<Q>(rng, n, 1, 0.8);
    if (Lr.is_literal_zero()) continue;
    const auto F = wedge(Lr, gen::const_form<Q>(rng, n, p));
    const auto W = gen::const_form<Q>(rng, n, p - 1);
    const auto U = wedge_general(Lr, F, std::optional{W});
    CHECK(wedge(Lr, U) == F);
    CHECK(wedge_general(Lr, F, std::optional{ConstPForm<Q>(n, p - 1)}) == wedge_divide(Lr, F));
    // two solutions differ by an element of L ^ (p-1 forms): their difference D solves L ^ D = 0,
    // hence D = L ^ (D / L)
    const auto D = U - wedge_divide(Lr, F);
    CHECK(wedge(Lr, D).is_literal_zero());
    if (!D.is_literal_zero()) CHECK(wedge(Lr, wedge_divide(Lr, D)) == D);
  }
  CHECK_THROWS_AS(wedge_general(dt(3, {1}), dt(3, {1, 2}), std::optional{dt(3, {1})}), DomainError);
}
