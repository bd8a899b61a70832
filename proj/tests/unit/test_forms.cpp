#include "gen.hpp"
#include "torcx/form_io.hpp"
#include "torcx/trig_form.hpp"

#include <doctest.h>

using namespace torcx;
using Q = GaussRational;

namespace {

ConstPForm<Q> dt(int n, std::initializer_list<int> K, long c = 1) {
  return ConstPForm<Q>::basis(n, MultiIndex(K), Q(c));
}

Frequency freq(IntVec eta, IntVec xi = {}) { return {std::move(eta), std::move(xi)}; }

}  // namespace

TEST_CASE("multi-index validation") {
  CHECK_THROWS_AS(MultiIndex({2, 1}), DomainError);
  CHECK_THROWS_AS(MultiIndex({0, 1}), DomainError);
  CHECK(MultiIndex{}.empty());
  CHECK(all_multi_indices(4, 2).size() == 6);
  CHECK(all_multi_indices(3, 0).size() == 1);
  CHECK(all_multi_indices(3, 4).empty());
}

TEST_CASE("wedge_sign table") {
  CHECK(wedge_sign(1, {1, 2}) == 1);
  CHECK(wedge_sign(2, {1, 2}) == -1);
  CHECK(wedge_sign(3, {1, 3, 5}) == -1);
  CHECK(wedge_sign(5, {1, 3, 5}) == 1);
  CHECK_THROWS_AS(wedge_sign(4, {1, 3, 5}), DomainError);

  // pinned by dt_mu ^ (i_mu dt_J) = dt_J for every mu in J, n = 3 and n = 5
  for (int n : {3, 5})
    for (int p = 1; p <= n; ++p)
      for (const auto& J : all_multi_indices(n, p))
        for (int mu : J) {
          const auto F = ConstPForm<Q>::basis(n, J, Q(1L));
          const auto L = dt(n, {mu});
          CHECK(wedge(L, wedge_divide(L, F)) == F);
          CHECK(interior(mu, F).coeff(J.without(mu)) == Q(static_cast<long>(wedge_sign(mu, J))));
        }
}

TEST_CASE("wedge examples") {
  CHECK(wedge(dt(2, {1}), dt(2, {2})) == dt(2, {1, 2}));
  CHECK(wedge(dt(2, {2}), dt(2, {1})) == dt(2, {1, 2}, -1));
  const auto a = dt(2, {1}) + dt(2, {2});
  CHECK(wedge(a, a).is_literal_zero());
  CHECK(wedge(dt(2, {1, 2}), dt(2, {1})).degree() == 3);
  CHECK(wedge(dt(2, {1, 2}), dt(2, {1})).is_literal_zero());
  CHECK_THROWS_AS(wedge(dt(2, {1}), dt(3, {1})), DomainError);
}

TEST_CASE("wedge antisymmetry and bilinearity") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 400; ++trial) {
    const int n = static_cast<int>(gen::uniform(rng, 1, 5));
    const int p = static_cast<int>(gen::uniform(rng, 0, n));
    const int q = static_cast<int>(gen::uniform(rng, 0, n));
    const auto a = gen::const_form<Q>(rng, n, p);
    const auto b = gen::const_form<Q>(rng, n, q);
    const auto c = gen::const_form<Q>(rng, n, q);
    const Q sign((p * q) % 2 == 0 ? 1L : -1L);
    CHECK(wedge(a, b) == wedge(b, a) * sign);
    CHECK(wedge(a, b + c) == wedge(a, b) + wedge(a, c));
    const Q s = gen::gauss(rng);
    CHECK(wedge(a * s, b) == wedge(a, b) * s);
  }
}

TEST_CASE("exterior derivative examples") {
  TrigPForm<Q> u(2, 0, 0);
  u.add(freq({1, 0}), MultiIndex{}, Q(1L));
  const auto du = exterior_derivative(u);
  CHECK(du.degree() == 1);
  CHECK(du.coeff(freq({1, 0}), {1}) == Q::imag_unit());
  CHECK(du.term_count() == 1);

  TrigPForm<Q> c(2, 0, 0);
  c.add(freq({0, 0}), MultiIndex{}, Q(7L));
  CHECK(exterior_derivative(c).is_literal_zero());

  TrigPForm<Q> v(2, 0, 1);
  v.add(freq({1, 1}), {2}, Q(1L));
  const auto dv = exterior_derivative(v);
  CHECK(dv.term_count() == 1);
  CHECK(dv.coeff(freq({1, 1}), {1, 2}) == Q::imag_unit());

  TrigPForm<Q> top(2, 0, 2);
  top.add(freq({1, 1}), {1, 2}, Q(1L));
  CHECK(exterior_derivative(top).degree() == 3);
  CHECK(exterior_derivative(top).is_literal_zero());
}

TEST_CASE("d_t d_t = 0 exactly") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = static_cast<int>(gen::uniform(rng, 1, 4));
    const int N = static_cast<int>(gen::uniform(rng, 0, 2));
    const int p = static_cast<int>(gen::uniform(rng, 0, n));
    const auto u = gen::trig_form<Q>(rng, n, N, p, 3, 3, 5);
    CHECK(exterior_derivative(exterior_derivative(u)).is_literal_zero());
  }
}

TEST_CASE("is_exact examples") {
  TrigPForm<Q> e(2, 0, 0);
  e.add(freq({1, 0}), MultiIndex{}, Q(1L));
  auto r = is_exact(exterior_derivative(e));
  REQUIRE(r.exact);
  CHECK(*r.primitive == e);

  TrigPForm<Q> g(1, 0, 1);
  g.add(freq({0}), {1}, Q(1L));
  CHECK_FALSE(is_exact(g).exact);

  TrigPForm<Q> h(2, 0, 1);
  h.add(freq({1, 0}), {1}, Q::imag_unit());
  h.add(freq({0, 1}), {2}, Q::imag_unit());
  auto rh = is_exact(h);
  REQUIRE(rh.exact);
  CHECK(exterior_derivative(*rh.primitive) == h);
  CHECK(rh.primitive->coeff(freq({1, 0}), {}) == Q(1L));
  CHECK(rh.primitive->coeff(freq({0, 1}), {}) == Q(1L));

  TrigPForm<Q> notclosed(2, 0, 1);
  notclosed.add(freq({1, 0}), {2}, Q(1L));
  CHECK_FALSE(is_exact(notclosed).exact);
}

TEST_CASE("is_exact round trip on random primitives") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = static_cast<int>(gen::uniform(rng, 1, 4));
    const int p = static_cast<int>(gen::uniform(rng, 0, n - 1));
    const auto v = gen::trig_form<Q>(rng, n, 1, p, 3, 2, 4);
    const auto g = exterior_derivative(v);
    if (g.degree() > n) continue;
    auto r = is_exact(g);
    REQUIRE(r.exact);
    CHECK(exterior_derivative(*r.primitive) == g);
  }
}

TEST_CASE("float mode is_exact uses relative tolerance") {
  TrigPForm<Complex> h(2, 0, 1);
  h.add(freq({1, 0}), {1}, Complex(0, 1));
  h.add(freq({0, 1}), {2}, Complex(0, 1));
  h.add(freq({0, 0}), {1}, Complex(1e-14, 0));
  auto r = is_exact(h);
  REQUIRE(r.exact);
  CHECK(max_diff(exterior_derivative(*r.primitive), h) < 1e-12);
}

TEST_CASE("form JSON round trip") {
  std::mt19937_64 rng(14);
  const auto u = gen::trig_form<Q>(rng, 3, 1, 1, 3, 2, 4);
  const auto j = to_json(u);
  CHECK(j["terms"][0]["re"].is_string());
  CHECK(exact_trig_form_from_json(j) == u);
  const auto uf = convert_trig<Complex>(u);
  CHECK(max_diff(trig_form_from_json(to_json(uf)), uf) == 0.0);
  CHECK_THROWS_AS(trig_form_from_json(nlohmann::json{{"n", 1}}), ConfigError);
}
