#include "torcx/examples.hpp"

#include "torcx/trig_poly.hpp"

namespace torcx {

namespace {

GaussRational rat(long a, long b = 1) { return GaussRational(Rational(a, b)); }

}  // namespace

VariableSystem mixed_growth_system() {
  VariableSystem s{"mixed-growth",
                   SystemSpec(3, 1,
                              {ToroidalSymbol::logarithmic(1),
                               ToroidalSymbol::polynomial(1, {Monomial{rat(1), {0}},
                                                              Monomial{GaussRational::imag_unit(), {1}}}),
                               ToroidalSymbol::linear(1, rat(1))}),
                   {}};
  s.profile.c.push_back(fourier_1d(3, 1, 1, {Rational(1, 4)}));
  auto c2 = TrigPoly<GaussRational>::constant(3, rat(1));
  // i sin(t2) / 8
  c2 += fourier_1d(3, 2, 0, {}, {Rational(1, 8)}) * GaussRational::imag_unit();
  s.profile.c.push_back(c2);
  s.profile.c.push_back(fourier_1d(3, 3, 1, {Rational(1, 8)}));
  return s;
}

GaussRational sign_definite_symbol(std::int64_t xi) {
  Rational a, b;
  if (xi > 0) {
    a = 0;
    b = Rational(static_cast<long>(xi));
  } else {
    b = 1;
    a = (-xi) % 2 == 1 ? Rational(1, static_cast<long>(xi)) : Rational(static_cast<long>(-xi));
  }
  return {a, b};
}

VariableSystem sign_definite_system() {
  auto sym = ToroidalSymbol::custom(
      1, 1.0, [](std::span<const std::int64_t> x) { return sign_definite_symbol(x[0]).to_complex(); },
      [](std::span<const std::int64_t> x) { return std::optional<GaussRational>(sign_definite_symbol(x[0])); });
  sym.description = "sign-definite piecewise symbol";
  VariableSystem s{"sign-definite", SystemSpec(1, 1, {sym}), {}};
  auto a = fourier_1d(1, 1, -2, {Rational(-1, 2)});
  auto b = fourier_1d(1, 1, -1, {}, {Rational(-1, 2)});
  s.profile.c.push_back(a + b * GaussRational::imag_unit());
  return s;
}

VariableSystem positive_im_system() {
  VariableSystem s{"positive-im", SystemSpec(1, 1, {ToroidalSymbol::linear(1, GaussRational::imag_unit())}), {}};
  s.profile.c.push_back(fourier_1d(1, 1, 1, {Rational(1, 2)}));
  return s;
}

VariableSystem real_form_system() {
  VariableSystem s{"real-form", SystemSpec(2, 1, {ToroidalSymbol::linear(1, rat(1)), ToroidalSymbol::linear(1, rat(1))}),
                   {}};
  // G = cos(t1 + t2) / 2 + sin(t1) / 3
  TrigPoly<GaussRational> G(2);
  G.add({1, 1}, rat(1, 4));
  G.add({-1, -1}, rat(1, 4));
  G += fourier_1d(2, 1, 0, {}, {Rational(1, 3)});
  auto c1 = G.derivative(1);
  c1.add({0, 0}, GaussRational(Rational(1, 2)));
  auto c2 = G.derivative(2);
  c2.add({0, 0}, GaussRational(Rational(1, 3)));
  s.profile.c = {c1, c2};
  return s;
}

}  // namespace torcx
