#include "torcx/witness.hpp"

#include "torcx/error.hpp"

#include <cmath>

namespace torcx {

namespace {

std::vector<GaussRational> big_values(const SystemSpec& spec, const BigFrequency& f) {
  std::vector<GaussRational> v;
  for (int j = 0; j < spec.n; ++j) {
    auto p = spec.symbols[j].exact_big(f.xi);
    if (!p) throw DomainError("witness needs exact big-integer symbol evaluators");
    v.push_back(GaussRational(Rational(f.eta[j])) + *p);
  }
  return v;
}

bool fits(const BigVec& v) {
  for (const auto& x : v)
    if (!x.fits_slong_p()) return false;
  return true;
}

IntVec to_int(const BigVec& v) {
  IntVec out;
  for (const auto& x : v) out.push_back(x.get_si());
  return out;
}

ConstPForm<GaussRational> exact_slice(const std::vector<GaussRational>& v) {
  ConstPForm<GaussRational> L(static_cast<int>(v.size()), 1);
  for (std::size_t j = 0; j < v.size(); ++j)
    L.set(MultiIndex{static_cast<int>(j) + 1}, GaussRational::imag_unit() * v[j]);
  return L;
}

}  // namespace

Witness build_witness(const SystemSpec& spec, const WitnessSequence& ws, int p) {
  if (ws.terms.empty()) throw DomainError("witness sequence is empty");
  if (!(ws.delta > 0 && 2 * ws.delta < 1)) throw DomainError("witness needs 0 < 2 delta < 1");
  if (p < 0 || p >= spec.n) throw DomainError("witness degree p must satisfy 0 <= p < n");
  Witness w;
  w.p = p;
  w.delta = ws.delta;
  w.f = TrigPForm<Complex>(spec.n, spec.N, p + 1);
  w.f_unit = TrigPForm<GaussRational>(spec.n, spec.N, p + 1);
  const auto probes = [&] {
    std::vector<BigFrequency> fs;
    for (const auto& t : ws.terms) fs.push_back(t.freq);
    return probe_divisors(spec, fs);
  }();
  const long a = ws.delta.get_num().get_si();
  const unsigned long b = ws.delta.get_den().get_ui();
  const double delta = to_double(ws.delta);

  BigInt prev_size = -1;
  int prev_level = 0;
  for (std::size_t i = 0; i < ws.terms.size(); ++i) {
    const auto& t = ws.terms[i];
    const auto& pr = probes[i];
    if (t.level <= prev_level) throw DomainError("witness levels must be positive and increasing");
    if (pr.size <= prev_size) throw DomainError("witness sizes |(eta_l, xi_l)| must increase strictly");
    if (!pr.below(t.level))
      throw DomainError("witness term " + std::to_string(i) + " violates 0 < ||L^|| < |.|^{-l}");
    prev_size = pr.size;
    prev_level = t.level;

    const auto v = big_values(spec, t.freq);
    int pivot = 1;
    for (int j = 2; j <= spec.n; ++j)
      if (v[j - 1].norm_sq() > v[pivot - 1].norm_sq()) pivot = j;
    if (i == 0) {
      w.pivot = pivot;
      std::vector<int> K;
      for (int j = 1; j <= spec.n && static_cast<int>(K.size()) < p; ++j)
        if (j != pivot) K.push_back(j);
      w.K = MultiIndex(K);
    } else if (pivot != w.pivot) {
      throw DomainError("witness terms have different pivot indices; reorder the system");
    }

    const auto L = exact_slice(v);
    const auto F = wedge(L, ConstPForm<GaussRational>::basis(spec.n, w.K, GaussRational(1L)));

    WitnessTermCheck c;
    c.level = t.level;
    c.size = pr.size;
    c.log10_size = pr.log10_size;
    c.log10_divisor = pr.log10_norm;
    c.log10_amplitude = delta * t.level * pr.log10_size;
    c.log10_coeff = c.log10_amplitude + pr.log10_norm;
    c.divisor_ok = true;
    // |f^| = size^{delta l} ||L^|| < size^{-l/2}  <=>  ||L^||^{2b} size^{(2a+b) l} < 1
    c.decay_ok = pow(pr.norm_sq, b) *
                     Rational(pow(pr.size, static_cast<unsigned long>((2 * a + static_cast<long>(b)) * t.level))) <
                 1;
    c.compat_ok = wedge(L, F).is_literal_zero();
    c.representable = fits(t.freq.eta) && fits(t.freq.xi);
    if (c.representable) {
      Frequency fr{to_int(t.freq.eta), to_int(t.freq.xi)};
      w.f_unit.add_slice(fr, F);
      const double amp = std::pow(10.0, c.log10_amplitude);
      w.f.add_slice(fr, convert_form<Complex>(F) * Complex(amp, 0.0));
    } else {
      ++w.omitted;
    }
    w.checks.push_back(c);
  }
  SolverOptions opt;
  w.compat_ok = compatibility_check(w.f_unit, spec, opt).ok;
  return w;
}

BlowupReport demonstrate_blowup(const SystemSpec& spec, const Witness& w, const WitnessSequence& ws,
                                const BlowupOptions& opt) {
  BlowupReport rep;
  rep.p = w.p;
  const double delta = to_double(w.delta);
  for (const auto& c : w.checks) {
    BlowupTerm t;
    t.level = c.level;
    t.log10_size = c.log10_size;
    t.log10_forced = delta * c.level * c.log10_size;
    t.local_exponent = c.log10_size > 0 ? t.log10_forced / c.log10_size : 0.0;
    rep.lambda_needed = std::max(rep.lambda_needed, t.local_exponent);
    rep.terms.push_back(t);
  }
  rep.exceeds_cap = rep.lambda_needed > opt.lambda_cap;

  // least-squares (log C, lambda) through all terms but the last, extrapolated to the last
  if (rep.terms.size() >= 3) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const std::size_t m = rep.terms.size() - 1;
    for (std::size_t i = 0; i < m; ++i) {
      const double x = rep.terms[i].log10_size, y = rep.terms[i].log10_forced;
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double den = m * sxx - sx * sx;
    rep.fit_lambda = den != 0.0 ? (m * sxy - sx * sy) / den : 0.0;
    rep.fit_log10_C = (sy - rep.fit_lambda * sx) / static_cast<double>(m);
    const auto& last = rep.terms.back();
    rep.last_exceedance = last.log10_forced - (rep.fit_log10_C + rep.fit_lambda * last.log10_size);
  } else if (rep.terms.size() == 2) {
    const auto& a = rep.terms[0];
    rep.fit_lambda = a.local_exponent;
    rep.last_exceedance = rep.terms[1].log10_forced - rep.fit_lambda * rep.terms[1].log10_size;
  }

  if (w.p == 0) {
    // the equation L^ u^ = f^ = |.|^{delta l} L^ forces u^ = |.|^{delta l}; check the unit part exactly
    rep.solve_confirms = true;
    if (!w.f_unit.is_literal_zero()) {
      const auto sol = solve_constant(spec, w.f_unit);
      for (const auto& [fr, s] : w.f_unit.slices())
        if (!(sol.u.slice(fr).coeff(MultiIndex{}) == GaussRational(1L))) rep.solve_confirms = false;
    }
    return rep;
  }

  // p >= 1: any solution U = u_l + L^ ^ W has U_K pinned near the amplitude; the
  // kernel identity sum_j (-1)^{j+1} i(eta_j + p_j) zeta^{(j)} = 0 is L^ ^ zeta = 0.
  const double lam = opt.lambda_hat.value_or(0.0);
  const double C = opt.C_hat.value_or(1.0);
  rep.solve_confirms = true;
  rep.margin_monotone = true;
  double prev = -INFINITY;
  for (std::size_t i = 0; i < ws.terms.size(); ++i) {
    const auto v = big_values(spec, ws.terms[i].freq);
    const auto L = exact_slice(v);
    const auto u = ConstPForm<GaussRational>::basis(spec.n, w.K, GaussRational(1L));
    const auto F = wedge(L, u);
    ConstPForm<GaussRational> W(spec.n, w.p - 1);
    for (const auto& J : all_multi_indices(spec.n, w.p - 1)) W.set(J, GaussRational(1L));
    const auto U = wedge_general(L, F, std::optional{W});
    const auto zeta = u - U;
    auto& t = rep.terms[i];
    t.kernel_identity = wedge(L, zeta).is_literal_zero();
    // |U_K - 1| <= p ||L^|| ||W||, ||W|| = 1
    const Rational dev = (U.coeff(w.K) - GaussRational(1L)).norm_sq();
    const Rational nsq = slice_norm_sq(L);
    t.pinned = dev <= Rational(w.p * w.p) * nsq;
    rep.solve_confirms = rep.solve_confirms && t.kernel_identity && t.pinned;
    t.log10_margin = (delta * t.level - lam) * t.log10_size - std::log10(w.p + 1.0) + std::log10(C);
    if (t.log10_margin <= prev) rep.margin_monotone = false;
    prev = t.log10_margin;
  }
  return rep;
}

}  // namespace torcx
