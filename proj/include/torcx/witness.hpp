#pragma once

#include "torcx/divisor_scan.hpp"
#include "torcx/spectral.hpp"

#include <optional>
#include <vector>

namespace torcx {

struct WitnessTerm {
  BigFrequency freq;
  int level = 0;  // l in 0 < ||L^|| < |(eta_l, xi_l)|^{-l}
};

struct WitnessSequence {
  Rational delta{1, 4};  // 0 < 2 delta < 1
  std::vector<WitnessTerm> terms;
};

struct WitnessTermCheck {
  int level = 0;
  BigInt size;
  double log10_size = 0.0;
  double log10_divisor = 0.0;     // log10 ||L^||
  double log10_amplitude = 0.0;   // log10 |(eta, xi)|^{delta l}
  double log10_coeff = 0.0;       // log10 max |f^| = amplitude * ||L^||
  bool divisor_ok = false;        // 0 < ||L^|| < size^{-l}
  bool decay_ok = false;          // max |f^| < size^{-l/2}, exact
  bool compat_ok = false;         // L^ ^ f^ = 0, exact
  bool representable = false;     // fits the int64 frequency lattice
};

struct Witness {
  int p = 0;
  int pivot = 0;       // common index of max |eta_j + p_j|
  MultiIndex K;        // u_l = |.|^{delta l} dt_K
  Rational delta;
  TrigPForm<Complex> f;               // representable terms, with amplitudes
  TrigPForm<GaussRational> f_unit;    // representable terms, unit amplitudes
  std::vector<WitnessTermCheck> checks;
  std::size_t omitted = 0;            // terms beyond int64
  bool compat_ok = false;             // compatibility_check on f_unit
};

/// Truncated necessity-direction witness f = sum_l L^_l ^ |.|^{delta l} dt_K e^{i(eta_l t + xi_l x)}.
/// Throws DomainError for an invalid sequence.
Witness build_witness(const SystemSpec& spec, const WitnessSequence& ws, int p);

struct BlowupTerm {
  int level = 0;
  double log10_size = 0.0;
  double log10_forced = 0.0;     // log10 of the forced solution coefficient
  double local_exponent = 0.0;   // log10_forced / log10_size
  double log10_margin = 0.0;     // p >= 1: log10 of |.|^{delta l - lambda} (p+1)^{-1} C
  bool kernel_identity = false;  // p >= 1: L^ ^ zeta = 0 exactly
  bool pinned = false;           // p >= 1: |U_K - 1| <= p ||L^|| ||W||
};

struct BlowupOptions {
  double lambda_cap = 10.0;
  std::optional<double> lambda_hat;  // p >= 1 margin; defaults to 0
  std::optional<double> C_hat;       // defaults to 1
};

struct BlowupReport {
  int p = 0;
  std::vector<BlowupTerm> terms;
  double lambda_needed = 0.0;        // least lambda with |.|^lambda above every forced coefficient
  bool exceeds_cap = false;          // lambda_needed > lambda_cap
  double fit_lambda = 0.0;           // (C, lambda) fit through all but the last term
  double fit_log10_C = 0.0;
  double last_exceedance = 0.0;      // log10(last forced) - log10(fit prediction)
  bool solve_confirms = false;       // exact solve reproduces the forced coefficients
  bool margin_monotone = false;      // p >= 1
};

BlowupReport demonstrate_blowup(const SystemSpec& spec, const Witness& w, const WitnessSequence& ws,
                                const BlowupOptions& opt = {});

}  // namespace torcx
