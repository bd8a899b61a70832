#pragma once

#include "torcx/symbol.hpp"
#include "torcx/trig_form.hpp"

#include <optional>
#include <string>
#include <vector>

namespace torcx {

using BigVec = std::vector<BigInt>;

/// Frequency with arbitrary-size integer entries, for probes beyond int64.
struct BigFrequency {
  BigVec eta;
  BigVec xi;
};

struct DivisorRecord {
  IntVec eta;
  IntVec xi;
  double norm = 0.0;        // ||L^(eta, xi)||
  std::int64_t size = 0;    // |(eta, xi)|
};

struct ShellStat {
  int k = 0;                          // 2^{k-1} < size <= 2^k
  std::size_t count = 0;              // nonzero slices seen
  DivisorRecord min;                  // smallest nonzero divisor in the shell
  std::optional<Rational> min_norm_sq;  // exact, rational mode
  std::vector<DivisorRecord> smallest;  // up to 5, ascending
};

struct ProbeRecord {
  BigFrequency freq;
  Rational norm_sq;      // exact ||L^||^2
  BigInt size;           // |(eta, xi)|
  double log10_norm = 0.0;
  double log10_size = 0.0;
  bool zero = false;
  /// 0 < ||L^|| < size^{-ell}, decided exactly.
  bool below(int ell) const;
};

struct DivisorScanOptions {
  enum class Mode { Full, Nearest };
  Mode mode = Mode::Full;
  bool exact = false;
  bool keep_records = false;
  double lambda_max = 2.5;   // verdict threshold on the local exponent
  double eps_zero = 1e-12;   // float mode: ||L^|| below this counts as a zero slice
  int threads = 0;
  std::vector<BigFrequency> probes;
};

struct DivisorScan {
  FrequencyBox box;
  DivisorScanOptions::Mode mode = DivisorScanOptions::Mode::Full;
  bool exact = false;
  std::size_t examined = 0;
  std::size_t nonzero = 0;
  std::size_t zero_slices = 0;
  std::vector<DivisorRecord> records;  // only with keep_records
  std::vector<ShellStat> shells;
  double lambda_hat = 0.0;
  double C_hat = 0.0;
  DivisorRecord min_record;
  double min_divisor = 0.0;
  std::optional<Rational> exact_min_norm_sq;
  std::size_t violations = 0;          // records with ||L^|| < C |.|^-lambda among those kept
  double worst_local_exponent = 0.0;   // max -log||L^|| / log|.| over the outer range
  bool plausibly_holds = true;
  std::string verdict;
  std::vector<DivisorRecord> offenders;  // 5 smallest ||L^|| |.|^lambda
  std::vector<ProbeRecord> probes;
};

/// Scan ||L^(eta, xi)|| over the box (origin excluded) and fit
/// ||L^|| >= C |(eta, xi)|^{-lambda}. Nearest mode only visits, per xi and j,
/// the integers next to -Re p_j(xi).
DivisorScan divisor_scan(const SystemSpec& spec, FrequencyBox box,
                         const DivisorScanOptions& opt = {});

/// Exact divisors at big-integer frequencies.
std::vector<ProbeRecord> probe_divisors(const SystemSpec& spec,
                                        const std::vector<BigFrequency>& probes);

}  // namespace torcx
