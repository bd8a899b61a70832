#pragma once

#include "torcx/scalar.hpp"
#include "torcx/trig_form.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace torcx {

/// Real number known to lie in the closed rational interval [lo, hi].
/// digits == 0 marks an exact value (lo == hi).
struct HighPrecisionReal {
  Rational lo;
  Rational hi;
  int digits = 0;

  static HighPrecisionReal exact(const Rational& q);
  /// "p/q" and integers are exact; "0.123..." is taken as +-10^{-d}, d = digits after the point.
  static HighPrecisionReal parse(const std::string& text);
  /// (1 + sqrt 5) / 2.
  static HighPrecisionReal golden(int digits);
  /// sum_k 10^{-k!}.
  static HighPrecisionReal liouville(int digits);
  /// sum_k base^{-k!}.
  static HighPrecisionReal factorial_series(unsigned base, int digits);
  /// r^{1/m} for r >= 0.
  static HighPrecisionReal root(const Rational& r, int m, int digits);

  bool is_exact() const { return lo == hi; }
  Rational mid() const { return (lo + hi) / 2; }
  Rational width() const { return hi - lo; }
  double to_double() const;
  bool contains(const Rational& q) const { return lo <= q && q <= hi; }
  bool contains_zero() const { return sgn(lo) <= 0 && sgn(hi) >= 0; }
  std::string to_string(int shown = 20) const;
};

HighPrecisionReal operator+(const HighPrecisionReal& a, const HighPrecisionReal& b);
HighPrecisionReal operator-(const HighPrecisionReal& a);
HighPrecisionReal operator*(const HighPrecisionReal& a, const HighPrecisionReal& b);
HighPrecisionReal pow(const HighPrecisionReal& a, unsigned k);

/// sum_{k <= L} 10^{-k!}.
Rational liouville_partial_sum(int L);

struct RationalVector {
  std::vector<Rational> components;
  BigInt q0{1};  // least q with q alpha integral
};

RationalVector make_rational_vector(std::vector<Rational> components);

struct Convergent {
  BigInt p;
  BigInt q;
};

struct ContinuedFraction {
  std::vector<BigInt> quotients;
  std::vector<Convergent> convergents;
  bool terminated = false;          // exact rational reached its last quotient
  bool precision_exhausted = false; // the interval endpoints disagree beyond this point
};

/// Convergents certified for every point of the interval, up to `depth` quotients.
ContinuedFraction continued_fraction(const HighPrecisionReal& x, int depth);

/// Rational of least denominator in [lo, hi].
Rational simplest_rational(const Rational& lo, const Rational& hi);

struct RationalDetection {
  bool rational = false;
  bool precision_limited = false;  // decided from an interval, not exactly
  int digits = 0;
  std::optional<RationalVector> value;
  std::vector<ContinuedFraction> expansions;  // per component
};

/// Exact inputs: q0 = lcm of denominators. Interval inputs: rational at precision
/// when the simplest rational in every interval has q <= 10^{digits/3}.
RationalDetection detect_rational(const std::vector<HighPrecisionReal>& alpha, int depth = 40);

struct LiouvilleTerm {
  int ell = 0;
  BigInt p;
  BigInt q;        // 10^{ell!}
  Rational bound;  // 2 * 10^{-(ell+1)!} > |L - p/q|
  bool certified = false;  // bound < q^{-ell}
};

/// Truncations of sum_k 10^{-k!}. ResourceError past ell_max = 5.
std::vector<LiouvilleTerm> liouville_truncations(int ell_max);

/// T * 10^{mu m!} for m = 1..m_max; common denominators of truncation-based vectors.
std::vector<BigInt> liouville_denominators(int m_max, int mu = 1, const BigInt& T = 1);

struct SDATerm {
  int level = 0;
  std::vector<BigInt> p;
  BigInt q;
  Rational bound;      // certified upper bound of max_j |alpha_j^mu - p_j^mu / q|
  double log10_bound = 0.0;
  bool from_hint = false;
};

struct SDAWitness {
  int mu = 1;
  Rational C{1};
  std::vector<SDATerm> terms;
};

struct SDAOptions {
  int mu = 1;
  std::int64_t Q_max = 10000;
  int ell_target = 3;
  Rational C{1};
  std::vector<BigInt> hints;  // extra denominators beyond Q_max
  int threads = 0;
};

struct SDASearch {
  bool found = false;
  SDAWitness witness;       // terms for levels 1..ell_target that were found
  int max_level = 0;        // largest level seen at any q >= 2
  double best_exponent = 0.0;  // -log err / log q at the last best approximation
  BigInt best_q;
  double max_exponent = 0.0;   // over q in [sqrt(Q_max), Q_max]
  std::int64_t Q_max = 0;
  int ell_target = 0;
  std::size_t hints_tried = 0;
  int digits = 0;
};

/// Greedy witness: term l is the least q > q_{l-1} with max_j |alpha_j^mu - p_j^mu/q| < C q^{-l}.
/// p_j ranges over the integer mu-th roots of q alpha_j^mu and their neighbours; p_j = 0 is
/// skipped when alpha_j is certified nonzero.
SDASearch sda_search(const std::vector<HighPrecisionReal>& alpha, const SDAOptions& opt = {});

struct ScaledDistance {
  std::int64_t q = 0;
  double value = 0.0;   // q * dist(q x, Z) at the midpoint
  double certified_lower = 0.0;
};

/// Minimum of q * ||q x|| over 1 <= q <= Q_max.
ScaledDistance min_scaled_distance(const HighPrecisionReal& x, std::int64_t Q_max);

struct RationalLowerBound {
  BigInt q0;
  std::optional<Rational> C0;         // min_{0<r<q0} max_j dist(r alpha_j, Z); nullopt = +inf
  std::optional<Rational> C0_coarse;  // min_{0<r<q0} dist(alpha, r^{-1} Z^n), sup norm
  long argmin_r = 0;
  int mu = 0;
  std::optional<Rational> D;          // coarse analogue for alpha^mu, r < q0^mu
  std::optional<Rational> D_sharp;
};

/// Lower bounds of the rational case; mu >= 1 adds the mu-power analogues.
RationalLowerBound rational_lowerbound(const RationalVector& alpha, int mu = 0);

struct DiophantineVerdict {
  enum class Tag { Rational, LiouvilleWitnessed, SDAWitnessed, NoWitnessFound, NonReal };
  Tag tag = Tag::NoWitnessFound;
  std::optional<BigInt> q0;
  int mu = 1;
  std::optional<SDAWitness> witness;
  int precision_digits = 0;
  std::int64_t Q_max = 0;
  int ell_target = 0;
  std::size_t hints = 0;

  bool solvable() const { return tag != Tag::LiouvilleWitnessed && tag != Tag::SDAWitnessed; }
};

std::string to_string(DiophantineVerdict::Tag t);

struct HomogeneousRecord {
  IntVec eta;
  std::int64_t xi = 0;
  double value = 0.0;  // max_j |eta_j / xi^kappa + c_j|
  double size = 0.0;   // |eta| + xi
  double local_exponent = 0.0;
};

struct HomogeneousScan {
  std::int64_t H = 0;
  std::int64_t X = 0;
  std::size_t examined = 0;
  std::size_t zero_slices = 0;
  HomogeneousRecord min_record;
  double lambda_hat = 0.0;
  double C_hat = 0.0;
  double worst_local_exponent = 0.0;
  bool plausibly_holds = true;
  std::vector<HomogeneousRecord> offenders;  // largest local exponents
};

struct HomogeneousOptions {
  std::int64_t H = 1000;
  std::int64_t X = 100000;
  double lambda_max = 2.5;
  SDAOptions sda;  // mu is overwritten by the denominator of kappa
};

struct HomogeneousReport {
  int rho = 1;
  int mu = 1;
  DiophantineVerdict verdict;
  bool beta_nonzero = false;
  RationalDetection rational;
  std::optional<SDASearch> sda;
  HomogeneousScan scan;
  bool paths_agree = true;
  std::string note;
};

/// Solvability of L_j = D_{t_j} + c_j |D_x|^{rho/mu} on T^n x T^1 from c = re + i im.
/// DomainError unless rho, mu >= 1 and gcd(rho, mu) = 1.
HomogeneousReport characterize_homogeneous(const std::vector<HighPrecisionReal>& re,
                                           const std::vector<HighPrecisionReal>& im, int rho,
                                           int mu, const HomogeneousOptions& opt = {});

/// The scan alone: max_j |eta_j / xi^kappa + c_j| over 1 <= xi <= X, |eta| <= H.
HomogeneousScan homogeneous_scan(const std::vector<Complex>& c, double kappa, std::int64_t H,
                                 std::int64_t X, double lambda_max = 2.5, int threads = 0);

}  // namespace torcx
