#include "torcx/diophantine.hpp"

#include "torcx/error.hpp"
#include "torcx/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace torcx {

namespace {

BigInt root_floor(const BigInt& a, unsigned m) {
  BigInt r;
  mpz_root(r.get_mpz_t(), a.get_mpz_t(), m);
  return r;
}

bool perfect_power(const BigInt& a, unsigned m, BigInt& root) {
  return mpz_root(root.get_mpz_t(), a.get_mpz_t(), m) != 0;
}

Rational pow10_neg(unsigned long d) { return Rational(BigInt(1), ipow10(d)); }

/// Outward rounding of [lo, hi] to the grid 10^{-P}.
void round_out(HighPrecisionReal& x, int P) {
  const BigInt s = ipow10(P);
  x.lo = Rational(floor(x.lo * s), s);
  x.hi = Rational(ceil(x.hi * s), s);
  x.lo.canonicalize();
  x.hi.canonicalize();
}

int combine_digits(int a, int b) {
  if (a == 0) return b;
  if (b == 0) return a;
  return std::min(a, b);
}

unsigned long factorial(int k) {
  unsigned long f = 1;
  for (int i = 2; i <= k; ++i) f *= static_cast<unsigned long>(i);
  return f;
}

}  // namespace

HighPrecisionReal HighPrecisionReal::exact(const Rational& q) {
  HighPrecisionReal x;
  x.lo = q;
  x.hi = q;
  x.lo.canonicalize();
  x.hi.canonicalize();
  return x;
}

HighPrecisionReal HighPrecisionReal::parse(const std::string& text) {
  const Rational v = parse_rational(text);
  const auto dot = text.find('.');
  if (dot == std::string::npos) return exact(v);
  int d = 0;
  for (std::size_t i = dot + 1; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i)
    ++d;
  if (d == 0) return exact(v);
  HighPrecisionReal x;
  x.lo = v - pow10_neg(d);
  x.hi = v + pow10_neg(d);
  x.digits = d;
  return x;
}

HighPrecisionReal HighPrecisionReal::golden(int digits) {
  if (digits < 1) throw DomainError("golden: digits must be >= 1");
  const BigInt s10 = ipow10(digits);
  BigInt s;
  const BigInt five = 5 * s10 * s10;
  mpz_sqrt(s.get_mpz_t(), five.get_mpz_t());
  HighPrecisionReal x;
  x.lo = Rational(s10 + s, 2 * s10);
  x.hi = Rational(s10 + s + 1, 2 * s10);
  x.lo.canonicalize();
  x.hi.canonicalize();
  x.digits = digits;
  return x;
}

Rational liouville_partial_sum(int L) {
  Rational s = 0;
  for (int k = 1; k <= L; ++k) s += pow10_neg(factorial(k));
  return s;
}

HighPrecisionReal HighPrecisionReal::liouville(int digits) {
  if (digits < 1) throw DomainError("liouville: digits must be >= 1");
  int L = 1;
  while (factorial(L + 1) <= static_cast<unsigned long>(digits)) ++L;
  // the tail after L is below 10^{-(L+1)!} * 1.2 <= 10^{-digits}
  HighPrecisionReal x;
  x.lo = liouville_partial_sum(L);
  x.hi = x.lo + pow10_neg(digits);
  x.digits = digits;
  return x;
}

HighPrecisionReal HighPrecisionReal::factorial_series(unsigned base, int digits) {
  if (base < 2) throw DomainError("factorial_series: base must be >= 2");
  if (digits < 1) throw DomainError("factorial_series: digits must be >= 1");
  if (base == 10) return liouville(digits);
  const double lb = std::log10(static_cast<double>(base));
  int L = 1;
  while (static_cast<double>(factorial(L + 1)) * lb < digits + 1) ++L;
  // tail after L is below 2 base^{-(L+1)!} <= 10^{-digits}
  HighPrecisionReal x;
  x.lo = 0;
  for (int k = 1; k <= L; ++k) {
    BigInt d;
    mpz_ui_pow_ui(d.get_mpz_t(), base, factorial(k));
    x.lo += Rational(BigInt(1), d);
  }
  x.hi = x.lo + pow10_neg(digits);
  x.digits = digits;
  return x;
}

HighPrecisionReal HighPrecisionReal::root(const Rational& r, int m, int digits) {
  if (m < 1) throw DomainError("root: index must be >= 1");
  if (sgn(r) < 0) throw DomainError("root: negative radicand");
  BigInt a, b;
  if (perfect_power(r.get_num(), m, a) && perfect_power(r.get_den(), m, b)) return exact(Rational(a, b));
  if (digits < 1) throw DomainError("root: digits must be >= 1");
  const BigInt s = ipow10(static_cast<unsigned long>(m) * digits);
  const BigInt lo_i = root_floor(floor(r * s), m);
  const BigInt top = ceil(r * s);
  BigInt hi_i = root_floor(top, m);
  if (pow(hi_i, m) < top) hi_i += 1;
  HighPrecisionReal x;
  x.lo = Rational(lo_i, ipow10(digits));
  x.hi = Rational(hi_i, ipow10(digits));
  x.lo.canonicalize();
  x.hi.canonicalize();
  x.digits = digits;
  return x;
}

double HighPrecisionReal::to_double() const { return torcx::to_double(mid()); }

std::string HighPrecisionReal::to_string(int shown) const {
  const Rational m = mid();
  const bool neg = sgn(m) < 0;
  const BigInt v = floor(abs(m) * ipow10(shown));
  std::string s = v.get_str();
  if (static_cast<int>(s.size()) <= shown) s.insert(0, shown + 1 - s.size(), '0');
  s.insert(s.size() - shown, ".");
  if (neg) s.insert(0, "-");
  if (!is_exact()) s += "... (+-1e-" + std::to_string(digits) + ")";
  return s;
}

HighPrecisionReal operator+(const HighPrecisionReal& a, const HighPrecisionReal& b) {
  HighPrecisionReal x;
  x.lo = a.lo + b.lo;
  x.hi = a.hi + b.hi;
  x.digits = combine_digits(a.digits, b.digits);
  return x;
}

HighPrecisionReal operator-(const HighPrecisionReal& a) {
  HighPrecisionReal x;
  x.lo = -a.hi;
  x.hi = -a.lo;
  x.digits = a.digits;
  return x;
}

HighPrecisionReal operator*(const HighPrecisionReal& a, const HighPrecisionReal& b) {
  const Rational c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  HighPrecisionReal x;
  x.lo = *std::min_element(c, c + 4);
  x.hi = *std::max_element(c, c + 4);
  x.digits = combine_digits(a.digits, b.digits);
  if (!a.is_exact() || !b.is_exact()) round_out(x, std::max(a.digits, b.digits) + 10);
  return x;
}

HighPrecisionReal pow(const HighPrecisionReal& a, unsigned k) {
  HighPrecisionReal x;
  x.digits = a.digits;
  if (sgn(a.lo) >= 0) {
    x.lo = pow(a.lo, k);
    x.hi = pow(a.hi, k);
  } else if (sgn(a.hi) <= 0) {
    const Rational p = pow(a.lo, k), q = pow(a.hi, k);
    x.lo = std::min(p, q);
    x.hi = std::max(p, q);
  } else {
    const Rational p = pow(a.lo, k), q = pow(a.hi, k);
    x.lo = k % 2 == 0 ? Rational(0) : p;
    x.hi = std::max(p, q);
  }
  if (!a.is_exact()) round_out(x, a.digits + 10);
  return x;
}

RationalVector make_rational_vector(std::vector<Rational> components) {
  RationalVector v;
  BigInt q = 1;
  for (auto& c : components) {
    c.canonicalize();
    mpz_lcm(q.get_mpz_t(), q.get_mpz_t(), c.get_den_mpz_t());
  }
  v.components = std::move(components);
  v.q0 = q;
  return v;
}

ContinuedFraction continued_fraction(const HighPrecisionReal& x, int depth) {
  if (depth < 1) throw DomainError("continued_fraction: depth must be >= 1");
  ContinuedFraction cf;
  Rational a = x.lo, b = x.hi;
  BigInt p_prev = 1, q_prev = 0, p_prev2 = 0, q_prev2 = 1;
  for (int k = 0; k < depth; ++k) {
    const BigInt fa = floor(a), fb = floor(b);
    if (fa != fb) {
      cf.precision_exhausted = true;
      break;
    }
    cf.quotients.push_back(fa);
    const BigInt p = fa * p_prev + p_prev2, q = fa * q_prev + q_prev2;
    cf.convergents.push_back({p, q});
    p_prev2 = p_prev;
    q_prev2 = q_prev;
    p_prev = p;
    q_prev = q;
    const Rational ra = a - fa, rb = b - fa;
    if (sgn(ra) == 0 && sgn(rb) == 0) {
      cf.terminated = true;
      break;
    }
    if (sgn(ra) == 0) {
      cf.precision_exhausted = true;
      break;
    }
    a = 1 / rb;
    b = 1 / ra;
  }
  return cf;
}

Rational simplest_rational(const Rational& lo_in, const Rational& hi_in) {
  if (lo_in > hi_in) throw DomainError("simplest_rational: empty interval");
  if (sgn(lo_in) <= 0 && sgn(hi_in) >= 0) return 0;
  if (sgn(hi_in) < 0) return -simplest_rational(-hi_in, -lo_in);
  std::vector<BigInt> parts;
  Rational L = lo_in, H = hi_in;
  while (true) {
    const BigInt c = ceil(L);
    if (c <= H) {
      parts.push_back(c);
      break;
    }
    const BigInt a = floor(L);
    parts.push_back(a);
    const Rational nl = 1 / (H - a), nh = 1 / (L - a);
    L = nl;
    H = nh;
  }
  Rational v = parts.back();
  for (std::size_t i = parts.size() - 1; i-- > 0;) v = Rational(parts[i]) + 1 / v;
  v.canonicalize();
  return v;
}

RationalDetection detect_rational(const std::vector<HighPrecisionReal>& alpha, int depth) {
  RationalDetection det;
  det.rational = true;
  std::vector<Rational> comps;
  for (const auto& x : alpha) {
    det.expansions.push_back(continued_fraction(x, depth));
    if (x.is_exact()) {
      comps.push_back(x.lo);
      continue;
    }
    det.precision_limited = true;
    det.digits = combine_digits(det.digits, x.digits);
    const Rational s = simplest_rational(x.lo, x.hi);
    if (s.get_den() <= ipow10(static_cast<unsigned long>(x.digits / 3))) {
      comps.push_back(s);
    } else {
      det.rational = false;
    }
  }
  if (det.rational) det.value = make_rational_vector(std::move(comps));
  return det;
}

std::vector<LiouvilleTerm> liouville_truncations(int ell_max) {
  if (ell_max > 5) throw ResourceError("liouville_truncations: ell_max > 5 needs 10^{720}-size denominators");
  std::vector<LiouvilleTerm> out;
  for (int ell = 1; ell <= ell_max; ++ell) {
    LiouvilleTerm t;
    t.ell = ell;
    t.q = ipow10(factorial(ell));
    const Rational s = liouville_partial_sum(ell) * t.q;
    t.p = s.get_num();
    t.bound = 2 * pow10_neg(factorial(ell + 1));
    t.certified = t.bound < Rational(BigInt(1), pow(t.q, static_cast<unsigned long>(ell)));
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<BigInt> liouville_denominators(int m_max, int mu, const BigInt& T) {
  if (m_max > 7) throw ResourceError("liouville_denominators: m_max > 7");
  if (mu < 1 || T < 1) throw DomainError("liouville_denominators: mu and T must be positive");
  std::vector<BigInt> out;
  for (int m = 1; m <= m_max; ++m) out.push_back(T * ipow10(static_cast<unsigned long>(mu) * factorial(m)));
  return out;
}

namespace {

struct Prepared {
  int mu = 1;
  std::vector<HighPrecisionReal> amu;  // alpha_j^mu
  std::vector<Rational> mid;
  std::vector<bool> nonzero;
};

struct Eval {
  Rational err;
  std::vector<BigInt> p;
};

Eval evaluate(const Prepared& P, const BigInt& q) {
  Eval e;
  e.err = 0;
  for (std::size_t j = 0; j < P.amu.size(); ++j) {
    const Rational& m = P.mid[j];
    const int sign = sgn(m) < 0 ? -1 : 1;
    const BigInt t = floor(abs(m) * q);
    const BigInt r = root_floor(t, P.mu);
    bool have = false;
    Rational best;
    BigInt best_p;
    for (int d = -1; d <= 2; ++d) {
      const BigInt c = r + d;
      if (c < 0) continue;
      if (c == 0 && P.nonzero[j]) continue;
      const Rational v = Rational(sign * pow(c, P.mu), q);
      const Rational err = std::max(abs(P.amu[j].lo - v), abs(P.amu[j].hi - v));
      if (!have || err < best) {
        have = true;
        best = err;
        best_p = sign * c;
      }
    }
    e.p.push_back(best_p);
    e.err = std::max(e.err, best);
  }
  return e;
}

int level_of(const Rational& err, const BigInt& q, const Rational& C, int cap = 64) {
  if (sgn(err) == 0) return cap;
  if (q == 1) return err < C ? 1 : 0;
  int l = 0;
  Rational x = err;
  while (l < cap) {
    x *= q;
    if (x < C)
      ++l;
    else
      break;
  }
  return l;
}

double exponent_of(const Rational& err, const BigInt& q) {
  if (q < 2) return 0.0;
  if (sgn(err) == 0) return INFINITY;
  return -log10_abs(err) / log10_abs(q);
}

struct Chunk {
  std::vector<std::uint8_t> levels;
  std::vector<std::pair<std::int64_t, Rational>> records;  // local best approximations
  double max_exponent = 0.0;
};

}  // namespace

SDASearch sda_search(const std::vector<HighPrecisionReal>& alpha, const SDAOptions& opt) {
  if (opt.mu < 1) throw DomainError("sda_search: mu must be >= 1");
  if (opt.Q_max < 1) throw DomainError("sda_search: Q_max must be >= 1");
  if (alpha.empty()) throw DomainError("sda_search: empty vector");
  Prepared P;
  P.mu = opt.mu;
  SDASearch res;
  res.Q_max = opt.Q_max;
  res.ell_target = opt.ell_target;
  res.witness.mu = opt.mu;
  res.witness.C = opt.C;
  for (const auto& a : alpha) {
    P.amu.push_back(pow(a, static_cast<unsigned>(opt.mu)));
    P.mid.push_back(P.amu.back().mid());
    P.nonzero.push_back(!a.contains_zero());
    res.digits = combine_digits(res.digits, a.digits);
  }
  // the brute-force range never needs more than about log10(Q^(ell+2)) digits;
  // outward rounding keeps the bounds certified
  Prepared B = P;
  const int brute_digits =
      40 + (opt.ell_target + 2) * static_cast<int>(std::ceil(std::log10(static_cast<double>(opt.Q_max) + 1)));
  for (std::size_t j = 0; j < B.amu.size(); ++j) {
    if (B.amu[j].is_exact() || B.amu[j].digits <= brute_digits) continue;
    round_out(B.amu[j], brute_digits);
    B.mid[j] = B.amu[j].mid();
  }

  const std::int64_t Q = opt.Q_max;
  const double sqrtQ = std::sqrt(static_cast<double>(Q));
  const std::size_t chunks = static_cast<std::size_t>(std::min<std::int64_t>(Q, 256));
  auto parts = parallel_map<Chunk>(chunks, opt.threads, [&](std::size_t c) {
    const std::int64_t lo = 1 + static_cast<std::int64_t>(c) * Q / static_cast<std::int64_t>(chunks);
    const std::int64_t hi = static_cast<std::int64_t>(c + 1) * Q / static_cast<std::int64_t>(chunks);
    Chunk ch;
    std::optional<Rational> run_min;
    for (std::int64_t q = lo; q <= hi; ++q) {
      const BigInt bq = static_cast<long>(q);
      const auto e = evaluate(B, bq);
      ch.levels.push_back(static_cast<std::uint8_t>(level_of(e.err, bq, opt.C)));
      if (!run_min || e.err < *run_min) {
        run_min = e.err;
        ch.records.emplace_back(q, e.err);
      }
      if (static_cast<double>(q) >= sqrtQ && q >= 2)
        ch.max_exponent = std::max(ch.max_exponent, exponent_of(e.err, bq));
    }
    return ch;
  });

  // (q, level) over the brute-force range and the hints, ascending in q
  std::vector<std::pair<BigInt, int>> levels;
  levels.reserve(static_cast<std::size_t>(Q) + opt.hints.size());
  std::optional<Rational> run_min;
  std::int64_t q_next = 1;
  for (const auto& ch : parts) {
    for (auto l : ch.levels) levels.emplace_back(BigInt(static_cast<long>(q_next++)), l);
    for (const auto& [q, err] : ch.records) {
      if (run_min && !(err < *run_min)) continue;
      run_min = err;
      if (q >= 2) {
        res.best_q = static_cast<long>(q);
        res.best_exponent = exponent_of(err, res.best_q);
      }
    }
    res.max_exponent = std::max(res.max_exponent, ch.max_exponent);
  }
  std::vector<BigInt> hints = opt.hints;
  std::sort(hints.begin(), hints.end());
  hints.erase(std::unique(hints.begin(), hints.end()), hints.end());
  for (const auto& h : hints) {
    if (h < 1 || h <= Q) continue;
    ++res.hints_tried;
    levels.emplace_back(h, level_of(evaluate(P, h).err, h, opt.C));
  }
  for (const auto& [q, l] : levels)
    if (q >= 2) res.max_level = std::max(res.max_level, l);

  std::size_t pos = 0;
  for (int ell = 1; ell <= opt.ell_target; ++ell) {
    while (pos < levels.size() && levels[pos].second < ell) ++pos;
    if (pos == levels.size()) break;
    const BigInt& q = levels[pos].first;
    const auto e = evaluate(q > Q ? P : B, q);
    SDATerm t;
    t.level = ell;
    t.q = q;
    t.p = e.p;
    t.bound = e.err;
    t.log10_bound = sgn(e.err) == 0 ? -INFINITY : log10_abs(e.err);
    t.from_hint = q > Q;
    res.witness.terms.push_back(std::move(t));
    ++pos;
  }
  res.found = static_cast<int>(res.witness.terms.size()) == opt.ell_target;
  return res;
}

ScaledDistance min_scaled_distance(const HighPrecisionReal& x, std::int64_t Q_max) {
  if (Q_max < 1) throw DomainError("min_scaled_distance: Q_max must be >= 1");
  ScaledDistance best;
  std::optional<Rational> best_val;
  Rational best_lower;
  const Rational m = x.mid();
  for (std::int64_t q = 1; q <= Q_max; ++q) {
    const Rational bq = Rational(static_cast<long>(q));
    const Rational v = bq * dist_to_integer(bq * m);
    if (!best_val || v < *best_val) {
      best_val = v;
      best.q = q;
    }
    const Rational lo = bq * x.lo, hi = bq * x.hi;
    Rational lower;
    if (floor(hi) >= ceil(lo))
      lower = 0;
    else
      lower = bq * std::min(Rational(lo - floor(lo)), Rational(ceil(hi) - hi));
    if (q == 1 || lower < best_lower) best_lower = lower;
  }
  best.value = to_double(*best_val);
  best.certified_lower = to_double(best_lower);
  return best;
}

RationalLowerBound rational_lowerbound(const RationalVector& alpha, int mu) {
  RationalLowerBound r;
  r.q0 = alpha.q0;
  r.mu = mu;
  if (r.q0 == 1) return r;
  if (r.q0 > 10000000) throw ResourceError("rational_lowerbound: q0 above 10^7");
  const long q = r.q0.get_si();
  auto scan = [](const std::vector<Rational>& v, long q, std::optional<Rational>& sharp,
                 std::optional<Rational>& coarse, long* arg) {
    for (long k = 1; k < q; ++k) {
      Rational m = 0;
      for (const auto& a : v) m = std::max(m, dist_to_integer(a * k));
      if (!sharp || m < *sharp) {
        sharp = m;
        if (arg) *arg = k;
      }
      const Rational c = m / k;
      if (!coarse || c < *coarse) coarse = c;
    }
  };
  scan(alpha.components, q, r.C0, r.C0_coarse, &r.argmin_r);
  if (mu >= 1) {
    std::vector<Rational> amu;
    for (const auto& a : alpha.components) amu.push_back(pow(a, static_cast<unsigned long>(mu)));
    const BigInt qm = pow(r.q0, static_cast<unsigned long>(mu));
    if (qm > 10000000) throw ResourceError("rational_lowerbound: q0^mu above 10^7");
    scan(amu, qm.get_si(), r.D_sharp, r.D, nullptr);
  }
  return r;
}

std::string to_string(DiophantineVerdict::Tag t) {
  switch (t) {
    case DiophantineVerdict::Tag::Rational: return "rational";
    case DiophantineVerdict::Tag::LiouvilleWitnessed: return "liouville_witnessed";
    case DiophantineVerdict::Tag::SDAWitnessed: return "sda_witnessed";
    case DiophantineVerdict::Tag::NoWitnessFound: return "no_witness_found";
    case DiophantineVerdict::Tag::NonReal: return "nonreal";
  }
  return "?";
}

HomogeneousScan homogeneous_scan(const std::vector<Complex>& c, double kappa, std::int64_t H,
                                 std::int64_t X, double lambda_max, int threads) {
  if (H < 0 || X < 1) throw DomainError("homogeneous_scan: need H >= 0 and X >= 1");
  if (!(kappa > 0)) throw DomainError("homogeneous_scan: kappa must be positive");
  HomogeneousScan scan;
  scan.H = H;
  scan.X = X;
  const std::size_t n = c.size();
  auto recs = parallel_map<HomogeneousRecord>(static_cast<std::size_t>(X), threads, [&](std::size_t i) {
    const std::int64_t xi = static_cast<std::int64_t>(i) + 1;
    const long double s = std::pow(static_cast<long double>(xi), static_cast<long double>(kappa));
    HomogeneousRecord r;
    r.xi = xi;
    std::int64_t eta_max = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const long double re = c[j].real(), im = c[j].imag();
      const long double target = -re * s;
      long double best = INFINITY;
      std::int64_t best_eta = 0;
      const auto fl = static_cast<std::int64_t>(std::floor(target));
      for (std::int64_t e = fl - 1; e <= fl + 2; ++e) {
        const std::int64_t ec = std::clamp<std::int64_t>(e, -H, H);
        const long double d = std::hypot(static_cast<long double>(ec) / s + re, im);
        if (d < best) {
          best = d;
          best_eta = ec;
        }
      }
      r.eta.push_back(best_eta);
      r.value = std::max(r.value, static_cast<double>(best));
      eta_max = std::max<std::int64_t>(eta_max, std::llabs(best_eta));
    }
    r.size = static_cast<double>(eta_max + xi);
    r.local_exponent = -std::log(r.value) / std::log(r.size);
    return r;
  });

  std::map<int, const HomogeneousRecord*> shells;
  double R = 1.0;
  bool have_min = false;
  for (const auto& r : recs) {
    ++scan.examined;
    if (r.value <= 1e-14) {
      ++scan.zero_slices;
      continue;
    }
    R = std::max(R, r.size);
    if (!have_min || r.value < scan.min_record.value) {
      scan.min_record = r;
      have_min = true;
    }
    const int k = static_cast<int>(std::ceil(std::log2(r.size) - 1e-12));
    auto [it, fresh] = shells.try_emplace(k, &r);
    if (!fresh && r.value < it->second->value) it->second = &r;
  }
  if (shells.empty()) return scan;
  {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = static_cast<double>(shells.size());
    for (const auto& [k, r] : shells) {
      const double x = std::log(r->size), y = std::log(r->value);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double den = m * sxx - sx * sx;
    const double slope = (shells.size() >= 2 && den != 0.0) ? (m * sxy - sx * sy) / den : 0.0;
    scan.lambda_hat = std::max(0.0, -slope);
  }
  scan.C_hat = INFINITY;
  for (const auto& [k, r] : shells) {
    const double lower = k <= 0 ? 1.0 : std::ldexp(1.0, k - 1);
    scan.C_hat = std::min(scan.C_hat, r->value * std::pow(lower, scan.lambda_hat));
  }
  const double cutoff = std::max(4.0, std::sqrt(R));
  std::vector<const HomogeneousRecord*> outer;
  for (const auto& r : recs) {
    if (r.value <= 1e-14 || r.size < cutoff) continue;
    scan.worst_local_exponent = std::max(scan.worst_local_exponent, r.local_exponent);
    outer.push_back(&r);
  }
  std::partial_sort(outer.begin(), outer.begin() + std::min<std::size_t>(5, outer.size()), outer.end(),
                    [](const auto* a, const auto* b) {
                      if (a->local_exponent != b->local_exponent) return a->local_exponent > b->local_exponent;
                      return a->xi < b->xi;
                    });
  for (std::size_t i = 0; i < std::min<std::size_t>(5, outer.size()); ++i) scan.offenders.push_back(*outer[i]);
  scan.plausibly_holds = scan.worst_local_exponent <= lambda_max;
  return scan;
}

HomogeneousReport characterize_homogeneous(const std::vector<HighPrecisionReal>& re,
                                           const std::vector<HighPrecisionReal>& im, int rho,
                                           int mu, const HomogeneousOptions& opt) {
  if (rho < 1 || mu < 1) throw DomainError("kappa = rho/mu needs positive integers");
  if (std::gcd(rho, mu) != 1) throw DomainError("kappa = rho/mu needs gcd(rho, mu) = 1");
  if (re.empty() || re.size() != im.size()) throw DomainError("coefficient vectors must match and be nonempty");
  HomogeneousReport rep;
  rep.rho = rho;
  rep.mu = mu;
  auto& v = rep.verdict;
  v.mu = mu;
  for (const auto& x : re) v.precision_digits = combine_digits(v.precision_digits, x.digits);
  for (const auto& x : im) v.precision_digits = combine_digits(v.precision_digits, x.digits);
  for (const auto& x : im)
    if (!x.contains_zero()) rep.beta_nonzero = true;
  rep.rational = detect_rational(re);

  std::vector<Complex> c;
  for (std::size_t j = 0; j < re.size(); ++j) c.emplace_back(re[j].to_double(), im[j].to_double());
  rep.scan = homogeneous_scan(c, static_cast<double>(rho) / mu, opt.H, opt.X, opt.lambda_max,
                              opt.sda.threads);

  if (rep.beta_nonzero) {
    v.tag = DiophantineVerdict::Tag::NonReal;
  } else if (rep.rational.rational) {
    v.tag = DiophantineVerdict::Tag::Rational;
    v.q0 = rep.rational.value->q0;
  } else {
    SDAOptions so = opt.sda;
    so.mu = mu;
    rep.sda = sda_search(re, so);
    v.Q_max = so.Q_max;
    v.ell_target = so.ell_target;
    v.hints = rep.sda->hints_tried;
    if (rep.sda->found) {
      v.tag = mu == 1 ? DiophantineVerdict::Tag::LiouvilleWitnessed : DiophantineVerdict::Tag::SDAWitnessed;
      v.witness = rep.sda->witness;
    } else {
      v.tag = DiophantineVerdict::Tag::NoWitnessFound;
    }
  }
  rep.paths_agree = v.solvable() == rep.scan.plausibly_holds;
  if (!rep.paths_agree)
    rep.note = "witness search and direct scan disagree at these bounds; both datasets are reported";
  return rep;
}

}  // namespace torcx
