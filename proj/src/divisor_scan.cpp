#include "torcx/divisor_scan.hpp"

#include "torcx/error.hpp"
#include "torcx/parallel.hpp"
#include "torcx/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace torcx {

namespace {

bool record_less(const DivisorRecord& a, const DivisorRecord& b) {
  if (a.norm != b.norm) return a.norm < b.norm;
  if (a.xi != b.xi) return a.xi < b.xi;
  return a.eta < b.eta;
}

struct Partial {
  std::size_t examined = 0, nonzero = 0, zero = 0;
  std::map<int, ShellStat> shells;
  std::vector<DivisorRecord> records;
};

void push_smallest(std::vector<DivisorRecord>& v, const DivisorRecord& r, std::size_t cap = 5) {
  auto it = std::lower_bound(v.begin(), v.end(), r, record_less);
  if (it == v.end() && v.size() >= cap) return;
  v.insert(it, r);
  if (v.size() > cap) v.pop_back();
}

void merge_shell(ShellStat& into, const ShellStat& s) {
  into.count += s.count;
  bool take = into.count == s.count;  // first contribution
  if (!take) {
    if (into.min_norm_sq && s.min_norm_sq)
      take = *s.min_norm_sq < *into.min_norm_sq ||
             (*s.min_norm_sq == *into.min_norm_sq && record_less(s.min, into.min));
    else
      take = record_less(s.min, into.min);
  }
  if (take) {
    into.min = s.min;
    into.min_norm_sq = s.min_norm_sq;
  }
  for (const auto& r : s.smallest) push_smallest(into.smallest, r);
}

/// Candidate eta_j values for one component.
std::vector<std::int64_t> near_candidates(const Rational& target, std::int64_t H) {
  const BigInt fl = floor(target);
  std::vector<std::int64_t> out;
  for (int d = -1; d <= 2; ++d) {
    const BigInt c = fl + d;
    if (c < -H || c > H) continue;
    out.push_back(c.get_si());
  }
  return out;
}

std::vector<std::int64_t> near_candidates(double target, std::int64_t H) {
  const double fl = std::floor(target);
  std::vector<std::int64_t> out;
  for (int d = -1; d <= 2; ++d) {
    const double c = fl + d;
    if (c < -static_cast<double>(H) || c > static_cast<double>(H)) continue;
    out.push_back(static_cast<std::int64_t>(c));
  }
  return out;
}

template <class Fn>
void for_each_product(const std::vector<std::vector<std::int64_t>>& sets, Fn&& fn) {
  const std::size_t n = sets.size();
  for (const auto& s : sets)
    if (s.empty()) return;
  std::vector<std::size_t> idx(n, 0);
  IntVec v(n);
  while (true) {
    for (std::size_t j = 0; j < n; ++j) v[j] = sets[j][idx[j]];
    fn(v);
    std::size_t j = n;
    while (j > 0) {
      --j;
      if (++idx[j] < sets[j].size()) break;
      idx[j] = 0;
      if (j == 0) return;
    }
    if (n == 0) return;
  }
}

std::int64_t sup_size(const IntVec& eta, const IntVec& xi) {
  std::int64_t m = 0;
  for (auto v : eta) m = std::max<std::int64_t>(m, std::llabs(v));
  for (auto v : xi) m = std::max<std::int64_t>(m, std::llabs(v));
  return m;
}

Partial scan_xi(const SystemSpec& spec, const IntVec& xi, FrequencyBox box,
                const DivisorScanOptions& opt) {
  Partial part;
  const int n = spec.n;
  std::vector<GaussRational> pe;
  std::vector<Complex> pf;
  if (opt.exact)
    pe = symbol_values<GaussRational>(spec, xi);
  else
    pf = symbol_values<Complex>(spec, xi);

  std::vector<std::vector<std::int64_t>> sets(n);
  for (int j = 0; j < n; ++j) {
    if (opt.mode == DivisorScanOptions::Mode::Nearest) {
      sets[j] = opt.exact ? near_candidates(Rational(-pe[j].re), box.H)
                          : near_candidates(-pf[j].real(), box.H);
    } else {
      for (std::int64_t e = -box.H; e <= box.H; ++e) sets[j].push_back(e);
    }
  }

  for_each_product(sets, [&](const IntVec& eta) {
    const std::int64_t size = sup_size(eta, xi);
    if (size == 0) return;
    ++part.examined;
    DivisorRecord rec{eta, xi, 0.0, size};
    std::optional<Rational> nsq;
    if (opt.exact) {
      Rational m = 0;
      for (int j = 0; j < n; ++j) {
        const GaussRational v = GaussRational(Rational(static_cast<long>(eta[j]))) + pe[j];
        m = std::max(m, v.norm_sq());
      }
      if (sgn(m) == 0) {
        ++part.zero;
        return;
      }
      rec.norm = std::sqrt(to_double(m));
      nsq = m;
    } else {
      double m = 0.0;
      for (int j = 0; j < n; ++j) m = std::max(m, std::abs(static_cast<double>(eta[j]) + pf[j]));
      if (m <= opt.eps_zero) {
        ++part.zero;
        return;
      }
      rec.norm = m;
    }
    ++part.nonzero;
    const int k = shell_index(size);
    auto [it, fresh] = part.shells.try_emplace(k);
    ShellStat& sh = it->second;
    sh.k = k;
    ++sh.count;
    bool take = fresh;
    if (!fresh) take = nsq ? (*nsq < *sh.min_norm_sq) : record_less(rec, sh.min);
    if (take) {
      sh.min = rec;
      sh.min_norm_sq = nsq;
    }
    push_smallest(sh.smallest, rec);
    if (opt.keep_records) part.records.push_back(rec);
  });
  return part;
}

}  // namespace

bool ProbeRecord::below(int ell) const {
  if (zero) return false;
  return norm_sq * Rational(pow(size, 2UL * static_cast<unsigned long>(ell))) < 1;
}

std::vector<ProbeRecord> probe_divisors(const SystemSpec& spec,
                                        const std::vector<BigFrequency>& probes) {
  std::vector<ProbeRecord> out;
  for (const auto& pr : probes) {
    if (static_cast<int>(pr.eta.size()) != spec.n || static_cast<int>(pr.xi.size()) != spec.N)
      throw DomainError("probe frequency has wrong dimensions");
    ProbeRecord rec;
    rec.freq = pr;
    Rational m = 0;
    for (int j = 0; j < spec.n; ++j) {
      auto p = spec.symbols[j].exact_big(pr.xi);
      if (!p) throw DomainError("symbol " + std::to_string(j + 1) + " has no exact big-integer evaluator");
      const GaussRational v = GaussRational(Rational(pr.eta[j])) + *p;
      m = std::max(m, v.norm_sq());
    }
    BigInt size = 0;
    for (const auto& v : pr.eta) size = std::max(size, BigInt(abs(v)));
    for (const auto& v : pr.xi) size = std::max(size, BigInt(abs(v)));
    rec.norm_sq = m;
    rec.size = size;
    rec.zero = sgn(m) == 0;
    rec.log10_norm = rec.zero ? -INFINITY : 0.5 * log10_abs(m);
    rec.log10_size = log10_abs(size);
    out.push_back(std::move(rec));
  }
  return out;
}

DivisorScan divisor_scan(const SystemSpec& spec, FrequencyBox box, const DivisorScanOptions& opt) {
  if (opt.exact && !spec.exact_capable())
    throw DomainError("exact divisor scan needs exact symbol evaluators");
  DivisorScan scan;
  scan.box = box;
  scan.mode = opt.mode;
  scan.exact = opt.exact;

  std::vector<IntVec> xis;
  for_each_lattice_point(spec.N, box.X, [&](const IntVec& xi) { xis.push_back(xi); });
  auto parts = parallel_map<Partial>(xis.size(), opt.threads,
                                     [&](std::size_t i) { return scan_xi(spec, xis[i], box, opt); });

  std::map<int, ShellStat> shells;
  for (auto& p : parts) {
    scan.examined += p.examined;
    scan.nonzero += p.nonzero;
    scan.zero_slices += p.zero;
    for (const auto& [k, s] : p.shells) {
      auto [it, fresh] = shells.try_emplace(k);
      if (fresh) {
        it->second = s;
      } else {
        merge_shell(it->second, s);
      }
    }
    if (opt.keep_records)
      scan.records.insert(scan.records.end(), p.records.begin(), p.records.end());
  }
  for (auto& [k, s] : shells) scan.shells.push_back(s);

  if (scan.shells.empty()) {
    scan.verdict = "empirical: no nonzero slices in the box";
    scan.probes = probe_divisors(spec, opt.probes);
    return scan;
  }

  // global minimum
  const ShellStat* best = &scan.shells.front();
  for (const auto& s : scan.shells) {
    const bool smaller = (s.min_norm_sq && best->min_norm_sq) ? *s.min_norm_sq < *best->min_norm_sq
                                                              : record_less(s.min, best->min);
    if (smaller) best = &s;
  }
  scan.min_record = best->min;
  scan.min_divisor = best->min.norm;
  scan.exact_min_norm_sq = best->min_norm_sq;

  // lambda: regression of log(shell minimum) on log(size at the minimum)
  {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = static_cast<double>(scan.shells.size());
    for (const auto& s : scan.shells) {
      const double x = std::log(static_cast<double>(s.min.size));
      const double y = std::log(s.min.norm);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double den = m * sxx - sx * sx;
    const double slope = (scan.shells.size() >= 2 && den != 0.0) ? (m * sxy - sx * sy) / den : 0.0;
    scan.lambda_hat = std::max(0.0, -slope);
  }
  // C: every record in shell k has size > 2^{k-1}, so this admits no violations
  scan.C_hat = INFINITY;
  for (const auto& s : scan.shells) {
    const double lower = s.k == 0 ? 1.0 : std::ldexp(1.0, s.k - 1);
    scan.C_hat = std::min(scan.C_hat, s.min.norm * std::pow(lower, scan.lambda_hat));
  }
  auto violates = [&](const DivisorRecord& r) {
    return r.norm < scan.C_hat * std::pow(static_cast<double>(r.size), -scan.lambda_hat) * (1 - 1e-12);
  };
  if (opt.keep_records) {
    for (const auto& r : scan.records) scan.violations += violates(r);
  } else {
    for (const auto& s : scan.shells)
      for (const auto& r : s.smallest) scan.violations += violates(r);
  }

  // worst local exponent over the outer half of the box in log scale
  std::int64_t R = 1;
  for (const auto& s : scan.shells)
    for (const auto& r : s.smallest) R = std::max(R, r.size);
  const double cutoff = std::max(4.0, std::sqrt(static_cast<double>(R)));
  std::vector<DivisorRecord> candidates;
  for (const auto& s : scan.shells)
    for (const auto& r : s.smallest) {
      candidates.push_back(r);
      if (static_cast<double>(r.size) < cutoff) continue;
      scan.worst_local_exponent =
          std::max(scan.worst_local_exponent, -std::log(r.norm) / std::log(static_cast<double>(r.size)));
    }
  scan.plausibly_holds = scan.worst_local_exponent <= opt.lambda_max;
  scan.verdict = scan.plausibly_holds ? "empirical: criterion plausibly holds on this box"
                                      : "empirical: criterion plausibly fails on this box";

  std::sort(candidates.begin(), candidates.end(), [&](const auto& a, const auto& b) {
    const double wa = a.norm * std::pow(static_cast<double>(a.size), scan.lambda_hat);
    const double wb = b.norm * std::pow(static_cast<double>(b.size), scan.lambda_hat);
    if (wa != wb) return wa < wb;
    return record_less(a, b);
  });
  if (candidates.size() > 5) candidates.resize(5);
  scan.offenders = std::move(candidates);
  scan.probes = probe_divisors(spec, opt.probes);
  return scan;
}

}  // namespace torcx
