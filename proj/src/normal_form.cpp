#include "torcx/normal_form.hpp"

#include <fftw3.h>

#include <algorithm>
#include <functional>
#include <mutex>
#include <numbers>
#include <random>

namespace torcx {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kMaxGridPoints = std::size_t(1) << 22;

std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

int pow2_at_least(std::int64_t v) {
  int M = 1;
  while (M < v) M *= 2;
  return M;
}

/// Row-major grid of M^n samples at t = 2 pi m / M.
struct Grid {
  int n = 0;
  int M = 0;
  std::size_t size = 0;

  Grid(int n_, int M_) : n(n_), M(M_), size(1) {
    for (int d = 0; d < n; ++d) {
      size *= static_cast<std::size_t>(M);
      if (size > kMaxGridPoints)
        throw ResourceError("grid " + std::to_string(M) + "^" + std::to_string(n) + " exceeds " +
                            std::to_string(kMaxGridPoints) + " points");
    }
  }

  std::size_t index(const IntVec& k) const {
    std::size_t idx = 0;
    for (int d = 0; d < n; ++d) {
      std::int64_t r = k[d] % M;
      if (r < 0) r += M;
      idx = idx * M + static_cast<std::size_t>(r);
    }
    return idx;
  }

  /// fn(linear index, frequency) with frequencies in [-M/2, M/2).
  template <class Fn>
  void for_each(Fn&& fn) const {
    IntVec k(n, 0);
    std::vector<int> m(n, 0);
    for (std::size_t idx = 0; idx < size; ++idx) {
      for (int d = 0; d < n; ++d) k[d] = m[d] < M / 2 ? m[d] : m[d] - M;
      fn(idx, k);
      for (int d = n - 1; d >= 0; --d) {
        if (++m[d] < M) break;
        m[d] = 0;
      }
    }
  }

  /// In place, unnormalized; sign +1 synthesizes values from coefficients.
  void fft(std::vector<Complex>& a, int sign) const {
    std::vector<int> dims(n, M);
    auto* p = reinterpret_cast<fftw_complex*>(a.data());
    fftw_plan plan;
    {
      std::lock_guard<std::mutex> lock(plan_mutex());
      plan = fftw_plan_dft(n, dims.data(), p, p, sign > 0 ? FFTW_BACKWARD : FFTW_FORWARD, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    std::lock_guard<std::mutex> lock(plan_mutex());
    fftw_destroy_plan(plan);
  }

  std::vector<Complex> values(const std::map<IntVec, Complex>& coeffs) const {
    std::vector<Complex> a(size);
    for (const auto& [k, v] : coeffs) a[index(k)] += v;
    fft(a, +1);
    return a;
  }

  /// Coefficients from samples (in place).
  void coefficients(std::vector<Complex>& a) const {
    fft(a, -1);
    const double s = 1.0 / static_cast<double>(size);
    for (auto& v : a) v *= s;
  }
};

std::int64_t sup_norm(const IntVec& k) {
  std::int64_t m = 0;
  for (auto v : k) m = std::max<std::int64_t>(m, std::llabs(v));
  return m;
}

std::int64_t bandwidth_of(const std::map<IntVec, Complex>& c) {
  std::int64_t b = 0;
  for (const auto& [k, v] : c) b = std::max(b, sup_norm(k));
  return b;
}

/// Axis of a frequency with one nonzero entry, 0 for eta = 0, -1 otherwise.
int axis_of(const IntVec& k) {
  int axis = 0;
  for (std::size_t d = 0; d < k.size(); ++d)
    if (k[d] != 0) {
      if (axis != 0) return -1;
      axis = static_cast<int>(d) + 1;
    }
  return axis;
}

/// Splits a poly into one-variable parts when every frequency lies on an axis.
std::optional<std::vector<std::map<std::int64_t, Complex>>> axis_parts(const std::map<IntVec, Complex>& c,
                                                                       int n, Complex& constant) {
  std::vector<std::map<std::int64_t, Complex>> parts(n);
  constant = {};
  for (const auto& [k, v] : c) {
    const int a = axis_of(k);
    if (a < 0) return std::nullopt;
    if (a == 0)
      constant += v;
    else
      parts[a - 1][k[a - 1]] += v;
  }
  return parts;
}

std::vector<Complex> values_1d(const std::map<std::int64_t, Complex>& c, int M) {
  Grid g(1, M);
  std::map<IntVec, Complex> m;
  for (const auto& [k, v] : c) m[{k}] = v;
  return g.values(m);
}

std::map<IntVec, Complex> coeff_map(const TrigPoly<Complex>& p) {
  return {p.coeffs().begin(), p.coeffs().end()};
}

/// Values of e^{sign i C} on the grid.
std::vector<Complex> exp_values(const Grid& g, const TrigPoly<Complex>& C, int sign) {
  auto v = g.values(coeff_map(C));
  const Complex f(0.0, static_cast<double>(sign));
  for (auto& z : v) z = std::exp(f * z);
  return v;
}

/// Coefficient maps per multi-index for the slices of u at one xi.
using Group = std::map<MultiIndex, std::map<IntVec, Complex>>;

std::map<IntVec, Group> group_by_xi(const TrigPForm<Complex>& u) {
  std::map<IntVec, Group> out;
  for (const auto& [f, s] : u.slices())
    for (const auto& [K, v] : s.terms()) out[f.xi][K][f.eta] = v;
  return out;
}

std::int64_t group_bandwidth(const Group& g) {
  std::int64_t b = 0;
  for (const auto& [K, c] : g) b = std::max(b, bandwidth_of(c));
  return b;
}

}  // namespace

double ConditionDReport::max_partial() const {
  double m = 0.0;
  for (const auto& p : per_xi)
    if (p.log_partial) m = std::max(m, *p.log_partial);
  return std::exp(m);
}

SystemSpec normal_form_spec(const SystemSpec& spec, const std::vector<GaussRational>& means) {
  if (static_cast<int>(means.size()) != spec.n) throw DomainError("normal_form_spec: need n means");
  std::vector<ToroidalSymbol> s;
  for (int j = 0; j < spec.n; ++j) s.push_back(means[j] * spec.symbols[j]);
  return SystemSpec(spec.n, spec.N, std::move(s));
}

namespace detail {

double grid_sup(const std::map<IntVec, Complex>& coeffs, int n, int points_1d, int points_nd) {
  const std::int64_t B = bandwidth_of(coeffs);
  Complex c0;
  if (auto parts = axis_parts(coeffs, n, c0)) {
    double s = c0.real();
    for (const auto& part : *parts) {
      if (part.empty()) continue;
      const auto v = values_1d(part, pow2_at_least(std::max<std::int64_t>(points_1d, 4 * B)));
      double m = -INFINITY;
      for (const auto& z : v) m = std::max(m, z.real());
      s += m;
    }
    return s;
  }
  const Grid g(n, pow2_at_least(std::max<std::int64_t>(points_nd, 4 * B)));
  const auto v = g.values(coeffs);
  double m = -INFINITY;
  for (const auto& z : v) m = std::max(m, z.real());
  return m;
}

double partial_integral_sup(const std::map<IntVec, Complex>& coeffs, int j, int points) {
  double mean = 0.0;
  std::vector<std::pair<std::int64_t, Complex>> prim;
  for (const auto& [k, v] : coeffs) {
    if (k[j - 1] == 0)
      mean += v.real();
    else
      prim.emplace_back(k[j - 1], v / Complex(0.0, static_cast<double>(k[j - 1])));
  }
  auto P = [&](double z) {
    Complex s{};
    for (const auto& [k, w] : prim) s += w * std::polar(1.0, static_cast<double>(k) * z);
    return s.real();
  };
  const double P0 = P(0.0);
  double best = 0.0;
  for (int i = 1; i <= points; ++i) {
    const double z = kTwoPi * i / points;
    best = std::max(best, mean * z + P(z) - P0);
  }
  return best;
}

PolyBoundFit fit_poly_bound(const std::vector<std::pair<std::int64_t, double>>& pts, std::int64_t X) {
  PolyBoundFit f;
  if (pts.empty() || X < 1) return f;
  std::vector<double> env(X + 1, -INFINITY);
  for (const auto& [r, y] : pts)
    if (r >= 1 && r <= X) env[r] = std::max(env[r], y);
  for (std::int64_t r = 2; r <= X; ++r) env[r] = std::max(env[r], env[r - 1]);
  const std::int64_t r_in = std::max<std::int64_t>(2, X / 4);
  if (X >= 2 && std::isfinite(env[1])) {
    f.kappa_inner = (env[std::min(r_in, X)] - env[1]) / std::log(static_cast<double>(std::min(r_in, X)));
    const std::int64_t h = std::max<std::int64_t>(1, X / 2);
    if (h < X) f.kappa_outer = (env[X] - env[h]) / std::log(static_cast<double>(X) / static_cast<double>(h));
  }
  f.super_polynomial = f.kappa_outer > 2.0 * f.kappa_inner + 1.0;
  f.kappa = std::max({0.0, f.kappa_inner, f.kappa_outer});
  double logC = -INFINITY;
  for (const auto& [r, y] : pts)
    if (r >= 1) logC = std::max(logC, y - f.kappa * std::log(static_cast<double>(r)));
  f.C = std::exp(logC);
  f.pass = !f.super_polynomial;
  return f;
}

}  // namespace detail

std::int64_t exp_bandwidth(const TrigPoly<Complex>& C, int sign, std::int64_t cap, double eps) {
  const auto coeffs = coeff_map(C);
  const Complex f(0.0, static_cast<double>(sign));
  auto measure = [&](const std::vector<Complex>& coef, const Grid& g) {
    double mx = 0.0;
    for (const auto& z : coef) mx = std::max(mx, std::abs(z));
    std::int64_t b = 0;
    g.for_each([&](std::size_t idx, const IntVec& k) {
      if (std::abs(coef[idx]) > eps * mx) b = std::max(b, sup_norm(k));
    });
    return b;
  };
  Complex c0;
  if (auto parts = axis_parts(coeffs, C.n(), c0)) {
    std::int64_t b = 0;
    for (const auto& part : *parts) {
      if (part.empty()) continue;
      const Grid g(1, pow2_at_least(std::max<std::int64_t>(64, 4 * (cap + 1))));
      auto v = values_1d(part, g.M);
      for (auto& z : v) z = std::exp(f * z);
      g.coefficients(v);
      b = std::max(b, measure(v, g));
    }
    return b;
  }
  const Grid g(C.n(), pow2_at_least(std::max<std::int64_t>(16, 2 * cap + 4)));
  auto v = exp_values(g, C, sign);
  g.coefficients(v);
  return measure(v, g);
}

TrigPForm<Complex> psi_apply(const NormalFormData<Complex>& nf, const TrigPForm<Complex>& u,
                             PsiDirection dir, const PsiOptions& opt, PsiStats* stats) {
  if (u.n() != nf.n || u.N() != nf.N) throw DomainError("psi_apply: form does not match the decomposition");
  const int sign = dir == PsiDirection::Forward ? -1 : +1;
  const auto groups = group_by_xi(u);
  const auto box = u.support_box();
  std::vector<const std::pair<const IntVec, Group>*> items;
  for (const auto& g : groups) items.push_back(&g);

  struct Piece {
    std::vector<std::tuple<IntVec, MultiIndex, Complex>> terms;
    int grid = 0;
    std::int64_t bandwidth = 0;
    double tail = 0.0;
  };
  auto pieces = parallel_map<Piece>(items.size(), opt.threads, [&](std::size_t i) {
    const auto& [xi, group] = *items[i];
    const auto& s = nf.at(xi);
    const std::int64_t Bu = group_bandwidth(group);
    const std::int64_t Bin = std::max<std::int64_t>({box.H, nf.X, s.C.bandwidth(), 1});
    const std::int64_t cap = opt.cap_factor * Bin;
    const std::int64_t Be = exp_bandwidth(s.C, sign, cap, opt.eps);
    const std::int64_t Bout = Bu + Be;
    if (Bout > cap)
      throw ResourceError("Psi at xi=" + to_string(xi) + " needs output bandwidth " + std::to_string(Bout) +
                          " beyond the cap " + std::to_string(cap) +
                          "; enlarge the box or raise cap_factor");
    Piece pc;
    const Grid g(nf.n, pow2_at_least(std::max<std::int64_t>(4 * Bin, 2 * Bout + 2)));
    pc.grid = g.M;
    pc.bandwidth = Bout;
    const auto E = exp_values(g, s.C, sign);
    for (const auto& [K, c] : group) {
      auto v = g.values(c);
      for (std::size_t k = 0; k < g.size; ++k) v[k] *= E[k];
      g.coefficients(v);
      double mx = 0.0;
      for (const auto& z : v) mx = std::max(mx, std::abs(z));
      g.for_each([&](std::size_t idx, const IntVec& k) {
        const double a = std::abs(v[idx]);
        if (sup_norm(k) > Bout) {
          if (mx > 0) pc.tail = std::max(pc.tail, a / mx);
        } else if (a > opt.prune * mx) {
          pc.terms.emplace_back(k, K, v[idx]);
        }
      });
    }
    return pc;
  });

  TrigPForm<Complex> out(u.n(), u.N(), u.degree());
  PsiStats st;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const auto& xi = items[i]->first;
    for (const auto& [eta, K, v] : pieces[i].terms) out.add(Frequency{eta, xi}, K, v);
    st.max_grid = std::max(st.max_grid, pieces[i].grid);
    st.max_output_bandwidth = std::max(st.max_output_bandwidth, pieces[i].bandwidth);
    st.max_tail = std::max(st.max_tail, pieces[i].tail);
  }
  if (stats) *stats = st;
  return out;
}

double conjugation_residual(const NormalFormData<Complex>& nf, const SystemSpec& spec,
                            const TrigPForm<Complex>& u, int M) {
  const int n = nf.n, p = u.degree();
  if (p + 1 > n) return 0.0;
  const Grid g(n, M);
  const auto Lu = group_by_xi(apply_operator(spec, &nf.profile, u));
  const auto Js = all_multi_indices(n, p + 1);
  double res = 0.0;
  for (const auto& [xi, group] : group_by_xi(u)) {
    const auto& s = nf.at(xi);
    const auto Ep = exp_values(g, s.C, +1);
    const auto Em = exp_values(g, s.C, -1);
    std::map<MultiIndex, std::vector<Complex>> W;
    for (const auto& [K, c] : group) {
      auto v = g.values(c);
      for (std::size_t k = 0; k < g.size; ++k) v[k] *= Ep[k];
      g.coefficients(v);
      W.emplace(K, std::move(v));
    }
    const auto lit = Lu.find(xi);
    for (const auto& J : Js) {
      std::vector<Complex> V(g.size);
      bool any = false;
      for (int j : J) {
        const auto it = W.find(J.without(j));
        if (it == W.end()) continue;
        any = true;
        const double sg = wedge_sign(j, J);
        const Complex c0 = s.c0[j - 1];
        g.for_each([&](std::size_t idx, const IntVec& k) {
          const double kj = k[j - 1] == -M / 2 ? 0.0 : static_cast<double>(k[j - 1]);
          V[idx] += sg * Complex(0.0, 1.0) * (kj + c0) * it->second[idx];
        });
      }
      std::map<IntVec, Complex> exact;
      if (lit != Lu.end())
        if (auto e = lit->second.find(J); e != lit->second.end()) exact = e->second;
      if (any) {
        g.fft(V, +1);
        for (std::size_t k = 0; k < g.size; ++k) V[k] *= Em[k];
        g.coefficients(V);
      }
      for (const auto& [k, v] : exact) {
        if (sup_norm(k) >= M / 2) {
          res = std::max(res, std::abs(v));
          continue;
        }
        V[g.index(k)] -= v;
      }
      for (const auto& z : V) res = std::max(res, std::abs(z));
    }
  }
  return res;
}

namespace {

TrigPForm<Complex> random_form(std::mt19937_64& rng, int n, int N, int p, std::int64_t H, std::int64_t X,
                               int modes) {
  std::uniform_int_distribution<std::int64_t> eh(-H, H), ex(-X, X);
  std::uniform_real_distribution<double> c(-1.0, 1.0);
  TrigPForm<Complex> u(n, N, p);
  for (int m = 0; m < modes; ++m) {
    Frequency f{IntVec(n), IntVec(N)};
    for (auto& e : f.eta) e = eh(rng);
    for (auto& x : f.xi) x = ex(rng);
    for (const auto& K : all_multi_indices(n, p)) u.add(f, K, Complex(c(rng), c(rng)));
  }
  return u;
}

}  // namespace

ConjugationReport verify_conjugation(const CoefficientProfile<Complex>& prof, const SystemSpec& spec,
                                     const ConjugationOptions& opt, std::optional<bool> condition_D) {
  const auto nf = decompose(prof, spec, opt.X, 1e-10, opt.threads);
  ConjugationReport rep;
  rep.seed = opt.seed;
  rep.condition_D = condition_D;
  std::vector<int> degrees = opt.degrees;
  if (degrees.empty())
    for (int p = 0; p < spec.n; ++p) degrees.push_back(p);
  std::mt19937_64 rng(opt.seed);
  struct Job {
    int p;
    TrigPForm<Complex> u;
  };
  std::vector<Job> jobs;
  for (int p : degrees) {
    if (p < 0 || p >= spec.n) throw DomainError("verify_conjugation: degree " + std::to_string(p) + " out of range");
    for (int t = 0; t < opt.trials; ++t)
      jobs.push_back({p, random_form(rng, spec.n, spec.N, p, opt.H, opt.X, opt.modes)});
  }
  rep.trials = parallel_map<ConjugationTrial>(jobs.size(), opt.threads, [&](std::size_t i) {
    const auto& u = jobs[i].u;
    ConjugationTrial tr;
    tr.p = jobs[i].p;
    int M = opt.grid;
    if (M <= 0) {
      const std::int64_t Bu = u.support_box().H;
      std::int64_t Be = 0, BC = 0;
      for (const auto& xi : xi_support(u)) BC = std::max(BC, nf.at(xi).C.bandwidth());
      const std::int64_t Bin = std::max<std::int64_t>({Bu, BC, 1});
      for (const auto& xi : xi_support(u)) Be = std::max(Be, exp_bandwidth(nf.at(xi).C, +1, 4 * Bin));
      M = pow2_at_least(std::max<std::int64_t>(4 * Bin, 2 * (Bu + Be) + 2));
    }
    tr.grid = M;
    tr.scale = apply_operator(spec, &nf.profile, u).max_abs();
    tr.residual = conjugation_residual(nf, spec, u, M);
    tr.residual_half = conjugation_residual(nf, spec, u, M / 2);
    return tr;
  });
  for (const auto& t : rep.trials) {
    rep.max_residual = std::max(rep.max_residual, t.residual);
    rep.max_residual_half = std::max(rep.max_residual_half, t.residual_half);
  }
  rep.truncation_dominated = rep.max_residual == 0.0 || rep.max_residual_half > rep.max_residual;
  return rep;
}

SignReport sign_report(const TrigPoly<Complex>& f, int j, int points) {
  SignReport r;
  std::vector<std::pair<std::int64_t, Complex>> terms;
  double l1 = 0.0, lip = 0.0;
  for (const auto& [eta, v] : f.coeffs()) {
    terms.emplace_back(eta[j - 1], v);
    l1 += std::abs(v);
    lip += std::abs(v) * std::llabs(eta[j - 1]);
  }
  if (terms.empty()) {
    r.certified = true;
    return r;
  }
  auto eval = [&](double t) {
    Complex s{};
    for (const auto& [k, v] : terms) s += v * std::polar(1.0, static_cast<double>(k) * t);
    return s.real();
  };
  const double tol = 1e-12 * std::max(l1, 1.0);
  const double h = kTwoPi / points;
  std::vector<double> v(points + 1);
  r.min = INFINITY;
  r.max = -INFINITY;
  for (int i = 0; i <= points; ++i) {
    v[i] = eval(h * i);
    r.min = std::min(r.min, v[i]);
    r.max = std::max(r.max, v[i]);
  }
  if (r.min < -tol && r.max > tol) {
    r.changes_sign = true;
    r.certified = true;
    return r;
  }
  const double sg = r.max > tol ? 1.0 : -1.0;
  if (f.bandwidth() > 64) return r;
  // sg * f >= (sg f(a) + sg f(b) - lip (b - a)) / 2 on [a, b]
  std::function<int(double, double, double, double, int)> cell = [&](double a, double b, double fa, double fb,
                                                                    int depth) -> int {
    if ((sg * fa + sg * fb - lip * (b - a)) / 2 > 0) return 1;
    if (depth == 0) return 0;
    const double m = (a + b) / 2, fm = eval(m);
    if (sg * fm < -tol) return -1;
    const int left = cell(a, m, fa, fm, depth - 1);
    if (left < 0) return left;
    const int right = cell(m, b, fm, fb, depth - 1);
    return std::min(left, right);
  };
  bool ok = true;
  for (int i = 0; i < points; ++i) {
    const int c = cell(h * i, h * (i + 1), v[i], v[i + 1], 12);
    if (c < 0) {
      r.changes_sign = true;
      r.certified = true;
      return r;
    }
    ok = ok && c > 0;
  }
  r.certified = ok;
  return r;
}

std::string IndexClass::condition() const {
  std::string s;
  if (cond_i) s += "i";
  if (cond_ii) s += s.empty() ? "ii" : ",ii";
  if (cond_iii) s += s.empty() ? "iii" : ",iii";
  return s.empty() ? "none" : s;
}

DecoupledClassification classify_decoupled(const CoefficientProfile<Complex>& prof, const SystemSpec& spec,
                                           const ClassifyOptions& opt) {
  if (prof.n() != spec.n) throw DomainError("classify_decoupled: profile does not match the system");
  if (!prof.decoupled()) throw DomainError("classify_decoupled: some c_j depends on t_k with k != j");
  DecoupledClassification out;
  out.X = opt.X;
  for (int j = 1; j <= spec.n; ++j) {
    const auto& sym = spec.symbols[j - 1];
    IndexClass ic;
    ic.j = j;
    ic.p = classify_growth(sym, opt.X, opt.margin);
    ic.alpha = classify_growth([&](std::span<const std::int64_t> x) { return std::abs(sym(x).real()); }, spec.N,
                               opt.X, opt.margin);
    ic.beta = classify_growth([&](std::span<const std::int64_t> x) { return std::abs(sym(x).imag()); }, spec.N,
                              opt.X, opt.margin);
    ic.a = sign_report(real_part(prof.c[j - 1]), j, opt.points);
    ic.b = sign_report(imag_part(prof.c[j - 1]), j, opt.points);
    ic.cond_i = ic.p.is_log();
    ic.cond_ii = ic.alpha.is_log() && !ic.beta.is_log() && !ic.a.changes_sign;
    ic.cond_iii = !ic.alpha.is_log() && ic.beta.is_log() && !ic.b.changes_sign;
    if (ic.in_L()) out.L.push_back(j);
    out.per_j.push_back(std::move(ic));
  }
  out.reduction_applies = static_cast<int>(out.L.size()) == spec.n;
  return out;
}

}  // namespace torcx
