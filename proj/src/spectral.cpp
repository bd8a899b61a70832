#include "torcx/spectral.hpp"

namespace torcx {

namespace {

double slope(const std::vector<std::pair<int, double>>& pts) {
  if (pts.size() < 2) return 0.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [k, y] : pts) {
    sx += k;
    sy += y;
    sxx += double(k) * k;
    sxy += k * y;
  }
  const double m = static_cast<double>(pts.size());
  const double den = m * sxx - sx * sx;
  return den == 0.0 ? 0.0 : (m * sxy - sx * sy) / den;
}

}  // namespace

GrowthFit fit_growth(const std::vector<std::pair<int, double>>& shells,
                     std::optional<double> lambda_hat) {
  GrowthFit g;
  g.shells = shells;
  g.exponent = slope(shells);
  if (shells.empty()) return g;
  const int kmax = shells.back().first;
  std::vector<std::pair<int, double>> half;
  for (const auto& s : shells)
    if (s.first <= kmax - 1) half.push_back(s);
  g.exponent_half = slope(half);
  if (lambda_hat && half.size() >= 2)
    g.blowup_suspected = g.exponent > *lambda_hat + 2.0 && g.exponent_half > *lambda_hat + 2.0;
  return g;
}

}  // namespace torcx
