#include "oklam/analytic.hpp"

#include <algorithm>
#include <cmath>

namespace oklam {

namespace {

double pair_sum(const VolumeFractions& w) { return w.a * w.b + w.b * w.c + w.c * w.a; }

}  // namespace

double j_abc(int n, const AnalyticParams& p) {
  if (n < 1) throw validation_error("repetition count must be >= 1");
  if (!(p.gamma > 0.0)) throw validation_error("gamma must be positive");
  const double s = p.c12 + p.c13 + p.c23;
  const double k = 5.0 - 9.0 * p.omega.a * p.omega.b * p.omega.c / pair_sum(p.omega);
  return s * n + p.gamma / (16.0 * n * n) * k;
}

double j_abac(int n, const AnalyticParams& p) {
  if (n < 1) throw validation_error("repetition count must be >= 1");
  if (!(p.gamma > 0.0)) throw validation_error("gamma must be positive");
  const double s = 2.0 * (p.c12 + p.c13);
  const double k = 2.0 + 3.0 * p.omega.a * p.omega.a / pair_sum(p.omega);
  return s * n + p.gamma / (16.0 * n * n) * k;
}

double coefficient_from_sk(double S, double K) {
  return 1.5 * std::cbrt(2.0) * std::cbrt(S * S * K);
}

AsymptoticCoefficient asymptotic_coefficient(const Pattern& repetend,
                                             const ModelParams& unit_gamma,
                                             const OptimizerOptions& opts) {
  AsymptoticCoefficient out{repetend};
  out.S = short_range_energy(repetend, unit_gamma);
  OptimizationResult r = optimize_widths(repetend, unit_gamma, opts);
  out.K = r.energy.long_range;
  out.converged = r.converged;
  out.C = coefficient_from_sk(out.S, out.K);
  return out;
}

int optimal_repeat_count(double S, double K, double gamma) {
  if (!(S > 0.0)) throw validation_error("short-range cost must be positive");
  if (K <= 0.0) return 1;
  const double n_star = std::cbrt(2.0 * gamma * K / S);
  const int lo = std::max(1, static_cast<int>(std::floor(n_star)));
  auto j = [&](int n) { return S * n + gamma * K / (static_cast<double>(n) * n); };
  int best = lo;
  for (int n : {lo, lo + 1, lo + 2}) {
    if (n >= 1 && j(n) < j(best)) best = n;
  }
  if (lo > 1 && j(lo - 1) < j(best)) best = lo - 1;
  return best;
}

std::vector<AsymptoticCoefficient> compare_candidates(const std::vector<Pattern>& repetends,
                                                      const ModelParams& unit_gamma,
                                                      const OptimizerOptions& opts,
                                                      double tie_tol) {
  if (repetends.empty()) throw validation_error("candidate list must be nonempty");
  std::vector<AsymptoticCoefficient> out;
  out.reserve(repetends.size());
  for (const Pattern& p : repetends) out.push_back(asymptotic_coefficient(p, unit_gamma, opts));
  std::stable_sort(out.begin(), out.end(),
                   [&](const AsymptoticCoefficient& a, const AsymptoticCoefficient& b) {
                     if (std::abs(a.C - b.C) > tie_tol) return a.C < b.C;
                     const auto ka = std::make_pair(a.repetend.size(), a.repetend.str());
                     const auto kb = std::make_pair(b.repetend.size(), b.repetend.str());
                     return ka < kb;
                   });
  return out;
}

}  // namespace oklam
