#pragma once

// Test-only oracles, independent of the implementation paths they check.

#include <array>
#include <cmath>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "oklam/energy.hpp"
#include "oklam/pattern.hpp"

namespace oklam::testing {

// Integral of G(., y) over [a, b] in x by Gauss-Legendre, splitting at the
// |x - y| kink so each piece is a quadratic (2-point rule is exact).
inline double gauss_inner(double a, double b, double y) {
  auto smooth = [&](double lo, double hi) {
    if (hi <= lo) return 0.0;
    const double h = (hi - lo) / 2.0, c = (lo + hi) / 2.0;
    const double node = h / std::sqrt(3.0);
    auto g = [&](double x) {
      const double d = std::abs(x - y);
      return d * d / 2.0 - d / 2.0 + 1.0 / 12.0;
    };
    return h * (g(c - node) + g(c + node));
  };
  if (y <= a || y >= b) return smooth(a, b);
  return smooth(a, y) + smooth(y, b);
}

// Double integral of G over a rectangle. The inner integral is piecewise
// cubic in y with breakpoints where the kink crosses the x-range, so the
// outer rule splits there; exact up to roundoff.
inline double quadrature_pair_integral(double x1, double x2, double y1, double y2) {
  std::vector<double> cuts{y1, y2};
  for (double c : {x1, x2})
    if (c > y1 && c < y2) cuts.push_back(c);
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i], hi = cuts[i + 1];
    if (hi <= lo) continue;
    // 3-point Gauss in y (exact for quintics, comfortably enough).
    const double h = (hi - lo) / 2.0, c = (lo + hi) / 2.0;
    const double r = std::sqrt(3.0 / 5.0);
    const std::array<double, 3> nodes{c - h * r, c, c + h * r};
    const std::array<double, 3> wts{5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
    for (int k = 0; k < 3; ++k)
      total += h * wts[static_cast<std::size_t>(k)] *
               gauss_inner(x1, x2, nodes[static_cast<std::size_t>(k)]);
  }
  return total;
}

// Central finite differences of the long-range term in width coordinates.
inline std::vector<double> fd_long_range_gradient(const Pattern& p, const WidthVector& wv,
                                                  const ModelParams& m, double h = 1e-6) {
  std::vector<Segment> segs(p.size());
  auto eval = [&](const std::vector<double>& w) {
    for (std::size_t k = 0; k < p.size(); ++k) segs[k] = Segment{p[k], w[k]};
    return long_range_of_segments(segs, m.gamma.m);
  };
  std::vector<double> grad(p.size());
  std::vector<double> w = wv.w;
  for (std::size_t k = 0; k < w.size(); ++k) {
    const double keep = w[k];
    w[k] = keep + h;
    const double up = eval(w);
    w[k] = keep - h;
    const double dn = eval(w);
    w[k] = keep;
    grad[k] = (up - dn) / (2.0 * h);
  }
  return grad;
}

// Independent enumerator: filter all 3^L words, dedup by canonical string.
inline std::set<std::string> brute_force_canonical_words(int length) {
  std::set<std::string> out;
  std::vector<Species> word(static_cast<std::size_t>(length));
  const long total = static_cast<long>(std::pow(3.0, length));
  for (long code = 0; code < total; ++code) {
    long c = code;
    for (int i = 0; i < length; ++i) {
      word[static_cast<std::size_t>(i)] = static_cast<Species>(c % 3);
      c /= 3;
    }
    if (!validation_failure(word).empty()) continue;
    out.insert(canonicalize(Pattern::from_layers(word)).str());
  }
  return out;
}

// Random feasible widths: per-species random simplex points scaled by the
// volume fractions. Deterministic under the caller's seeded engine.
inline WidthVector random_widths(const Pattern& p, const VolumeFractions& omega,
                                 std::mt19937_64& rng, double min_frac = 0.02) {
  std::uniform_real_distribution<double> unif(min_frac, 1.0);
  WidthVector wv;
  wv.w.assign(p.size(), 0.0);
  for (int s = 0; s < kSpeciesCount; ++s) {
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < p.size(); ++k)
      if (static_cast<int>(p[k]) == s) idx.push_back(k);
    double sum = 0.0;
    std::vector<double> parts(idx.size());
    for (auto& x : parts) {
      x = unif(rng);
      sum += x;
    }
    for (std::size_t i = 0; i < idx.size(); ++i) wv.w[idx[i]] = omega[s] * parts[i] / sum;
  }
  return wv;
}

// Random admissible coefficient matrix with unit-scale pairwise triple.
inline GammaMatrix random_admissible_gamma(const VolumeFractions& omega, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double theta_max = std::acos(1.0 / std::sqrt(3.0));
  const double theta = theta_max * 0.98 * unif(rng);
  const double phi = 2.0 * std::acos(-1.0) * unif(rng);
  const Vec3 t = cap_triple(theta, phi);
  return gamma_from_f(interaction_from_triple(t[0], t[1], t[2]), omega);
}

inline VolumeFractions random_fractions(std::mt19937_64& rng, double min_frac = 0.08) {
  std::uniform_real_distribution<double> unif(min_frac, 1.0);
  double a = unif(rng), b = unif(rng), c = unif(rng);
  const double s = a + b + c;
  return VolumeFractions::make(a / s, b / s, c / s);
}

}  // namespace oklam::testing
