#include "oklam/optimizer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

namespace oklam {

void OptimizerOptions::validate() const {
  if (!(optimality_tol > 0.0 && constraint_tol > 0.0 && step_tol > 0.0))
    throw validation_error("optimizer tolerances must be positive");
  if (max_iters < 1) throw validation_error("max_iters must be >= 1");
}

namespace {

constexpr double kActiveEps = 1e-12;

// Real roots of a*s^3 + b*s^2 + c*s + d, ascending. Degenerate leading
// coefficients fall through to the quadratic / linear cases.
int solve_cubic(double a, double b, double c, double d, std::array<double, 3>& roots) {
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
  if (scale == 0.0) return 0;
  if (std::abs(a) <= 1e-14 * scale) {
    if (std::abs(b) <= 1e-14 * scale) {
      if (std::abs(c) <= 1e-14 * scale) return 0;
      roots[0] = -d / c;
      return 1;
    }
    const double disc = c * c - 4.0 * b * d;
    if (disc < 0.0) return 0;
    const double sq = std::sqrt(disc);
    const double q = -0.5 * (c + (c >= 0.0 ? sq : -sq));
    roots[0] = q / b;
    roots[1] = (q != 0.0) ? d / q : roots[0];
    if (roots[0] > roots[1]) std::swap(roots[0], roots[1]);
    return 2;
  }
  // Depressed form t^3 + p t + q with s = t - b/(3a).
  const double inv = 1.0 / a;
  const double b1 = b * inv, c1 = c * inv, d1 = d * inv;
  const double shift = b1 / 3.0;
  const double p = c1 - b1 * b1 / 3.0;
  const double q = 2.0 * b1 * b1 * b1 / 27.0 - b1 * c1 / 3.0 + d1;
  const double disc = q * q / 4.0 + p * p * p / 27.0;
  int n = 0;
  if (disc > 1e-30 * std::max(1.0, q * q)) {
    const double sq = std::sqrt(disc);
    const double u = std::cbrt(-q / 2.0 + sq);
    const double v = std::cbrt(-q / 2.0 - sq);
    roots[n++] = u + v - shift;
  } else if (p == 0.0) {
    roots[n++] = std::cbrt(-q) - shift;
  } else {
    const double r = std::sqrt(std::max(0.0, -p * p * p / 27.0));
    const double phi = std::acos(std::clamp(-q / (2.0 * std::max(r, 1e-300)), -1.0, 1.0));
    const double m = 2.0 * std::sqrt(std::max(0.0, -p / 3.0));
    for (int k = 0; k < 3; ++k)
      roots[n++] = m * std::cos((phi + 2.0 * std::acos(-1.0) * k) / 3.0) - shift;
    std::sort(roots.begin(), roots.begin() + n);
  }
  return n;
}

double eval_quartic(const std::array<double, 5>& c, double s) {
  return c[0] + s * (c[1] + s * (c[2] + s * (c[3] + s * c[4])));
}

// Minimizer of the quartic on [0, s_max].
double argmin_quartic(const std::array<double, 5>& c, double s_max) {
  std::array<double, 3> roots{};
  const int n = solve_cubic(4.0 * c[4], 3.0 * c[3], 2.0 * c[2], c[1], roots);
  double best_s = s_max;
  double best_v = eval_quartic(c, s_max);
  for (int k = 0; k < n; ++k) {
    const double s = roots[k];
    if (s > 0.0 && s < s_max) {
      const double v = eval_quartic(c, s);
      if (v < best_v) {
        best_v = v;
        best_s = s;
      }
    }
  }
  if (best_v >= c[0]) return 0.0;  // no decrease along this direction
  return best_s;
}

// Euclidean projection onto {x >= 0, sum_o mult_o x_o = target}.
void project_group(const std::vector<int>& group, const std::vector<double>& mult, double target,
                   std::vector<double>& x) {
  if (group.size() == 1) {
    x[static_cast<std::size_t>(group[0])] = target / mult[static_cast<std::size_t>(group[0])];
    return;
  }
  // Active set as a function of the multiplier is monotone; scan the sorted
  // breakpoints for the consistent prefix.
  std::vector<int> order(group);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const double ra = x[static_cast<std::size_t>(a)] / mult[static_cast<std::size_t>(a)];
    const double rb = x[static_cast<std::size_t>(b)] / mult[static_cast<std::size_t>(b)];
    if (ra != rb) return ra > rb;
    return a < b;
  });
  double sum_mv = 0.0, sum_mm = 0.0;
  double lambda = 0.0;
  std::size_t active = 0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const int o = order[k];
    sum_mv += mult[static_cast<std::size_t>(o)] * x[static_cast<std::size_t>(o)];
    sum_mm += mult[static_cast<std::size_t>(o)] * mult[static_cast<std::size_t>(o)];
    const double cand = (sum_mv - target) / sum_mm;
    const double next_bp = (k + 1 < order.size())
                               ? x[static_cast<std::size_t>(order[k + 1])] /
                                     mult[static_cast<std::size_t>(order[k + 1])]
                               : -std::numeric_limits<double>::infinity();
    if (cand >= next_bp) {
      lambda = cand;
      active = k + 1;
      break;
    }
    lambda = cand;
    active = k + 1;
  }
  for (std::size_t k = 0; k < order.size(); ++k) {
    const int o = order[k];
    const double v = (k < active)
                         ? x[static_cast<std::size_t>(o)] - lambda * mult[static_cast<std::size_t>(o)]
                         : 0.0;
    x[static_cast<std::size_t>(o)] = std::max(0.0, v);
  }
}

struct ReducedProblem {
  std::vector<Species> types;
  std::vector<double> weights;  // edge-pair weights
  std::vector<int> orbit_of_layer;
  int n_orbits = 0;
  std::vector<double> mult;
  std::array<std::vector<int>, 3> groups;  // orbits per species
  std::array<double, 3> target{};

  std::size_t layers() const { return types.size(); }

  void expand(const std::vector<double>& x, std::vector<double>& w) const {
    w.resize(layers());
    for (std::size_t k = 0; k < layers(); ++k)
      w[k] = x[static_cast<std::size_t>(orbit_of_layer[k])];
  }

  double energy(const std::vector<double>& x, std::vector<double>& scratch) const {
    expand(x, scratch);
    return detail::long_range_raw(scratch, weights);
  }

  void gradient(const std::vector<double>& x, std::vector<double>& g, std::vector<double>& wbuf,
                std::vector<double>& gbuf) const {
    expand(x, wbuf);
    gbuf.resize(layers());
    detail::long_range_gradient_raw(wbuf, weights, gbuf);
    g.assign(static_cast<std::size_t>(n_orbits), 0.0);
    for (std::size_t k = 0; k < layers(); ++k)
      g[static_cast<std::size_t>(orbit_of_layer[k])] += gbuf[k];
  }

  std::array<double, 5> poly(const std::vector<double>& x, const std::vector<double>& dx,
                             std::vector<double>& wbuf, std::vector<double>& dbuf) const {
    expand(x, wbuf);
    dbuf.resize(layers());
    for (std::size_t k = 0; k < layers(); ++k)
      dbuf[k] = dx[static_cast<std::size_t>(orbit_of_layer[k])];
    return detail::long_range_poly(wbuf, dbuf, weights);
  }

  void project(std::vector<double>& x) const {
    for (int s = 0; s < kSpeciesCount; ++s)
      project_group(groups[static_cast<std::size_t>(s)], mult, target[static_cast<std::size_t>(s)],
                    x);
  }
};

ReducedProblem make_problem(const Pattern& p, const ModelParams& m, SymmetryMode mode) {
  ReducedProblem rp;
  rp.types = p.layers();
  rp.weights = detail::edge_weights(rp.types, m.gamma.m);
  if (mode == SymmetryMode::paper_symmetric) {
    rp.orbit_of_layer = symmetry_orbits(p);
  } else {
    rp.orbit_of_layer.resize(p.size());
    std::iota(rp.orbit_of_layer.begin(), rp.orbit_of_layer.end(), 0);
  }
  rp.n_orbits = *std::max_element(rp.orbit_of_layer.begin(), rp.orbit_of_layer.end()) + 1;
  rp.mult.assign(static_cast<std::size_t>(rp.n_orbits), 0.0);
  std::vector<int> orbit_species(static_cast<std::size_t>(rp.n_orbits), -1);
  for (std::size_t k = 0; k < p.size(); ++k) {
    const int o = rp.orbit_of_layer[k];
    rp.mult[static_cast<std::size_t>(o)] += 1.0;
    orbit_species[static_cast<std::size_t>(o)] = static_cast<int>(p[k]);
  }
  for (int o = 0; o < rp.n_orbits; ++o)
    rp.groups[static_cast<std::size_t>(orbit_species[static_cast<std::size_t>(o)])].push_back(o);
  rp.target = {m.omega.a, m.omega.b, m.omega.c};
  return rp;
}

// Max-norm KKT residual with per-species multipliers fitted on the
// inactive variables.
double kkt_residual(const ReducedProblem& rp, const std::vector<double>& x,
                    const std::vector<double>& g) {
  double res = 0.0;
  for (int s = 0; s < kSpeciesCount; ++s) {
    const auto& group = rp.groups[static_cast<std::size_t>(s)];
    double num = 0.0, den = 0.0;
    for (int o : group) {
      if (x[static_cast<std::size_t>(o)] > kActiveEps) {
        num += rp.mult[static_cast<std::size_t>(o)] * g[static_cast<std::size_t>(o)];
        den += rp.mult[static_cast<std::size_t>(o)] * rp.mult[static_cast<std::size_t>(o)];
      }
    }
    const double mu = den > 0.0 ? num / den : 0.0;
    for (int o : group) {
      const double r = g[static_cast<std::size_t>(o)] - mu * rp.mult[static_cast<std::size_t>(o)];
      if (x[static_cast<std::size_t>(o)] > kActiveEps)
        res = std::max(res, std::abs(r));
      else
        res = std::max(res, std::max(0.0, -r));
    }
  }
  return res;
}

// Hessian of the long-range term in orbit coordinates. Dense and small
// (at most 24 variables); used for the Newton polish.
void orbit_hessian(const ReducedProblem& rp, const std::vector<double>& x,
                   std::vector<double>& h) {
  const std::size_t L = rp.layers();
  const std::size_t E = L + 1;
  std::vector<double> w;
  rp.expand(x, w);
  std::vector<double> y(E);
  y[0] = 0.0;
  for (std::size_t k = 0; k + 1 < E; ++k) y[k + 1] = y[k] + w[k];

  auto green_diff = [](double t) {
    const double a = std::abs(t);
    return a * a / 2.0 - a / 2.0 + 1.0 / 12.0;
  };
  // Edge Hessian: 2 * (delta_rq * sum_p W(r,p) G(y_r - y_p) - W(r,q) G(y_r - y_q)).
  std::vector<double> hy(E * E, 0.0);
  for (std::size_t r = 0; r < E; ++r) {
    double diag = 0.0;
    for (std::size_t q = 0; q < E; ++q) {
      const double wgt = rp.weights[r * E + q];
      const double gg = green_diff(y[r] - y[q]);
      diag += wgt * gg;
      hy[r * E + q] -= 2.0 * wgt * gg;
    }
    hy[r * E + r] += 2.0 * diag;
  }
  // Width Hessian via suffix sums over edges r > j, q > k.
  std::vector<double> suf((E + 1) * (E + 1), 0.0);
  for (std::size_t r = E; r-- > 0;)
    for (std::size_t q = E; q-- > 0;)
      suf[r * (E + 1) + q] = hy[r * E + q] + suf[(r + 1) * (E + 1) + q] +
                             suf[r * (E + 1) + (q + 1)] - suf[(r + 1) * (E + 1) + (q + 1)];
  const std::size_t n = static_cast<std::size_t>(rp.n_orbits);
  h.assign(n * n, 0.0);
  for (std::size_t j = 0; j < L; ++j) {
    const std::size_t oj = static_cast<std::size_t>(rp.orbit_of_layer[j]);
    for (std::size_t k = 0; k < L; ++k) {
      const std::size_t ok = static_cast<std::size_t>(rp.orbit_of_layer[k]);
      h[oj * n + ok] += suf[(j + 1) * (E + 1) + (k + 1)];
    }
  }
}

// Gaussian elimination with partial pivoting; returns false when singular.
bool solve_dense(std::vector<double>& a, std::vector<double>& b, std::size_t n) {
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
    if (std::abs(a[piv * n + col]) < 1e-300) return false;
    if (piv != col) {
      for (std::size_t cc = 0; cc < n; ++cc) std::swap(a[col * n + cc], a[piv * n + cc]);
      std::swap(b[col], b[piv]);
    }
    const double inv = 1.0 / a[col * n + col];
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r * n + col] * inv;
      if (f == 0.0) continue;
      for (std::size_t cc = col; cc < n; ++cc) a[r * n + cc] -= f * a[col * n + cc];
      b[r] -= f * b[col];
    }
  }
  for (std::size_t r = n; r-- > 0;) {
    double s = b[r];
    for (std::size_t cc = r + 1; cc < n; ++cc) s -= a[r * n + cc] * b[cc];
    b[r] = s / a[r * n + r];
  }
  return true;
}

// Newton-KKT direction on the inactive set; zero direction on failure.
bool newton_direction(const ReducedProblem& rp, const std::vector<double>& x,
                      const std::vector<double>& g, double tau, std::vector<double>& dx) {
  const std::size_t n = static_cast<std::size_t>(rp.n_orbits);
  std::vector<int> inactive;
  inactive.reserve(n);
  for (std::size_t o = 0; o < n; ++o)
    if (x[o] > kActiveEps) inactive.push_back(static_cast<int>(o));
  const std::size_t ni = inactive.size();
  if (ni == 0) return false;
  std::vector<double> h;
  orbit_hessian(rp, x, h);
  const std::size_t dim = ni + 3;
  std::vector<double> kkt(dim * dim, 0.0), rhs(dim, 0.0);
  double hscale = 0.0;
  for (std::size_t i = 0; i < ni; ++i)
    hscale = std::max(hscale, std::abs(h[static_cast<std::size_t>(inactive[i]) * n +
                                         static_cast<std::size_t>(inactive[i])]));
  for (std::size_t i = 0; i < ni; ++i) {
    for (std::size_t j = 0; j < ni; ++j)
      kkt[i * dim + j] = h[static_cast<std::size_t>(inactive[i]) * n +
                           static_cast<std::size_t>(inactive[j])];
    kkt[i * dim + i] += tau * std::max(hscale, 1.0);
    rhs[i] = -g[static_cast<std::size_t>(inactive[i])];
  }
  for (std::size_t i = 0; i < ni; ++i) {
    int species = -1;
    for (int s = 0; s < 3; ++s)
      for (int o : rp.groups[static_cast<std::size_t>(s)])
        if (o == inactive[i]) species = s;
    const double m = rp.mult[static_cast<std::size_t>(inactive[i])];
    kkt[i * dim + (ni + static_cast<std::size_t>(species))] = m;
    kkt[(ni + static_cast<std::size_t>(species)) * dim + i] = m;
  }
  // Empty species rows would make the system singular; pin those multipliers.
  for (int s = 0; s < 3; ++s) {
    bool any = false;
    for (std::size_t i = 0; i < ni; ++i)
      for (int o : rp.groups[static_cast<std::size_t>(s)])
        if (o == inactive[i]) any = true;
    if (!any) kkt[(ni + static_cast<std::size_t>(s)) * dim + (ni + static_cast<std::size_t>(s))] = 1.0;
  }
  if (!solve_dense(kkt, rhs, dim)) return false;
  dx.assign(n, 0.0);
  for (std::size_t i = 0; i < ni; ++i) dx[static_cast<std::size_t>(inactive[i])] = rhs[i];
  return true;
}

double max_feasible_step(const std::vector<double>& x, const std::vector<double>& dx) {
  double s = std::numeric_limits<double>::infinity();
  for (std::size_t o = 0; o < x.size(); ++o)
    if (dx[o] < 0.0) s = std::min(s, x[o] / -dx[o]);
  return s;
}

}  // namespace

OptimizationResult optimize_widths(const Pattern& p, const ModelParams& m,
                                   const OptimizerOptions& opts) {
  opts.validate();
  m.validate(false);
  ReducedProblem rp = make_problem(p, m, opts.symmetry_mode);
  const std::size_t n = static_cast<std::size_t>(rp.n_orbits);

  // Per-species-uniform start.
  std::vector<double> x(n, 0.0);
  for (int s = 0; s < kSpeciesCount; ++s) {
    const auto& group = rp.groups[static_cast<std::size_t>(s)];
    double layers_of_species = 0.0;
    for (int o : group) layers_of_species += rp.mult[static_cast<std::size_t>(o)];
    for (int o : group) x[static_cast<std::size_t>(o)] =
        rp.target[static_cast<std::size_t>(s)] / layers_of_species;
  }

  std::vector<double> g, wbuf, gbuf, dbuf, xp, dx, gnew, x_prev, g_prev;
  rp.gradient(x, g, wbuf, gbuf);

  double bb_step;
  {
    double gmax = 0.0, xmax = 0.0;
    for (std::size_t o = 0; o < n; ++o) {
      gmax = std::max(gmax, std::abs(g[o]));
      xmax = std::max(xmax, x[o]);
    }
    bb_step = gmax > 0.0 ? 0.1 * std::max(xmax, 1e-3) / gmax : 1.0;
  }

  int iters = 0;
  double kkt = kkt_residual(rp, x, g);
  int stall = 0;
  for (; iters < opts.max_iters && kkt > opts.optimality_tol; ++iters) {
    x_prev = x;
    g_prev = g;
    // Newton-KKT step once the iterate has settled; fall back to the
    // projected-gradient direction whenever it fails to give a decrease.
    bool moved = false;
    if (iters >= 2) {
      double tau = 0.0;
      for (int attempt = 0; attempt < 4 && !moved; ++attempt) {
        if (!newton_direction(rp, x, g, tau, dx)) break;
        const double s_max = std::min(max_feasible_step(x, dx), 8.0);
        if (s_max > 0.0) {
          const auto poly = rp.poly(x, dx, wbuf, dbuf);
          const double s = argmin_quartic(poly, s_max);
          if (s > 0.0) {
            for (std::size_t o = 0; o < n; ++o) x[o] = std::max(0.0, x[o] + s * dx[o]);
            rp.project(x);
            moved = true;
          }
        }
        tau = tau == 0.0 ? 1e-8 : tau * 100.0;
      }
    }
    if (!moved) {
      xp = x;
      for (std::size_t o = 0; o < n; ++o) xp[o] -= bb_step * g[o];
      rp.project(xp);
      dx.resize(n);
      double dmax = 0.0;
      for (std::size_t o = 0; o < n; ++o) {
        dx[o] = xp[o] - x[o];
        dmax = std::max(dmax, std::abs(dx[o]));
      }
      if (dmax < 1e-18) {
        bb_step *= 10.0;
        if (++stall > 6) break;
        continue;
      }
      stall = 0;
      const double s_max = std::max(1.0, std::min(max_feasible_step(x, dx), 64.0));
      const auto poly = rp.poly(x, dx, wbuf, dbuf);
      double s = argmin_quartic(poly, s_max);
      if (s <= 0.0) s = 1.0;  // projection direction is descent; take the unit step
      for (std::size_t o = 0; o < n; ++o) x[o] = std::max(0.0, x[o] + s * dx[o]);
      rp.project(x);
    }
    rp.gradient(x, gnew, wbuf, gbuf);
    double sy = 0.0, ss = 0.0, step_inf = 0.0, x_inf = 0.0;
    for (std::size_t o = 0; o < n; ++o) {
      const double sd = x[o] - x_prev[o];
      const double yd = gnew[o] - g_prev[o];
      ss += sd * sd;
      sy += sd * yd;
      step_inf = std::max(step_inf, std::abs(sd));
      x_inf = std::max(x_inf, std::abs(x[o]));
    }
    if (sy > 1e-300) bb_step = std::clamp(ss / sy, 1e-12, 1e6);
    g.swap(gnew);
    kkt = kkt_residual(rp, x, g);
    if (step_inf <= opts.step_tol * 1e-6 * std::max(x_inf, 1.0)) break;  // stalled
  }

  OptimizationResult res;
  rp.expand(x, res.widths.w);
  res.energy = free_energy(p, res.widths, m);
  res.kkt_residual = kkt;
  res.converged = kkt <= opts.optimality_tol;
  res.iterations = iters;
  for (std::size_t k = 0; k < res.widths.w.size(); ++k)
    if (res.widths.w[k] < opts.constraint_tol) res.degenerate_layers.push_back(static_cast<int>(k));
  return res;
}

RepeatOptimum optimize_repeats(const Pattern& repetend, const ModelParams& m, int n_max,
                               const OptimizerOptions& opts) {
  if (n_max < 1) throw validation_error("n_max must be >= 1");
  RepeatOptimum best;
  for (int n = 1; n <= n_max; ++n) {
    OptimizationResult r = optimize_widths(repeat(repetend, n), m, opts);
    if (best.n == 0 || r.energy.total < best.result.energy.total) {
      best.n = n;
      best.result = std::move(r);
    }
  }
  best.at_boundary = best.n == n_max;
  return best;
}

}  // namespace oklam
