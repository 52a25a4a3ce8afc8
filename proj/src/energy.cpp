#include "oklam/energy.hpp"

#include <cmath>
#include <sstream>

namespace oklam {

namespace {

// Second antiderivative of the Green's function; F'' = G on [-1, 1].
inline double f_kernel(double x) {
  const double ax = std::abs(x);
  const double u = 1.0 - ax;
  return x * x * u * u / 24.0;
}

// d/dx of f_kernel; odd and 1-periodic on [-1, 1].
inline double f_kernel_prime(double x) {
  const double ax = std::abs(x);
  return x * (1.0 - ax) * (1.0 - 2.0 * ax) / 12.0;
}

std::vector<double> interface_positions(std::span<const double> widths) {
  std::vector<double> y(widths.size() + 1);
  y[0] = 0.0;
  for (std::size_t k = 0; k < widths.size(); ++k) y[k + 1] = y[k] + widths[k];
  return y;
}

int count_layers(const Pattern& p, Species s) {
  int n = 0;
  for (Species t : p.layers()) n += (t == s);
  return n;
}

}  // namespace

double green(double x, double y) {
  if (x < 0.0 || x > 1.0 || y < 0.0 || y > 1.0)
    throw validation_error("green: arguments must lie in [0, 1]");
  const double d = std::abs(x - y);
  return d * d / 2.0 - d / 2.0 + 1.0 / 12.0;
}

double segment_pair_integral(double x1, double x2, double y1, double y2) {
  if (!(0.0 <= x1 && x1 <= x2 && x2 <= 1.0 && 0.0 <= y1 && y1 <= y2 && y2 <= 1.0))
    throw validation_error("segment_pair_integral: endpoints must be ordered within [0, 1]");
  return f_kernel(x2 - y1) - f_kernel(x1 - y1) - f_kernel(x2 - y2) + f_kernel(x1 - y2);
}

double ModelParams::tension(Species i, Species j) const {
  if (i == j) return 0.0;
  const int a = static_cast<int>(i), b = static_cast<int>(j);
  const int key = a + b;  // 0+1, 0+2, 1+2 are distinct
  return key == 1 ? c12 : (key == 2 ? c13 : c23);
}

void ModelParams::validate(bool strict, double tol) const {
  if (c12 < 0.0 || c13 < 0.0 || c23 < 0.0)
    throw validation_error("interfacial tensions must be nonnegative");
  const double slack = 1e-12 * (c12 + c13 + c23 + 1.0);
  if (c12 > c13 + c23 + slack || c13 > c12 + c23 + slack || c23 > c12 + c13 + slack)
    throw validation_error("interfacial tensions violate the triangle inequalities");
  if (strict) {
    auto rep = is_admissible(gamma, omega, tol);
    if (!rep.admissible) {
      std::ostringstream msg;
      msg << "coefficient matrix is not admissible (kernel residual " << rep.kernel_residual
          << ", min eigenvalue " << rep.min_eigenvalue << ", scale " << rep.scale << ")";
      throw validation_error(msg.str());
    }
  }
}

void check_widths(const Pattern& p, const WidthVector& wv, const VolumeFractions& omega) {
  if (wv.w.size() != p.size())
    throw validation_error("width vector is not aligned with the pattern");
  double total = 0.0;
  Vec3 per_species{};
  for (std::size_t k = 0; k < wv.w.size(); ++k) {
    if (wv.w[k] < 0.0) throw validation_error("widths must be nonnegative");
    total += wv.w[k];
    per_species[static_cast<std::size_t>(p[k])] += wv.w[k];
  }
  if (std::abs(total - 1.0) > kWidthTol)
    throw validation_error("widths must sum to the cell length");
  for (int i = 0; i < kSpeciesCount; ++i) {
    if (std::abs(per_species[static_cast<std::size_t>(i)] - omega[i]) > kWidthTol) {
      std::ostringstream msg;
      msg << "species " << species_char(static_cast<Species>(i))
          << " width sum violates its volume fraction";
      throw validation_error(msg.str());
    }
  }
}

WidthVector uniform_widths(const Pattern& p, const VolumeFractions& omega) {
  WidthVector wv;
  wv.w.resize(p.size());
  for (std::size_t k = 0; k < p.size(); ++k)
    wv.w[k] = omega[static_cast<int>(p[k])] / count_layers(p, p[k]);
  return wv;
}

double short_range_energy(const Pattern& p, const ModelParams& m) {
  double s = 0.0;
  const std::size_t n = p.size();
  for (std::size_t k = 0; k < n; ++k) s += m.tension(p[k], p[(k + 1) % n]);
  return s;
}

namespace detail {

std::vector<double> edge_weights(std::span<const Species> types, const Mat3& gamma) {
  const std::size_t L = types.size();
  const std::size_t E = L + 1;
  // g(k, m) with out-of-range layers contributing zero keeps the boundary
  // edges uniform with the interior ones.
  auto g = [&](std::size_t k, std::size_t m) -> double {
    if (k == 0 || k > L || m == 0 || m > L) return 0.0;
    return gamma(static_cast<int>(types[k - 1]), static_cast<int>(types[m - 1]));
  };
  std::vector<double> w(E * E);
  for (std::size_t r = 1; r <= E; ++r)
    for (std::size_t q = 1; q <= E; ++q)
      w[(r - 1) * E + (q - 1)] = g(r - 1, q) - g(r, q) - g(r - 1, q - 1) + g(r, q - 1);
  return w;
}

double long_range_raw(std::span<const double> widths, std::span<const double> weights) {
  const std::size_t E = widths.size() + 1;
  std::vector<double> y(E);
  y[0] = 0.0;
  for (std::size_t k = 0; k + 1 < E; ++k) y[k + 1] = y[k] + widths[k];
  KahanSum acc;
  for (std::size_t r = 0; r < E; ++r) {
    const double* row = weights.data() + r * E;
    for (std::size_t q = 0; q < E; ++q) {
      if (row[q] != 0.0) acc.add(row[q] * f_kernel(y[r] - y[q]));
    }
  }
  return acc.value();
}

void long_range_gradient_raw(std::span<const double> widths, std::span<const double> weights,
                             std::span<double> grad) {
  const std::size_t E = widths.size() + 1;
  std::vector<double> y(E);
  y[0] = 0.0;
  for (std::size_t k = 0; k + 1 < E; ++k) y[k + 1] = y[k] + widths[k];
  // dE/dy_r, then suffix sums give dE/dw_k.
  std::vector<double> py(E, 0.0);
  for (std::size_t r = 0; r < E; ++r) {
    const double* row = weights.data() + r * E;
    double s = 0.0;
    for (std::size_t q = 0; q < E; ++q) {
      if (row[q] != 0.0) s += row[q] * f_kernel_prime(y[r] - y[q]);
    }
    py[r] = 2.0 * s;
  }
  double suffix = 0.0;
  for (std::size_t k = widths.size(); k-- > 0;) {
    suffix += py[k + 1];
    grad[k] = suffix;
  }
}

std::array<double, 5> long_range_poly(std::span<const double> widths,
                                      std::span<const double> direction,
                                      std::span<const double> weights) {
  const std::size_t E = widths.size() + 1;
  std::vector<double> y(E), v(E);
  y[0] = 0.0;
  v[0] = 0.0;
  for (std::size_t k = 0; k + 1 < E; ++k) {
    y[k + 1] = y[k] + widths[k];
    v[k + 1] = v[k] + direction[k];
  }
  KahanSum acc[5];
  for (std::size_t r = 0; r < E; ++r) {
    const double* row = weights.data() + r * E;
    for (std::size_t q = 0; q < E; ++q) {
      const double wgt = row[q];
      if (wgt == 0.0) continue;
      double p = y[r] - y[q];
      double d = v[r] - v[q];
      if (p == 0.0 && d == 0.0) continue;
      // The argument keeps its sign while the move stays feasible; flip so
      // the quartic branch of F with t >= 0 applies.
      if (p < 0.0 || (p == 0.0 && d < 0.0)) {
        p = -p;
        d = -d;
      }
      const double p2 = p * p, p3 = p2 * p, p4 = p3 * p;
      const double d2 = d * d, d3 = d2 * d, d4 = d3 * d;
      // (t^2 - 2 t^3 + t^4) / 24 with t = p + d s.
      acc[0].add(wgt * (p2 - 2.0 * p3 + p4) / 24.0);
      acc[1].add(wgt * (2.0 * p * d - 6.0 * p2 * d + 4.0 * p3 * d) / 24.0);
      acc[2].add(wgt * (d2 - 6.0 * p * d2 + 6.0 * p2 * d2) / 24.0);
      acc[3].add(wgt * (-2.0 * d3 + 4.0 * p * d3) / 24.0);
      acc[4].add(wgt * d4 / 24.0);
    }
  }
  return {acc[0].value(), acc[1].value(), acc[2].value(), acc[3].value(), acc[4].value()};
}

}  // namespace detail

double long_range_of_segments(std::span<const Segment> segs, const Mat3& gamma) {
  std::vector<Species> types(segs.size());
  std::vector<double> widths(segs.size());
  for (std::size_t k = 0; k < segs.size(); ++k) {
    types[k] = segs[k].type;
    widths[k] = segs[k].width;
  }
  const auto weights = detail::edge_weights(types, gamma);
  return detail::long_range_raw(widths, weights);
}

EnergyBreakdown free_energy(const Pattern& p, const WidthVector& wv, const ModelParams& m) {
  check_widths(p, wv, m.omega);
  std::vector<Segment> segs(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) segs[k] = Segment{p[k], wv.w[k]};
  EnergyBreakdown e;
  e.short_range = short_range_energy(p, m);
  e.long_range = long_range_of_segments(segs, m.gamma.m);
  e.total = e.short_range + e.long_range;
  return e;
}

std::vector<double> long_range_gradient(const Pattern& p, const WidthVector& wv,
                                        const ModelParams& m) {
  check_widths(p, wv, m.omega);
  const auto weights = detail::edge_weights(p.layers(), m.gamma.m);
  std::vector<double> grad(p.size());
  detail::long_range_gradient_raw(wv.w, weights, grad);
  return grad;
}

double long_range_via_field_segments(std::span<const Segment> segs, const Mat3& gamma,
                                     const VolumeFractions& omega) {
  const std::size_t L = segs.size();
  std::vector<double> widths(L);
  for (std::size_t k = 0; k < L; ++k) widths[k] = segs[k].width;
  const auto y = interface_positions(widths);

  // Node values of the three field components; slope on a layer of species
  // i is 1{type == i} - omega_i, so the field closes up periodically.
  std::vector<Vec3> node(L + 1, Vec3{});
  for (std::size_t k = 0; k < L; ++k) {
    for (int i = 0; i < 3; ++i) {
      const double slope = (static_cast<int>(segs[k].type) == i ? 1.0 : 0.0) - omega[i];
      node[k + 1][static_cast<std::size_t>(i)] =
          node[k][static_cast<std::size_t>(i)] + slope * widths[k];
    }
  }
  // Remove the mean of each component.
  Vec3 mean{};
  for (std::size_t k = 0; k < L; ++k)
    for (int i = 0; i < 3; ++i)
      mean[static_cast<std::size_t>(i)] += widths[k] *
                                           (node[k][static_cast<std::size_t>(i)] +
                                            node[k + 1][static_cast<std::size_t>(i)]) /
                                           2.0;
  for (auto& nd : node)
    for (int i = 0; i < 3; ++i) nd[static_cast<std::size_t>(i)] -= mean[static_cast<std::size_t>(i)];

  auto quad = [&](const Vec3& u, const Vec3& v) {
    double s = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        s += u[static_cast<std::size_t>(i)] * gamma(i, j) * v[static_cast<std::size_t>(j)];
    return s;
  };
  // Exact integral of the quadratic form of a linear interpolant.
  KahanSum acc;
  for (std::size_t k = 0; k < L; ++k) {
    const Vec3& u = node[k];
    const Vec3& v = node[k + 1];
    acc.add(widths[k] * (quad(u, u) + quad(u, v) + quad(v, v)) / 3.0);
  }
  return acc.value();
}

double long_range_via_field(const Pattern& p, const WidthVector& wv, const ModelParams& m) {
  check_widths(p, wv, m.omega);
  std::vector<Segment> segs(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) segs[k] = Segment{p[k], wv.w[k]};
  return long_range_via_field_segments(segs, m.gamma.m, m.omega);
}

}  // namespace oklam
