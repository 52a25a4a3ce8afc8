#include "oklam/interaction.hpp"

#include <cmath>
#include <sstream>

namespace oklam {

VolumeFractions VolumeFractions::make(double a, double b, double c) {
  if (!(a > 0.0 && b > 0.0 && c > 0.0))
    throw validation_error("volume fractions must be positive");
  if (std::abs(a + b + c - 1.0) > 1e-12)
    throw validation_error("volume fractions must sum to 1");
  return VolumeFractions{a, b, c};
}

std::string family_name(MatrixFamily f) {
  switch (f) {
    case MatrixFamily::ren: return "ren";
    case MatrixFamily::ohta: return "ohta";
    case MatrixFamily::blend: return "blend";
    case MatrixFamily::general: return "general";
  }
  return "?";
}

MatrixFamily family_from_name(const std::string& name) {
  if (name == "ren") return MatrixFamily::ren;
  if (name == "ohta") return MatrixFamily::ohta;
  if (name == "blend") return MatrixFamily::blend;
  if (name == "general") return MatrixFamily::general;
  throw validation_error("unknown matrix family '" + name + "'");
}

namespace {

void require_buildable(const VolumeFractions& w, double gamma) {
  if (!(gamma > 0.0)) throw validation_error("gamma must be positive");
  if (!(w.a > 0.0 && w.b > 0.0 && w.c > 0.0))
    throw validation_error("degenerate volume fractions");
}

}  // namespace

GammaMatrix build_ohta(const VolumeFractions& w, double gamma) {
  require_buildable(w, gamma);
  const double a = w.a, b = w.b, c = w.c;
  const double pref = 3.0 * gamma / (3.0 - 2.0 * (a + c) - (a - c) * (a - c));
  Mat3 m;
  m(0, 0) = (2.0 * b + 2.0 * c) / (a * a);
  m(0, 1) = -(2.0 * c + 3.0 * b) / (a * b);
  m(0, 2) = b / (a * c);
  m(1, 0) = m(0, 1);
  m(1, 1) = (2.0 + 4.0 * b) / (b * b);
  m(1, 2) = -(2.0 * a + 3.0 * b) / (b * c);
  m(2, 0) = m(0, 2);
  m(2, 1) = m(1, 2);
  m(2, 2) = (2.0 * a + 2.0 * b) / (c * c);
  return GammaMatrix{pref * m};
}

GammaMatrix build_ren(const VolumeFractions& w, double gamma) {
  require_buildable(w, gamma);
  const double a = w.a, b = w.b, c = w.c;
  const double pref = 3.0 * gamma / (4.0 * (a * b + a * c + b * c));
  Mat3 m;
  m(0, 0) = (b + c) / (a * a);
  m(0, 1) = -c / (a * b);
  m(0, 2) = -b / (a * c);
  m(1, 0) = m(0, 1);
  m(1, 1) = (a + c) / (b * b);
  m(1, 2) = -a / (b * c);
  m(2, 0) = m(0, 2);
  m(2, 1) = m(1, 2);
  m(2, 2) = (a + b) / (c * c);
  return GammaMatrix{pref * m};
}

GammaMatrix build_blend(const VolumeFractions& w, double gamma) {
  require_buildable(w, gamma);
  const double a = w.a, b = w.b;
  const double pref = 0.75 * gamma / (a + b);
  Mat3 m;
  m(0, 0) = 1.0 / (a * a);
  m(0, 1) = -1.0 / (a * b);
  m(1, 0) = m(0, 1);
  m(1, 1) = 1.0 / (b * b);
  return GammaMatrix{pref * m};
}

GammaMatrix build_general(const ReducedMatrix& gt, double a, double b) {
  const Mat2& g = gt.m;
  if (std::abs(g(0, 1) - g(1, 0)) > 1e-12 * (1.0 + std::abs(g(0, 1))))
    throw validation_error("reduced matrix must be symmetric");
  const double tr = g(0, 0) + g(1, 1);
  const double det = g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0);
  const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
  const double lo = tr / 2.0 - disc, hi = tr / 2.0 + disc;
  const double scale = std::max({std::abs(g(0, 0)), std::abs(g(1, 1)), std::abs(g(0, 1)), 1e-300});
  if (lo < -1e-12 * scale) {
    std::ostringstream msg;
    msg << "reduced matrix is not positive semi-definite (eigenvalues " << lo << ", " << hi << ")";
    throw validation_error(msg.str());
  }
  // Expansion map sends the 2x2 seed to the unique 3x3 representative
  // annihilating (a, b, 1-a-b).
  const double rows[3][2] = {{1.0 - a, -b}, {-a, 1.0 - b}, {-a, -b}};
  Mat3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int p = 0; p < 2; ++p)
        for (int q = 0; q < 2; ++q) s += rows[i][p] * g(p, q) * rows[j][q];
      m(i, j) = s;
    }
  return GammaMatrix{m};
}

GammaMatrix family_matrix(MatrixFamily fam, const VolumeFractions& w, double gamma,
                          const std::optional<ReducedMatrix>& gt) {
  switch (fam) {
    case MatrixFamily::ren: return build_ren(w, gamma);
    case MatrixFamily::ohta: return build_ohta(w, gamma);
    case MatrixFamily::blend: return build_blend(w, gamma);
    case MatrixFamily::general: {
      if (!gt) throw validation_error("family 'general' requires gamma_tilde");
      ReducedMatrix scaled = *gt;
      for (double& x : scaled.m.e) x *= gamma;
      return build_general(scaled, w.a, w.b);
    }
  }
  throw validation_error("unknown matrix family");
}

InteractionMatrix f_from_gamma(const GammaMatrix& g, const VolumeFractions& w) {
  Mat3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = w[i] * g.m(i, j) * w[j];
  return InteractionMatrix{m};
}

GammaMatrix gamma_from_f(const InteractionMatrix& f, const VolumeFractions& w) {
  Mat3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = f.m(i, j) / (w[i] * w[j]);
  return GammaMatrix{m};
}

AdmissibilityReport is_admissible(const GammaMatrix& g, const VolumeFractions& w, double tol) {
  if (!(tol > 0.0)) throw validation_error("tolerance must be positive");
  AdmissibilityReport rep;
  rep.tol = tol;
  rep.scale = frobenius(g.m);
  rep.kernel_residual = norm(mul(g.m, w.vec()));
  rep.min_eigenvalue = min_sym_eigenvalue(g.m);
  rep.kernel_ok = rep.kernel_residual <= tol * rep.scale;
  rep.psd_ok = rep.min_eigenvalue >= -tol * rep.scale;
  rep.admissible = rep.kernel_ok && rep.psd_ok;
  return rep;
}

Decomposition decompose_f(const InteractionMatrix& f, double tol) {
  const Mat3& m = f.m;
  const double scale = std::max(frobenius(m), 1e-300);
  const Vec3 rowsum = mul(m, Vec3{1.0, 1.0, 1.0});
  if (norm(rowsum) > tol * scale) {
    std::ostringstream msg;
    msg << "interaction matrix row sums are not zero (residual " << norm(rowsum) << ")";
    throw validation_error(msg.str());
  }
  Decomposition d;
  d.f12 = m(0, 1);
  d.f13 = m(0, 2);
  d.f23 = m(1, 2);
  d.psd = triple_psd_inequality(d.f12, d.f13, d.f23);
  d.positive_count = (d.f12 > 0.0) + (d.f13 > 0.0) + (d.f23 > 0.0);
  return d;
}

InteractionMatrix interaction_from_triple(double f12, double f13, double f23) {
  Mat3 m;
  m(0, 0) = -f12 - f13;
  m(1, 1) = -f12 - f23;
  m(2, 2) = -f13 - f23;
  m(0, 1) = m(1, 0) = f12;
  m(0, 2) = m(2, 0) = f13;
  m(1, 2) = m(2, 1) = f23;
  return InteractionMatrix{m};
}

bool triple_psd_inequality(double f12, double f13, double f23) {
  return f12 + f13 + f23 <= -std::sqrt(f12 * f12 + f13 * f13 + f23 * f23);
}

Mat2 reduce_gamma(const Mat3& h) {
  // A stacks the identity over -(1,1): T(H) = A^T H A.
  Mat2 r;
  for (int p = 0; p < 2; ++p)
    for (int q = 0; q < 2; ++q)
      r(p, q) = h(p, q) - h(p, 2) - h(2, q) + h(2, 2);
  return r;
}

GammaMatrix canonicalize_gamma(const Mat3& h, const VolumeFractions& w) {
  const Mat3 sym = symmetrize(h);
  const Mat2 reduced = reduce_gamma(sym);
  ReducedMatrix gt{reduced};
  // Skip the PSD gate of build_general: canonicalization is defined for any
  // symmetric input; admissibility is a separate check.
  const double rows[3][2] = {{1.0 - w.a, -w.b}, {-w.a, 1.0 - w.b}, {-w.a, -w.b}};
  Mat3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int p = 0; p < 2; ++p)
        for (int q = 0; q < 2; ++q) s += rows[i][p] * gt.m(p, q) * rows[j][q];
      m(i, j) = s;
    }
  return GammaMatrix{m};
}

Vec3 cap_triple(double theta, double phi) {
  const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const double inv_sqrt6 = 1.0 / std::sqrt(6.0);
  const Vec3 center{-inv_sqrt3, -inv_sqrt3, -inv_sqrt3};
  const Vec3 e1{inv_sqrt2, -inv_sqrt2, 0.0};
  const Vec3 e2{inv_sqrt6, inv_sqrt6, -2.0 * inv_sqrt6};
  const double ct = std::cos(theta), st = std::sin(theta);
  Vec3 v;
  for (int i = 0; i < 3; ++i)
    v[static_cast<std::size_t>(i)] =
        ct * center[static_cast<std::size_t>(i)] +
        st * (std::cos(phi) * e1[static_cast<std::size_t>(i)] +
              std::sin(phi) * e2[static_cast<std::size_t>(i)]);
  return v;
}

std::vector<Vec3> cap_triple_grid(int n_theta, int n_phi) {
  if (n_theta < 1 || n_phi < 1) throw validation_error("cap grid sizes must be >= 1");
  const double theta_max = std::acos(1.0 / std::sqrt(3.0));
  std::vector<Vec3> out;
  out.reserve(static_cast<std::size_t>(n_theta * n_phi));
  for (int i = 0; i < n_theta; ++i) {
    const double theta = theta_max * (i + 0.5) / n_theta;
    for (int j = 0; j < n_phi; ++j) {
      const double phi = 2.0 * std::acos(-1.0) * (j + 0.5) / n_phi;
      out.push_back(cap_triple(theta, phi));
    }
  }
  return out;
}

}  // namespace oklam
