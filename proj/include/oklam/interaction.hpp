#pragma once

#include <optional>
#include <string>
#include <vector>

#include "oklam/errors.hpp"
#include "oklam/linalg.hpp"

namespace oklam {

// Volume fractions of the three species; positive and summing to one.
struct VolumeFractions {
  double a = 1.0 / 3.0;
  double b = 1.0 / 3.0;
  double c = 1.0 / 3.0;

  static VolumeFractions make(double a, double b, double c);

  double operator[](int i) const { return i == 0 ? a : (i == 1 ? b : c); }
  Vec3 vec() const { return {a, b, c}; }

  bool operator==(const VolumeFractions&) const = default;
};

// Long-range coefficient matrix acting on the composition fields.
struct GammaMatrix {
  Mat3 m;
  bool operator==(const GammaMatrix&) const = default;
};

// Charge-interaction counterpart, f = diag(w) gamma diag(w).
struct InteractionMatrix {
  Mat3 m;
  bool operator==(const InteractionMatrix&) const = default;
};

// 2x2 matrix of the reduced (incompressibility-eliminated) formulation.
struct ReducedMatrix {
  Mat2 m;
  bool operator==(const ReducedMatrix&) const = default;
};

enum class MatrixFamily { ren, ohta, blend, general };

std::string family_name(MatrixFamily f);
MatrixFamily family_from_name(const std::string& name);

// The three named matrix families. gamma > 0 is folded into the entries.
GammaMatrix build_ohta(const VolumeFractions& w, double gamma);
GammaMatrix build_ren(const VolumeFractions& w, double gamma);
GammaMatrix build_blend(const VolumeFractions& w, double gamma);

// General admissible matrix from a PSD 2x2 seed; rejects indefinite seeds
// with the offending eigenvalues in the message. The result annihilates
// (a, b, 1-a-b) by construction.
GammaMatrix build_general(const ReducedMatrix& gt, double a, double b);

GammaMatrix family_matrix(MatrixFamily fam, const VolumeFractions& w, double gamma,
                          const std::optional<ReducedMatrix>& gt = std::nullopt);

InteractionMatrix f_from_gamma(const GammaMatrix& g, const VolumeFractions& w);
GammaMatrix gamma_from_f(const InteractionMatrix& f, const VolumeFractions& w);

struct AdmissibilityReport {
  bool admissible = false;
  bool kernel_ok = false;  // ||gamma * w|| <= tol * scale
  bool psd_ok = false;     // min eigenvalue of the symmetrized matrix >= -tol * scale
  double kernel_residual = 0.0;
  double min_eigenvalue = 0.0;
  double scale = 0.0;  // Frobenius norm
  double tol = 0.0;
};

inline constexpr double kDefaultAdmissibilityTol = 1e-9;

AdmissibilityReport is_admissible(const GammaMatrix& g, const VolumeFractions& w,
                                  double tol = kDefaultAdmissibilityTol);

// Pairwise coefficients of an interaction matrix with zero row sums,
// read off the off-diagonal entries.
struct Decomposition {
  double f12 = 0.0;
  double f13 = 0.0;
  double f23 = 0.0;
  bool psd = false;        // f12+f13+f23 <= -sqrt(f12^2+f13^2+f23^2)
  int positive_count = 0;  // admissible matrices allow at most one
};

Decomposition decompose_f(const InteractionMatrix& f, double tol = kDefaultAdmissibilityTol);

// Rebuild the interaction matrix from its pairwise coefficients.
InteractionMatrix interaction_from_triple(double f12, double f13, double f23);

bool triple_psd_inequality(double f12, double f13, double f23);

// Unique representative with h * w = 0 in the class of matrices yielding
// the same long-range term under incompressibility. Symmetrizes first.
GammaMatrix canonicalize_gamma(const Mat3& h, const VolumeFractions& w);

// Reduction T(H) = A^T H A onto the 2x2 formulation.
Mat2 reduce_gamma(const Mat3& h);

// Unit-scale admissible pairwise triple at polar angle theta from the cap
// center -(1,1,1)/sqrt(3) and azimuth phi. theta must stay within
// acos(1/sqrt(3)) for the matrix to remain PSD.
Vec3 cap_triple(double theta, double phi);

// Deterministic n_theta x n_phi grid strictly inside the cap.
std::vector<Vec3> cap_triple_grid(int n_theta, int n_phi);

}  // namespace oklam
