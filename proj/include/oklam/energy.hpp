#pragma once

#include <span>
#include <vector>

#include "oklam/interaction.hpp"
#include "oklam/pattern.hpp"

namespace oklam {

// Periodic Green's function of -d^2/dx^2 on the unit cell, zero mean.
double green(double x, double y);

// Double integral of the Green's function over [x1,x2] x [y1,y2].
double segment_pair_integral(double x1, double x2, double y1, double y2);

// Model inputs for the sharp-interface energy.
struct ModelParams {
  VolumeFractions omega;
  double c12 = 1.0;
  double c13 = 1.0;
  double c23 = 1.0;
  GammaMatrix gamma;

  double tension(Species i, Species j) const;
  // Triangle inequalities and nonnegativity; with strict also admissibility
  // of the coefficient matrix.
  void validate(bool strict = false, double tol = kDefaultAdmissibilityTol) const;
};

// Layer widths aligned with a pattern; nonnegative, summing to one, and
// with per-species sums equal to the volume fractions.
struct WidthVector {
  std::vector<double> w;

  bool operator==(const WidthVector&) const = default;
};

inline constexpr double kWidthTol = 1e-10;

// Throws validation_error naming the violated invariant.
void check_widths(const Pattern& p, const WidthVector& wv, const VolumeFractions& omega);

WidthVector uniform_widths(const Pattern& p, const VolumeFractions& omega);

struct EnergyBreakdown {
  double short_range = 0.0;
  double long_range = 0.0;
  double total = 0.0;
};

// A species-labelled interval on the cell. Adjacent segments of equal
// species are allowed here (unlike Pattern layers); the charged-ball
// oracle needs that generality.
struct Segment {
  Species type;
  double width;
};

double short_range_energy(const Pattern& p, const ModelParams& m);

// Closed-form long-range term of a segment configuration: the grouped
// segment-pair sums with compensated accumulation.
double long_range_of_segments(std::span<const Segment> segs, const Mat3& gamma);

EnergyBreakdown free_energy(const Pattern& p, const WidthVector& wv, const ModelParams& m);

// d(long_range)/d(width_k), with the first interface anchored at 0 and the
// later interface positions treated as cumulative width sums.
std::vector<double> long_range_gradient(const Pattern& p, const WidthVector& wv,
                                        const ModelParams& m);

// Independent evaluation through the piecewise-linear field whose slope on
// a layer of species i is 1{layer=i} - omega_i (zero mean), integrating
// the quadratic form of the field against the coefficient matrix.
double long_range_via_field(const Pattern& p, const WidthVector& wv, const ModelParams& m);
double long_range_via_field_segments(std::span<const Segment> segs, const Mat3& gamma,
                                     const VolumeFractions& omega);

namespace detail {

// Width-independent edge-pair weights; entry (r, r') multiplies
// F(y_r - y_r') in the long-range sum. Size (L+1)^2, row-major.
std::vector<double> edge_weights(std::span<const Species> types, const Mat3& gamma);

double long_range_raw(std::span<const double> widths, std::span<const double> weights);

// Gradient with respect to widths (free coordinates, interface 0 pinned).
void long_range_gradient_raw(std::span<const double> widths, std::span<const double> weights,
                             std::span<double> grad);

// Coefficients of the quartic s -> long_range(widths + s * direction),
// valid while widths + s * direction stays nonnegative.
std::array<double, 5> long_range_poly(std::span<const double> widths,
                                      std::span<const double> direction,
                                      std::span<const double> weights);

}  // namespace detail

}  // namespace oklam
