#pragma once

#include <vector>

#include "oklam/optimizer.hpp"

namespace oklam {

// Inputs for the closed-form energies: the symmetric-family coefficient
// matrix is implied and the long-range strength enters as a scalar.
struct AnalyticParams {
  VolumeFractions omega;
  double c12 = 1.0;
  double c13 = 1.0;
  double c23 = 1.0;
  double gamma = 1.0;
};

// Energy of the n-fold ABC repetition with uniform layer widths.
double j_abc(int n, const AnalyticParams& p);

// Energy of the n-fold ABAC repetition, both A layers equally wide.
// Independent of c23: the pattern has no B-C interface.
double j_abac(int n, const AnalyticParams& p);

// Large-strength behaviour of one repetend: min over repetition counts of
// the energy scales as C * gamma^(1/3), with
//   S = short-range cost of one repeat,
//   K = strength-normalized long-range coefficient at one repeat,
//   C = (3/2) * 2^(1/3) * (S^2 K)^(1/3).
struct AsymptoticCoefficient {
  Pattern repetend;
  double S = 0.0;
  double K = 0.0;
  double C = 0.0;
  bool converged = true;
};

// K comes from width optimization of the repetend filling the cell with a
// strength-normalized matrix; the long-range term of n repeats is then
// exactly K * gamma / n^2 by the field rescaling.
AsymptoticCoefficient asymptotic_coefficient(const Pattern& repetend, const ModelParams& unit_gamma,
                                             const OptimizerOptions& opts = {});

double coefficient_from_sk(double S, double K);

// Integer repetition count minimizing S*n + gamma*K/n^2.
int optimal_repeat_count(double S, double K, double gamma);

// Ascending by C; ties below tie_tol fall back to (length, word) order.
std::vector<AsymptoticCoefficient> compare_candidates(const std::vector<Pattern>& repetends,
                                                      const ModelParams& unit_gamma,
                                                      const OptimizerOptions& opts = {},
                                                      double tie_tol = 1e-9);

}  // namespace oklam
