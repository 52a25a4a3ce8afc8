#pragma once

#include <vector>

#include "oklam/energy.hpp"

namespace oklam {

enum class SymmetryMode { free_widths, paper_symmetric };

struct OptimizerOptions {
  double optimality_tol = 1e-6;
  double constraint_tol = 1e-6;
  double step_tol = 1e-6;
  int max_iters = 1000;
  SymmetryMode symmetry_mode = SymmetryMode::free_widths;

  void validate() const;
};

struct OptimizationResult {
  WidthVector widths;
  EnergyBreakdown energy;
  bool converged = false;
  int iterations = 0;
  double kkt_residual = 0.0;
  // Layers whose width fell below constraint_tol; the pattern effectively
  // has fewer interfaces and callers re-score the merged pattern.
  std::vector<int> degenerate_layers;
};

// Minimize the free energy over layer widths on the feasible polytope
// {w >= 0, per-species sums fixed}. The short-range term is constant
// there, so this drives the long-range term. Deterministic: projected
// gradient from the per-species-uniform start, Barzilai-Borwein trial
// steps, and an exact line search on the quartic restriction.
OptimizationResult optimize_widths(const Pattern& p, const ModelParams& m,
                                   const OptimizerOptions& opts = {});

struct RepeatOptimum {
  int n = 0;
  OptimizationResult result;
  bool at_boundary = false;  // optimum sits at n_max; enlarge n_max
};

// Minimize over the repetition count n in 1..n_max; ties go to smaller n.
RepeatOptimum optimize_repeats(const Pattern& repetend, const ModelParams& m, int n_max,
                               const OptimizerOptions& opts = {});

}  // namespace oklam
