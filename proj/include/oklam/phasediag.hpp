#pragma once

#include <array>
#include <string>
#include <vector>

#include "oklam/analytic.hpp"

namespace oklam {

// The 19 repetends compared in the diagrams, in legend order (index 1..19).
const std::vector<std::string>& candidate_names();
const std::vector<Pattern>& candidate_patterns();

enum class SectionKind { omega, tension };

std::string section_name(SectionKind s);
SectionKind section_from_name(const std::string& name);

// Model point of a barycentric coordinate on one of the two cross
// sections. omega section: compositions vary, tensions 2/3 each (their sum
// normalized to 2). tension section: compositions equal, tensions the
// convex combination of (1,1,0), (1,0,1), (0,1,1). The strength-normalized
// coefficient matrix of the requested family is attached.
ModelParams params_from_barycentric(SectionKind section, const std::array<double, 3>& lambda,
                                    MatrixFamily family = MatrixFamily::ren);

struct PhaseCell {
  std::array<double, 3> lambda{};  // cell centroid
  int winner_index = 0;            // 1-based; 0 marks an optimizer failure
  double coefficient = 0.0;        // winner's C
  double runner_up_gap = 0.0;      // runner-up C minus winner C
};

struct PhaseGrid {
  SectionKind section = SectionKind::omega;
  MatrixFamily family = MatrixFamily::ren;
  int resolution = 0;
  std::vector<PhaseCell> cells;  // resolution^2 cells, deterministic order
};

struct PhaseDiagOptions {
  int resolution = 60;
  int threads = 0;
  OptimizerOptions opt{};
  double tie_tol = 1e-9;
};

inline constexpr int kMaxPhaseResolution = 200;

// Triangular subdivision at the given resolution: cells are listed row by
// row, upward triangle before the downward one sharing its row slot.
std::array<double, 3> cell_centroid(int resolution, int cell_index);
// Corner coordinates in barycentric form, for plotting.
std::array<std::array<double, 3>, 3> cell_corners(int resolution, int cell_index);

PhaseGrid sweep(SectionKind section, MatrixFamily family, const PhaseDiagOptions& opts);

// lambda1,lambda2,lambda3,winner_index,winner_pattern,coefficient rows,
// preceded by the echoed configuration comment and the column header.
std::string emit_csv(const PhaseGrid& grid, const std::string& config_echo);

// Equilateral-triangle SVG with one polygon per cell and the 19-entry
// legend, color keyed by winner index.
std::string emit_svg(const PhaseGrid& grid);

}  // namespace oklam
