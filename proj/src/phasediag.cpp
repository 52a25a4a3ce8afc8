#include "oklam/phasediag.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "oklam/parallel.hpp"

namespace oklam {

const std::vector<std::string>& candidate_names() {
  static const std::vector<std::string> names = {
      "ABC",    "ABAC",   "BABC",   "CACB",   "ABACBABC", "CACBACAB", "CBCABCBA",
      "BABAC",  "CACAB",  "CBCBA",  "BABABC", "ABABAC",   "ACACAB",   "CACACB",
      "CBCBCA", "BCBCBA", "BCBCBACBCBCA", "BABABCABABAC", "ACACABCACACB"};
  return names;
}

const std::vector<Pattern>& candidate_patterns() {
  static const std::vector<Pattern> patterns = [] {
    std::vector<Pattern> out;
    for (const std::string& name : candidate_names()) out.push_back(Pattern::parse(name));
    return out;
  }();
  return patterns;
}

std::string section_name(SectionKind s) {
  return s == SectionKind::omega ? "omega" : "tension";
}

SectionKind section_from_name(const std::string& name) {
  if (name == "omega") return SectionKind::omega;
  if (name == "tension") return SectionKind::tension;
  throw validation_error("unknown section '" + name + "'");
}

ModelParams params_from_barycentric(SectionKind section, const std::array<double, 3>& lambda,
                                    MatrixFamily family) {
  const double sum = lambda[0] + lambda[1] + lambda[2];
  if (lambda[0] < 0.0 || lambda[1] < 0.0 || lambda[2] < 0.0 || std::abs(sum - 1.0) > 1e-9)
    throw validation_error("barycentric coordinates must be nonnegative and sum to 1");
  ModelParams m;
  if (section == SectionKind::omega) {
    if (lambda[0] <= 0.0 || lambda[1] <= 0.0 || lambda[2] <= 0.0)
      throw validation_error("omega section requires strictly interior coordinates");
    m.omega = VolumeFractions::make(lambda[0], lambda[1], lambda[2]);
    m.c12 = m.c13 = m.c23 = 2.0 / 3.0;
  } else {
    m.omega = VolumeFractions::make(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0);
    // Vertices (1,1,0), (1,0,1), (0,1,1) of the normalized tension simplex.
    m.c12 = lambda[0] + lambda[1];
    m.c13 = lambda[0] + lambda[2];
    m.c23 = lambda[1] + lambda[2];
  }
  m.gamma = family_matrix(family, m.omega, 1.0);
  return m;
}

std::array<double, 3> cell_centroid(int resolution, int cell_index) {
  const auto corners = cell_corners(resolution, cell_index);
  std::array<double, 3> c{};
  for (const auto& corner : corners)
    for (int i = 0; i < 3; ++i) c[static_cast<std::size_t>(i)] += corner[static_cast<std::size_t>(i)] / 3.0;
  return c;
}

std::array<std::array<double, 3>, 3> cell_corners(int resolution, int cell_index) {
  const int r = resolution;
  if (cell_index < 0 || cell_index >= r * r) throw validation_error("cell index out of range");
  // Row i has 2(r-i)-1 cells alternating up/down, starting upward.
  int i = 0, remaining = cell_index;
  while (remaining >= 2 * (r - i) - 1) {
    remaining -= 2 * (r - i) - 1;
    ++i;
  }
  const int j = remaining / 2;
  const bool down = remaining % 2 == 1;
  auto point = [&](int a, int b) {
    return std::array<double, 3>{static_cast<double>(a) / r, static_cast<double>(b) / r,
                                 static_cast<double>(r - a - b) / r};
  };
  if (!down) return {point(i, j), point(i + 1, j), point(i, j + 1)};
  return {point(i + 1, j), point(i, j + 1), point(i + 1, j + 1)};
}

PhaseGrid sweep(SectionKind section, MatrixFamily family, const PhaseDiagOptions& opts) {
  if (opts.resolution < 1 || opts.resolution > kMaxPhaseResolution)
    throw validation_error("resolution must be in [1, " + std::to_string(kMaxPhaseResolution) +
                           "]");
  if (family != MatrixFamily::ren && family != MatrixFamily::ohta)
    throw validation_error("phase diagrams are defined for the ren and ohta families");
  const auto& candidates = candidate_patterns();
  PhaseGrid grid;
  grid.section = section;
  grid.family = family;
  grid.resolution = opts.resolution;
  grid.cells.resize(static_cast<std::size_t>(opts.resolution) * opts.resolution);

  // On the tension section the composition and matrix are fixed, so the
  // long-range coefficients of the candidates can be computed once.
  std::vector<double> fixed_K;
  if (section == SectionKind::tension) {
    const ModelParams centroid =
        params_from_barycentric(section, {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}, family);
    fixed_K.reserve(candidates.size());
    for (const Pattern& cand : candidates) {
      OptimizationResult r = optimize_widths(cand, centroid, opts.opt);
      fixed_K.push_back(r.converged ? r.energy.long_range : -1.0);
    }
  }

  parallel_for_index(grid.cells.size(), opts.threads, [&](std::size_t idx) {
    PhaseCell cell;
    cell.lambda = cell_centroid(opts.resolution, static_cast<int>(idx));
    const ModelParams m = params_from_barycentric(section, cell.lambda, family);
    int winner = 0;
    double best = std::numeric_limits<double>::infinity();
    double second = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      double S = short_range_energy(candidates[c], m);
      double K;
      bool ok;
      if (!fixed_K.empty()) {
        K = fixed_K[c];
        ok = K >= 0.0;
      } else {
        OptimizationResult r = optimize_widths(candidates[c], m, opts.opt);
        K = r.energy.long_range;
        ok = r.converged;
      }
      if (!ok) continue;
      const double C = coefficient_from_sk(S, K);
      if (winner == 0 || C < best - opts.tie_tol) {
        second = std::min(second, best);
        best = C;
        winner = static_cast<int>(c) + 1;
      } else {
        second = std::min(second, C);
      }
    }
    cell.winner_index = winner;
    cell.coefficient = winner == 0 ? 0.0 : best;
    cell.runner_up_gap = (winner != 0 && std::isfinite(second)) ? second - best : 0.0;
    grid.cells[idx] = cell;
  });
  return grid;
}

namespace {

std::string format_sig(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
  return buf;
}

}  // namespace

std::string emit_csv(const PhaseGrid& grid, const std::string& config_echo) {
  if (grid.cells.empty()) throw validation_error("empty grid");
  std::ostringstream out;
  if (!config_echo.empty()) out << "# " << config_echo << '\n';
  out << "lambda1,lambda2,lambda3,winner_index,winner_pattern,coefficient\n";
  for (const PhaseCell& cell : grid.cells) {
    const std::string name =
        cell.winner_index == 0 ? "none" : candidate_names()[static_cast<std::size_t>(cell.winner_index - 1)];
    out << format_sig(cell.lambda[0], 12) << ',' << format_sig(cell.lambda[1], 12) << ','
        << format_sig(cell.lambda[2], 12) << ',' << cell.winner_index << ',' << name << ','
        << format_sig(cell.coefficient, 12) << '\n';
  }
  return out.str();
}

namespace {

// Wong-inspired palette extended to 19 distinguishable fills.
const char* kPalette[19] = {"#f0e442", "#0072b2", "#e69f00", "#000000", "#009e73", "#cc79a7",
                            "#56b4e9", "#7bc8f6", "#d4c430", "#00c494", "#3a86ff", "#d55e00",
                            "#8ac6ff", "#69d1b5", "#ff9e4a", "#ffe66b", "#4d4d4d", "#b8a800",
                            "#ff7043"};

}  // namespace

std::string emit_svg(const PhaseGrid& grid) {
  if (grid.cells.empty()) throw validation_error("empty grid");
  const double side = 600.0;
  const double height = side * std::sqrt(3.0) / 2.0;
  const double margin = 20.0;
  const double legend_w = 180.0;
  const double width_total = side + 2 * margin + legend_w;
  const double height_total = height + 2 * margin;
  // Vertex layout: lambda1 top-left, lambda2 top-right, lambda3 bottom for
  // the omega section; the tension section uses the conventional upright
  // triangle with lambda2 on top.
  std::array<std::array<double, 2>, 3> v{};
  if (grid.section == SectionKind::omega) {
    v = {{{margin, margin}, {margin + side, margin}, {margin + side / 2.0, margin + height}}};
  } else {
    v = {{{margin, margin + height}, {margin + side / 2.0, margin}, {margin + side, margin + height}}};
  }
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"0 0 "
      << format_sig(width_total, 6) << ' ' << format_sig(height_total, 6) << "\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << format_sig(width_total, 6) << "\" height=\""
      << format_sig(height_total, 6) << "\" fill=\"white\"/>\n";
  auto map_point = [&](const std::array<double, 3>& bary) {
    double x = 0.0, y = 0.0;
    for (int i = 0; i < 3; ++i) {
      x += bary[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(i)][0];
      y += bary[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(i)][1];
    }
    return std::array<double, 2>{x, y};
  };
  for (std::size_t idx = 0; idx < grid.cells.size(); ++idx) {
    const PhaseCell& cell = grid.cells[idx];
    const auto corners = cell_corners(grid.resolution, static_cast<int>(idx));
    const char* fill = cell.winner_index == 0
                           ? "#ffffff"
                           : kPalette[static_cast<std::size_t>((cell.winner_index - 1) % 19)];
    out << "<polygon points=\"";
    for (int c = 0; c < 3; ++c) {
      const auto pt = map_point(corners[static_cast<std::size_t>(c)]);
      out << format_sig(pt[0], 8) << ',' << format_sig(pt[1], 8) << (c < 2 ? " " : "");
    }
    out << "\" fill=\"" << fill << "\" stroke=\"none\"/>\n";
  }
  out << "<polygon points=\"" << format_sig(v[0][0], 8) << ',' << format_sig(v[0][1], 8) << ' '
      << format_sig(v[1][0], 8) << ',' << format_sig(v[1][1], 8) << ' ' << format_sig(v[2][0], 8)
      << ',' << format_sig(v[2][1], 8) << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
  const auto& names = candidate_names();
  for (std::size_t c = 0; c < names.size(); ++c) {
    const double lx = side + 2 * margin;
    const double ly = margin + 14.0 * (static_cast<double>(c) + 1.0);
    out << "<rect x=\"" << format_sig(lx, 6) << "\" y=\"" << format_sig(ly - 9.0, 6)
        << "\" width=\"10\" height=\"10\" fill=\"" << kPalette[c] << "\"/>\n";
    out << "<text x=\"" << format_sig(lx + 14.0, 6) << "\" y=\"" << format_sig(ly, 6)
        << "\" font-size=\"11\" font-family=\"sans-serif\">" << (c + 1) << ' ' << names[c]
        << "</text>\n";
  }
  out << "<text x=\"" << format_sig(margin, 6) << "\" y=\"" << format_sig(height_total - 4.0, 6)
      << "\" font-size=\"11\" font-family=\"sans-serif\">" << section_name(grid.section)
      << " section, " << family_name(grid.family) << " family, resolution " << grid.resolution
      << "</text>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace oklam
