#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "oklam/optimizer.hpp"

namespace oklam {

struct SearchOptions {
  int max_len = 12;
  OptimizerOptions opt{};
  int threads = 0;          // 0 = machine parallelism
  double tie_tol = 1e-9;    // energies closer than this compare as ties
  bool keep_table = false;  // retain the per-pattern table for CSV dumps
};

// One evaluated pattern. Patterns that optimize onto the boundary (a layer
// width collapses) are re-scored as their merged shorter pattern, whose own
// optimization supplies the energy.
struct PatternScore {
  Pattern evaluated;
  Pattern scored_as;  // merged canonical form; equals evaluated when no merge
  EnergyBreakdown energy;
  WidthVector widths;  // of scored_as
  bool converged = false;
  bool merged = false;

  PatternScore() : evaluated(Pattern::parse("ABC")), scored_as(Pattern::parse("ABC")) {}
};

struct PatternRow {
  std::string pattern;
  int length = 0;
  double energy = 0.0;
  bool converged = false;
  bool merged = false;
};

struct SearchReport {
  int max_len = 0;
  PatternScore best;
  std::vector<PatternScore> per_length_best;  // index 0 <-> length 3
  bool frontier_stopped = false;
  std::int64_t evaluated_count = 0;
  std::int64_t failed_count = 0;  // optimizer non-convergence, recorded not fatal
  std::vector<PatternRow> table;  // filled when keep_table
};

SearchReport global_search(const ModelParams& m, const SearchOptions& opts);

// "pattern,length,energy,converged" rows, one per evaluated pattern.
std::string search_table_csv(const SearchReport& report);

}  // namespace oklam
