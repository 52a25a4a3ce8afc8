#include "oklam/search.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "oklam/parallel.hpp"

namespace oklam {

namespace {

// Drop collapsed layers and fuse the resulting same-species neighbours
// (cyclically). Widths below the threshold carry negligible volume; the
// merged pattern is re-optimized from scratch by the caller, so the lost
// volume is restored there.
Pattern merge_degenerate(const Pattern& p, const WidthVector& wv, double threshold) {
  std::vector<Species> kept;
  std::array<double, 3> dropped_volume{};
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (wv.w[k] < threshold)
      dropped_volume[static_cast<std::size_t>(p[k])] += wv.w[k];
    else
      kept.push_back(p[k]);
  }
  // Never erase a species entirely; its volume fraction is positive.
  for (int s = 0; s < kSpeciesCount; ++s) {
    if (std::count(kept.begin(), kept.end(), static_cast<Species>(s)) == 0)
      return p;  // pathological threshold; keep the original
  }
  // Fuse cyclically adjacent duplicates.
  std::vector<Species> fused;
  for (Species t : kept) {
    if (!fused.empty() && fused.back() == t) continue;
    fused.push_back(t);
  }
  while (fused.size() > 1 && fused.front() == fused.back()) fused.pop_back();
  if (fused.size() < 3) return p;
  if (!validation_failure(fused).empty()) return p;
  return canonicalize(Pattern::from_layers(std::move(fused)));
}

// Deterministic ordering: lower energy wins; ties fall back to shorter
// scored pattern, then its word.
bool better(const PatternScore& a, const PatternScore& b, double tie_tol) {
  if (a.energy.total < b.energy.total - tie_tol) return true;
  if (a.energy.total > b.energy.total + tie_tol) return false;
  const auto ka = std::make_pair(a.scored_as.size(), a.scored_as.str());
  const auto kb = std::make_pair(b.scored_as.size(), b.scored_as.str());
  return ka < kb;
}

}  // namespace

SearchReport global_search(const ModelParams& m, const SearchOptions& opts) {
  if (opts.max_len < 3 || opts.max_len > kMaxEnumerationLength)
    throw validation_error("search length cap must be in [3, " +
                           std::to_string(kMaxEnumerationLength) + "]");
  m.validate(false);

  const std::vector<Pattern> patterns = enumerate_patterns(opts.max_len);
  SearchReport report;
  report.max_len = opts.max_len;
  report.evaluated_count = static_cast<std::int64_t>(patterns.size());

  // Scores of already-finished canonical patterns, keyed by word. Lengths
  // are processed in ascending phases so a merged (strictly shorter)
  // pattern is always resolved.
  std::map<std::string, const PatternScore*> finished;
  std::vector<PatternScore> scores(patterns.size());
  std::vector<std::size_t> phase;

  std::size_t begin = 0;
  while (begin < patterns.size()) {
    std::size_t end = begin;
    const std::size_t len = patterns[begin].size();
    while (end < patterns.size() && patterns[end].size() == len) ++end;
    phase.clear();
    for (std::size_t i = begin; i < end; ++i) phase.push_back(i);

    parallel_for_index(phase.size(), opts.threads, [&](std::size_t t) {
      const std::size_t i = phase[t];
      const Pattern& p = patterns[i];
      OptimizationResult r = optimize_widths(p, m, opts.opt);
      PatternScore sc;
      sc.evaluated = p;
      sc.scored_as = p;
      sc.energy = r.energy;
      sc.widths = std::move(r.widths);
      sc.converged = r.converged;
      if (!r.degenerate_layers.empty()) {
        Pattern merged = merge_degenerate(p, sc.widths, opts.opt.constraint_tol);
        if (!(merged == p)) {
          auto it = finished.find(merged.str());
          if (it != finished.end()) {
            const PatternScore& ms = *it->second;
            sc.scored_as = ms.scored_as;
            sc.energy = ms.energy;
            sc.widths = ms.widths;
            sc.converged = ms.converged;
            sc.merged = true;
          }
        }
      }
      scores[i] = std::move(sc);
    });

    for (std::size_t i = begin; i < end; ++i)
      finished.emplace(patterns[i].str(), &scores[i]);
    begin = end;
  }

  // Sequential reduction in enumeration order; independent of the thread
  // partition above.
  report.per_length_best.clear();
  std::map<std::size_t, PatternScore> by_length;
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    const PatternScore& sc = scores[i];
    if (!sc.converged) ++report.failed_count;
    const std::size_t len = sc.evaluated.size();
    auto it = by_length.find(len);
    if (it == by_length.end())
      by_length.emplace(len, sc);
    else if (better(sc, it->second, opts.tie_tol))
      it->second = sc;
  }
  bool have_best = false;
  for (auto& [len, sc] : by_length) {
    if (!have_best || better(sc, report.best, opts.tie_tol)) {
      report.best = sc;
      have_best = true;
    }
    report.per_length_best.push_back(sc);
  }
  report.frontier_stopped = report.best.scored_as.size() == static_cast<std::size_t>(opts.max_len);

  if (opts.keep_table) {
    report.table.reserve(patterns.size());
    for (std::size_t i = 0; i < patterns.size(); ++i) {
      const PatternScore& sc = scores[i];
      report.table.push_back(PatternRow{sc.evaluated.str(), static_cast<int>(sc.evaluated.size()),
                                        sc.energy.total, sc.converged, sc.merged});
    }
  }
  return report;
}

std::string search_table_csv(const SearchReport& report) {
  std::ostringstream out;
  out << "pattern,length,energy,converged\n";
  out.precision(17);
  for (const PatternRow& row : report.table) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", row.energy);
    out << row.pattern << ',' << row.length << ',' << buf << ','
        << (row.converged ? "true" : "false") << '\n';
  }
  return out.str();
}

}  // namespace oklam
