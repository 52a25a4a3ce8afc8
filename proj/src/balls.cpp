#include "oklam/balls.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "oklam/parallel.hpp"

namespace oklam {

namespace {

inline double green_unchecked(double x, double y) {
  const double d = std::abs(x - y);
  return d * d / 2.0 - d / 2.0 + 1.0 / 12.0;
}

}  // namespace

std::vector<double> ball_centers(const BallSystem& sys) {
  const std::size_t n = sys.types.size();
  if (n == 0 || sys.diameters.size() != n)
    throw validation_error("ball system needs aligned types and diameters");
  double total = 0.0;
  for (double d : sys.diameters) {
    if (!(d > 0.0)) throw validation_error("ball diameters must be positive");
    total += d;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw validation_error("ball diameters must fill the cell");
  std::vector<double> x(n);
  double pos = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    pos += sys.diameters[k] / 2.0 + sys.diameters[(k + n - 1) % n] / 2.0;
    x[k] = pos;
  }
  return x;
}

double ball_energy(const BallSystem& sys, const Mat3& f) {
  const auto x = ball_centers(sys);
  const std::size_t n = x.size();
  KahanSum acc;
  for (std::size_t k = 0; k < n; ++k) {
    const int tk = static_cast<int>(sys.types[k]);
    acc.add(f(tk, tk) * (1.0 / 12.0));  // self pair
    for (std::size_t m = k + 1; m < n; ++m)
      acc.add(2.0 * f(tk, static_cast<int>(sys.types[m])) * green_unchecked(x[k], x[m]));
  }
  return acc.value() / 2.0;
}

Arrangement Arrangement::make(std::vector<Species> types) {
  if (types.empty() || types.size() % 3 != 0)
    throw validation_error("arrangement length must be a positive multiple of 3");
  std::array<int, 3> counts{};
  for (Species t : types) ++counts[static_cast<std::size_t>(t)];
  if (counts[0] != counts[1] || counts[1] != counts[2])
    throw validation_error("arrangement needs the same number of balls of each species");
  Arrangement a;
  a.n = counts[0];
  a.types = std::move(types);
  return a;
}

Arrangement Arrangement::parse(std::string_view text) {
  std::vector<Species> types;
  types.reserve(text.size());
  for (char c : text) types.push_back(species_from_char(c));
  return make(std::move(types));
}

std::string Arrangement::str() const {
  std::string s;
  s.reserve(types.size());
  for (Species t : types) s.push_back(species_char(t));
  return s;
}

BallSystem system_for(const Arrangement& arr, const VolumeFractions& omega) {
  BallSystem sys;
  sys.types = arr.types;
  sys.diameters.resize(arr.types.size());
  for (std::size_t k = 0; k < arr.types.size(); ++k)
    sys.diameters[k] = omega[static_cast<int>(arr.types[k])] / arr.n;
  return sys;
}

double ternary_energy(const Arrangement& arr, const VolumeFractions& omega,
                      const InteractionMatrix& f) {
  return ball_energy(system_for(arr, omega), f.m);
}

double binary_energy(std::span<const int> spins) {
  const std::size_t n2 = spins.size();
  if (n2 == 0 || n2 % 2 != 0) throw validation_error("binary arrangement length must be even");
  int sum = 0;
  for (int s : spins) {
    if (s != 1 && s != -1) throw validation_error("spins must be +-1");
    sum += s;
  }
  if (sum != 0) throw validation_error("binary arrangement needs equal counts");
  KahanSum acc;
  for (std::size_t k = 0; k < n2; ++k)
    for (std::size_t m = 0; m < n2; ++m)
      acc.add(spins[k] * spins[m] *
              green_unchecked(static_cast<double>(k + 1) / static_cast<double>(n2),
                              static_cast<double>(m + 1) / static_cast<double>(n2)));
  return acc.value() / 2.0;
}

namespace {

// Multiset permutations with per-species remaining counts, deduplicated to
// canonical classes. Words come out in lexicographic order.
template <typename Fn>
void enumerate_classes(std::array<int, 3> counts, Fn&& fn) {
  std::vector<std::uint8_t> word;
  const int total = counts[0] + counts[1] + counts[2];
  auto walk = [&](auto&& self) -> void {
    if (static_cast<int>(word.size()) == total) {
      if (word == necklace_canonical(word)) fn(word);
      return;
    }
    for (int s = 0; s < 3; ++s) {
      if (counts[static_cast<std::size_t>(s)] == 0) continue;
      --counts[static_cast<std::size_t>(s)];
      word.push_back(static_cast<std::uint8_t>(s));
      self(self);
      word.pop_back();
      ++counts[static_cast<std::size_t>(s)];
    }
  };
  walk(walk);
}

}  // namespace

std::vector<Arrangement> enumerate_arrangements(int n) {
  if (n < 1 || n > kMaxTernaryBalls)
    throw validation_error("ternary brute force supports n in [1, " +
                           std::to_string(kMaxTernaryBalls) + "]");
  std::vector<Arrangement> out;
  enumerate_classes({n, n, n}, [&](const std::vector<std::uint8_t>& word) {
    std::vector<Species> types(word.size());
    for (std::size_t i = 0; i < word.size(); ++i) types[i] = static_cast<Species>(word[i]);
    out.push_back(Arrangement::make(std::move(types)));
  });
  return out;
}

BruteForceResult binary_brute_force(int n) {
  if (n < 1 || n > kMaxBinaryBalls)
    throw validation_error("binary brute force supports n in [1, " +
                           std::to_string(kMaxBinaryBalls) + "]");
  BruteForceResult res;
  std::vector<std::string> words;
  std::vector<double> energies;
  enumerate_classes({n, n, 0}, [&](const std::vector<std::uint8_t>& word) {
    std::vector<int> spins(word.size());
    std::string text(word.size(), 'A');
    for (std::size_t i = 0; i < word.size(); ++i) {
      spins[i] = word[i] == 0 ? 1 : -1;
      text[i] = word[i] == 0 ? 'A' : 'B';
    }
    words.push_back(std::move(text));
    energies.push_back(binary_energy(spins));
  });
  res.class_count = static_cast<std::int64_t>(words.size());
  res.min_energy = *std::min_element(energies.begin(), energies.end());
  res.max_energy = *std::max_element(energies.begin(), energies.end());
  const double tol = 1e-12 * std::max(res.max_energy - res.min_energy, 1.0);
  for (std::size_t i = 0; i < words.size(); ++i)
    if (energies[i] <= res.min_energy + tol) res.minimizers.push_back(words[i]);
  return res;
}

BruteForceResult ternary_brute_force(int n, const VolumeFractions& omega,
                                     const InteractionMatrix& f, double rel_tol) {
  const auto classes = enumerate_arrangements(n);
  BruteForceResult res;
  res.class_count = static_cast<std::int64_t>(classes.size());
  std::vector<double> energies(classes.size());
  for (std::size_t i = 0; i < classes.size(); ++i)
    energies[i] = ternary_energy(classes[i], omega, f);
  res.min_energy = *std::min_element(energies.begin(), energies.end());
  res.max_energy = *std::max_element(energies.begin(), energies.end());
  const double tol = rel_tol * std::max(res.max_energy - res.min_energy, 1e-6);
  for (std::size_t i = 0; i < classes.size(); ++i)
    if (energies[i] <= res.min_energy + tol) res.minimizers.push_back(classes[i].str());
  return res;
}

double ok_discrete_equivalence(const Arrangement& a, const Arrangement& b,
                               const VolumeFractions& omega, const ModelParams& m) {
  if (a.n != b.n) throw validation_error("arrangements must have the same ball count");
  auto segments = [&](const Arrangement& arr) {
    std::vector<Segment> segs(arr.types.size());
    for (std::size_t k = 0; k < arr.types.size(); ++k)
      segs[k] = Segment{arr.types[k], omega[static_cast<int>(arr.types[k])] / arr.n};
    return segs;
  };
  const auto sa = segments(a);
  const auto sb = segments(b);
  const double dl = long_range_of_segments(sa, m.gamma.m) - long_range_of_segments(sb, m.gamma.m);
  const InteractionMatrix f = f_from_gamma(m.gamma, omega);
  const double du = ternary_energy(a, omega, f) - ternary_energy(b, omega, f);
  const double n2 = static_cast<double>(a.n) * a.n;
  return std::abs(dl - 2.0 / n2 * du);
}

double lemma61_difference(int m_pairs, const VolumeFractions& omega, const InteractionMatrix& f) {
  if (m_pairs < 1) throw validation_error("pair count must be >= 1");
  if (std::abs(omega.a - omega.b) > 1e-12)
    throw validation_error("the first two volume fractions must be equal");
  const int m = m_pairs;
  auto block = [&](bool flipped) {
    std::vector<Species> g;
    for (int k = 0; k < m; ++k) {
      g.push_back(flipped ? Species::B : Species::A);
      g.push_back(flipped ? Species::A : Species::B);
    }
    for (int k = 0; k < m; ++k) {
      g.push_back(flipped ? Species::A : Species::B);
      g.push_back(flipped ? Species::B : Species::A);
    }
    return g;
  };
  const double d_ab = (omega.a + omega.b) / (8.0 * m);
  const double d_c = omega.c / 2.0;
  auto build = [&](bool flip_second) {
    BallSystem sys;
    auto push = [&](const std::vector<Species>& blk) {
      for (Species t : blk) {
        sys.types.push_back(t);
        sys.diameters.push_back(d_ab);
      }
      sys.types.push_back(Species::C);
      sys.diameters.push_back(d_c);
    };
    push(block(false));
    push(block(flip_second));
    return sys;
  };
  return ball_energy(build(true), f.m) - ball_energy(build(false), f.m);
}

std::vector<VolumeFractions> omega_lattice(int denom) {
  if (denom < 3) throw validation_error("lattice denominator must be >= 3");
  std::vector<VolumeFractions> out;
  for (int i = 1; i <= denom - 2; ++i)
    for (int j = 1; i + j <= denom - 1; ++j) {
      const int k = denom - i - j;
      out.push_back(VolumeFractions::make(static_cast<double>(i) / denom,
                                          static_cast<double>(j) / denom,
                                          static_cast<double>(k) / denom));
    }
  return out;
}

SweepReport conjecture_sweep(std::span<const int> ns, int n_theta, int n_phi, int omega_denom,
                             int threads, double rel_tol) {
  const auto triples = cap_triple_grid(n_theta, n_phi);
  const auto omegas = omega_lattice(omega_denom);
  struct Task {
    int n;
    std::size_t ti, oi;
  };
  std::vector<Task> tasks;
  for (int n : ns)
    for (std::size_t ti = 0; ti < triples.size(); ++ti)
      for (std::size_t oi = 0; oi < omegas.size(); ++oi) tasks.push_back({n, ti, oi});

  // Arrangement classes per n, shared read-only across the sweep.
  std::vector<std::vector<Arrangement>> classes_by_n(kMaxTernaryBalls + 1);
  for (int n : ns) {
    if (classes_by_n[static_cast<std::size_t>(n)].empty())
      classes_by_n[static_cast<std::size_t>(n)] = enumerate_arrangements(n);
  }

  SweepReport report;
  report.cells.resize(tasks.size());
  parallel_for_index(tasks.size(), threads, [&](std::size_t idx) {
    const Task& t = tasks[idx];
    SweepCell cell;
    cell.n = t.n;
    cell.triple = triples[t.ti];
    cell.omega = omegas[t.oi];
    const InteractionMatrix f =
        interaction_from_triple(cell.triple[0], cell.triple[1], cell.triple[2]);
    const auto& classes = classes_by_n[static_cast<std::size_t>(t.n)];
    double min_e = std::numeric_limits<double>::infinity();
    double max_e = -std::numeric_limits<double>::infinity();
    for (const Arrangement& arr : classes) {
      const double e = ternary_energy(arr, cell.omega, f);
      min_e = std::min(min_e, e);
      max_e = std::max(max_e, e);
    }
    std::vector<Species> cyc;
    for (int k = 0; k < t.n; ++k) {
      cyc.push_back(Species::A);
      cyc.push_back(Species::B);
      cyc.push_back(Species::C);
    }
    cell.cyclic_energy = ternary_energy(Arrangement::make(std::move(cyc)), cell.omega, f);
    cell.min_energy = min_e;
    cell.cyclic_minimal = cell.cyclic_energy <= min_e + rel_tol * std::max(max_e - min_e, 1e-6);
    report.cells[idx] = std::move(cell);
  });
  for (const SweepCell& cell : report.cells)
    if (!cell.cyclic_minimal) ++report.counterexamples;
  return report;
}

}  // namespace oklam
