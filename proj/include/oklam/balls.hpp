#pragma once

#include <span>
#include <string>
#include <vector>

#include "oklam/energy.hpp"

namespace oklam {

// Charged balls packed on the periodic cell; ball k has a point charge of
// its species at its center and the diameters sum to one.
struct BallSystem {
  std::vector<Species> types;
  std::vector<double> diameters;
};

// Centers from the tight-packing spacing rule; the last center lands on 1.
std::vector<double> ball_centers(const BallSystem& sys);

// Total pairwise potential energy (self pairs included; they only shift
// the energy by an arrangement-independent constant).
double ball_energy(const BallSystem& sys, const Mat3& f);

// Balanced ternary arrangement: n balls of each species, ball of species i
// having diameter omega_i / n.
struct Arrangement {
  std::vector<Species> types;
  int n = 0;

  static Arrangement make(std::vector<Species> types);
  static Arrangement parse(std::string_view text);
  std::string str() const;
};

BallSystem system_for(const Arrangement& arr, const VolumeFractions& omega);

double ternary_energy(const Arrangement& arr, const VolumeFractions& omega,
                      const InteractionMatrix& f);

// Binary model: n positive and n negative unit charges at centers k/(2n).
double binary_energy(std::span<const int> spins);

inline constexpr int kMaxTernaryBalls = 5;  // 3n <= 15
inline constexpr int kMaxBinaryBalls = 8;

struct BruteForceResult {
  std::vector<std::string> minimizers;  // canonical words within tolerance of the minimum
  double min_energy = 0.0;
  double max_energy = 0.0;
  std::int64_t class_count = 0;
};

BruteForceResult binary_brute_force(int n);
BruteForceResult ternary_brute_force(int n, const VolumeFractions& omega,
                                     const InteractionMatrix& f, double rel_tol = 1e-12);

// All canonical arrangement classes (used by the sweep and by tests).
std::vector<Arrangement> enumerate_arrangements(int n);

// |Delta(long-range of the induced uniform-width segments)
//  - (2/n^2) Delta(ball potential energy)| between two arrangements;
// the arrangement-independent constant cancels in the difference.
double ok_discrete_equivalence(const Arrangement& a, const Arrangement& b,
                               const VolumeFractions& omega, const ModelParams& m);

// Energy difference under the dipole-orientation flip of one alternating
// block: arrangements (AB)^m(BA)^m C <flipped or not> C with equal A/B
// ball sizes. Zero exactly when f13 = f23 (hence f11 = f22).
double lemma61_difference(int m_pairs, const VolumeFractions& omega, const InteractionMatrix& f);

struct SweepCell {
  int n = 0;
  Vec3 triple{};  // pairwise coefficients of the sampled matrix
  VolumeFractions omega;
  bool cyclic_minimal = false;
  double min_energy = 0.0;
  double cyclic_energy = 0.0;
};

struct SweepReport {
  std::vector<SweepCell> cells;
  int counterexamples = 0;
};

// Interior composition lattice (i, j, k >= 1, i + j + k = denom).
std::vector<VolumeFractions> omega_lattice(int denom);

// Checks that the cyclic arrangement minimizes the ball energy over every
// sampled (n, matrix, composition) cell. A counterexample would be a
// finding, not a bug; it is reported loudly.
SweepReport conjecture_sweep(std::span<const int> ns, int n_theta, int n_phi, int omega_denom,
                             int threads = 0, double rel_tol = 1e-12);

}  // namespace oklam
