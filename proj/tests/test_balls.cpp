#include <doctest.h>

#include <set>

#include "oklam/balls.hpp"
#include "oracles.hpp"

using namespace oklam;

namespace {

const VolumeFractions kThirds = VolumeFractions::make(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0);

InteractionMatrix blend_f(double scale = 1.0) {
  return interaction_from_triple(-scale, 0.0, 0.0);
}

}  // namespace

TEST_CASE("ball positions follow the spacing rule") {
  SUBCASE("binary uniform centers") {
    BallSystem sys;
    for (int k = 0; k < 6; ++k) {
      sys.types.push_back(k % 2 == 0 ? Species::A : Species::B);
      sys.diameters.push_back(1.0 / 6.0);
    }
    const auto x = ball_centers(sys);
    for (int k = 0; k < 6; ++k)
      CHECK(x[static_cast<std::size_t>(k)] == doctest::Approx((k + 1) / 6.0).epsilon(1e-14));
  }
  SUBCASE("ternary equal fractions, one ball each") {
    const auto arr = Arrangement::parse("ABC");
    const auto x = ball_centers(system_for(arr, kThirds));
    CHECK(x[0] == doctest::Approx(1.0 / 3.0));
    CHECK(x[1] == doctest::Approx(2.0 / 3.0));
    CHECK(x[2] == doctest::Approx(1.0));
  }
  SUBCASE("last center telescopes to one for random fractions") {
    std::mt19937_64 rng(41);
    for (int t = 0; t < 20; ++t) {
      const auto w = testing::random_fractions(rng);
      const auto arr = Arrangement::parse("ACBABCBCA");
      const auto x = ball_centers(system_for(arr, w));
      CHECK(x.back() == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("binary arrangement energy") {
  SUBCASE("hand value for one pair") {
    const std::vector<int> ab{1, -1};
    CHECK(binary_energy(ab) == doctest::Approx(1.0 / 8.0).epsilon(1e-14));
  }
  SUBCASE("rotation invariance") {
    const std::vector<int> arr{1, 1, -1, 1, -1, -1};
    std::vector<int> rot{-1, 1, 1, -1, 1, -1};  // rotate by one site
    CHECK(binary_energy(arr) == doctest::Approx(binary_energy(rot)).epsilon(1e-13));
  }
  SUBCASE("alternating minimizes up to n = 6, uniquely") {
    for (int n = 1; n <= 6; ++n) {
      const auto res = binary_brute_force(n);
      REQUIRE(res.minimizers.size() == 1);
      std::string expect;
      for (int k = 0; k < n; ++k) expect += "AB";
      CHECK(res.minimizers[0] == expect);
    }
  }
  CHECK_THROWS_AS(binary_brute_force(9), validation_error);
}

TEST_CASE("ternary energy basics") {
  SUBCASE("zero interaction, zero energy") {
    CHECK(ternary_energy(Arrangement::parse("ABCABC"), kThirds, InteractionMatrix{}) == 0.0);
  }
  SUBCASE("binary model embeds as a two-species system") {
    // A/B balls with equal diameters and the pure two-species interaction
    // reproduce the binary energy.
    for (int n : {2, 3, 4}) {
      BallSystem sys;
      std::vector<int> spins;
      for (int k = 0; k < 2 * n; ++k) {
        const bool a = k % 2 == 0;
        sys.types.push_back(a ? Species::A : Species::B);
        sys.diameters.push_back(1.0 / (2.0 * n));
        spins.push_back(a ? 1 : -1);
      }
      CHECK(ball_energy(sys, blend_f().m) ==
            doctest::Approx(binary_energy(spins)).epsilon(1e-13));
    }
  }
  SUBCASE("rotation and reflection invariance") {
    std::mt19937_64 rng(43);
    const auto f = interaction_from_triple(-0.7, -0.4, -0.59);
    for (int t = 0; t < 10; ++t) {
      const auto w = testing::random_fractions(rng);
      const Arrangement arr = Arrangement::parse("AABCCBACB");
      const double base = ternary_energy(arr, w, f);
      std::vector<Species> rot(arr.types.begin() + 4, arr.types.end());
      rot.insert(rot.end(), arr.types.begin(), arr.types.begin() + 4);
      CHECK(ternary_energy(Arrangement::make(rot), w, f) ==
            doctest::Approx(base).epsilon(1e-13));
      std::vector<Species> refl(arr.types.rbegin(), arr.types.rend());
      CHECK(ternary_energy(Arrangement::make(refl), w, f) ==
            doctest::Approx(base).epsilon(1e-13));
    }
  }
}

TEST_CASE("degenerate-interaction minimizer family: tied and jointly minimal") {
  // All arrangements AB C^l1 AB C^l2 ... with the pure two-species
  // interaction have equal energy and are exactly the minimizers.
  for (int n = 2; n <= 4; ++n) {
    std::set<std::string> family;
    // Compositions of n into n nonnegative parts l_1..l_n.
    std::vector<int> parts(static_cast<std::size_t>(n), 0);
    auto emit = [&] {
      std::vector<Species> arr;
      for (int k = 0; k < n; ++k) {
        arr.push_back(Species::A);
        arr.push_back(Species::B);
        for (int c = 0; c < parts[static_cast<std::size_t>(k)]; ++c) arr.push_back(Species::C);
      }
      std::vector<std::uint8_t> word(arr.size());
      for (std::size_t i = 0; i < arr.size(); ++i) word[i] = static_cast<std::uint8_t>(arr[i]);
      const auto canon = necklace_canonical(word);
      std::string s;
      for (auto b : canon) s.push_back(species_char(static_cast<Species>(b)));
      family.insert(s);
    };
    auto walk = [&](auto&& self, int pos, int left) -> void {
      if (pos == n - 1) {
        parts[static_cast<std::size_t>(pos)] = left;
        emit();
        return;
      }
      for (int take = 0; take <= left; ++take) {
        parts[static_cast<std::size_t>(pos)] = take;
        self(self, pos + 1, left - take);
      }
    };
    walk(walk, 0, n);

    const auto res = ternary_brute_force(n, kThirds, blend_f());
    const std::set<std::string> minimizers(res.minimizers.begin(), res.minimizers.end());
    CHECK(minimizers == family);
  }
}

TEST_CASE("all-attractive interactions favour the cyclic arrangement") {
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> unif(0.1, 1.0);
  for (int t = 0; t < 5; ++t) {
    const auto f = interaction_from_triple(-unif(rng), -unif(rng), -unif(rng));
    const auto w = testing::random_fractions(rng);
    for (int n = 2; n <= 3; ++n) {
      const auto res = ternary_brute_force(n, w, f);
      std::string cyc;
      for (int k = 0; k < n; ++k) cyc += "ABC";
      CHECK(std::find(res.minimizers.begin(), res.minimizers.end(), cyc) !=
            res.minimizers.end());
    }
  }
}

TEST_CASE("cyclic arrangement minimizes for sampled admissible interactions") {
  const std::array<int, 2> ns{2, 3};
  const auto report = conjecture_sweep(ns, 2, 3, 5, 0);
  CHECK(report.cells.size() == 2 * 6 * 6);
  CHECK(report.counterexamples == 0);
}

TEST_CASE("segment and ball energies agree through the midpoint identity") {
  // Differences of the long-range term between two uniform-width
  // configurations equal 2/n^2 times the ball-energy difference.
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 50; ++trial) {
    const auto w = testing::random_fractions(rng);
    ModelParams m;
    m.omega = w;
    m.gamma = testing::random_admissible_gamma(w, rng);
    const int n = 2 + trial % 3;
    auto classes = enumerate_arrangements(n);
    std::uniform_int_distribution<std::size_t> pick(0, classes.size() - 1);
    const Arrangement a = classes[pick(rng)];
    const Arrangement b = classes[pick(rng)];
    const double residual = ok_discrete_equivalence(a, b, w, m);
    CHECK(residual <= 1e-12);
  }
  SUBCASE("identical arrangements give zero") {
    ModelParams m;
    m.omega = kThirds;
    m.gamma = build_ren(kThirds, 1.0);
    const auto arr = Arrangement::parse("ABCABC");
    CHECK(ok_discrete_equivalence(arr, arr, kThirds, m) == 0.0);
  }
  SUBCASE("named pair at equal fractions") {
    ModelParams m;
    m.omega = kThirds;
    m.gamma = build_ren(kThirds, 1.0);
    CHECK(ok_discrete_equivalence(Arrangement::parse("ABCABC"), Arrangement::parse("ABCBAC"),
                                  kThirds, m) <= 1e-12);
  }
}

TEST_CASE("dipole-flip invariance of the symmetric interaction") {
  SUBCASE("symmetric case vanishes") {
    const auto w = VolumeFractions::make(0.25, 0.25, 0.5);
    const auto f = f_from_gamma(build_ren(w, 1.0), w);
    for (int m : {1, 2, 6}) CHECK(std::abs(lemma61_difference(m, w, f)) <= 1e-12);
  }
  SUBCASE("asymmetric perturbation does not") {
    const auto w = VolumeFractions::make(0.25, 0.25, 0.5);
    const auto f = interaction_from_triple(-0.5, -0.10, -0.25);
    CHECK(std::abs(lemma61_difference(1, w, f)) > 1e-6);
  }
  SUBCASE("preconditions enforced") {
    const auto w = VolumeFractions::make(0.2, 0.3, 0.5);
    CHECK_THROWS_AS(lemma61_difference(1, w, blend_f()), validation_error);
  }
}

TEST_CASE("arrangement validation and caps") {
  CHECK_THROWS_AS(Arrangement::parse("AABB"), validation_error);
  CHECK_THROWS_AS(Arrangement::parse("AB"), validation_error);
  CHECK_THROWS_AS(enumerate_arrangements(6), validation_error);
  CHECK(enumerate_arrangements(1).size() == 1);  // only the cyclic class
}
