#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "oklam/errors.hpp"

namespace oklam {

enum class Species : std::uint8_t { A = 0, B = 1, C = 2 };

inline constexpr int kSpeciesCount = 3;

char species_char(Species s);
Species species_from_char(char c);  // throws validation_error on anything but A/B/C

// Cyclic word of layer species on the periodic cell. Always valid:
// length >= 3, no two cyclically adjacent layers equal, all species present.
class Pattern {
 public:
  static Pattern parse(std::string_view text);
  static Pattern from_layers(std::vector<Species> layers);

  const std::vector<Species>& layers() const { return layers_; }
  Species operator[](std::size_t i) const { return layers_[i]; }
  std::size_t size() const { return layers_.size(); }
  std::string str() const;

  bool operator==(const Pattern&) const = default;

 private:
  explicit Pattern(std::vector<Species> layers) : layers_(std::move(layers)) {}
  std::vector<Species> layers_;
};

// Empty string when valid, otherwise the rejection reason
// ("length < 3", "adjacent duplicate", "missing species").
std::string validation_failure(std::span<const Species> layers);

// Lexicographically smallest word over all rotations and reflected
// rotations. Species labels are never permuted: the volume fractions and
// tensions break that symmetry.
std::vector<std::uint8_t> necklace_canonical(std::span<const std::uint8_t> word);

Pattern canonicalize(const Pattern& p);
bool is_canonical(const Pattern& p);

inline constexpr int kMaxEnumerationLength = 24;

// All canonical valid patterns of length 3..max_len, lengths ascending,
// lexicographic within each length.
std::vector<Pattern> enumerate_patterns(int max_len);

Pattern repeat(const Pattern& p, int n);

// Orbit id per layer under the automorphism group of the labeled cyclic
// word (rotations and reflections mapping the word to itself). Layers in
// one orbit are the ones tied together in paper-symmetric optimization.
std::vector<int> symmetry_orbits(const Pattern& p);

}  // namespace oklam
