#include "oklam/pattern.hpp"

#include <algorithm>
#include <array>
#include <numeric>

namespace oklam {

char species_char(Species s) {
  switch (s) {
    case Species::A: return 'A';
    case Species::B: return 'B';
    case Species::C: return 'C';
  }
  return '?';
}

Species species_from_char(char c) {
  switch (c) {
    case 'A': case 'a': return Species::A;
    case 'B': case 'b': return Species::B;
    case 'C': case 'c': return Species::C;
  }
  throw validation_error(std::string("unknown species label '") + c + "'");
}

std::string validation_failure(std::span<const Species> layers) {
  const std::size_t n = layers.size();
  if (n < 3) return "length < 3";
  for (std::size_t i = 0; i < n; ++i) {
    if (layers[i] == layers[(i + 1) % n]) return "adjacent duplicate";
  }
  std::array<bool, 3> seen{};
  for (Species s : layers) seen[static_cast<std::size_t>(s)] = true;
  for (int i = 0; i < kSpeciesCount; ++i) {
    if (!seen[static_cast<std::size_t>(i)])
      return std::string("missing species ") + species_char(static_cast<Species>(i));
  }
  return {};
}

Pattern Pattern::parse(std::string_view text) {
  std::vector<Species> layers;
  layers.reserve(text.size());
  for (char c : text) layers.push_back(species_from_char(c));
  return from_layers(std::move(layers));
}

Pattern Pattern::from_layers(std::vector<Species> layers) {
  if (auto why = validation_failure(layers); !why.empty())
    throw validation_error("invalid pattern: " + why);
  return Pattern(std::move(layers));
}

std::string Pattern::str() const {
  std::string s;
  s.reserve(layers_.size());
  for (Species sp : layers_) s.push_back(species_char(sp));
  return s;
}

std::vector<std::uint8_t> necklace_canonical(std::span<const std::uint8_t> word) {
  const std::size_t n = word.size();
  std::vector<std::uint8_t> best(word.begin(), word.end());
  std::vector<std::uint8_t> cand(n);
  auto consider = [&](auto index_of) {
    for (std::size_t i = 0; i < n; ++i) cand[i] = word[index_of(i)];
    if (cand < best) best = cand;
  };
  for (std::size_t r = 0; r < n; ++r) {
    consider([&](std::size_t i) { return (i + r) % n; });      // rotation by r
    consider([&](std::size_t i) { return (r + n - i) % n; });  // reflected rotation
  }
  return best;
}

Pattern canonicalize(const Pattern& p) {
  std::vector<std::uint8_t> word(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) word[i] = static_cast<std::uint8_t>(p[i]);
  auto best = necklace_canonical(word);
  std::vector<Species> layers(best.size());
  for (std::size_t i = 0; i < best.size(); ++i) layers[i] = static_cast<Species>(best[i]);
  return Pattern::from_layers(std::move(layers));
}

bool is_canonical(const Pattern& p) { return canonicalize(p) == p; }

std::vector<Pattern> enumerate_patterns(int max_len) {
  if (max_len < 3 || max_len > kMaxEnumerationLength)
    throw validation_error("pattern length cap must be in [3, " +
                           std::to_string(kMaxEnumerationLength) + "]");
  std::vector<Pattern> out;
  std::vector<Species> word;
  // Depth-first over words with adjacency pruning. Canonical words begin
  // with A (all species occur and rotations are identified), so the walk is
  // restricted to that branch and emits each length in lexicographic order.
  auto walk = [&](auto&& self, int target) -> void {
    if (static_cast<int>(word.size()) == target) {
      if (word.front() == word.back()) return;
      if (!validation_failure(word).empty()) return;
      Pattern p = Pattern::from_layers(word);
      if (is_canonical(p)) out.push_back(std::move(p));
      return;
    }
    for (int s = 0; s < kSpeciesCount; ++s) {
      Species sp = static_cast<Species>(s);
      if (!word.empty() && word.back() == sp) continue;
      word.push_back(sp);
      self(self, target);
      word.pop_back();
    }
  };
  for (int len = 3; len <= max_len; ++len) {
    word.clear();
    word.push_back(Species::A);
    walk(walk, len);
  }
  return out;
}

Pattern repeat(const Pattern& p, int n) {
  if (n < 1) throw validation_error("repeat count must be >= 1");
  std::vector<Species> layers;
  layers.reserve(p.size() * static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k)
    layers.insert(layers.end(), p.layers().begin(), p.layers().end());
  return Pattern::from_layers(std::move(layers));
}

namespace {

struct DisjointSet {
  std::vector<int> parent;
  explicit DisjointSet(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void merge(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }
};

}  // namespace

std::vector<int> symmetry_orbits(const Pattern& p) {
  const int n = static_cast<int>(p.size());
  DisjointSet ds(static_cast<std::size_t>(n));
  auto layer = [&](int i) { return p[static_cast<std::size_t>(((i % n) + n) % n)]; };
  for (int r = 0; r < n; ++r) {
    bool rot = true;
    for (int i = 0; i < n && rot; ++i) rot = layer(i + r) == layer(i);
    if (rot)
      for (int i = 0; i < n; ++i) ds.merge(i, (i + r) % n);
    bool refl = true;
    for (int i = 0; i < n && refl; ++i) refl = layer(r - i) == layer(i);
    if (refl)
      for (int i = 0; i < n; ++i) ds.merge(i, ((r - i) % n + n) % n);
  }
  std::vector<int> orbit(static_cast<std::size_t>(n), -1);
  int next = 0;
  for (int i = 0; i < n; ++i) {
    int root = ds.find(i);
    if (orbit[static_cast<std::size_t>(root)] < 0)
      orbit[static_cast<std::size_t>(root)] = next++;
    orbit[static_cast<std::size_t>(i)] = orbit[static_cast<std::size_t>(root)];
  }
  return orbit;
}

}  // namespace oklam
