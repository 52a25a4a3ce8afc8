#include <doctest.h>

#include <map>

#include "oklam/phasediag.hpp"
#include "oracles.hpp"

using namespace oklam;

TEST_CASE("the candidate list matches the legend") {
  const auto& names = candidate_names();
  REQUIRE(names.size() == 19);
  CHECK(names[0] == "ABC");
  CHECK(names[2] == "BABC");
  CHECK(names[18] == "ACACABCACACB");
  // Seam-valid and pairwise distinct as cyclic classes.
  std::set<std::string> classes;
  for (const Pattern& p : candidate_patterns()) {
    CHECK(p.layers().front() != p.layers().back());
    classes.insert(canonicalize(p).str());
  }
  CHECK(classes.size() == 19);
}

TEST_CASE("barycentric parameter maps") {
  SUBCASE("tension vertices") {
    const ModelParams m = params_from_barycentric(SectionKind::tension, {1.0, 0.0, 0.0});
    CHECK(m.c12 == doctest::Approx(1.0));
    CHECK(m.c13 == doctest::Approx(1.0));
    CHECK(m.c23 == doctest::Approx(0.0));
    CHECK(m.omega.a == doctest::Approx(1.0 / 3.0));
  }
  SUBCASE("omega centroid") {
    const ModelParams m =
        params_from_barycentric(SectionKind::omega, {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
    CHECK(m.omega.b == doctest::Approx(1.0 / 3.0));
    CHECK(m.c12 == doctest::Approx(2.0 / 3.0));
    CHECK(m.c12 + m.c13 + m.c23 == doctest::Approx(2.0));
  }
  SUBCASE("tension coordinates invert") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> unif(0.05, 1.0);
    for (int t = 0; t < 30; ++t) {
      double l1 = unif(rng), l2 = unif(rng), l3 = unif(rng);
      const double s = l1 + l2 + l3;
      l1 /= s;
      l2 /= s;
      l3 /= s;
      const ModelParams m = params_from_barycentric(SectionKind::tension, {l1, l2, l3});
      CHECK((m.c12 + m.c13 - m.c23) / 2.0 == doctest::Approx(l1).epsilon(1e-12));
      CHECK((m.c12 + m.c23 - m.c13) / 2.0 == doctest::Approx(l2).epsilon(1e-12));
      CHECK((m.c13 + m.c23 - m.c12) / 2.0 == doctest::Approx(l3).epsilon(1e-12));
    }
  }
  SUBCASE("boundary rejection") {
    CHECK_THROWS_AS(params_from_barycentric(SectionKind::omega, {1.0, 0.0, 0.0}),
                    validation_error);
    CHECK_THROWS_AS(params_from_barycentric(SectionKind::omega, {0.5, 0.2, 0.2}),
                    validation_error);
  }
}

TEST_CASE("triangular grid geometry") {
  const int r = 5;
  std::array<double, 3> sum{};
  for (int i = 0; i < r * r; ++i) {
    const auto c = cell_centroid(r, i);
    CHECK(c[0] + c[1] + c[2] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(c[0] > 0.0);
    CHECK(c[1] > 0.0);
    CHECK(c[2] > 0.0);
    for (int k = 0; k < 3; ++k) sum[static_cast<std::size_t>(k)] += c[static_cast<std::size_t>(k)];
  }
  // Cells tile the triangle, so centroid mass balances.
  CHECK(sum[0] == doctest::Approx(sum[1]).epsilon(1e-9));
  CHECK(sum[1] == doctest::Approx(sum[2]).epsilon(1e-9));
  CHECK_THROWS_AS(cell_centroid(r, r * r), validation_error);
}

TEST_CASE("sweep winners at the centroids") {
  PhaseDiagOptions po;
  po.resolution = 3;
  SUBCASE("ren omega section centroid: cyclic repetend") {
    const PhaseGrid grid = sweep(SectionKind::omega, MatrixFamily::ren, po);
    // Centroid cell: the downward cell of the middle row at resolution 3.
    bool found = false;
    for (const PhaseCell& cell : grid.cells) {
      if (std::abs(cell.lambda[0] - 1.0 / 3.0) < 0.08 &&
          std::abs(cell.lambda[1] - 1.0 / 3.0) < 0.08) {
        CHECK(cell.winner_index == 1);
        found = true;
      }
    }
    CHECK(found);
  }
  SUBCASE("ren tension section centroid: cyclic repetend") {
    const PhaseGrid grid = sweep(SectionKind::tension, MatrixFamily::ren, po);
    for (const PhaseCell& cell : grid.cells) {
      if (std::abs(cell.lambda[0] - 1.0 / 3.0) < 0.08 &&
          std::abs(cell.lambda[1] - 1.0 / 3.0) < 0.08)
        CHECK(cell.winner_index == 1);
    }
  }
  SUBCASE("winner coefficient is the minimum over candidates") {
    const PhaseGrid grid = sweep(SectionKind::omega, MatrixFamily::ren, po);
    const auto& cands = candidate_patterns();
    for (const PhaseCell& cell : grid.cells) {
      REQUIRE(cell.winner_index >= 1);
      const ModelParams m = params_from_barycentric(SectionKind::omega, cell.lambda);
      for (std::size_t c = 0; c < cands.size(); ++c) {
        const auto coeff = asymptotic_coefficient(cands[c], m);
        CHECK(cell.coefficient <= coeff.C + 1e-6);
      }
    }
  }
}

TEST_CASE("ren omega section is symmetric under swapping the last two species") {
  PhaseDiagOptions po;
  po.resolution = 6;
  const PhaseGrid grid = sweep(SectionKind::omega, MatrixFamily::ren, po);
  // Winner map under lambda2 <-> lambda3 must match the B <-> C relabel of
  // the winning repetend.
  std::map<std::string, int> class_of;
  for (std::size_t c = 0; c < candidate_patterns().size(); ++c)
    class_of[canonicalize(candidate_patterns()[c]).str()] = static_cast<int>(c) + 1;
  auto swap_bc = [&](int index) {
    const Pattern& p = candidate_patterns()[static_cast<std::size_t>(index - 1)];
    std::vector<Species> swapped;
    for (Species s : p.layers())
      swapped.push_back(s == Species::B ? Species::C : (s == Species::C ? Species::B : s));
    return class_of.at(canonicalize(Pattern::from_layers(std::move(swapped))).str());
  };
  std::map<std::pair<long, long>, const PhaseCell*> by_coords;
  auto key = [&](const PhaseCell& cell) {
    return std::make_pair(std::lround(cell.lambda[0] * 3 * po.resolution),
                          std::lround(cell.lambda[1] * 3 * po.resolution));
  };
  for (const PhaseCell& cell : grid.cells) by_coords[key(cell)] = &cell;
  int compared = 0;
  for (const PhaseCell& cell : grid.cells) {
    const auto mirror_key = std::make_pair(std::lround(cell.lambda[0] * 3 * po.resolution),
                                           std::lround(cell.lambda[2] * 3 * po.resolution));
    const auto it = by_coords.find(mirror_key);
    REQUIRE(it != by_coords.end());
    const PhaseCell& mirror = *it->second;
    // Skip cells sitting essentially on a region boundary.
    if (cell.runner_up_gap < 1e-9 || mirror.runner_up_gap < 1e-9) continue;
    CHECK(mirror.winner_index == swap_bc(cell.winner_index));
    ++compared;
  }
  CHECK(compared > 20);
}

TEST_CASE("winner stability under refinement") {
  PhaseDiagOptions coarse;
  coarse.resolution = 6;
  PhaseDiagOptions fine;
  fine.resolution = 12;
  const PhaseGrid gc = sweep(SectionKind::tension, MatrixFamily::ren, coarse);
  const PhaseGrid gf = sweep(SectionKind::tension, MatrixFamily::ren, fine);
  auto locate = [&](const std::array<double, 3>& bary) -> const PhaseCell& {
    const int r = coarse.resolution;
    const double u = bary[0] * r, v = bary[1] * r;
    int i = std::min(static_cast<int>(u), r - 1);
    int j = std::min(static_cast<int>(v), r - 1);
    bool down = (u - i) + (v - j) > 1.0;
    // Clamp to a valid slot in row i.
    int slot = 2 * j + (down ? 1 : 0);
    int row_cells = 2 * (r - i) - 1;
    slot = std::min(slot, row_cells - 1);
    int index = 0;
    for (int row = 0; row < i; ++row) index += 2 * (r - row) - 1;
    return gc.cells[static_cast<std::size_t>(index + slot)];
  };
  for (const PhaseCell& cell : gf.cells) {
    const PhaseCell& parent = locate(cell.lambda);
    if (cell.winner_index == parent.winner_index) continue;
    const bool near_boundary = cell.runner_up_gap < 1e-3 || parent.runner_up_gap < 1e-3;
    CHECK(near_boundary);
  }
}

TEST_CASE("csv and svg emission") {
  PhaseDiagOptions po;
  po.resolution = 1;
  const PhaseGrid grid = sweep(SectionKind::tension, MatrixFamily::ren, po);
  REQUIRE(grid.cells.size() == 1);
  const std::string csv = emit_csv(grid, "{\"config\":1}");
  CHECK(csv.rfind("# {\"config\":1}\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);  // echo + header + one row
  CHECK(csv.find("lambda1,lambda2,lambda3,winner_index,winner_pattern,coefficient") !=
        std::string::npos);

  const std::string svg = emit_svg(grid);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("viewBox=") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(std::count(svg.begin(), svg.end(), '<') == std::count(svg.begin(), svg.end(), '>'));

  SUBCASE("csv round trip reproduces the winners") {
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);  // echo
    std::getline(in, line);  // header
    std::size_t row = 0;
    while (std::getline(in, line)) {
      std::istringstream cells(line);
      std::string field;
      for (int skip = 0; skip < 3; ++skip) std::getline(cells, field, ',');
      std::getline(cells, field, ',');
      CHECK(std::stoi(field) == grid.cells[row].winner_index);
      ++row;
    }
    CHECK(row == grid.cells.size());
  }
}

TEST_CASE("resolution cap") {
  PhaseDiagOptions po;
  po.resolution = 201;
  CHECK_THROWS_AS(sweep(SectionKind::omega, MatrixFamily::ren, po), validation_error);
  po.resolution = 4;
  CHECK_THROWS_AS(sweep(SectionKind::omega, MatrixFamily::blend, po), validation_error);
}
