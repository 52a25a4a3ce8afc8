#pragma once

#include <array>
#include <optional>
#include <string>

#include <json.hpp>

#include "oklam/balls.hpp"
#include "oklam/optimizer.hpp"
#include "oklam/phasediag.hpp"
#include "oklam/search.hpp"

namespace oklam {

struct OutputPaths {
  std::string csv_path;
  std::string svg_path;
  std::string json_path;
};

// Full input record for a run. Everything has a default; a config file
// overrides defaults and command-line flags override the file. The
// resolved record is echoed into every output so a run can be reproduced
// from any of its artifacts.
struct RunConfig {
  std::array<double, 3> omega{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  double c12 = 1.0;
  double c13 = 1.0;
  double c23 = 1.0;
  MatrixFamily family = MatrixFamily::ren;
  double gamma = 1.0;
  std::optional<ReducedMatrix> gamma_tilde;
  OptimizerOptions tolerances{};
  OutputPaths output{};

  static RunConfig from_json(const nlohmann::json& j);  // unknown keys rejected
  static RunConfig load_file(const std::string& path);

  nlohmann::json to_json() const;
  std::string echo() const;  // compact one-line form

  ModelParams model_params() const;
};

std::string symmetry_mode_name(SymmetryMode m);
SymmetryMode symmetry_mode_from_name(const std::string& name);

// Report serialization for the CLI outputs.
nlohmann::json to_json(const EnergyBreakdown& e);
nlohmann::json to_json(const WidthVector& w);
nlohmann::json to_json(const OptimizationResult& r);
nlohmann::json to_json(const AdmissibilityReport& r);
nlohmann::json to_json(const Decomposition& d);
nlohmann::json to_json(const Mat3& m);
nlohmann::json to_json(const SearchReport& r);
nlohmann::json to_json(const BruteForceResult& r);
nlohmann::json to_json(const SweepReport& r);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace oklam
