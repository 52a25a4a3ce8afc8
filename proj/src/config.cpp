#include "oklam/config.hpp"

#include <fstream>

namespace oklam {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& j, std::initializer_list<const char*> allowed,
                         const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : allowed) known = known || it.key() == k;
    if (!known) throw validation_error("unknown key '" + it.key() + "' in " + where);
  }
}

double take_number(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number()) throw validation_error(std::string("'") + key + "' must be a number");
  return j[key].get<double>();
}

}  // namespace

std::string symmetry_mode_name(SymmetryMode m) {
  return m == SymmetryMode::free_widths ? "free" : "paper-symmetric";
}

SymmetryMode symmetry_mode_from_name(const std::string& name) {
  if (name == "free") return SymmetryMode::free_widths;
  if (name == "paper-symmetric") return SymmetryMode::paper_symmetric;
  throw validation_error("unknown symmetry mode '" + name + "'");
}

RunConfig RunConfig::from_json(const json& j) {
  RunConfig cfg;
  if (!j.is_object()) throw validation_error("config must be a JSON object");
  reject_unknown_keys(j, {"omega", "tensions", "matrix", "tolerances", "output"}, "config");

  if (j.contains("omega")) {
    const json& o = j["omega"];
    if (!o.is_array() || o.size() != 3)
      throw validation_error("'omega' must be an array of three numbers");
    for (int i = 0; i < 3; ++i) cfg.omega[static_cast<std::size_t>(i)] = o[static_cast<std::size_t>(i)].get<double>();
  }
  if (j.contains("tensions")) {
    const json& t = j["tensions"];
    reject_unknown_keys(t, {"c12", "c13", "c23"}, "tensions");
    cfg.c12 = take_number(t, "c12", cfg.c12);
    cfg.c13 = take_number(t, "c13", cfg.c13);
    cfg.c23 = take_number(t, "c23", cfg.c23);
  }
  if (j.contains("matrix")) {
    const json& m = j["matrix"];
    reject_unknown_keys(m, {"family", "gamma", "gamma_tilde"}, "matrix");
    if (m.contains("family")) cfg.family = family_from_name(m["family"].get<std::string>());
    cfg.gamma = take_number(m, "gamma", cfg.gamma);
    if (m.contains("gamma_tilde")) {
      const json& g = m["gamma_tilde"];
      if (!g.is_array() || g.size() != 2 || !g[0].is_array() || g[0].size() != 2 ||
          !g[1].is_array() || g[1].size() != 2)
        throw validation_error("'gamma_tilde' must be a 2x2 array");
      ReducedMatrix rm;
      for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k)
          rm.m(i, k) = g[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)].get<double>();
      cfg.gamma_tilde = rm;
    }
  }
  if (j.contains("tolerances")) {
    const json& t = j["tolerances"];
    reject_unknown_keys(
        t, {"optimality_tol", "constraint_tol", "step_tol", "max_iters", "symmetry_mode"},
        "tolerances");
    cfg.tolerances.optimality_tol = take_number(t, "optimality_tol", cfg.tolerances.optimality_tol);
    cfg.tolerances.constraint_tol = take_number(t, "constraint_tol", cfg.tolerances.constraint_tol);
    cfg.tolerances.step_tol = take_number(t, "step_tol", cfg.tolerances.step_tol);
    if (t.contains("max_iters")) cfg.tolerances.max_iters = t["max_iters"].get<int>();
    if (t.contains("symmetry_mode"))
      cfg.tolerances.symmetry_mode = symmetry_mode_from_name(t["symmetry_mode"].get<std::string>());
  }
  if (j.contains("output")) {
    const json& o = j["output"];
    reject_unknown_keys(o, {"csv_path", "svg_path", "json_path"}, "output");
    if (o.contains("csv_path")) cfg.output.csv_path = o["csv_path"].get<std::string>();
    if (o.contains("svg_path")) cfg.output.svg_path = o["svg_path"].get<std::string>();
    if (o.contains("json_path")) cfg.output.json_path = o["json_path"].get<std::string>();
  }
  cfg.tolerances.validate();
  return cfg;
}

RunConfig RunConfig::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw validation_error("config parse error: " + std::string(e.what()));
  }
  return from_json(j);
}

json RunConfig::to_json() const {
  json j;
  j["omega"] = omega;
  j["tensions"] = {{"c12", c12}, {"c13", c13}, {"c23", c23}};
  json m;
  m["family"] = family_name(family);
  m["gamma"] = gamma;
  if (gamma_tilde) {
    m["gamma_tilde"] = {{gamma_tilde->m(0, 0), gamma_tilde->m(0, 1)},
                        {gamma_tilde->m(1, 0), gamma_tilde->m(1, 1)}};
  }
  j["matrix"] = m;
  j["tolerances"] = {{"optimality_tol", tolerances.optimality_tol},
                     {"constraint_tol", tolerances.constraint_tol},
                     {"step_tol", tolerances.step_tol},
                     {"max_iters", tolerances.max_iters},
                     {"symmetry_mode", symmetry_mode_name(tolerances.symmetry_mode)}};
  json o;
  if (!output.csv_path.empty()) o["csv_path"] = output.csv_path;
  if (!output.svg_path.empty()) o["svg_path"] = output.svg_path;
  if (!output.json_path.empty()) o["json_path"] = output.json_path;
  j["output"] = o;
  return j;
}

std::string RunConfig::echo() const { return to_json().dump(); }

ModelParams RunConfig::model_params() const {
  ModelParams m;
  m.omega = VolumeFractions::make(omega[0], omega[1], omega[2]);
  m.c12 = c12;
  m.c13 = c13;
  m.c23 = c23;
  m.gamma = family_matrix(family, m.omega, gamma, gamma_tilde);
  m.validate(true);
  return m;
}

json to_json(const EnergyBreakdown& e) {
  return json{{"short_range", e.short_range}, {"long_range", e.long_range}, {"total", e.total}};
}

json to_json(const WidthVector& w) { return json(w.w); }

json to_json(const OptimizationResult& r) {
  return json{{"widths", r.widths.w},
              {"energy", to_json(r.energy)},
              {"converged", r.converged},
              {"iterations", r.iterations},
              {"kkt_residual", r.kkt_residual},
              {"degenerate_layers", r.degenerate_layers}};
}

json to_json(const AdmissibilityReport& r) {
  return json{{"admissible", r.admissible},
              {"kernel_ok", r.kernel_ok},
              {"psd_ok", r.psd_ok},
              {"kernel_residual", r.kernel_residual},
              {"min_eigenvalue", r.min_eigenvalue},
              {"scale", r.scale},
              {"tol", r.tol}};
}

json to_json(const Decomposition& d) {
  return json{{"f12", d.f12},
              {"f13", d.f13},
              {"f23", d.f23},
              {"psd", d.psd},
              {"positive_count", d.positive_count}};
}

json to_json(const Mat3& m) {
  json rows = json::array();
  for (int i = 0; i < 3; ++i) {
    json row = json::array();
    for (int k = 0; k < 3; ++k) row.push_back(m(i, k));
    rows.push_back(row);
  }
  return rows;
}

json to_json(const SearchReport& r) {
  auto score_json = [](const PatternScore& s) {
    return json{{"pattern", s.scored_as.str()},
                {"evaluated", s.evaluated.str()},
                {"length", s.scored_as.size()},
                {"energy", to_json(s.energy)},
                {"widths", s.widths.w},
                {"converged", s.converged},
                {"merged", s.merged}};
  };
  json per_length = json::array();
  for (const PatternScore& s : r.per_length_best) {
    json e = score_json(s);
    e["evaluated_length"] = s.evaluated.size();
    per_length.push_back(e);
  }
  return json{{"max_len", r.max_len},
              {"best", score_json(r.best)},
              {"per_length_best", per_length},
              {"frontier_stopped", r.frontier_stopped},
              {"evaluated_count", r.evaluated_count},
              {"failed_count", r.failed_count}};
}

json to_json(const BruteForceResult& r) {
  return json{{"minimizers", r.minimizers},
              {"min_energy", r.min_energy},
              {"max_energy", r.max_energy},
              {"class_count", r.class_count}};
}

json to_json(const SweepReport& r) {
  json cells = json::array();
  for (const SweepCell& c : r.cells) {
    cells.push_back(json{{"n", c.n},
                         {"triple", c.triple},
                         {"omega", {c.omega.a, c.omega.b, c.omega.c}},
                         {"cyclic_minimal", c.cyclic_minimal},
                         {"min_energy", c.min_energy},
                         {"cyclic_energy", c.cyclic_energy}});
  }
  return json{{"cells", cells}, {"counterexamples", r.counterexamples}};
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw validation_error("cannot write file '" + path + "'");
  out << content;
  if (!out) throw validation_error("failed writing file '" + path + "'");
}

}  // namespace oklam
