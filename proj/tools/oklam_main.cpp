#include <CLI11.hpp>
#include <cmath>
#include <iostream>
#include <limits>

#include "oklam/config.hpp"

namespace {

using nlohmann::json;
using namespace oklam;

struct Overrides {
  std::string config_path;
  int threads = 0;
  std::vector<double> omega;
  std::vector<double> tensions;
  std::string family;
  double gamma = std::numeric_limits<double>::quiet_NaN();
};

RunConfig resolve_config(const Overrides& ov) {
  RunConfig cfg;
  if (!ov.config_path.empty()) cfg = RunConfig::load_file(ov.config_path);
  if (!ov.omega.empty()) {
    if (ov.omega.size() != 3) throw validation_error("--omega needs three values");
    for (int i = 0; i < 3; ++i) cfg.omega[static_cast<std::size_t>(i)] = ov.omega[static_cast<std::size_t>(i)];
  }
  if (!ov.tensions.empty()) {
    if (ov.tensions.size() != 3) throw validation_error("--tensions needs three values");
    cfg.c12 = ov.tensions[0];
    cfg.c13 = ov.tensions[1];
    cfg.c23 = ov.tensions[2];
  }
  if (!ov.family.empty()) cfg.family = family_from_name(ov.family);
  if (!std::isnan(ov.gamma)) cfg.gamma = ov.gamma;
  return cfg;
}

WidthVector widths_from_flag(const std::vector<double>& values) {
  WidthVector wv;
  wv.w = values;
  return wv;
}

int run(int argc, char** argv) {
  CLI::App app{"1-D ternary lamellar energy toolkit"};
  app.require_subcommand(1);

  Overrides ov;
  app.add_option("--config", ov.config_path, "JSON config file");
  app.add_option("--threads", ov.threads, "worker cap (default: machine parallelism)");
  app.add_option("--omega", ov.omega, "volume fractions a,b,c")->delimiter(',');
  app.add_option("--tensions", ov.tensions, "interfacial tensions c12,c13,c23")->delimiter(',');
  app.add_option("--family", ov.family, "coefficient matrix family (ren|ohta|blend|general)");
  app.add_option("--gamma", ov.gamma, "long-range strength");

  // energy
  auto* cmd_energy = app.add_subcommand("energy", "evaluate the free energy of a pattern");
  std::string energy_pattern;
  std::vector<double> energy_widths;
  bool energy_uniform = false, energy_optimize = false;
  cmd_energy->add_option("--pattern", energy_pattern, "layer pattern, e.g. ABAC")->required();
  cmd_energy->add_option("--widths", energy_widths, "explicit layer widths")->delimiter(',');
  cmd_energy->add_flag("--uniform", energy_uniform, "per-species uniform widths");
  cmd_energy->add_flag("--optimize", energy_optimize, "optimize widths (default when no widths)");

  // optimize
  auto* cmd_optimize = app.add_subcommand("optimize", "optimize layer widths of a pattern");
  std::string opt_pattern;
  cmd_optimize->add_option("--pattern", opt_pattern, "layer pattern")->required();

  // search
  auto* cmd_search = app.add_subcommand("search", "exhaustive search over canonical patterns");
  int search_max_len = 12;
  bool search_csv = false;
  cmd_search->add_option("--max-len", search_max_len, "pattern length cap");
  cmd_search->add_flag("--csv", search_csv, "dump the per-pattern table as CSV");

  // phasediag
  auto* cmd_phase = app.add_subcommand("phasediag", "asymptotic phase diagram sweep");
  std::string phase_section = "omega";
  int phase_resolution = 60;
  cmd_phase->add_option("--section", phase_section, "omega | tension");
  cmd_phase->add_option("--resolution", phase_resolution, "triangular grid subdivisions");

  // matrix
  auto* cmd_matrix = app.add_subcommand("matrix", "coefficient matrix utilities");
  bool mat_check = false, mat_canonicalize = false, mat_decompose = false;
  std::vector<double> mat_entries, mat_triple;
  cmd_matrix->add_flag("--check", mat_check, "admissibility check");
  cmd_matrix->add_flag("--canonicalize", mat_canonicalize, "canonical representative");
  cmd_matrix->add_flag("--decompose", mat_decompose, "pairwise coefficients of f");
  cmd_matrix->add_option("--entries", mat_entries, "raw 3x3 matrix, row-major")->delimiter(',');
  cmd_matrix->add_option("--triple", mat_triple, "pairwise coefficients f12,f13,f23")->delimiter(',');

  // balls
  auto* cmd_balls = app.add_subcommand("balls", "discrete charged-ball oracle");
  std::string balls_mode = "ternary";
  int balls_n = 2;
  cmd_balls->add_option("--mode", balls_mode, "binary | ternary | conjecture-sweep");
  cmd_balls->add_option("--n", balls_n, "balls per species");

  CLI11_PARSE(app, argc, argv);

  RunConfig cfg = resolve_config(ov);

  if (cmd_energy->parsed()) {
    const Pattern p = Pattern::parse(energy_pattern);
    const ModelParams m = cfg.model_params();
    WidthVector wv;
    json extra;
    if (!energy_widths.empty()) {
      wv = widths_from_flag(energy_widths);
    } else if (energy_uniform) {
      wv = uniform_widths(p, m.omega);
    } else {
      OptimizationResult r = optimize_widths(p, m, cfg.tolerances);
      if (!r.converged)
        throw numerical_error("width optimization did not converge (kkt residual " +
                              std::to_string(r.kkt_residual) + ")");
      wv = r.widths;
      extra["iterations"] = r.iterations;
    }
    EnergyBreakdown e = free_energy(p, wv, m);
    json out{{"config", cfg.to_json()},
             {"pattern", p.str()},
             {"widths", wv.w},
             {"energy", to_json(e)}};
    if (!extra.empty()) out["optimizer"] = extra;
    std::cout << out.dump(2) << '\n';
    return 0;
  }

  if (cmd_optimize->parsed()) {
    const Pattern p = Pattern::parse(opt_pattern);
    const ModelParams m = cfg.model_params();
    OptimizationResult r = optimize_widths(p, m, cfg.tolerances);
    json out{{"config", cfg.to_json()}, {"pattern", p.str()}, {"result", to_json(r)}};
    std::cout << out.dump(2) << '\n';
    if (!cfg.output.json_path.empty()) write_text_file(cfg.output.json_path, out.dump(2) + "\n");
    return r.converged ? 0 : 3;
  }

  if (cmd_search->parsed()) {
    const ModelParams m = cfg.model_params();
    SearchOptions so;
    so.max_len = search_max_len;
    so.opt = cfg.tolerances;
    so.threads = ov.threads;
    so.keep_table = search_csv;
    SearchReport report = global_search(m, so);
    json out{{"config", cfg.to_json()}, {"report", to_json(report)}};
    const std::string json_path =
        cfg.output.json_path.empty() ? "search_report.json" : cfg.output.json_path;
    write_text_file(json_path, out.dump(2) + "\n");
    if (search_csv) {
      const std::string csv_path =
          cfg.output.csv_path.empty() ? "search_table.csv" : cfg.output.csv_path;
      write_text_file(csv_path, "# " + cfg.echo() + "\n" + search_table_csv(report));
    }
    std::cout << "best " << report.best.scored_as.str() << " total "
              << report.best.energy.total << " (evaluated " << report.evaluated_count
              << " patterns, report " << json_path << ")\n";
    if (report.frontier_stopped)
      std::cout << "warning: optimum sits at the length cap; raise --max-len\n";
    return 0;
  }

  if (cmd_phase->parsed()) {
    const SectionKind section = section_from_name(phase_section);
    if (cfg.family != MatrixFamily::ren && cfg.family != MatrixFamily::ohta)
      throw validation_error("phasediag supports --family ren or ohta");
    PhaseDiagOptions po;
    po.resolution = phase_resolution;
    po.threads = ov.threads;
    po.opt = cfg.tolerances;
    PhaseGrid grid = sweep(section, cfg.family, po);
    const std::string stem = "phasediag_" + section_name(section) + "_" + family_name(cfg.family);
    const std::string csv_path = cfg.output.csv_path.empty() ? stem + ".csv" : cfg.output.csv_path;
    const std::string svg_path = cfg.output.svg_path.empty() ? stem + ".svg" : cfg.output.svg_path;
    write_text_file(csv_path, emit_csv(grid, cfg.echo()));
    write_text_file(svg_path, emit_svg(grid));
    std::cout << "wrote " << csv_path << " and " << svg_path << " (" << grid.cells.size()
              << " cells)\n";
    return 0;
  }

  if (cmd_matrix->parsed()) {
    if (!mat_check && !mat_canonicalize && !mat_decompose)
      throw validation_error("matrix needs one of --check, --canonicalize, --decompose");
    const VolumeFractions w = VolumeFractions::make(cfg.omega[0], cfg.omega[1], cfg.omega[2]);
    Mat3 gamma_entries;
    if (!mat_entries.empty()) {
      if (mat_entries.size() != 9) throw validation_error("--entries needs nine values");
      for (int i = 0; i < 9; ++i) gamma_entries.e[static_cast<std::size_t>(i)] = mat_entries[static_cast<std::size_t>(i)];
    } else if (!mat_triple.empty()) {
      if (mat_triple.size() != 3) throw validation_error("--triple needs three values");
      gamma_entries =
          gamma_from_f(interaction_from_triple(mat_triple[0], mat_triple[1], mat_triple[2]), w).m;
    } else {
      gamma_entries = family_matrix(cfg.family, w, cfg.gamma, cfg.gamma_tilde).m;
    }
    json out{{"config", cfg.to_json()}, {"gamma", to_json(gamma_entries)}};
    if (mat_check)
      out["admissibility"] = to_json(is_admissible(GammaMatrix{gamma_entries}, w));
    if (mat_canonicalize) {
      GammaMatrix canon = canonicalize_gamma(gamma_entries, w);
      out["canonical_gamma"] = to_json(canon.m);
    }
    if (mat_decompose) {
      const InteractionMatrix f = f_from_gamma(GammaMatrix{symmetrize(gamma_entries)}, w);
      out["f"] = to_json(f.m);
      out["decomposition"] = to_json(decompose_f(f));
    }
    std::cout << out.dump(2) << '\n';
    return 0;
  }

  if (cmd_balls->parsed()) {
    const VolumeFractions w = VolumeFractions::make(cfg.omega[0], cfg.omega[1], cfg.omega[2]);
    json out{{"config", cfg.to_json()}, {"mode", balls_mode}, {"n", balls_n}};
    if (balls_mode == "binary") {
      out["result"] = to_json(binary_brute_force(balls_n));
    } else if (balls_mode == "ternary") {
      const ModelParams m = cfg.model_params();
      const InteractionMatrix f = f_from_gamma(m.gamma, w);
      out["f"] = to_json(f.m);
      out["result"] = to_json(ternary_brute_force(balls_n, w, f));
    } else if (balls_mode == "conjecture-sweep") {
      const std::array<int, 1> ns{balls_n};
      SweepReport rep = conjecture_sweep(ns, 4, 5, 7, ov.threads);
      for (const SweepCell& cell : rep.cells) {
        std::cout << (cell.cyclic_minimal ? "ok  " : "FAIL") << " n=" << cell.n << " f=("
                  << cell.triple[0] << "," << cell.triple[1] << "," << cell.triple[2]
                  << ") omega=(" << cell.omega.a << "," << cell.omega.b << "," << cell.omega.c
                  << ")\n";
      }
      std::cout << rep.counterexamples << " counterexamples in " << rep.cells.size()
                << " cells\n";
      out["result"] = to_json(rep);
    } else {
      throw validation_error("unknown balls mode '" + balls_mode + "'");
    }
    if (!cfg.output.json_path.empty())
      write_text_file(cfg.output.json_path, out.dump(2) + "\n");
    else if (balls_mode != "conjecture-sweep")
      std::cout << out.dump(2) << '\n';
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const oklam::validation_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const oklam::numerical_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
