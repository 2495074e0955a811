// Batch harness for the unfitted Nitsche interface solver.
//
//   cutfem solve        one example on one level
//   cutfem convergence  errors and orders over a level sequence
//   cutfem contrast     fixed level, sweep of (rho^-, rho^+) pairs
//   cutfem diagnostics  patch, coercivity, extension and interpolation profiles
//
// Exit codes: 0 success, 1 configuration error, 2 numerical failure.

#include "cutfem/diagnostics.hpp"
#include "cutfem/harness.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <string>

namespace {

constexpr int kConfigError = 1;
constexpr int kNumericalError = 2;

struct Overrides {
  std::string config_path;
  std::map<std::string, std::string> values;
};

// Flags mirror config keys; set flags win over the file.
void add_override_flags(CLI::App& cmd, Overrides& o) {
  cmd.add_option("-c,--config", o.config_path, "key = value configuration file");
  for (const char* key : {"example", "level", "levels", "interface", "circle_radius", "inclusion_side", "rho_minus",
                          "rho_plus", "gamma", "gamma_g_minus", "gamma_g_plus", "weighting", "solver", "tol", "max_iter",
                          "solver_fallback", "pairs", "output_path", "solution_path", "format"}) {
    cmd.add_option_function<std::string>(
        std::string("--") + key, [&o, key](const std::string& v) { o.values[key] = v; }, std::string("override '") + key + "'");
  }
}

cutfem::RunConfig resolve(const Overrides& o, cutfem::RunConfig base = {}) {
  cutfem::RunConfig cfg = o.config_path.empty() ? base : cutfem::load_config(o.config_path, base);
  for (const auto& [k, v] : o.values) {
    try {
      cfg.set(k, v);
    } catch (const cutfem::ConfigError& err) {
      throw cutfem::ConfigError(std::string("--") + k + ": " + err.what());
    }
  }
  return cfg;
}

template <typename Writer>
void emit(const cutfem::RunConfig& cfg, Writer&& write) {
  if (cfg.output_path.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream file(cfg.output_path);
  if (!file) throw cutfem::ConfigError("cannot write '" + cfg.output_path + "'");
  write(file);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unfitted Nitsche finite elements for high-contrast interface problems"};
  app.require_subcommand(1);

  Overrides solve_o, conv_o, contrast_o, diag_o;
  auto* solve_cmd = app.add_subcommand("solve", "Solve one example on one level");
  add_override_flags(*solve_cmd, solve_o);
  auto* conv_cmd = app.add_subcommand("convergence", "Errors and experimental orders over levels");
  add_override_flags(*conv_cmd, conv_o);
  auto* contrast_cmd = app.add_subcommand("contrast", "Sweep coefficient pairs on a fixed level");
  add_override_flags(*contrast_cmd, contrast_o);
  auto* diag_cmd = app.add_subcommand("diagnostics", "Structural diagnostics report");
  add_override_flags(*diag_cmd, diag_o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    if (*solve_cmd) {
      const auto cfg = resolve(solve_o);
      const auto out = cutfem::run_solve(cfg);
      emit(cfg, [&](std::ostream& os) { cutfem::write_solve(os, out, cfg.format); });
    } else if (*conv_cmd) {
      const auto cfg = resolve(conv_o);
      const auto rows = cutfem::run_convergence(cfg);
      emit(cfg, [&](std::ostream& os) { cutfem::write_convergence(os, rows, cfg.format); });
    } else if (*contrast_cmd) {
      cutfem::RunConfig base;
      base.level = 5;
      const auto cfg = resolve(contrast_o, base);
      const auto rows = cutfem::run_contrast_sweep(cfg);
      emit(cfg, [&](std::ostream& os) { cutfem::write_contrast(os, rows, cfg.format); });
    } else if (*diag_cmd) {
      const auto cfg = resolve(diag_o);
      cutfem::DiagnosticsConfig dcfg;
      if (diag_o.values.count("levels") || !diag_o.config_path.empty()) dcfg.levels = cfg.levels;
      const auto report = cutfem::run_diagnostics(cfg, dcfg);
      emit(cfg, [&](std::ostream& os) { cutfem::write_diagnostics(os, report); });
    }
  } catch (const cutfem::ConfigError& err) {
    std::cerr << "config error: " << err.what() << '\n';
    return kConfigError;
  } catch (const cutfem::NumericalError& err) {
    std::cerr << "numerical failure: " << err.what() << '\n';
    return kNumericalError;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kNumericalError;
  }
  return 0;
}
