#include "cli.hpp"

#include "dcoul/errors.hpp"
#include "dcoul/model.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using dcoul::cli::Command;
using dcoul::cli::Grid;
using dcoul::cli::RunConfig;

struct GridFlags {
  std::optional<double> start, stop;
  std::optional<int> count;

  std::optional<Grid> get(const char *name) const {
    if (!start && !stop && !count)
      return std::nullopt;
    if (!start || !stop || !count)
      throw dcoul::ConfigError(fmt::format(
          "{} grid needs all of start, stop and count", name));
    return Grid{*start, *stop, *count};
  }
};

void add_grid(CLI::App *app, GridFlags &g, const std::string &prefix) {
  app->add_option("--" + prefix + "-start", g.start);
  app->add_option("--" + prefix + "-stop", g.stop);
  app->add_option("--" + prefix + "-count", g.count);
}

nlohmann::ordered_json sidecar(const RunConfig &cfg, const std::string &output) {
  nlohmann::ordered_json j;
  j["command"] = dcoul::cli::to_string(cfg.command);
  j["output"] = output;
  j["format"] = cfg.format == dcoul::io::Format::csv ? "csv" : "json";
  j["params"] = {{"z", cfg.params.Z},
                 {"kappa", cfg.params.kappa},
                 {"compton", cfg.params.compton},
                 {"omega", cfg.params.omega}};
  j["threads"] = cfg.threads;
  if (cfg.eps) {
    j["eps"] = *cfg.eps;
    try {
      const auto e = dcoul::model::EnergyPoint::at(*cfg.eps);
      j["regime"] = dcoul::model::to_string(e.regime);
      const auto tp = dcoul::model::theta_phi(dcoul::model::derive(cfg.params), e);
      if (tp.branch)
        j["bound_branch"] = dcoul::pollaczek::to_string(*tp.branch);
    } catch (const dcoul::Error &) {
    }
  }
  if (cfg.eps_grid)
    j["eps_grid"] = {{"start", cfg.eps_grid->start},
                     {"stop", cfg.eps_grid->stop},
                     {"count", cfg.eps_grid->count},
                     {"split", cfg.split}};
  return j;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Dirac-Coulomb problem in a tridiagonal Laguerre basis"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  RunConfig cfg;
  std::string format = "csv";
  std::string output;
  std::optional<std::string> config_path;
  GridFlags eps_grid, x_grid, r_grid;

  auto *spectrum = app.add_subcommand("spectrum", "bound-state energies");
  auto *phase = app.add_subcommand("phase-shift", "scattering phase shifts");
  auto *coeffs = app.add_subcommand("coefficients", "expansion coefficients f_n");
  auto *green = app.add_subcommand("green", "continued-fraction Green function");
  auto *density = app.add_subcommand("density", "spectral density on a grid");
  auto *wave = app.add_subcommand("wavefunction", "radial spinor components");
  auto *verify = app.add_subcommand("verify", "tridiagonality of the operator");

  for (auto *sub : {spectrum, phase, coeffs, green, density, wave, verify}) {
    sub->add_option("--z", cfg.params.Z, "nuclear charge (negative attracts)");
    sub->add_option("--kappa", cfg.params.kappa, "spin-orbit number");
    sub->add_option("--compton", cfg.params.compton, "reduced Compton wavelength");
    sub->add_option("--omega", cfg.params.omega, "basis scale");
    sub->add_option("--config", config_path, "key = value parameter file");
    sub->add_option("--format", format, "csv or json");
    sub->add_option("--output", output, "write here instead of stdout");
  }
  spectrum->add_option("--n-max", cfg.n_max);

  for (auto *sub : {phase, coeffs, green, density, wave, verify})
    sub->add_option("--eps", cfg.eps, "energy in units of mc^2");
  add_grid(phase, eps_grid, "eps");
  phase->add_flag("--split", cfg.split, "evaluate each side of |eps| = 1");

  coeffs->add_option("--n", cfg.n);
  coeffs->add_option("--source", cfg.source,
                     "recursion, minimal, closed-form or closed-form-displayed");

  green->add_option("--re", cfg.z_re);
  green->add_option("--im", cfg.z_im);
  green->add_option("--coefficients", cfg.coefficients, "hamiltonian or pollaczek");
  for (auto *sub : {green, density}) {
    sub->add_option("--tol", cfg.tol);
    sub->add_option("--max-depth", cfg.max_depth);
  }
  add_grid(density, x_grid, "x");
  density->add_option("--eta", cfg.eta);
  density->add_flag("--with-energy", cfg.with_energy);

  wave->add_option("--level", cfg.level, "bound level n (uses the exact energy)");
  wave->add_option("--n-trunc", cfg.n_trunc);
  add_grid(wave, r_grid, "r");

  verify->add_option("--n", cfg.n);
  verify->add_option("--matrix", cfg.matrix_path, "dump the operator matrix");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    std::cerr << "error: ConfigError: " << e.what() << '\n';
    return 1;
  }

  const std::pair<CLI::App *, Command> table[] = {
      {spectrum, Command::spectrum}, {phase, Command::phase_shift},
      {coeffs, Command::coefficients}, {green, Command::green},
      {density, Command::density},   {wave, Command::wavefunction},
      {verify, Command::verify}};
  for (const auto &[sub, cmd] : table)
    if (sub->parsed())
      cfg.command = cmd;

  try {
    if (config_path) {
      std::ifstream f(*config_path);
      if (!f)
        throw dcoul::ConfigError(fmt::format("cannot read '{}'", *config_path));
      std::stringstream ss;
      ss << f.rdbuf();
      cfg.params = dcoul::model::from_config(ss.str());
    }
    cfg.format = dcoul::io::parse_format(format);
    cfg.threads = dcoul::cli::threads_from_env();
    cfg.eps_grid = eps_grid.get("eps");
    if (auto g = x_grid.get("x"))
      cfg.x_grid = *g;
    if (auto g = r_grid.get("r"))
      cfg.r_grid = *g;
  } catch (const dcoul::Error &e) {
    std::cerr << "error: " << e.name() << ": " << e.what() << '\n';
    return 1;
  }

  if (output.empty())
    return dcoul::cli::run(cfg, std::cout, std::cerr);

  std::ostringstream buf;
  const int code = dcoul::cli::run(cfg, buf, std::cerr);
  if (code != 0)
    return code;
  std::ofstream f(output, std::ios::binary);
  std::ofstream meta(output + ".meta.json", std::ios::binary);
  if (!f || !meta) {
    std::cerr << "error: ConfigError: cannot write '" << output << "'\n";
    return 1;
  }
  f << buf.str();
  meta << sidecar(cfg, output).dump(2) << '\n';
  return 0;
}
