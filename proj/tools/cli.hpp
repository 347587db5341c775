#pragma once

#include "dcoul/io.hpp"
#include "dcoul/model.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace dcoul::cli {

enum class Command {
  spectrum,
  phase_shift,
  coefficients,
  green,
  density,
  wavefunction,
  verify
};

const char *to_string(Command c);

struct Grid {
  double start = 0.0;
  double stop = 0.0;
  int count = 0;

  std::vector<double> points() const;
};

struct RunConfig {
  Command command = Command::spectrum;
  model::PhysicalParams params;
  io::Format format = io::Format::csv;

  std::optional<double> eps;
  std::optional<Grid> eps_grid;
  bool split = false;

  // spectrum
  int n_max = 5;
  // coefficients / verify
  int n = 20;
  std::string source = "recursion";
  // green
  double z_re = 0.0;
  double z_im = 1.0;
  std::string coefficients = "hamiltonian";
  double tol = 1e-13;
  int max_depth = 10'000'000;
  // density
  Grid x_grid{-0.99, 0.99, 199};
  double eta = 1e-3;
  bool with_energy = false;
  // wavefunction
  std::optional<int> level;
  int n_trunc = 64;
  Grid r_grid{0.01, 20.0, 200};
  // verify
  std::string matrix_path;

  unsigned threads = 1;
};

/// Checks flag values against the module preconditions. ConfigError on
/// the first violation.
void validate(const RunConfig &cfg);

/// Runs one command and returns the rendered table.
std::string execute(const RunConfig &cfg);

/// execute() with module errors mapped to exit codes: 1 configuration,
/// 2 domain, 3 convergence. The message names the module error.
int run(const RunConfig &cfg, std::ostream &out, std::ostream &err);

/// Thread count from DCOUL_THREADS (default 1).
unsigned threads_from_env();

} // namespace dcoul::cli
