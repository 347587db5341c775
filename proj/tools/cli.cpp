#include "cli.hpp"

#include "dcoul/errors.hpp"
#include "dcoul/resolvent.hpp"
#include "dcoul/scattering.hpp"
#include "dcoul/spectrum.hpp"
#include "dcoul/wavefunction.hpp"

#include <fmt/format.h>

#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <ostream>
#include <thread>

namespace dcoul::cli {

const char *to_string(Command c) {
  switch (c) {
  case Command::spectrum:
    return "spectrum";
  case Command::phase_shift:
    return "phase-shift";
  case Command::coefficients:
    return "coefficients";
  case Command::green:
    return "green";
  case Command::density:
    return "density";
  case Command::wavefunction:
    return "wavefunction";
  case Command::verify:
    return "verify";
  }
  return "?";
}

std::vector<double> Grid::points() const {
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    out[i] = count == 1 ? start : start + (stop - start) * i / (count - 1);
  return out;
}

unsigned threads_from_env() {
  const char *v = std::getenv("DCOUL_THREADS");
  if (!v || !*v)
    return 1;
  char *end = nullptr;
  const long n = std::strtol(v, &end, 10);
  if (*end != '\0' || n < 1 || n > 256)
    throw ConfigError(fmt::format("DCOUL_THREADS must be an integer in "
                                  "[1, 256], got '{}'",
                                  v));
  return static_cast<unsigned>(n);
}

namespace {

void require(bool ok, const std::string &msg) {
  if (!ok)
    throw ConfigError(msg);
}

void validate_grid(const Grid &g, const char *name) {
  require(g.count >= 1, fmt::format("{}: count must be >= 1", name));
  require(std::isfinite(g.start) && std::isfinite(g.stop),
          fmt::format("{}: bounds must be finite", name));
}

// Evaluates fn(i) for i in [0, n) on `threads` workers. Results land at
// their index; the lowest-index failure is rethrown.
template <class T>
std::vector<T> parallel_map(int n, unsigned threads,
                            const std::function<T(int)> &fn) {
  std::vector<T> out(static_cast<std::size_t>(n));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
  auto work = [&](unsigned worker) {
    for (int i = static_cast<int>(worker); i < n; i += static_cast<int>(threads)) {
      try {
        out[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads <= 1 || n <= 1) {
    work(0);
    threads = 1;
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w)
      pool.emplace_back(work, w);
  }
  for (auto &e : errors)
    if (e)
      std::rethrow_exception(e);
  return out;
}

double require_eps(const RunConfig &cfg) {
  if (!cfg.eps)
    throw ConfigError(fmt::format("{} needs --eps", to_string(cfg.command)));
  return *cfg.eps;
}

// Grid points of an energy sweep with the threshold guard applied.
std::vector<double> energy_points(const RunConfig &cfg, model::Regime keep) {
  if (cfg.eps && !cfg.eps_grid)
    return {*cfg.eps};
  if (!cfg.eps_grid)
    throw ConfigError("pass --eps or an --eps-start/--eps-stop/--eps-count grid");
  const auto pts = cfg.eps_grid->points();
  bool mixed = false;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto r = model::EnergyPoint::at(pts[i]).regime;
    if (r == model::Regime::threshold)
      mixed = true;
    if (i && r != model::EnergyPoint::at(pts[i - 1]).regime)
      mixed = true;
  }
  if (mixed && !cfg.split)
    throw ThresholdError("energy grid touches or crosses |eps| = 1; pass "
                         "--split to evaluate the pieces separately");
  std::vector<double> out;
  for (double e : pts)
    if (model::EnergyPoint::at(e).regime == keep)
      out.push_back(e);
  return out;
}

std::string run_spectrum(const RunConfig &cfg) {
  return io::render(io::to_table(spectrum::spectrum_table(cfg.params, cfg.n_max)),
                    cfg.format);
}

std::string run_phase_shift(const RunConfig &cfg) {
  const auto pts = energy_points(cfg, model::Regime::scattering);
  auto rows = parallel_map<scattering::PhaseShiftResult>(
      static_cast<int>(pts.size()), cfg.threads,
      [&](int i) { return scattering::phase_shift(cfg.params, pts[i]); });
  // continuation restarts at every gap left by --split
  const auto grid = cfg.eps_grid ? cfg.eps_grid->points() : pts;
  std::vector<scattering::PhaseShiftResult> piece, all;
  std::size_t g = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::size_t pos = g;
    while (grid[pos] != pts[i])
      ++pos;
    if (pos != g && !piece.empty()) {
      scattering::unwrap_psi(piece);
      all.insert(all.end(), piece.begin(), piece.end());
      piece.clear();
    }
    piece.push_back(rows[i]);
    g = pos + 1;
  }
  scattering::unwrap_psi(piece);
  all.insert(all.end(), piece.begin(), piece.end());
  return io::render(io::to_table(all), cfg.format);
}

std::string run_coefficients(const RunConfig &cfg) {
  const auto d = model::derive(cfg.params);
  const double eps = require_eps(cfg);
  wavefunction::CoefficientVector c;
  if (cfg.source == "recursion")
    c = wavefunction::coefficients_recursion(d, eps, cfg.n);
  else if (cfg.source == "minimal")
    c = wavefunction::coefficients_minimal(d, eps, cfg.n);
  else if (cfg.source == "closed-form")
    c = wavefunction::coefficients_closed_form(d, eps, cfg.n);
  else
    c = wavefunction::coefficients_closed_form(
        d, eps, cfg.n, wavefunction::ClosedFormVariant::displayed);
  return io::render(io::to_table(c), cfg.format);
}

RecursionCoefficients green_coefficients(const RunConfig &cfg) {
  const auto d = model::derive(cfg.params);
  if (cfg.coefficients == "hamiltonian")
    return model::recursion_coefficients(d);
  const double eps = require_eps(cfg);
  const auto pp = model::map_to_pollaczek(d, model::EnergyPoint::at(eps));
  return pollaczek::jacobi_coefficients(pp.params);
}

std::string run_green(const RunConfig &cfg) {
  const auto coeffs = green_coefficients(cfg);
  const auto est = resolvent::continued_fraction_G(
      coeffs, resolvent::complex(cfg.z_re, cfg.z_im), cfg.tol, cfg.max_depth);
  io::Table t{{"z_re", "z_im", "g_re", "g_im", "depth", "converged",
               "last_delta"},
              {}};
  t.add_row({est.z.real(), est.z.imag(), est.value.real(), est.value.imag(),
             (long long)est.depth, est.converged, est.last_delta});
  return io::render(t, cfg.format);
}

std::string run_density(const RunConfig &cfg) {
  RunConfig pcfg = cfg;
  pcfg.coefficients = "pollaczek";
  const auto coeffs = green_coefficients(pcfg);
  const auto d = model::derive(cfg.params);
  const auto xs = cfg.x_grid.points();
  auto rows = parallel_map<resolvent::DensityEstimate>(
      static_cast<int>(xs.size()), cfg.threads, [&](int i) {
        return resolvent::spectral_density(coeffs, xs[i], cfg.eta, cfg.tol,
                                           cfg.max_depth);
      });
  io::Table t = io::to_table(rows);
  if (cfg.with_energy) {
    t.columns.push_back("eps");
    t.columns.push_back("rho_eps");
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const double e = resolvent::energy_for_argument(d, rows[i].x);
      const double jac = std::abs(resolvent::energy_jacobian(d, e));
      t.rows[i].push_back(e);
      t.rows[i].push_back(rows[i].rho * jac);
    }
  }
  return io::render(t, cfg.format);
}

std::string run_wavefunction(const RunConfig &cfg) {
  const auto d = model::derive(cfg.params);
  double eps = 0.0;
  wavefunction::CoefficientVector c;
  if (cfg.level) {
    eps = spectrum::bound_energy(cfg.params, *cfg.level);
    c = wavefunction::coefficients_minimal(d, eps, 2 * cfg.n_trunc);
  } else {
    eps = require_eps(cfg);
    c = wavefunction::coefficients_recursion(d, eps, 2 * cfg.n_trunc);
  }
  const auto r = cfg.r_grid.points();
  const auto upper = wavefunction::reconstruct_upper(c, d, r, cfg.n_trunc);
  const auto lower = wavefunction::reconstruct_lower(c, d, eps, r, cfg.n_trunc);
  return io::render(io::wavefunction_table(r, upper.values, lower.values),
                    cfg.format);
}

std::string run_verify(const RunConfig &cfg) {
  const auto d = model::derive(cfg.params);
  const double eps = require_eps(cfg);
  const auto diag = wavefunction::verify_tridiagonal(d, eps, cfg.n);
  if (!cfg.matrix_path.empty()) {
    std::ofstream f(cfg.matrix_path, std::ios::binary);
    if (!f)
      throw ConfigError(fmt::format("cannot write '{}'", cfg.matrix_path));
    f << wavefunction::format_matrix(diag.matrix, d.effective_gamma, eps);
  }
  io::Table t{{"n", "gamma", "eps", "off_band_ratio", "bracket_deviation",
               "quadrature_order"},
              {}};
  t.add_row({(long long)cfg.n, d.effective_gamma, eps, diag.off_band_ratio,
             diag.bracket_deviation, (long long)diag.quadrature_order});
  return io::render(t, cfg.format);
}

} // namespace

void validate(const RunConfig &cfg) {
  const auto &p = cfg.params;
  require(std::isfinite(p.Z), "--z must be finite");
  require(p.kappa != 0, "--kappa must be nonzero");
  require(p.compton > 0.0 && std::isfinite(p.compton), "--compton must be > 0");
  require(p.omega > 0.0 && std::isfinite(p.omega), "--omega must be > 0");
  if (cfg.eps)
    require(std::isfinite(*cfg.eps), "--eps must be finite");
  if (cfg.eps_grid)
    validate_grid(*cfg.eps_grid, "energy grid");
  require(cfg.threads >= 1, "thread count must be >= 1");
  switch (cfg.command) {
  case Command::spectrum:
    require(cfg.n_max >= 0, "--n-max must be >= 0");
    break;
  case Command::coefficients:
    require(cfg.n >= 0, "--n must be >= 0");
    require(cfg.source == "recursion" || cfg.source == "minimal" ||
                cfg.source == "closed-form" ||
                cfg.source == "closed-form-displayed",
            fmt::format("unknown --source '{}'", cfg.source));
    if (cfg.source == "minimal")
      require(cfg.n >= 1, "--source minimal needs --n >= 1");
    break;
  case Command::green:
    require(cfg.coefficients == "hamiltonian" || cfg.coefficients == "pollaczek",
            fmt::format("unknown --coefficients '{}'", cfg.coefficients));
    require(std::isfinite(cfg.z_re) && std::isfinite(cfg.z_im),
            "--re/--im must be finite");
    [[fallthrough]];
  case Command::density:
    require(cfg.tol > 0.0, "--tol must be > 0");
    require(cfg.max_depth >= 1, "--max-depth must be >= 1");
    if (cfg.command == Command::density) {
      require(cfg.eta > 0.0, "--eta must be > 0");
      validate_grid(cfg.x_grid, "x grid");
    }
    break;
  case Command::wavefunction:
    require(cfg.n_trunc >= 1, "--n-trunc must be >= 1");
    validate_grid(cfg.r_grid, "r grid");
    require(cfg.r_grid.start > 0.0 && cfg.r_grid.stop > 0.0,
            "radial grid must be positive");
    if (cfg.level)
      require(*cfg.level >= 0, "--level must be >= 0");
    break;
  case Command::verify:
    require(cfg.n >= 3, "--n must be >= 3");
    break;
  case Command::phase_shift:
    require(cfg.eps.has_value() != cfg.eps_grid.has_value(),
            "pass exactly one of --eps and an --eps-start/--eps-stop/--eps-count grid");
    break;
  }
}

std::string execute(const RunConfig &cfg) {
  validate(cfg);
  switch (cfg.command) {
  case Command::spectrum:
    return run_spectrum(cfg);
  case Command::phase_shift:
    return run_phase_shift(cfg);
  case Command::coefficients:
    return run_coefficients(cfg);
  case Command::green:
    return run_green(cfg);
  case Command::density:
    return run_density(cfg);
  case Command::wavefunction:
    return run_wavefunction(cfg);
  case Command::verify:
    return run_verify(cfg);
  }
  throw ConfigError("unknown command");
}

int run(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
  try {
    out << execute(cfg);
    return 0;
  } catch (const Error &e) {
    err << "error: " << e.name() << ": " << e.what() << '\n';
    switch (e.kind()) {
    case ErrorKind::config:
      return 1;
    case ErrorKind::domain:
      return 2;
    case ErrorKind::convergence:
      return 3;
    }
    return 1;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

} // namespace dcoul::cli
