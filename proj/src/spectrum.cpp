#include "dcoul/spectrum.hpp"

#include "dcoul/errors.hpp"

#include <fmt/format.h>

#include <cmath>

namespace dcoul::spectrum {

namespace {

void require_attractive(double Z) {
  if (!(Z < 0.0))
    throw RepulsiveError(fmt::format(
        "bound states require an attractive coupling (Z < 0), got Z = {}", Z));
}

// u = (compton Z / (n + g + 1))^2 for level n.
double level_u(const model::DerivedParams &d, int n) {
  if (n < 0)
    throw InvalidParameterError("level index n must be >= 0");
  const double t = d.physical.compton * d.physical.Z / (n + d.effective_gamma + 1.0);
  return t * t;
}

} // namespace

double bound_energy(const model::PhysicalParams &p, int n) {
  require_attractive(p.Z);
  const auto d = model::derive(p);
  return 1.0 / std::sqrt(1.0 + level_u(d, n));
}

double conjugate_bound_energy(const model::PhysicalParams &p, int n) {
  if (!(p.Z > 0.0))
    throw RepulsiveError(fmt::format(
        "negative-energy bound states require Z > 0, got Z = {}", p.Z));
  const auto image = model::negative_energy_map(p, model::EnergyPoint::at(0.0));
  return -bound_energy(image.params, n);
}

double bound_energy_offset(const model::PhysicalParams &p, int n) {
  require_attractive(p.Z);
  const auto d = model::derive(p);
  const double u = level_u(d, n);
  const double r = std::sqrt(1.0 + u);
  return -u / (r * (1.0 + r));
}

double sommerfeld_energy(double Z, int kappa, double compton, int n_r) {
  const double za = Z * compton;
  const double gs = std::sqrt(double(kappa) * kappa - za * za);
  const double t = za / (n_r + gs);
  return 1.0 / std::sqrt(1.0 + t * t);
}

int sommerfeld_radial_number(int kappa, int n) {
  return kappa > 0 ? n + 1 : n;
}

SpectrumTable spectrum_table(const model::PhysicalParams &p, int n_max) {
  if (n_max < 0)
    throw InvalidParameterError("spectrum_table: n_max must be >= 0");
  SpectrumTable table;
  table.entries.reserve(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) {
    SpectrumEntry e;
    e.n = n;
    e.kappa = p.kappa;
    e.eps = bound_energy(p, n);
    const double ref = sommerfeld_energy(p.Z, p.kappa, p.compton,
                                         sommerfeld_radial_number(p.kappa, n));
    e.oracle_residual = std::abs(e.eps - ref) / ref;
    table.entries.push_back(e);
  }
  return table;
}

double quantization_condition(const model::DerivedParams &d, double eps) {
  require_attractive(d.physical.Z);
  const auto e = model::EnergyPoint::at(eps);
  if (e.regime == model::Regime::threshold)
    throw ThresholdError(fmt::format("quantization condition at threshold "
                                     "eps = {}",
                                     eps));
  if (e.regime != model::Regime::bound)
    throw BranchError(fmt::format("quantization condition needs |eps| < 1, "
                                  "got {}",
                                  eps));
  const double s = std::sqrt((1.0 - eps) * (1.0 + eps));
  return d.pollaczek_lambda() + d.physical.compton * d.physical.Z * eps / s;
}

double nonrelativistic_limit_check(const model::PhysicalParams &p, int n) {
  return bound_energy_offset(p, n) / (p.compton * p.compton);
}

int nonrelativistic_principal_number(int kappa, int n) {
  return kappa > 0 ? n + kappa + 1 : n - kappa;
}

namespace {

struct MillerSweep {
  std::vector<double> f; // f_0 .. f_M, arbitrary scale
  double c0 = 0.0;
  double b0 = 0.0;
  int start = 0;
};

MillerSweep miller(const model::DerivedParams &d, double eps, int N) {
  if (N < 1)
    throw InvalidParameterError("Miller recurrence: N must be >= 1");
  const auto e = model::EnergyPoint::at(eps);
  if (e.regime == model::Regime::threshold)
    throw ThresholdError(fmt::format("Miller recurrence at threshold eps = {}",
                                     eps));
  const auto pp = model::map_to_pollaczek(d, e);
  const auto coeffs = model::recursion_coefficients(d);
  const double x = pp.x;
  const double b = pp.params.b;

  MillerSweep out;
  out.start = N + miller_guard;
  const int M = out.start;
  out.f.assign(static_cast<std::size_t>(M) + 2, 0.0);
  out.f[M] = 1.0;
  for (int n = M; n >= 1; --n) {
    const double cn = coeffs.diag(n) * x + b;
    out.f[n - 1] =
        (cn * out.f[n] - coeffs.offdiag(n) * out.f[n + 1]) / coeffs.offdiag(n - 1);
    if (std::abs(out.f[n - 1]) > 1e150) {
      for (int k = n - 1; k <= M; ++k)
        out.f[k] *= 1e-150;
    }
  }
  out.f.resize(static_cast<std::size_t>(M) + 1);
  out.c0 = coeffs.diag(0) * x + b;
  out.b0 = coeffs.offdiag(0);
  return out;
}

} // namespace

MinimalSolutionDiagnostic minimal_solution_detect(const model::DerivedParams &d,
                                                  double eps, int N) {
  const MillerSweep sw = miller(d, eps, N);
  MinimalSolutionDiagnostic diag;
  diag.start_index = sw.start;
  const double lhs = sw.c0 * sw.f[0];
  const double rhs = sw.b0 * sw.f[1];
  const double scale = std::abs(lhs) + std::abs(rhs);
  diag.defect = scale > 0.0 ? std::abs(lhs - rhs) / scale : 0.0;
  diag.backward_ratio = sw.f[0] != 0.0 ? sw.f[1] / sw.f[0] : HUGE_VAL;
  diag.forward_ratio = sw.c0 / sw.b0;
  return diag;
}

std::vector<double> minimal_solution(const model::DerivedParams &d, double eps,
                                     int N) {
  const MillerSweep sw = miller(d, eps, N);
  if (sw.f[0] == 0.0)
    throw DegenerateError("minimal_solution: backward sweep gives f_0 = 0");
  std::vector<double> out(sw.f.begin(), sw.f.begin() + N + 1);
  const double f0 = out[0];
  for (double &v : out)
    v /= f0;
  return out;
}

} // namespace dcoul::spectrum
