#include "dcoul/wavefunction.hpp"

#include "dcoul/errors.hpp"
#include "dcoul/specfun.hpp"
#include "dcoul/spectrum.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace dcoul::wavefunction {

using specfun::log_abs_gamma;

namespace {

double log_normalization(int n, double gamma, double omega) {
  return 0.5 * (std::log(omega) + log_abs_gamma(n + 1.0) -
                log_abs_gamma(n + 2.0 * gamma + 2.0));
}

void require_gamma(double gamma, double omega) {
  if (!(gamma > -1.0))
    throw InvalidParameterError("basis: gamma must exceed -1");
  if (!(omega > 0.0))
    throw InvalidParameterError("basis: omega must be > 0");
}

// L_n^nu, L_n^{nu+1} and L_n^{nu+2} for n < count at y.
struct LaguerreTriple {
  std::vector<double> l0, l1, l2;
};

LaguerreTriple laguerre_triple(int count, double nu, double y) {
  LaguerreTriple t;
  auto fill = [count, y](std::vector<double> &v, double a) {
    v.assign(count, 0.0);
    if (count > 0)
      v[0] = 1.0;
    if (count > 1)
      v[1] = 1.0 + a - y;
    for (int k = 1; k + 1 < count; ++k)
      v[k + 1] = ((2.0 * k + a + 1.0 - y) * v[k] - (k + a) * v[k - 1]) / (k + 1.0);
  };
  fill(t.l0, nu);
  fill(t.l1, nu + 1.0);
  fill(t.l2, nu + 2.0);
  return t;
}

} // namespace

BasisElement BasisElement::make(int n, double gamma, double omega) {
  if (n < 0)
    throw InvalidParameterError("basis: n must be >= 0");
  require_gamma(gamma, omega);
  return {n, gamma, omega, std::exp(log_normalization(n, gamma, omega))};
}

BasisSamples basis_samples(double gamma, double omega, int count, double r) {
  require_gamma(gamma, omega);
  if (!(r > 0.0))
    throw InvalidParameterError("basis: r must be > 0");
  BasisSamples s;
  s.value.resize(count);
  s.first.resize(count);
  s.second.resize(count);
  const double y = omega * r;
  const double c = gamma + 1.0;
  const auto L = laguerre_triple(count, 2.0 * gamma + 1.0, y);
  const double log_pref = -0.5 * y + c * std::log(y);
  const double u = c / y - 0.5;
  for (int n = 0; n < count; ++n) {
    const double An = std::exp(log_normalization(n, gamma, omega) + log_pref);
    const double l = L.l0[n];
    const double dl = n >= 1 ? -L.l1[n - 1] : 0.0;
    const double ddl = n >= 2 ? L.l2[n - 2] : 0.0;
    s.value[n] = An * l;
    s.first[n] = omega * An * (u * l + dl);
    s.second[n] =
        omega * omega * An * ((u * u - c / (y * y)) * l + 2.0 * u * dl + ddl);
  }
  return s;
}

double basis_value(const BasisElement &e, double r) {
  return basis_samples(e.gamma, e.omega, e.n + 1, r).value[e.n];
}

double basis_derivative(const BasisElement &e, double r) {
  return basis_samples(e.gamma, e.omega, e.n + 1, r).first[e.n];
}

double basis_second_derivative(const BasisElement &e, double r) {
  return basis_samples(e.gamma, e.omega, e.n + 1, r).second[e.n];
}

const char *to_string(CoefficientSource s) {
  switch (s) {
  case CoefficientSource::recursion:
    return "recursion";
  case CoefficientSource::minimal:
    return "minimal";
  case CoefficientSource::closed_form:
    return "closed_form";
  case CoefficientSource::closed_form_displayed:
    return "closed_form_displayed";
  }
  return "?";
}

CoefficientVector coefficients_recursion(const model::DerivedParams &d,
                                         double eps, int N) {
  if (N < 0)
    throw InvalidParameterError("coefficients: N must be >= 0");
  const auto e = model::EnergyPoint::at(eps);
  const auto pp = model::map_to_pollaczek(d, e);
  const auto rc = model::recursion_coefficients(d);
  CoefficientVector out;
  out.eps = eps;
  out.source = CoefficientSource::recursion;
  std::vector<double> f(static_cast<std::size_t>(N) + 1);
  f[0] = 1.0;
  for (int n = 0; n < N; ++n) {
    const double cn = rc.diag(n) * pp.x + pp.params.b;
    const double back = n == 0 ? 0.0 : rc.offdiag(n - 1) * f[n - 1];
    f[n + 1] = (cn * f[n] - back) / rc.offdiag(n);
  }
  out.values.assign(f.begin(), f.end());
  return out;
}

CoefficientVector coefficients_minimal(const model::DerivedParams &d,
                                       double eps, int N) {
  const auto f = spectrum::minimal_solution(d, eps, N);
  CoefficientVector out;
  out.eps = eps;
  out.source = CoefficientSource::minimal;
  out.values.assign(f.begin(), f.end());
  return out;
}

CoefficientVector coefficients_closed_form(const model::DerivedParams &d,
                                           double eps, int N,
                                           ClosedFormVariant variant) {
  if (N < 0)
    throw InvalidParameterError("coefficients: N must be >= 0");
  const auto e = model::EnergyPoint::at(eps);
  const auto tp = model::theta_phi(d, e);
  const double g = d.effective_gamma;
  const complex i(0.0, 1.0);
  const complex iphi = i * tp.Phi;
  const complex z = 1.0 / (tp.exp_i_theta * tp.exp_i_theta);
  const double log_g2 = log_abs_gamma(2.0 * g + 2.0);
  const bool displayed = variant == ClosedFormVariant::displayed;

  CoefficientVector out;
  out.eps = eps;
  out.source = displayed ? CoefficientSource::closed_form_displayed
                         : CoefficientSource::closed_form;
  out.values.resize(static_cast<std::size_t>(N) + 1);
  complex phase = 1.0;
  for (int n = 0; n <= N; ++n) {
    double log_pref = log_g2 - log_abs_gamma(n + 2.0 * g + 2.0) -
                      log_abs_gamma(n + 1.0);
    if (displayed)
      log_pref += std::log((n + g + 1.0) / (g + 1.0));
    const complex bottom = displayed ? -double(n) - g - 1.0 + iphi
                                     : -double(n) - g + iphi;
    const complex hyp = specfun::hyp2f1_terminating(n, g + 1.0 + iphi, bottom, z);
    out.values[n] = std::exp(0.5 * log_pref) * phase *
                    specfun::pochhammer(g + 1.0 - iphi, n) * hyp;
    phase *= tp.exp_i_theta;
  }
  return out;
}

ClosedFormComparison compare_closed_form(const model::DerivedParams &d,
                                         double eps, int N, double tol) {
  const auto rec = coefficients_recursion(d, eps, N);
  auto deviation = [&](ClosedFormVariant v) {
    const auto cf = coefficients_closed_form(d, eps, N, v);
    double worst = 0.0;
    for (int n = 0; n <= N; ++n)
      worst = std::max(worst, std::abs(cf.values[n] / rec.values[n] - 1.0));
    return worst;
  };
  ClosedFormComparison cmp;
  cmp.working_deviation = deviation(ClosedFormVariant::working);
  cmp.displayed_deviation = deviation(ClosedFormVariant::displayed);
  cmp.working_passes = cmp.working_deviation <= tol;
  cmp.displayed_passes = cmp.displayed_deviation <= tol;
  if (!cmp.displayed_passes && cmp.working_passes)
    cmp.note = "displayed representation deviates; bottom parameter "
               "-n-g+i Phi with prefactor sqrt(G(2g+2)/(G(n+2g+2) n!)) agrees";
  else if (!cmp.working_passes)
    cmp.note = "closed form disagrees with the recurrence; recurrence is "
               "normative";
  return cmp;
}

namespace {

double balance_prefactor(const model::DerivedParams &d, double eps) {
  const double den = eps + d.gamma / d.physical.kappa;
  if (std::abs(den) < 1e-12)
    throw KineticBalanceSingular(fmt::format(
        "eps + gamma/kappa = {:.3e} at eps = {}", den, eps));
  return d.physical.compton / den;
}

struct UpperSums {
  double value = 0.0, first = 0.0, second = 0.0;
};

UpperSums upper_sums(const CoefficientVector &coeffs,
                     const model::DerivedParams &d, double r, int N_trunc) {
  const auto s = basis_samples(d.effective_gamma, d.physical.omega, N_trunc, r);
  UpperSums u;
  for (int n = 0; n < N_trunc; ++n) {
    const double f = coeffs.values[n].real();
    u.value += f * s.value[n];
    u.first += f * s.first[n];
    u.second += f * s.second[n];
  }
  return u;
}

void check_trunc(const CoefficientVector &coeffs, int N_trunc) {
  if (N_trunc < 1 || N_trunc > coeffs.size())
    throw InvalidParameterError(fmt::format(
        "N_trunc = {} must lie in [1, {}]", N_trunc, coeffs.size()));
}

void fill_tail(Reconstruction &rec, const CoefficientVector &coeffs,
               int N_trunc) {
  double total = 0.0;
  double tail = 0.0;
  for (int n = 0; n < coeffs.size(); ++n) {
    const double w = std::norm(coeffs.values[n]);
    total += w;
    if (n >= N_trunc)
      tail += w;
  }
  rec.tail_computable = N_trunc < coeffs.size() && total > 0.0;
  rec.tail_fraction = rec.tail_computable ? tail / total : 0.0;
}

} // namespace

double lower_component(const BasisElement &e, double r,
                       const model::DerivedParams &d, double eps) {
  const double k = balance_prefactor(d, eps);
  const auto s = basis_samples(e.gamma, e.omega, e.n + 1, r);
  const double c1 = -d.physical.Z / d.physical.kappa + d.gamma / r;
  return k * (c1 * s.value[e.n] + s.first[e.n]);
}

Reconstruction reconstruct_upper(const CoefficientVector &coeffs,
                                 const model::DerivedParams &d,
                                 std::span<const double> r_grid, int N_trunc) {
  check_trunc(coeffs, N_trunc);
  Reconstruction rec;
  rec.values.reserve(r_grid.size());
  for (double r : r_grid)
    rec.values.push_back(upper_sums(coeffs, d, r, N_trunc).value);
  fill_tail(rec, coeffs, N_trunc);
  return rec;
}

Reconstruction reconstruct_lower(const CoefficientVector &coeffs,
                                 const model::DerivedParams &d, double eps,
                                 std::span<const double> r_grid, int N_trunc) {
  check_trunc(coeffs, N_trunc);
  const double k = balance_prefactor(d, eps);
  Reconstruction rec;
  rec.values.reserve(r_grid.size());
  for (double r : r_grid) {
    const auto u = upper_sums(coeffs, d, r, N_trunc);
    const double c1 = -d.physical.Z / d.physical.kappa + d.gamma / r;
    rec.values.push_back(k * (c1 * u.value + u.first));
  }
  fill_tail(rec, coeffs, N_trunc);
  return rec;
}

std::vector<double> UniformGrid::points() const {
  std::vector<double> out(static_cast<std::size_t>(std::max(count, 0)));
  for (int i = 0; i < count; ++i)
    out[i] = at(i);
  return out;
}

double schrodinger_residual(std::span<const double> phi, const UniformGrid &grid,
                            const model::DerivedParams &d, double eps) {
  if (grid.count < 5 || static_cast<int>(phi.size()) != grid.count)
    throw GridError(fmt::format("residual needs >= 5 samples matching the "
                                "grid (got {} samples, grid count {})",
                                phi.size(), grid.count));
  if (!(grid.r0 > 0.0) || !(grid.h > 0.0))
    throw GridError("residual grid needs r0 > 0 and h > 0");
  const double g = d.effective_gamma;
  const double lam = d.physical.compton;
  const double K = (1.0 - eps) * (1.0 + eps) / (lam * lam);
  const double h2 = 12.0 * grid.h * grid.h;
  double worst = 0.0;
  double scale = 0.0;
  for (int i = 2; i + 2 < grid.count; ++i) {
    const double r = grid.at(i);
    const double d2 = (-phi[i - 2] + 16.0 * phi[i - 1] - 30.0 * phi[i] +
                       16.0 * phi[i + 1] - phi[i + 2]) /
                      h2;
    const double t_cent = g * (g + 1.0) / (r * r) * phi[i];
    const double t_coul = 2.0 * d.physical.Z * eps / r * phi[i];
    const double t_const = K * phi[i];
    worst = std::max(worst, std::abs(-d2 + t_cent + t_coul + t_const));
    scale = std::max(scale, std::abs(d2) + std::abs(t_cent) + std::abs(t_coul) +
                                std::abs(t_const));
  }
  return scale > 0.0 ? worst / scale : 0.0;
}

double dirac_residual(const CoefficientVector &coeffs,
                      const model::DerivedParams &d, double eps,
                      std::span<const double> r_grid, int N_trunc) {
  check_trunc(coeffs, N_trunc);
  const double k = balance_prefactor(d, eps);
  const double lam = d.physical.compton;
  const double Z = d.physical.Z;
  const double kap = d.physical.kappa;
  const double xi = d.xi();
  double worst = 0.0;
  double scale = 0.0;
  for (double r : r_grid) {
    const auto u = upper_sums(coeffs, d, r, N_trunc);
    const double c1 = -Z / kap + d.gamma / r;
    const double lower = k * (c1 * u.value + u.first);
    const double lower_d =
        k * (-d.gamma / (r * r) * u.value + c1 * u.first + u.second);
    const auto [cp, cm] = model::inverse_spinor_rotation(xi, u.value, lower);
    const auto [dcp, dcm] = model::inverse_spinor_rotation(xi, u.first, lower_d);
    const double pot = lam * lam * Z / r;
    const double row1[3] = {(1.0 + pot - eps) * cp, lam * kap / r * cm, -lam * dcm};
    const double row2[3] = {lam * kap / r * cp, lam * dcp, (-1.0 + pot - eps) * cm};
    for (const double *row : {row1, row2}) {
      worst = std::max(worst, std::abs(row[0] + row[1] + row[2]));
      scale = std::max(scale,
                       std::abs(row[0]) + std::abs(row[1]) + std::abs(row[2]));
    }
  }
  return scale > 0.0 ? worst / scale : 0.0;
}

namespace {

Matrix make_matrix(int n) {
  Matrix m;
  m.rows = n;
  m.cols = n;
  m.data.assign(std::size_t(n) * n, 0.0);
  return m;
}

Matrix weighted_overlap(double gamma, double omega, int N, double alpha) {
  require_gamma(gamma, omega);
  if (N < 1)
    throw InvalidParameterError("gram matrix: N must be >= 1");
  const auto rule = specfun::gauss_laguerre(N + 2, alpha);
  std::vector<double> A(N);
  for (int n = 0; n < N; ++n)
    A[n] = std::exp(log_normalization(n, gamma, omega));
  Matrix m = make_matrix(N);
  for (int k = 0; k < rule.order(); ++k) {
    const auto L = laguerre_triple(N, 2.0 * gamma + 1.0, rule.nodes[k]);
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j)
        m(i, j) += rule.weights[k] * A[i] * A[j] * L.l0[i] * L.l0[j] / omega;
  }
  return m;
}

} // namespace

Matrix gram_matrix(double gamma, double omega, int N) {
  return weighted_overlap(gamma, omega, N, 2.0 * gamma + 2.0);
}

Matrix sturmian_gram_matrix(double gamma, double omega, int N) {
  return weighted_overlap(gamma, omega, N, 2.0 * gamma + 1.0);
}

double identity_deviation(const Matrix &m) {
  double worst = 0.0;
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j)
      worst = std::max(worst, std::abs(m(i, j) - (i == j ? 1.0 : 0.0)));
  return worst;
}

TridiagonalDiagnostic verify_tridiagonal(const model::DerivedParams &d,
                                         double eps, int N) {
  if (N < 3)
    throw InvalidParameterError("verify_tridiagonal: N must be >= 3");
  if (N > max_tridiagonal_order)
    throw QuadratureOrderError(fmt::format(
        "verify_tridiagonal: N = {} exceeds the quadrature budget of {}", N,
        max_tridiagonal_order));
  const auto e = model::EnergyPoint::at(eps);
  const auto pp = model::map_to_pollaczek(d, e);
  const auto rc = model::recursion_coefficients(d);

  const double g = d.effective_gamma;
  const double w = d.physical.omega;
  const double c = g + 1.0;
  const double lam = d.physical.compton;
  const double coul = 2.0 * d.physical.Z * eps * w;
  const double K = (1.0 - eps) * (1.0 + eps) / (lam * lam);

  TridiagonalDiagnostic diag;
  diag.quadrature_order = N + 4;
  const auto rule = specfun::gauss_laguerre(diag.quadrature_order, 2.0 * g + 1.0);
  std::vector<double> A(N);
  for (int n = 0; n < N; ++n)
    A[n] = std::exp(log_normalization(n, g, w));

  diag.matrix = make_matrix(N);
  std::vector<double> action(N);
  for (int k = 0; k < rule.order(); ++k) {
    const double y = rule.nodes[k];
    const auto L = laguerre_triple(N, 2.0 * g + 1.0, y);
    for (int n = 0; n < N; ++n) {
      const double l = L.l0[n];
      const double dl = n >= 1 ? -L.l1[n - 1] : 0.0;
      const double ddl = n >= 2 ? L.l2[n - 2] : 0.0;
      // y * (operator acting on zeta_n) / (A_n e^{-y/2} y^{c})
      action[n] = w * w * (c * l - 0.25 * y * l - (2.0 * c - y) * dl - y * ddl) +
                  coul * l + K * y * l;
    }
    for (int m = 0; m < N; ++m)
      for (int n = 0; n < N; ++n)
        diag.matrix(m, n) +=
            rule.weights[k] * A[m] * A[n] * L.l0[m] * action[n] / w;
  }

  double band = 0.0;
  double off = 0.0;
  for (int m = 0; m < N; ++m)
    for (int n = 0; n < N; ++n) {
      const double v = std::abs(diag.matrix(m, n));
      if (std::abs(m - n) <= 1)
        band = std::max(band, v);
      else
        off = std::max(off, v);
    }
  diag.off_band_ratio = band > 0.0 ? off / band : 0.0;

  for (int n = 0; n + 1 < N; ++n) {
    const double extracted =
        -diag.matrix(n, n) * rc.offdiag(n) / diag.matrix(n, n + 1);
    const double expected = rc.diag(n) * pp.x + pp.params.b;
    diag.bracket_deviation = std::max(
        diag.bracket_deviation, std::abs(extracted - expected) / std::abs(expected));
  }
  return diag;
}

std::string format_matrix(const Matrix &m, double gamma, double eps) {
  std::string out = fmt::format("N {}\ngamma {:.17g}\neps {:.17g}\n", m.rows,
                                gamma, eps);
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) {
      if (j)
        out += ' ';
      out += fmt::format("{:.17g}", m(i, j));
    }
    out += '\n';
  }
  return out;
}

} // namespace dcoul::wavefunction
