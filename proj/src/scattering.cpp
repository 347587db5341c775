#include "dcoul/scattering.hpp"

#include "dcoul/errors.hpp"
#include "dcoul/specfun.hpp"

#include <Eigen/Dense>
#include <fmt/format.h>

#include <cmath>

namespace dcoul::scattering {

using specfun::pi;

double PhaseShiftResult::psi_n(int n) const {
  return psi + lam * (theta - 0.5 * pi) -
         Phi * std::log(2.0 * n * std::sin(theta));
}

PhaseShiftResult phase_shift(const pollaczek::PollaczekParams &params,
                             double theta) {
  params.validate();
  if (!(theta > 0.0 && theta < pi))
    throw BranchError("phase_shift: theta must lie in (0, pi)");
  PhaseShiftResult r;
  r.theta = theta;
  r.lam = params.lam;
  const double s = std::sin(theta);
  r.Phi = (params.a * std::cos(theta) + params.b) / s;
  const auto lg = specfun::log_gamma(specfun::complex(params.lam, r.Phi));
  r.psi = lg.imag();
  r.amplitude = std::exp(std::log(2.0) + (0.5 * pi - theta) * r.Phi - lg.real() -
                         params.lam * std::log(2.0 * s));
  return r;
}

PhaseShiftResult phase_shift(const model::PhysicalParams &p, double eps) {
  const auto d = model::derive(p);
  const auto e = model::EnergyPoint::at(eps);
  if (e.regime == model::Regime::bound)
    throw BranchError(fmt::format("phase_shift needs |eps| > 1, got {}", eps));
  const auto tp = model::theta_phi(d, e);
  const auto pp = model::map_to_pollaczek(d, e);
  PhaseShiftResult r = phase_shift(pp.params, tp.theta.real());
  r.eps = eps;
  return r;
}

void unwrap_psi(std::vector<PhaseShiftResult> &sweep) {
  for (std::size_t i = 1; i < sweep.size(); ++i) {
    const double prev = sweep[i - 1].psi;
    double &psi = sweep[i].psi;
    while (psi - prev > pi)
      psi -= 2.0 * pi;
    while (psi - prev < -pi)
      psi += 2.0 * pi;
  }
}

std::vector<PhaseShiftResult> phase_shift_sweep(const model::PhysicalParams &p,
                                                const std::vector<double> &eps) {
  std::vector<PhaseShiftResult> out;
  out.reserve(eps.size());
  for (double e : eps)
    out.push_back(phase_shift(p, e));
  unwrap_psi(out);
  return out;
}

namespace {

double wrap(double a) {
  a = std::remainder(a, 2.0 * pi);
  return a <= -pi ? a + 2.0 * pi : a;
}

// Least-squares coefficients of y on the given columns.
Eigen::VectorXd regress(const Eigen::MatrixXd &design, const Eigen::VectorXd &y) {
  return design.colPivHouseholderQr().solve(y);
}

void check_window(const pollaczek::PolynomialSequence &seq, int begin, int end) {
  if (seq.normalization != pollaczek::Normalization::orthonormal)
    throw InvalidParameterError("expected an orthonormal sequence");
  if (begin < 1 || end <= begin + 2 || end >= seq.size())
    throw InvalidParameterError(fmt::format(
        "window [{}, {}) must satisfy 1 <= begin, end - begin > 2 and "
        "end < sequence length {}",
        begin, end, seq.size()));
}

} // namespace

AsymptoticFit fit_asymptotics(const pollaczek::PolynomialSequence &seq,
                              int begin, int end) {
  check_window(seq, begin, end);
  if (!(std::abs(seq.argument) < 1.0))
    throw FitError(fmt::format("argument x = {} is outside (-1, 1); the "
                               "sequence is not oscillatory",
                               seq.argument));
  int sign_changes = 0;
  double num = 0.0;
  double den = 0.0;
  for (int n = begin; n < end; ++n) {
    if ((seq[n] < 0.0) != (seq[n + 1] < 0.0))
      ++sign_changes;
    num += (seq[n + 1] + seq[n - 1]) * seq[n];
    den += 2.0 * seq[n] * seq[n];
  }
  if (sign_changes < 2 || !(den > 0.0))
    throw FitError("sequence shows no oscillation inside the fit window");
  const double c0 = num / den;
  if (!(std::abs(c0) < 1.0))
    throw FitError(fmt::format("ratio estimate cos(theta) = {} is not in "
                               "(-1, 1)",
                               c0));

  const auto &par = seq.params;
  const int m = end - begin;
  AsymptoticFit fit;
  fit.window_begin = begin;
  fit.window_end = end;
  fit.theta = std::acos(c0);

  Eigen::VectorXd phase(m);
  Eigen::VectorXd modulus(m);
  Eigen::MatrixXd design3(m, 3);
  Eigen::MatrixXd design2(m, 2);
  for (int i = 0; i < m; ++i) {
    const double n = begin + i;
    design3(i, 0) = n;
    design3(i, 1) = 1.0;
    design3(i, 2) = 1.0 / n;
    design2(i, 0) = 1.0;
    design2(i, 1) = 1.0 / n;
  }

  for (int it = 0; it < 20; ++it) {
    fit.iterations = it + 1;
    fit.Phi = (par.a * std::cos(fit.theta) + par.b) / std::sin(fit.theta);
    double prev = 0.0;
    double prev_step = 0.0;
    for (int i = 0; i < m; ++i) {
      const int n = begin + i;
      const double step = fit.theta - fit.Phi * std::log1p(1.0 / n);
      const double re = seq[n];
      const double im = (seq[n] * std::cos(step) - seq[n + 1]) / std::sin(step);
      const double raw = std::atan2(im, re);
      const double ph = i == 0 ? raw : prev + prev_step + wrap(raw - prev - prev_step);
      phase(i) = ph;
      modulus(i) = std::hypot(re, im);
      prev = ph;
      prev_step = step;
    }
    Eigen::VectorXd y(m);
    for (int i = 0; i < m; ++i)
      y(i) = phase(i) + fit.Phi * std::log(double(begin + i));
    const double theta_new = regress(design3, y)(0);
    if (!(theta_new > 0.0 && theta_new < pi))
      throw FitError(fmt::format("fitted theta = {} left (0, pi)", theta_new));
    const double change = std::abs(theta_new - fit.theta);
    fit.theta = theta_new;
    if (change < 1e-14)
      break;
  }
  fit.Phi = (par.a * std::cos(fit.theta) + par.b) / std::sin(fit.theta);

  Eigen::VectorXd resid(m);
  const double s = std::sin(fit.theta);
  for (int i = 0; i < m; ++i) {
    const double n = begin + i;
    resid(i) = phase(i) - (n * fit.theta - fit.Phi * std::log(2.0 * n * s) +
                           par.lam * (fit.theta - 0.5 * pi));
  }
  fit.psi = wrap(regress(design2, resid)(0));
  fit.amplitude = regress(design2, modulus)(0);
  return fit;
}

namespace {

PhaseShiftResult analytic_for(const pollaczek::PolynomialSequence &seq) {
  if (!(std::abs(seq.argument) < 1.0))
    throw BranchError("agreement checks need |x| < 1");
  return phase_shift(seq.params, std::acos(seq.argument));
}

} // namespace

AgreementBand agreement_band(const pollaczek::PolynomialSequence &seq,
                             int begin, int end) {
  check_window(seq, begin, end);
  const PhaseShiftResult ps = analytic_for(seq);
  const int mid = begin + (end - begin) / 2;
  AgreementBand band;
  for (int n = begin; n < end; ++n) {
    const double approx = ps.amplitude * std::cos(n * ps.theta + ps.psi_n(n));
    const double scaled = n * std::abs(seq[n] - approx);
    double &half = n < mid ? band.C_first_half : band.C_second_half;
    half = std::max(half, scaled);
  }
  band.C = std::max(band.C_first_half, band.C_second_half);
  band.holds = band.C_second_half <= 2.0 * band.C_first_half &&
               band.C_first_half <= 2.0 * band.C_second_half;
  return band;
}

double windowed_relative_error(const pollaczek::PolynomialSequence &seq,
                               int begin, int end) {
  check_window(seq, begin, end);
  const PhaseShiftResult ps = analytic_for(seq);
  double worst = 0.0;
  for (int n = begin; n < end; ++n) {
    const double approx = ps.amplitude * std::cos(n * ps.theta + ps.psi_n(n));
    worst = std::max(worst, std::abs(seq[n] - approx));
  }
  return worst / ps.amplitude;
}

} // namespace dcoul::scattering
