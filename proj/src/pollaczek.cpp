#include "dcoul/pollaczek.hpp"

#include "dcoul/errors.hpp"
#include "dcoul/specfun.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace dcoul::pollaczek {

using specfun::log_abs_gamma;
using specfun::pi;

void PollaczekParams::validate() const {
  if (!std::isfinite(lam) || !std::isfinite(a) || !std::isfinite(b))
    throw InvalidParameterError("PollaczekParams: non-finite field");
  if (!(lam > 0.0))
    throw InvalidParameterError("PollaczekParams: lam must be > 0, got " +
                                std::to_string(lam));
}

const char *to_string(Normalization n) {
  switch (n) {
  case Normalization::P:
    return "P";
  case Normalization::Pstar:
    return "Pstar";
  case Normalization::Q:
    return "Q";
  case Normalization::orthonormal:
    return "p_orthonormal";
  }
  return "?";
}

const char *to_string(BoundBranch b) {
  return b == BoundBranch::upper ? "upper" : "lower";
}

namespace {

template <class T, class X>
std::vector<T> forward_P(const PollaczekParams &p, X x, int N) {
  if (N < 0)
    throw InvalidParameterError("Pollaczek recurrence: N must be >= 0");
  p.validate();
  std::vector<T> v(static_cast<std::size_t>(N) + 1);
  v[0] = T(1);
  if (N >= 1)
    v[1] = T(2) * (T(p.lam) + T(p.a)) * T(x) + T(2) * T(p.b);
  for (int n = 1; n < N; ++n) {
    const T lhs = T(2) * ((T(n) + T(p.lam) + T(p.a)) * T(x) + T(p.b));
    v[n + 1] = (lhs * v[n] - (T(n) + T(2) * T(p.lam) - T(1)) * v[n - 1]) /
               T(n + 1);
  }
  return v;
}

} // namespace

PolynomialSequence eval_P(const PollaczekParams &params, double x, int N) {
  PolynomialSequence seq;
  seq.values = forward_P<double>(params, x, N);
  seq.argument = x;
  seq.normalization = Normalization::P;
  seq.params = params;
  return seq;
}

std::vector<complex> eval_P(const PollaczekParams &params, complex x, int N) {
  return forward_P<complex>(params, x, N);
}

std::vector<extended_float> eval_P_extended(const PollaczekParams &params,
                                            double x, int N) {
  return forward_P<extended_float>(params, x, N);
}

double symmetric_offdiag(const PollaczekParams &params, int n) {
  return 0.5 * std::sqrt((n + 1.0) * (n + 2.0 * params.lam));
}

PolynomialSequence eval_Pstar(const PollaczekParams &params, double x, int N) {
  if (N < 0)
    throw InvalidParameterError("eval_Pstar: N must be >= 0");
  params.validate();
  const double c0 = symmetric_offdiag(params, 0);
  if (!(c0 > 0.0) || !std::isfinite(c0))
    throw DegenerateError("eval_Pstar: symmetric off-diagonal b_0 vanishes");

  PolynomialSequence seq;
  seq.argument = x;
  seq.normalization = Normalization::Pstar;
  seq.params = params;
  seq.values.assign(static_cast<std::size_t>(N) + 1, 0.0);
  if (N >= 1)
    seq.values[1] = 1.0 / c0;
  for (int n = 1; n < N; ++n) {
    const double diag = (n + params.lam + params.a) * x + params.b;
    seq.values[n + 1] = (diag * seq.values[n] -
                         symmetric_offdiag(params, n - 1) * seq.values[n - 1]) /
                        symmetric_offdiag(params, n);
  }
  return seq;
}

PolynomialSequence to_symmetric_Q(const PolynomialSequence &seq) {
  if (seq.normalization != Normalization::P)
    throw InvalidParameterError("to_symmetric_Q: input must be in P "
                                "normalization");
  const double lam = seq.params.lam;
  const double log_g2 = log_abs_gamma(2.0 * lam + 1.0);
  PolynomialSequence out = seq;
  out.normalization = Normalization::Q;
  for (int n = 0; n < seq.size(); ++n) {
    const double log_scale =
        0.5 * (log_abs_gamma(n + 1.0) + log_g2 - log_abs_gamma(n + 2.0 * lam));
    out.values[n] = seq.values[n] * std::exp(log_scale);
  }
  return out;
}

PolynomialSequence to_orthonormal(const PolynomialSequence &seq) {
  if (seq.normalization != Normalization::P)
    throw InvalidParameterError("to_orthonormal: input must be in P "
                                "normalization");
  const double lam = seq.params.lam;
  const double shift = lam + seq.params.a;
  if (!(shift > 0.0))
    throw InvalidParameterError("to_orthonormal: requires lam + a > 0");
  PolynomialSequence out = seq;
  out.normalization = Normalization::orthonormal;
  for (int n = 0; n < seq.size(); ++n) {
    const double log_scale =
        0.5 * (log_abs_gamma(n + 1.0) + std::log(shift + n) -
               log_abs_gamma(n + 2.0 * lam));
    out.values[n] = seq.values[n] * std::exp(log_scale);
  }
  return out;
}

RecursionCoefficients jacobi_coefficients(const PollaczekParams &params) {
  params.validate();
  if (!(params.lam + params.a > 0.0))
    throw InvalidParameterError("jacobi_coefficients: requires lam + a > 0");
  const double lam = params.lam;
  const double shift = params.lam + params.a;
  const double b = params.b;
  RecursionCoefficients c;
  c.diag_fn = [=](int n) { return -b / (n + shift); };
  c.offdiag_fn = [=](int n) {
    return 0.5 * std::sqrt((n + 1.0) * (n + 2.0 * lam) /
                           ((n + shift) * (n + shift + 1.0)));
  };
  c.label = "pollaczek-orthonormal";
  return c;
}

complex phi(const PollaczekParams &params, complex theta) {
  return (params.a * std::cos(theta) + params.b) / std::sin(theta);
}

complex generating_partial_sum(const PollaczekParams &params, complex theta,
                               complex t, int N) {
  const complex i(0.0, 1.0);
  const double radius = std::min(std::abs(std::exp(i * theta)),
                                 std::abs(std::exp(-i * theta)));
  if (!(std::abs(t) <= 0.95 * radius))
    throw RadiusError("generating_partial_sum: |t| = " +
                      std::to_string(std::abs(t)) +
                      " outside 0.95 x convergence radius " +
                      std::to_string(radius));
  const auto values = eval_P(params, std::cos(theta), N);
  complex sum = 0.0;
  for (auto it = values.rbegin(); it != values.rend(); ++it)
    sum = sum * t + *it;
  return sum;
}

complex generating_closed_form(const PollaczekParams &params, complex theta,
                               complex t) {
  const complex i(0.0, 1.0);
  const complex Phi = phi(params, theta);
  return std::exp((-params.lam + i * Phi) * std::log(1.0 - t * std::exp(i * theta)) +
                  (-params.lam - i * Phi) * std::log(1.0 - t * std::exp(-i * theta)));
}

double asymptotic_scattering(const PollaczekParams &params, double theta,
                             int n) {
  params.validate();
  if (!(theta > 0.0 && theta < pi))
    throw InvalidParameterError("asymptotic_scattering: theta must lie in "
                                "(0, pi)");
  if (n < 1)
    throw InvalidParameterError("asymptotic_scattering: n must be >= 1");
  const double s = std::sin(theta);
  const double Phi = (params.a * std::cos(theta) + params.b) / s;
  const complex lg = specfun::log_gamma(complex(params.lam, Phi));
  const double log_amp = std::log(2.0) + (0.5 * pi - theta) * Phi - lg.real() -
                         params.lam * std::log(2.0 * s);
  const double psi_n = lg.imag() + params.lam * (theta - 0.5 * pi) -
                       Phi * std::log(2.0 * n * s);
  return std::exp(log_amp) * std::cos(n * theta + psi_n);
}

BoundTheta resolve_bound_theta(double x) {
  if (!(std::abs(x) > 1.0) || !std::isfinite(x))
    throw BranchError("bound-state branch requires |x| > 1, got x = " +
                      std::to_string(x));
  const double root = std::sqrt((std::abs(x) - 1.0) * (std::abs(x) + 1.0));
  BoundTheta out;
  if (x > 1.0) {
    out.exp_i_theta = x + root;
    out.branch = BoundBranch::upper;
  } else {
    out.exp_i_theta = -1.0 / (std::abs(x) + root);
    out.branch = BoundBranch::lower;
  }
  out.theta = complex(0.0, -1.0) * std::log(complex(out.exp_i_theta, 0.0));
  return out;
}

namespace {

// i Phi for |x| > 1. With sin theta = (e - 1/e)/(2i) it is real:
// i Phi = -2 (a x + b) / (e - 1/e).
double i_phi_bound(const PollaczekParams &params, double x, double e) {
  return -2.0 * (params.a * x + params.b) / (e - 1.0 / e);
}

} // namespace

double bound_gamma_argument(const PollaczekParams &params, double x) {
  params.validate();
  const BoundTheta bt = resolve_bound_theta(x);
  const double iphi = i_phi_bound(params, x, bt.exp_i_theta);
  return bt.branch == BoundBranch::upper ? params.lam - iphi
                                         : params.lam + iphi;
}

complex BoundApproximant::value() const {
  if (vanishes)
    return 0.0;
  if (log_value.real() > std::log(std::numeric_limits<double>::max()))
    throw OverflowError("asymptotic_bound: value exceeds the double range "
                        "(log magnitude " +
                        std::to_string(log_value.real()) + ")");
  return std::exp(log_value);
}

BoundApproximant asymptotic_bound_log(const PollaczekParams &params, double x,
                                      int n) {
  params.validate();
  if (n < 1)
    throw InvalidParameterError("asymptotic_bound: n must be >= 1");
  const BoundTheta bt = resolve_bound_theta(x);
  const double e = bt.exp_i_theta;
  const double iphi = i_phi_bound(params, x, e);

  BoundApproximant out;
  out.branch = bt.branch;
  // g is the argument of the controlling reciprocal Gamma; the exponent of
  // the (1 - e^{-/+2 i theta}) factor is g - 2 lam on both branches.
  double g = 0.0;
  complex log_growth;
  double log_one_minus;
  if (bt.branch == BoundBranch::upper) {
    g = params.lam - iphi;
    log_growth = double(n) * std::log(complex(e, 0.0));
    log_one_minus = std::log1p(-1.0 / (e * e));
  } else {
    g = params.lam + iphi;
    log_growth = -double(n) * std::log(complex(e, 0.0));
    log_one_minus = std::log1p(-e * e);
  }
  complex log_inv_gamma;
  try {
    log_inv_gamma = -specfun::log_gamma(complex(g, 0.0));
  } catch (const PoleError &) {
    out.vanishes = true;
    return out;
  }
  out.log_value = (g - 1.0) * std::log(double(n)) + log_growth +
                  (g - 2.0 * params.lam) * log_one_minus + log_inv_gamma;
  return out;
}

complex asymptotic_bound(const PollaczekParams &params, double x, int n) {
  return asymptotic_bound_log(params, x, n).value();
}

} // namespace dcoul::pollaczek
