#pragma once

// Pollaczek polynomials P_n^lam(x; a, b):
//
//   [(n + lam + a) x + b] P_n = (n + 2 lam - 1)/2 P_{n-1} + (n + 1)/2 P_{n+1},
//   P_0 = 1,  P_1 = 2 (lam + a) x + 2 b,
//
// in three normalizations (P, the symmetrized Q, orthonormal p), the second
// solution P*, the generating function and its Darboux asymptotics.

#include "dcoul/jacobi.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <complex>
#include <vector>

namespace dcoul::pollaczek {

using complex = std::complex<double>;
using extended_float = boost::multiprecision::cpp_bin_float_quad;

struct PollaczekParams {
  double lam = 1.0; // > 0
  double a = 0.0;
  double b = 0.0;

  /// Throws InvalidParameterError unless lam > 0 and all fields are finite.
  void validate() const;
};

enum class Normalization { P, Pstar, Q, orthonormal };

const char *to_string(Normalization n);

struct PolynomialSequence {
  std::vector<double> values;
  double argument = 0.0;
  Normalization normalization = Normalization::P;
  PollaczekParams params;

  int size() const { return static_cast<int>(values.size()); }
  double operator[](int n) const { return values[static_cast<std::size_t>(n)]; }
};

/// P_0 .. P_N at x by forward recurrence.
PolynomialSequence eval_P(const PollaczekParams &params, double x, int N);

/// Same recurrence at complex argument (used for the generating function).
std::vector<complex> eval_P(const PollaczekParams &params, complex x, int N);

/// Forward recurrence in software 128-bit floating point. Meant for |x| > 1
/// diagnostics, where the values outgrow the double exponent range and the
/// recurrence loses digits near bound states.
std::vector<extended_float> eval_P_extended(const PollaczekParams &params,
                                            double x, int N);

/// Second solution of the symmetric recurrence
///   [(n + lam + a) x + b] u_n = c_{n-1} u_{n-1} + c_n u_{n+1},
///   c_n = sqrt((n+1)(n+2 lam)) / 2,
/// with u_0 = 0, u_1 = 1/c_0. Throws DegenerateError if c_0 = 0.
PolynomialSequence eval_Pstar(const PollaczekParams &params, double x, int N);

/// Off-diagonal c_n of the symmetric recurrence above.
double symmetric_offdiag(const PollaczekParams &params, int n);

/// Q_n = P_n sqrt(Gamma(n+1) Gamma(2 lam + 1) / Gamma(n + 2 lam)).
/// Note Q_0 = sqrt(2 lam), not 1.
PolynomialSequence to_symmetric_Q(const PolynomialSequence &seq);

/// p_n = sqrt(Gamma(n+1) (lam + a + n) / Gamma(n + 2 lam)) P_n.
PolynomialSequence to_orthonormal(const PolynomialSequence &seq);

/// Jacobi-matrix coefficients of the orthonormal sequence p_n in the
/// variable x: diagonal -b/(n+lam+a), off-diagonal
/// sqrt((n+1)(n+2 lam) / ((n+lam+a)(n+lam+a+1))) / 2.
RecursionCoefficients jacobi_coefficients(const PollaczekParams &params);

/// Phi(theta) = (a cos theta + b) / sin theta.
complex phi(const PollaczekParams &params, complex theta);

/// sum_{n=0}^{N} P_n(cos theta) t^n. Throws RadiusError unless
/// |t| <= 0.95 min(|e^{i theta}|, |e^{-i theta}|).
complex generating_partial_sum(const PollaczekParams &params, complex theta,
                               complex t, int N);

/// (1 - t e^{i theta})^{-lam + i Phi} (1 - t e^{-i theta})^{-lam - i Phi}.
complex generating_closed_form(const PollaczekParams &params, complex theta,
                               complex t);

/// Darboux approximant of the orthonormal p_n for real theta in (0, pi):
///   A cos(n theta + psi_n),
///   A     = 2 e^{(pi/2 - theta) Phi} / (|Gamma(lam + i Phi)| (2 sin theta)^lam),
///   psi_n = arg Gamma(lam + i Phi) + lam (theta - pi/2) - Phi ln(2 n sin theta).
/// The sin theta inside the logarithm is the phase of (2 sin theta)^{i Phi}.
double asymptotic_scattering(const PollaczekParams &params, double theta,
                             int n);

enum class BoundBranch {
  upper, // x > 1:  |e^{i theta}| > 1 > |e^{-i theta}|
  lower  // x < -1: exchanged
};

const char *to_string(BoundBranch b);

/// e^{i theta} for |x| > 1 on the branch used by the bound-state analysis:
/// x + sqrt(x^2 - 1) in both cases, so |e^{i theta}| > 1 for x > 1 and
/// |e^{i theta}| < 1 for x < -1.
struct BoundTheta {
  complex theta;
  double exp_i_theta;
  BoundBranch branch;
};

/// Throws BranchError if |x| <= 1.
BoundTheta resolve_bound_theta(double x);

/// Argument of the reciprocal Gamma controlling the dominant Darboux term:
/// lam - i Phi on the upper branch, lam + i Phi on the lower one. Real.
double bound_gamma_argument(const PollaczekParams &params, double x);

/// Leading Darboux term for |x| > 1, returned as a complex logarithm
/// (log|P_n| + i arg). `vanishes` is set, and `log_value` left at zero,
/// when the controlling Gamma argument is a non-positive integer.
struct BoundApproximant {
  complex log_value;
  bool vanishes = false;
  BoundBranch branch = BoundBranch::upper;

  /// exp(log_value), or exactly zero when the term vanishes.
  /// Throws OverflowError when the value is outside the double range.
  complex value() const;
};

BoundApproximant asymptotic_bound_log(const PollaczekParams &params, double x,
                                      int n);

/// Leading Darboux term value for |x| > 1: exact zero at the quantization
/// points, OverflowError when not representable, BranchError if |x| <= 1.
complex asymptotic_bound(const PollaczekParams &params, double x, int n);

} // namespace dcoul::pollaczek
