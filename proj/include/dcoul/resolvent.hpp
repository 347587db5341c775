#pragma once

// Green function of a Jacobi operator J,
//
//   G(z) = <0|(z - J)^{-1}|0> = 1/(z - a_0 - b_0^2/(z - a_1 - b_1^2/(...))),
//
// sign convention: Im G(x + i eta) <= 0 for eta > 0, density
// rho(x) = -Im G(x + i eta) / pi.

#include "dcoul/jacobi.hpp"
#include "dcoul/model.hpp"
#include "dcoul/specfun.hpp"

#include <complex>

namespace dcoul::resolvent {

using complex = std::complex<double>;

struct ResolventEstimate {
  complex z;
  complex value;
  int depth = 0;
  bool converged = false;
  double last_delta = 0.0;
};

inline constexpr double lentz_floor = 1e-30;
inline constexpr double proximity_threshold = 1e-14;

/// Modified Lentz evaluation. Stops when |Delta_j - 1| <= tol.
/// NoConvergence when max_depth is reached first; SpectrumProximity for
/// real z when a partial denominator falls below 1e-14 (complex z uses the
/// 1e-30 floor substitution instead).
ResolventEstimate continued_fraction_G(const RecursionCoefficients &coeffs,
                                       complex z, double tol = 1e-13,
                                       int max_depth = 10'000'000);

/// Backward evaluation with the tail beyond `depth` levels dropped:
/// depth 1 gives 1/(z - a_0).
complex continued_fraction_truncated(const RecursionCoefficients &coeffs,
                                     complex z, int depth);

/// P*_n(z)/P_n(z) for the orthonormal pair p_0 = 1, p*_0 = 0, p*_1 = 1/b_0.
complex ratio_approximant(const RecursionCoefficients &coeffs, complex z,
                          int n);

/// Gauss rule of the leading N x N block of J (unit mass).
specfun::QuadratureRule truncated_gauss_rule(const RecursionCoefficients &coeffs,
                                             int N);

/// sum_k w_k / (z - x_k).
complex quadrature_resolvent(const specfun::QuadratureRule &rule, complex z);

struct DensityEstimate {
  double x = 0.0;
  double eta = 0.0;
  double rho = 0.0;
  int depth = 0;
};

/// -Im G(x + i eta) / pi. InvalidParameterError unless eta > 0.
DensityEstimate spectral_density(const RecursionCoefficients &coeffs, double x,
                                 double eta, double tol = 1e-12,
                                 int max_depth = 10'000'000);

/// x(eps) of the energy map at fixed physical parameters.
double pollaczek_argument(const model::DerivedParams &d, double eps);

/// dx/deps by a central difference with relative step h.
double energy_jacobian(const model::DerivedParams &d, double eps,
                       double h = 1e-6);

/// Scattering energy eps > 1 whose Pollaczek argument is x in (-1, 1):
/// eps = sqrt(1 + beta^2 (1 + x)/(1 - x)).
double energy_for_argument(const model::DerivedParams &d, double x);

} // namespace dcoul::resolvent
