#include "dcoul/resolvent.hpp"

#include "dcoul/errors.hpp"

#include <fmt/format.h>

#include <cmath>
#include <vector>

namespace dcoul::resolvent {

namespace {

complex guard(complex v, bool real_axis, int level) {
  if (std::abs(v) < proximity_threshold && real_axis)
    throw SpectrumProximity(fmt::format(
        "partial denominator {:.3e} at level {} on the real axis", std::abs(v),
        level));
  return std::abs(v) < lentz_floor ? complex(lentz_floor, 0.0) : v;
}

} // namespace

ResolventEstimate continued_fraction_G(const RecursionCoefficients &coeffs,
                                       complex z, double tol, int max_depth) {
  if (!(tol > 0.0) || max_depth < 1)
    throw InvalidParameterError("continued_fraction_G: tol > 0 and "
                                "max_depth >= 1 required");
  const bool real_axis = z.imag() == 0.0;
  ResolventEstimate est;
  est.z = z;

  complex f = guard(z - coeffs.diag(0), real_axis, 0);
  complex C = f;
  complex D = 0.0;
  for (int j = 1; j <= max_depth; ++j) {
    const double b = coeffs.offdiag(j - 1);
    const complex alpha = -b * b;
    const complex beta = z - coeffs.diag(j);
    D = guard(beta + alpha * D, real_axis, j);
    C = guard(beta + alpha / C, real_axis, j);
    D = 1.0 / D;
    const complex delta = C * D;
    f *= delta;
    est.depth = j;
    est.last_delta = std::abs(delta - 1.0);
    if (est.last_delta <= tol) {
      est.converged = true;
      break;
    }
  }
  est.value = 1.0 / f;
  if (!est.converged)
    throw NoConvergence(fmt::format(
        "continued fraction at z = ({}, {}) not converged after {} levels "
        "(last delta {:.3e})",
        z.real(), z.imag(), max_depth, est.last_delta));
  return est;
}

complex continued_fraction_truncated(const RecursionCoefficients &coeffs,
                                     complex z, int depth) {
  if (depth < 1)
    throw InvalidParameterError("continued_fraction_truncated: depth >= 1");
  complex tail = 0.0;
  for (int j = depth - 1; j >= 0; --j) {
    const double b = j + 1 < depth ? coeffs.offdiag(j) : 0.0;
    tail = 1.0 / (z - coeffs.diag(j) - b * b * tail);
  }
  return tail;
}

complex ratio_approximant(const RecursionCoefficients &coeffs, complex z,
                          int n) {
  if (n < 1)
    throw InvalidParameterError("ratio_approximant: n >= 1");
  complex p_prev = 0.0, p = 1.0;
  complex q_prev = 0.0, q = 0.0;
  for (int k = 0; k < n; ++k) {
    const double bk = coeffs.offdiag(k);
    const double bkm = k == 0 ? 0.0 : coeffs.offdiag(k - 1);
    const complex shift = z - coeffs.diag(k);
    const complex p_next = (shift * p - bkm * p_prev) / bk;
    const complex q_next =
        k == 0 ? complex(1.0 / bk, 0.0) : (shift * q - bkm * q_prev) / bk;
    p_prev = p;
    p = p_next;
    q_prev = q;
    q = q_next;
    const double big = std::max(std::abs(p), std::abs(q));
    if (big > 1e150) {
      p *= 1e-150;
      p_prev *= 1e-150;
      q *= 1e-150;
      q_prev *= 1e-150;
    }
  }
  return q / p;
}

specfun::QuadratureRule truncated_gauss_rule(const RecursionCoefficients &coeffs,
                                             int N) {
  if (N < 1)
    throw InvalidParameterError("truncated_gauss_rule: N >= 1");
  std::vector<double> diag(N);
  std::vector<double> off(N - 1);
  for (int j = 0; j < N; ++j)
    diag[j] = coeffs.diag(j);
  for (int j = 0; j + 1 < N; ++j)
    off[j] = coeffs.offdiag(j);
  return specfun::gauss_rule_from_jacobi(diag, off, 1.0);
}

complex quadrature_resolvent(const specfun::QuadratureRule &rule, complex z) {
  complex sum = 0.0;
  for (int k = 0; k < rule.order(); ++k)
    sum += rule.weights[k] / (z - rule.nodes[k]);
  return sum;
}

DensityEstimate spectral_density(const RecursionCoefficients &coeffs, double x,
                                 double eta, double tol, int max_depth) {
  if (!(eta > 0.0))
    throw InvalidParameterError("spectral_density: eta must be > 0");
  const auto est = continued_fraction_G(coeffs, complex(x, eta), tol, max_depth);
  DensityEstimate d;
  d.x = x;
  d.eta = eta;
  d.rho = -est.value.imag() / specfun::pi;
  d.depth = est.depth;
  return d;
}

double pollaczek_argument(const model::DerivedParams &d, double eps) {
  return model::map_to_pollaczek(d, model::EnergyPoint::at(eps)).x;
}

double energy_jacobian(const model::DerivedParams &d, double eps, double h) {
  const double step = h * std::max(1.0, std::abs(eps));
  return (pollaczek_argument(d, eps + step) - pollaczek_argument(d, eps - step)) /
         (2.0 * step);
}

double energy_for_argument(const model::DerivedParams &d, double x) {
  if (!(std::abs(x) < 1.0))
    throw BranchError(fmt::format("energy_for_argument: |x| < 1 required, "
                                  "got {}",
                                  x));
  return std::sqrt(1.0 + d.beta * d.beta * (1.0 + x) / (1.0 - x));
}

} // namespace dcoul::resolvent
