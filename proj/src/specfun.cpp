#include "dcoul/specfun.hpp"

#include "dcoul/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

namespace dcoul::specfun {

namespace {

constexpr double half_log_two_pi = 0.91893853320467274178032973640561764;

// B_{2k} / (2k (2k-1)) for k = 1..10.
constexpr std::array<double, 10> stirling_coeffs = {
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
};

constexpr double stirling_threshold = 15.0;

complex stirling(complex w) {
  const complex inv = 1.0 / w;
  const complex inv2 = inv * inv;
  complex series = 0.0;
  complex power = inv;
  for (double c : stirling_coeffs) {
    series += c * power;
    power *= inv2;
  }
  return (w - 0.5) * std::log(w) - w + half_log_two_pi + series;
}

bool finite(complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

bool near_nonpositive_integer(complex z, double tol) {
  const double k = std::round(z.real());
  return k <= 0.0 && std::abs(z - complex(k, 0.0)) < tol;
}

} // namespace

complex log_gamma(complex z) {
  if (!finite(z))
    throw PoleError("log_gamma: non-finite argument");
  if (near_nonpositive_integer(z, 1e-13))
    throw PoleError("log_gamma: argument is a non-positive integer (Re z = " +
                    std::to_string(z.real()) + ")");

  complex shift = 0.0;
  complex w = z;
  while (w.real() < stirling_threshold &&
         !(w.real() > 0.0 && std::abs(w) >= stirling_threshold)) {
    shift += std::log(w);
    w += 1.0;
  }
  return stirling(w) - shift;
}

double log_abs_gamma(double x) { return log_gamma(complex(x, 0.0)).real(); }

complex pochhammer(complex c, int n) {
  if (n < 0)
    throw InvalidParameterError("pochhammer: negative n");
  const bool pole_adjacent = near_nonpositive_integer(c, 1e-10) ||
                             near_nonpositive_integer(c + double(n), 1e-10);
  if (n <= pochhammer_crossover || pole_adjacent) {
    complex prod = 1.0;
    for (int k = 0; k < n; ++k)
      prod *= c + double(k);
    return prod;
  }
  return std::exp(log_gamma(c + double(n)) - log_gamma(c));
}

double laguerre(int n, double nu, double x) {
  if (n < 0)
    return 0.0;
  if (n == 0)
    return 1.0;
  double prev = 1.0;
  double cur = 1.0 + nu - x;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + nu + 1.0 - x) * cur - (k + nu) * prev) /
                        static_cast<double>(k + 1);
    prev = cur;
    cur = next;
  }
  return cur;
}

double laguerre_derivative(int n, double nu, double x) {
  if (n == 0)
    return 0.0;
  return -laguerre(n - 1, nu + 1.0, x);
}

double laguerre_second_derivative(int n, double nu, double x) {
  if (n < 2)
    return 0.0;
  return laguerre(n - 2, nu + 2.0, x);
}

complex hyp2f1_terminating(int n, complex b, complex c, complex z) {
  if (n < 0)
    throw InvalidParameterError("hyp2f1_terminating: negative n");
  for (int k = 0; k < n; ++k) {
    if (std::abs(c + double(k)) <= 1e-13 * std::max(1.0, std::abs(c)))
      throw BottomPoleError(n, k,
                            "hyp2f1_terminating: bottom parameter c+" +
                                std::to_string(k) + " vanishes before the "
                                "series terminates (n = " +
                                std::to_string(n) + ")");
  }

  complex sum = 0.0;
  complex carry = 0.0;
  complex term = 1.0;
  for (int k = 0; k <= n; ++k) {
    const complex y = term - carry;
    const complex t = sum + y;
    carry = (t - sum) - y;
    sum = t;
    if (k == n)
      break;
    term *= (double(k - n) * (b + double(k))) /
            ((c + double(k)) * double(k + 1)) * z;
  }
  return sum;
}

std::vector<double> tridiagonal_eigenvalues(std::span<const double> diag,
                                            std::span<const double> offdiag,
                                            int max_sweeps) {
  const std::size_t n = diag.size();
  if (n == 0)
    throw InvalidParameterError("tridiagonal_eigenvalues: empty matrix");
  if (offdiag.size() + 1 != n)
    throw InvalidParameterError(
        "tridiagonal_eigenvalues: len(offdiag) must be len(diag) - 1");

  std::vector<double> d(diag.begin(), diag.end());
  std::vector<double> e(n, 0.0);
  std::copy(offdiag.begin(), offdiag.end(), e.begin());

  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m = l;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= 1e-14 * dd || std::abs(e[m]) < 1e-300)
          break;
      }
      if (m == l)
        break;
      if (iter++ == max_sweeps)
        throw ConvergenceError(
            "tridiagonal_eigenvalues: no convergence after " +
            std::to_string(max_sweeps) + " sweeps for eigenvalue " +
            std::to_string(l));

      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0;
      double c = 1.0;
      double p = 0.0;
      bool underflow = false;
      for (std::size_t i = m; i-- > l;) {
        const double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
      }
      if (underflow)
        continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    } while (m != l);
  }
  std::sort(d.begin(), d.end());
  return d;
}

QuadratureRule gauss_rule_from_jacobi(std::span<const double> diag,
                                      std::span<const double> offdiag,
                                      double mass, int max_sweeps) {
  if (!(mass > 0.0))
    throw InvalidParameterError("gauss_rule_from_jacobi: mass must be > 0");
  for (double b : offdiag)
    if (!(b > 0.0))
      throw InvalidParameterError(
          "gauss_rule_from_jacobi: off-diagonal entries must be positive");

  QuadratureRule rule;
  rule.nodes = tridiagonal_eigenvalues(diag, offdiag, max_sweeps);
  rule.weights.resize(rule.nodes.size());

  const std::size_t n = diag.size();
  const auto safe = [](double v) { return v == 0.0 ? 1e-300 : v; };
  std::vector<double> fwd(n), bwd(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double x = rule.nodes[k];
    // Twisted factorization of T - x: forward and backward pivots, joined
    // where the eigenvector peaks. Each side only runs in its stable direction.
    fwd[0] = safe(diag[0] - x);
    for (std::size_t j = 1; j < n; ++j)
      fwd[j] = safe(diag[j] - x - offdiag[j - 1] * offdiag[j - 1] / fwd[j - 1]);
    bwd[n - 1] = safe(diag[n - 1] - x);
    for (std::size_t j = n - 1; j-- > 0;)
      bwd[j] = safe(diag[j] - x - offdiag[j] * offdiag[j] / bwd[j + 1]);
    std::size_t twist = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
      const double g = std::abs(fwd[j] + bwd[j] - (diag[j] - x));
      if (g < best) {
        best = g;
        twist = j;
      }
    }
    // v_twist = 1; log|v_0| accumulated separately so tiny weights keep
    // their relative precision.
    double norm2 = 1.0;
    double v = 1.0;
    double log_v0 = 0.0;
    for (std::size_t j = twist; j-- > 0;) {
      const double r = offdiag[j] / fwd[j];
      v *= -r;
      log_v0 += std::log(std::abs(r));
      norm2 += v * v;
    }
    v = 1.0;
    for (std::size_t j = twist + 1; j < n; ++j) {
      v *= -offdiag[j - 1] / bwd[j];
      norm2 += v * v;
    }
    rule.weights[k] = std::exp(std::log(mass) + 2.0 * log_v0 - std::log(norm2));
  }
  return rule;
}

QuadratureRule gauss_laguerre(int order, double alpha) {
  if (order < 1)
    throw InvalidParameterError("gauss_laguerre: order must be >= 1");
  if (!(alpha > -1.0))
    throw InvalidParameterError("gauss_laguerre: alpha must exceed -1");
  std::vector<double> diag(order);
  std::vector<double> off(order - 1);
  for (int j = 0; j < order; ++j)
    diag[j] = 2.0 * j + alpha + 1.0;
  for (int j = 0; j + 1 < order; ++j)
    off[j] = std::sqrt((j + 1.0) * (j + 1.0 + alpha));
  return gauss_rule_from_jacobi(diag, off, std::exp(log_abs_gamma(alpha + 1.0)));
}

} // namespace dcoul::specfun
