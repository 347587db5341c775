#pragma once

// Reference implementations used only by the tests. They deliberately avoid
// the library's own routines.

#include <cmath>
#include <complex>
#include <vector>

namespace oracle {

// Fine-structure energy with radial quantum number n_r.
inline double sommerfeld(double Z, int kappa, double alpha, int n_r) {
  const double za = Z * alpha;
  const double gs = std::sqrt(double(kappa) * kappa - za * za);
  const double t = za / (n_r + gs);
  return 1.0 / std::sqrt(1.0 + t * t);
}

// Gegenbauer C_n^lam(x) from the explicit finite sum.
inline double gegenbauer(int n, double lam, double x) {
  double s = 0.0;
  for (int k = 0; 2 * k <= n; ++k) {
    const double lg = std::lgamma(n - k + lam) - std::lgamma(lam) -
                      std::lgamma(k + 1.0) - std::lgamma(n - 2.0 * k + 1.0);
    const double term = std::exp(lg) * std::pow(2.0 * x, n - 2 * k);
    s += (k % 2 ? -term : term);
  }
  return s;
}

// Associated Laguerre polynomial from its power series.
inline double laguerre_series(int n, double nu, double x) {
  double s = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double lg = std::lgamma(n + nu + 1.0) - std::lgamma(n - k + 1.0) -
                      std::lgamma(nu + k + 1.0) - std::lgamma(k + 1.0);
    s += (k % 2 ? -1.0 : 1.0) * std::exp(lg) * std::pow(x, k);
  }
  return s;
}

// Pollaczek P_n by the textbook recurrence, written independently of the
// library's evaluator.
inline std::vector<double> pollaczek(double lam, double a, double b, double x,
                                     int N) {
  std::vector<double> p(N + 1);
  p[0] = 1.0;
  if (N >= 1)
    p[1] = 2.0 * (lam + a) * x + 2.0 * b;
  for (int n = 1; n < N; ++n)
    p[n + 1] = (2.0 * ((n + lam + a) * x + b) * p[n] - (n + 2.0 * lam - 1.0) * p[n - 1]) /
               (n + 1.0);
  return p;
}

inline double rel(double a, double b) {
  return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

inline double rel(std::complex<double> a, std::complex<double> b) {
  return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

} // namespace oracle
