#pragma once

// Special-function kernel: complex log-Gamma, Pochhammer symbols, associated
// Laguerre polynomials, terminating Gauss hypergeometric sums and Gauss rules
// built from Jacobi matrices.
//
// All functions are pure; none keeps state between calls.

#include <complex>
#include <span>
#include <vector>

namespace dcoul::specfun {

using complex = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846264338327950288;

/// Principal branch of log Gamma(z), continuous off the negative real axis.
///
/// Re z >= 15 is handled by the Stirling series; smaller real parts are
/// shifted up with the functional equation, which keeps the principal
/// branch without a reflection-induced 2*pi*i ambiguity.
/// Throws PoleError within 1e-13 of a non-positive integer.
complex log_gamma(complex z);

/// log|Gamma(x)| for real x, via the complex routine.
double log_abs_gamma(double x);

/// Rising factorial c (c+1) ... (c+n-1). Direct product up to
/// `pochhammer_crossover`, log-Gamma difference above it.
complex pochhammer(complex c, int n);
inline constexpr int pochhammer_crossover = 64;

/// Associated Laguerre polynomial L_n^nu(x) by forward recurrence in n.
double laguerre(int n, double nu, double x);

/// d/dx L_n^nu(x) = -L_{n-1}^{nu+1}(x).
double laguerre_derivative(int n, double nu, double x);

/// d^2/dx^2 L_n^nu(x) = L_{n-2}^{nu+2}(x).
double laguerre_second_derivative(int n, double nu, double x);

/// Finite sum  sum_{k=0}^{n} (-n)_k (b)_k / ((c)_k k!) z^k  with compensated
/// (Kahan) accumulation. Throws BottomPoleError if c+k vanishes for some
/// k < n.
complex hyp2f1_terminating(int n, complex b, complex c, complex z);

struct QuadratureRule {
  std::vector<double> nodes;   // strictly increasing
  std::vector<double> weights; // positive
  int order() const { return static_cast<int>(nodes.size()); }
};

/// Eigenvalues of the symmetric tridiagonal matrix (diag, offdiag) by
/// implicit-shift QL, returned in increasing order. Throws ConvergenceError
/// when an eigenvalue needs more than `max_sweeps` iterations.
std::vector<double> tridiagonal_eigenvalues(std::span<const double> diag,
                                            std::span<const double> offdiag,
                                            int max_sweeps = 50);

/// Golub-Welsch: nodes are the eigenvalues of the Jacobi matrix, weights
/// the squared first eigenvector components times `mass`. Eigenvectors come
/// from a twisted factorization at each node, which keeps tiny weights
/// accurate to full relative precision.
QuadratureRule gauss_rule_from_jacobi(std::span<const double> diag,
                                      std::span<const double> offdiag,
                                      double mass = 1.0, int max_sweeps = 50);

/// Generalized Gauss-Laguerre rule for the weight x^alpha e^{-x} on
/// [0, inf), mass Gamma(alpha+1).
QuadratureRule gauss_laguerre(int order, double alpha);

} // namespace dcoul::specfun
