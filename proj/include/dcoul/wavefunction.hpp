#pragma once

// Laguerre basis for the upper radial component,
//
//   zeta_n(r) = A_n (w r)^{g+1} e^{-w r/2} L_n^{2g+1}(w r),
//   A_n = sqrt(w Gamma(n+1) / Gamma(n+2g+2)),
//
// with g the effective gamma, plus expansion coefficients, reconstruction
// and the residual checks of the radial equations.

#include "dcoul/model.hpp"

#include <complex>
#include <span>
#include <string>
#include <vector>

namespace dcoul::wavefunction {

using complex = std::complex<double>;

struct BasisElement {
  int n = 0;
  double gamma = 0.0; // effective gamma
  double omega = 1.0;
  double normalization = 0.0; // A_n

  static BasisElement make(int n, double gamma, double omega);
};

double basis_value(const BasisElement &e, double r);
double basis_derivative(const BasisElement &e, double r);
double basis_second_derivative(const BasisElement &e, double r);

/// zeta_0(r) .. zeta_{count-1}(r) and the first two r-derivatives, from a
/// single Laguerre recurrence.
struct BasisSamples {
  std::vector<double> value, first, second;
};
BasisSamples basis_samples(double gamma, double omega, int count, double r);

enum class CoefficientSource {
  recursion,             // forward three-term recurrence
  minimal,               // backward (Miller) sweep, bound states
  closed_form,           // working hypergeometric representation
  closed_form_displayed  // representation as commonly printed
};

const char *to_string(CoefficientSource s);

struct CoefficientVector {
  std::vector<complex> values;
  double eps = 0.0;
  CoefficientSource source = CoefficientSource::recursion;

  int size() const { return static_cast<int>(values.size()); }
};

/// f_0 = 1, f_1 = c_0 / b_0, b_n f_{n+1} = c_n f_n - b_{n-1} f_{n-1},
/// c_n = a_n x + b. Values n = 0..N.
CoefficientVector coefficients_recursion(const model::DerivedParams &d,
                                         double eps, int N);

/// Minimal solution normalized to f_0 = 1 (see spectrum::minimal_solution).
CoefficientVector coefficients_minimal(const model::DerivedParams &d,
                                       double eps, int N);

enum class ClosedFormVariant { working, displayed };

/// f_n = sqrt(G(2g+2) / (G(n+2g+2) n!)) e^{i n theta} (g+1-i Phi)_n
///       2F1(-n, g+1+i Phi; -n-g+i Phi; e^{-2 i theta})            (working)
/// f_n = sqrt(G(2g+2)/(g+1) (n+g+1) / (G(n+2g+2) n!)) e^{i n theta}
///       (g+1-i Phi)_n 2F1(-n, g+1+i Phi; -n-g-1+i Phi; e^{-2 i theta}) (displayed)
/// BottomPoleError propagates with the offending (n, k).
CoefficientVector coefficients_closed_form(
    const model::DerivedParams &d, double eps, int N,
    ClosedFormVariant variant = ClosedFormVariant::working);

struct ClosedFormComparison {
  double working_deviation = 0.0;   // max_n |f_closed / f_rec - 1|
  double displayed_deviation = 0.0;
  bool working_passes = false;
  bool displayed_passes = false;
  std::string note;
};

/// Compares both closed-form variants with the recurrence for n = 0..N.
ClosedFormComparison compare_closed_form(const model::DerivedParams &d,
                                         double eps, int N, double tol = 1e-8);

/// Kinetic balance:
///   phi-(r) = compton / (eps + gamma/kappa) (-Z/kappa + gamma/r + d/dr) phi+,
/// with the physical gamma. KineticBalanceSingular when
/// |eps + gamma/kappa| < 1e-12.
double lower_component(const BasisElement &e, double r,
                       const model::DerivedParams &d, double eps);

struct Reconstruction {
  std::vector<double> values;
  double tail_fraction = 0.0; // sum_{n >= N_trunc} |f|^2 / sum |f|^2
  bool tail_computable = false;
};

/// sum_{n < N_trunc} Re f_n zeta_n(r) at each grid point.
Reconstruction reconstruct_upper(const CoefficientVector &coeffs,
                                 const model::DerivedParams &d,
                                 std::span<const double> r_grid, int N_trunc);

/// Kinetic-balance image of the truncated upper component.
Reconstruction reconstruct_lower(const CoefficientVector &coeffs,
                                 const model::DerivedParams &d, double eps,
                                 std::span<const double> r_grid, int N_trunc);

struct UniformGrid {
  double r0 = 0.0;
  double h = 0.0;
  int count = 0;

  double at(int i) const { return r0 + h * i; }
  std::vector<double> points() const;
};

/// Residual of
///   [-d^2/dr^2 + g(g+1)/r^2 + 2 Z eps / r + (1 - eps^2)/compton^2] phi = 0
/// by fourth-order central differences at interior points i = 2..count-3,
/// divided by the largest term magnitude on the grid. GridError for fewer
/// than 5 points or a non-positive r0 or h.
double schrodinger_residual(std::span<const double> phi, const UniformGrid &grid,
                            const model::DerivedParams &d, double eps);

/// Residual of the original coupled first-order system after rotating the
/// reconstructed (phi+, phi-) back to (chi+, chi-). Derivatives analytic.
/// Max over r of |row| divided by the largest term magnitude.
double dirac_residual(const CoefficientVector &coeffs,
                      const model::DerivedParams &d, double eps,
                      std::span<const double> r_grid, int N_trunc);

struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data; // row-major

  double operator()(int i, int j) const { return data[std::size_t(i) * cols + j]; }
  double &operator()(int i, int j) { return data[std::size_t(i) * cols + j]; }
};

inline constexpr int max_tridiagonal_order = 80;

struct TridiagonalDiagnostic {
  Matrix matrix;               // <zeta_m | O zeta_n>
  double off_band_ratio = 0.0; // max |off-band| / max |band|
  double bracket_deviation = 0.0;
  int quadrature_order = 0;
};

/// Matrix of the radial wave operator in the basis by generalized
/// Gauss-Laguerre quadrature (weight y^{2g+1} e^{-y}, order N + 4). The
/// second-derivative action is reduced with Laguerre identities first.
/// bracket_deviation compares -H_nn b_n / H_{n,n+1} with a_n x + b.
/// InvalidParameterError for N < 3, QuadratureOrderError above
/// max_tridiagonal_order.
TridiagonalDiagnostic verify_tridiagonal(const model::DerivedParams &d,
                                         double eps, int N);

/// Plain overlap int zeta_m zeta_n dr by Gauss-Laguerre quadrature with
/// weight y^{2g+2} e^{-y}.
Matrix gram_matrix(double gamma, double omega, int N);

/// Overlap weighted by 1/(w r), with weight y^{2g+1} e^{-y}.
Matrix sturmian_gram_matrix(double gamma, double omega, int N);

/// max |M - I|.
double identity_deviation(const Matrix &m);

/// Dense row-major text: three header lines "N <n>", "gamma <g>",
/// "eps <e>", then one line per row with 17 significant digits.
std::string format_matrix(const Matrix &m, double gamma, double eps);

} // namespace dcoul::wavefunction
