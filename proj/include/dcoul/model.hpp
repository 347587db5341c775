#pragma once

// Physical parameterization of the radial Dirac-Coulomb problem and its map
// onto Pollaczek polynomial parameters.
//
// Units: lengths in Bohr radii, energies as eps = E / (m c^2). The Compton
// length lambda-bar then equals the fine-structure constant for electrons.

#include "dcoul/jacobi.hpp"
#include "dcoul/pollaczek.hpp"

#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

namespace dcoul::model {

using complex = std::complex<double>;

inline constexpr double codata_fine_structure = 7.2973525693e-3;

struct PhysicalParams {
  double Z = -1.0;      // < 0 attractive
  int kappa = 1;        // nonzero
  double compton = codata_fine_structure;
  double omega = 1.0;   // Laguerre basis scale, > 0

  /// InvalidParameterError for kappa = 0, compton <= 0, omega <= 0 or
  /// non-finite fields; SupercriticalError when |compton Z / kappa| >= 1.
  void validate() const;

  bool operator==(const PhysicalParams &) const = default;
};

struct DerivedParams {
  PhysicalParams physical;
  double gamma = 0.0;           // kappa sqrt(1 - (compton Z/kappa)^2), sign of kappa
  double effective_gamma = 0.0; // gamma for kappa > 0, -gamma-1 for kappa < 0
  double alpha = 0.0;           // compton^2 omega Z
  double beta = 0.0;            // compton omega / 2
  int ell = 0;                  // metadata only
  double sin_xi = 0.0;          // compton Z / kappa (positive-energy sign)
  double cos_xi = 1.0;          // gamma / kappa

  double pollaczek_lambda() const { return effective_gamma + 1.0; }
  double xi() const;
};

DerivedParams derive(const PhysicalParams &params);

enum class Regime { bound, scattering, threshold };

const char *to_string(Regime r);

struct EnergyPoint {
  double eps = 0.0;
  Regime regime = Regime::threshold;

  /// Classifies eps; |eps| within a few ulp of 1 is a threshold point.
  static EnergyPoint at(double eps);
};

struct PollaczekPoint {
  pollaczek::PollaczekParams params; // a = 0, lam = effective_gamma + 1
  double x = 0.0;
};

/// Energy-dependent Pollaczek argument and parameters:
///   x = (eps^2 - 1 - beta^2) / (eps^2 - 1 + beta^2),
///   b = -alpha eps / (eps^2 - 1 + beta^2).
/// SingularMapError when eps^2 - 1 + beta^2 vanishes.
PollaczekPoint map_to_pollaczek(const DerivedParams &d, const EnergyPoint &e);

struct ThetaPhi {
  complex theta;
  complex Phi;
  complex exp_i_theta;
  Regime regime = Regime::scattering;
  std::optional<pollaczek::BoundBranch> branch; // bound regime only
};

/// Scattering: theta in (0, pi) with cos theta = x, Phi = b / sin theta real.
/// Bound: theta = -i log(e^{i theta}) with e^{i theta} = x + sqrt(x^2 - 1),
/// which is (s + beta)/(s - beta), s = sqrt(1 - eps^2), on the x > 1 branch
/// and (s - beta)/(s + beta) on the x < -1 branch. Phi is purely imaginary.
/// ThresholdError at |eps| = 1.
ThetaPhi theta_phi(const DerivedParams &d, const EnergyPoint &e);

/// a_n = n + g + 1, b_n = sqrt((n+1)(n+2g+2))/2 with g = effective_gamma.
RecursionCoefficients recursion_coefficients(const DerivedParams &d);

/// (phi+, phi-) = R(xi) (chi+, chi-) with R = [[c, s], [-s, c]],
/// c = cos(xi/2), s = sin(xi/2).
std::pair<double, double> spinor_rotation(double xi, double upper,
                                          double lower);
std::pair<double, double> inverse_spinor_rotation(double xi, double upper,
                                                  double lower);

struct NegativeEnergyImage {
  PhysicalParams params;
  EnergyPoint energy;
  bool swap_components = true;
};

/// Z -> -Z, kappa -> -kappa, eps -> -eps with the spinor components exchanged.
NegativeEnergyImage negative_energy_map(const PhysicalParams &p,
                                        const EnergyPoint &e);

/// Flat "key = value" text with keys z, kappa, compton, omega. Values are
/// written in shortest round-trip form.
std::string to_config(const PhysicalParams &p);

/// Parses the format above. Blank lines and '#' comments are ignored;
/// unknown keys, duplicates and malformed numbers raise ConfigError.
PhysicalParams from_config(std::string_view text);

} // namespace dcoul::model
