#pragma once

#include "dcoul/model.hpp"
#include "dcoul/pollaczek.hpp"

#include <vector>

namespace dcoul::scattering {

/// Large-n form of the orthonormal coefficients at a scattering energy:
///   p_n ~ amplitude cos(n theta + psi_n),
///   psi_n = psi + lam (theta - pi/2) - Phi ln(2 n sin theta).
struct PhaseShiftResult {
  double eps = 0.0;
  double theta = 0.0;
  double Phi = 0.0;
  double psi = 0.0; // arg Gamma(lam + i Phi), principal branch unless unwrapped
  double amplitude = 0.0;
  double lam = 0.0;

  double psi_n(int n) const;
};

/// ThresholdError, SingularMapError and BranchError (|eps| < 1) propagate.
PhaseShiftResult phase_shift(const model::PhysicalParams &p, double eps);

/// Same quantities directly from Pollaczek parameters at real theta.
PhaseShiftResult phase_shift(const pollaczek::PollaczekParams &params,
                             double theta);

/// Evaluates each energy and makes psi continuous along the sweep: a 2 pi
/// jump is removed only when consecutive values differ by more than pi.
/// The grid must not contain bound-regime or threshold points.
std::vector<PhaseShiftResult> phase_shift_sweep(const model::PhysicalParams &p,
                                                const std::vector<double> &eps);

/// In-place continuation of psi along consecutive results.
void unwrap_psi(std::vector<PhaseShiftResult> &sweep);

struct AsymptoticFit {
  double theta = 0.0;
  double amplitude = 0.0;
  double psi = 0.0; // wrapped to (-pi, pi]
  double Phi = 0.0;
  int window_begin = 0;
  int window_end = 0;
  int iterations = 0;
};

/// Fits amplitude cos(n theta + psi_n) to orthonormal values on
/// [begin, end). The local phase is recovered from consecutive pairs with
/// the logarithmic drift removed, theta by regression of the unwrapped
/// phase, then psi and the amplitude from the residual.
/// FitError when the input is not oscillatory (|x| >= 1 or no sign changes).
AsymptoticFit fit_asymptotics(const pollaczek::PolynomialSequence &seq,
                              int begin, int end);

/// |p_n - amplitude cos(n theta + psi_n)| <= C / n over a window.
struct AgreementBand {
  double C = 0.0;             // max n |error| over the whole window
  double C_first_half = 0.0;
  double C_second_half = 0.0;
  bool holds = false;         // halves agree within a factor of two
};

AgreementBand agreement_band(const pollaczek::PolynomialSequence &seq,
                             int begin, int end);

/// max |p_n - approximant_n| / amplitude over [begin, end).
double windowed_relative_error(const pollaczek::PolynomialSequence &seq,
                               int begin, int end);

} // namespace dcoul::scattering
