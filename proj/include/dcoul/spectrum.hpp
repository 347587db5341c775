#pragma once

#include "dcoul/model.hpp"

#include <vector>

namespace dcoul::spectrum {

/// Bound-state energy
///   eps_n = [1 + (compton Z / (n + g + 1))^2]^{-1/2},
/// g the effective gamma (so kappa < 0 reads n - gamma with the signed gamma).
/// RepulsiveError for Z >= 0.
double bound_energy(const model::PhysicalParams &p, int n);

/// Negative-energy level n of a problem with Z > 0: the image under
/// (Z, kappa, eps) -> (-Z, -kappa, -eps) of level n of the attractive
/// problem. RepulsiveError for Z <= 0.
double conjugate_bound_energy(const model::PhysicalParams &p, int n);

/// eps_n - 1 evaluated without cancellation.
double bound_energy_offset(const model::PhysicalParams &p, int n);

/// Classical fine-structure energy with radial quantum number n_r:
///   [1 + (Z compton / (n_r + sqrt(kappa^2 - (Z compton)^2)))^2]^{-1/2}.
double sommerfeld_energy(double Z, int kappa, double compton, int n_r);

/// Radial quantum number of the classical formula matching level n:
/// n + 1 for kappa > 0, n for kappa < 0.
int sommerfeld_radial_number(int kappa, int n);

struct SpectrumEntry {
  int n = 0;
  int kappa = 0;
  double eps = 0.0;
  double oracle_residual = 0.0; // relative, against sommerfeld_energy
};

struct SpectrumTable {
  std::vector<SpectrumEntry> entries;
};

/// Levels n = 0..n_max for p.kappa.
SpectrumTable spectrum_table(const model::PhysicalParams &p, int n_max);

/// lam_pol - i Phi (x > 1) or lam_pol + i Phi (x < -1) at eps. Both reduce to
/// lam_pol + compton Z eps / sqrt(1 - eps^2), which is what is evaluated.
/// Roots at -n are the bound states. ThresholdError at |eps| = 1,
/// BranchError for |eps| > 1, RepulsiveError for Z >= 0.
double quantization_condition(const model::DerivedParams &d, double eps);

/// (eps_n - 1) / compton^2. Tends to -Z^2 / (2 N^2) as compton -> 0 with
/// N = nonrelativistic_principal_number(kappa, n).
double nonrelativistic_limit_check(const model::PhysicalParams &p, int n);

/// n + kappa + 1 for kappa > 0, n + |kappa| for kappa < 0.
int nonrelativistic_principal_number(int kappa, int n);

struct MinimalSolutionDiagnostic {
  double defect = 0.0;         // |c_0 f_0 - b_0 f_1| / (|c_0 f_0| + |b_0 f_1|)
  double backward_ratio = 0.0; // f_1 / f_0 from the backward sweep
  double forward_ratio = 0.0;  // c_0 / b_0 from the n = 0 row
  int start_index = 0;         // N + guard
};

inline constexpr int miller_guard = 40;

/// Backward (Miller) recurrence on the Laguerre-basis three-term relation
/// from index N + miller_guard with tail (f_{M+1}, f_M) = (0, 1).
MinimalSolutionDiagnostic minimal_solution_detect(const model::DerivedParams &d,
                                                  double eps, int N);

/// Minimal solution f_0 .. f_N, normalized to f_0 = 1, from the same sweep.
std::vector<double> minimal_solution(const model::DerivedParams &d, double eps,
                                     int N);

} // namespace dcoul::spectrum
