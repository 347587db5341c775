#pragma once

#include <functional>
#include <string>

namespace dcoul {

/// Coefficients of a symmetric three-term recurrence
///     x u_n = a_n u_n + b_{n-1} u_{n-1} + b_n u_{n+1},
/// stored as callables so unbounded index ranges are representable.
struct RecursionCoefficients {
  std::function<double(int)> diag_fn;    // a_n
  std::function<double(int)> offdiag_fn; // b_n, positive
  std::string label;

  double diag(int n) const { return diag_fn(n); }
  double offdiag(int n) const { return offdiag_fn(n); }
};

} // namespace dcoul
