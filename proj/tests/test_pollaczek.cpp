#include "dcoul/errors.hpp"
#include "dcoul/pollaczek.hpp"
#include "dcoul/specfun.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace dcoul;
using namespace dcoul::pollaczek;
using specfun::pi;

TEST_CASE("initial values") {
  const PollaczekParams p{1.3, 0.2, -0.7};
  const auto s = eval_P(p, 0.4, 3);
  CHECK(s[0] == 1.0);
  CHECK(s[1] == doctest::Approx(2 * (1.3 + 0.2) * 0.4 + 2 * -0.7).epsilon(1e-15));
  CHECK(s.normalization == Normalization::P);

  const auto h = eval_P(PollaczekParams{1.0, 0.0, 0.0}, 0.5, 2);
  CHECK(h[1] == doctest::Approx(1.0));
  CHECK(std::abs(h[2]) < 1e-15);
}

TEST_CASE("b = a = 0 reduces to Gegenbauer polynomials") {
  // the alternating explicit sum is only trustworthy at small n and |x|
  for (double lam : {0.5, 0.75, 1.5})
    for (double x : {-0.3, 0.0, 0.2}) {
      const auto s = eval_P(PollaczekParams{lam, 0.0, 0.0}, x, 8);
      for (int n = 0; n <= 8; ++n)
        CHECK(std::abs(s[n] - oracle::gegenbauer(n, lam, x)) < 1e-12);
    }
  // lam = 1: Chebyshev polynomials of the second kind
  for (double t : {0.1, 1.0, 2.9}) {
    const auto s = eval_P(PollaczekParams{1.0, 0.0, 0.0}, std::cos(t), 200);
    for (int n = 0; n <= 200; ++n)
      CHECK(std::abs(s[n] - std::sin((n + 1) * t) / std::sin(t)) < 1e-10 * (n + 1));
  }
  // reference values from 30-digit arithmetic
  CHECK(eval_P(PollaczekParams{1.5, 0, 0}, 0.3, 10)[10] ==
        doctest::Approx(2.7275282300707032437).epsilon(1e-13));
  CHECK(eval_P(PollaczekParams{0.75, 0, 0}, -0.62, 57)[57] ==
        doctest::Approx(-0.33648510972556733123).epsilon(1e-12));
}

TEST_CASE("general parameters match an independent recurrence") {
  const PollaczekParams p{1.2, 0.4, -0.35};
  for (double x : {-3.0, -0.8, 0.1, 2.5}) {
    const auto s = eval_P(p, x, 60);
    const auto r = oracle::pollaczek(p.lam, p.a, p.b, x, 60);
    for (int n = 0; n <= 60; ++n)
      CHECK(oracle::rel(s[n], r[n]) < 1e-13);
  }
}

TEST_CASE("complex argument agrees with real on the real axis") {
  const PollaczekParams p{0.9, 0.0, 0.3};
  const auto re = eval_P(p, 0.42, 30);
  const auto cx = eval_P(p, complex(0.42, 0.0), 30);
  for (int n = 0; n <= 30; ++n)
    CHECK(std::abs(cx[n] - re[n]) <= 1e-14 * (1 + std::abs(re[n])));
}

TEST_CASE("extended precision agrees with double where both are stable") {
  const PollaczekParams p{1.1, 0.0, -0.2};
  const auto d = eval_P(p, 0.3, 80);
  const auto e = eval_P_extended(p, 0.3, 80);
  for (int n = 0; n <= 80; ++n)
    CHECK(std::abs(d[n] - e[n].convert_to<double>()) <= 1e-12 * (1 + std::abs(d[n])));
}

TEST_CASE("recursion residual over a wide range") {
  const PollaczekParams p{0.8, 0.0, -0.45};
  for (double x : {-1.0, -0.3, 0.55, 1.0}) {
    const auto s = eval_P(p, x, 500);
    for (int n = 1; n < 500; ++n) {
      const double lhs = ((n + p.lam + p.a) * x + p.b) * s[n];
      const double rhs = 0.5 * (n + 2 * p.lam - 1) * s[n - 1] + 0.5 * (n + 1) * s[n + 1];
      CHECK(std::abs(lhs - rhs) <= 1e-10 * (1 + std::abs(lhs)));
    }
  }
  // |x| > 1 outgrows the double range; the extended evaluator covers it
  for (double x : {-5.0, 2.0, 5.0}) {
    const auto s = eval_P_extended(p, x, 500);
    for (int n = 1; n < 500; ++n) {
      const extended_float lhs = ((n + p.lam + p.a) * x + p.b) * s[n];
      const extended_float rhs =
          0.5 * (n + 2 * p.lam - 1) * s[n - 1] + 0.5 * (n + 1) * s[n + 1];
      CHECK(abs(lhs - rhs) <= 1e-10 * (1 + abs(lhs)));
    }
  }
}

TEST_CASE("second solution") {
  const PollaczekParams p{1.0, 0.0, 0.0};
  const auto s = eval_Pstar(p, 0.2, 5);
  CHECK(s[0] == 0.0);
  CHECK(s[1] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(s.normalization == Normalization::Pstar);
  CHECK(symmetric_offdiag(p, 0) == doctest::Approx(std::sqrt(2.0) / 2));
}

TEST_CASE("Casoratian of the symmetric pair is constant") {
  for (double x : {-0.7, 0.05, 0.9}) {
    const PollaczekParams p{1.4, 0.0, -0.25};
    const auto Q = to_symmetric_Q(eval_P(p, x, 201));
    const auto S = eval_Pstar(p, x, 201);
    auto cas = [&](int n) {
      return symmetric_offdiag(p, n) * (Q[n] * S[n + 1] - Q[n + 1] * S[n]);
    };
    const double w0 = cas(0);
    for (int n = 1; n <= 200; ++n)
      CHECK(std::abs(cas(n) / w0 - 1.0) <= 1e-9);
  }
}

TEST_CASE("symmetric normalization") {
  const auto q = to_symmetric_Q(eval_P(PollaczekParams{1.7, 0, 0.1}, 0.3, 3));
  CHECK(q[0] == doctest::Approx(std::sqrt(2 * 1.7)).epsilon(1e-14));
  const auto h = to_symmetric_Q(eval_P(PollaczekParams{0.5, 0, 0.1}, 0.3, 3));
  CHECK(h[0] == doctest::Approx(1.0).epsilon(1e-15));

  const PollaczekParams p{1.5, 0.0, -0.3};
  const double x = 0.2;
  const auto Q = to_symmetric_Q(eval_P(p, x, 51));
  for (int n = 1; n <= 50; ++n) {
    const double lhs = ((n + p.lam + p.a) * x + p.b) * Q[n];
    const double rhs = symmetric_offdiag(p, n - 1) * Q[n - 1] + symmetric_offdiag(p, n) * Q[n + 1];
    CHECK(std::abs(lhs - rhs) <= 1e-10 * (1 + std::abs(lhs)));
  }
}

TEST_CASE("orthonormal normalization") {
  const PollaczekParams p{1.3, 0.4, 0.2};
  const auto o = to_orthonormal(eval_P(p, 0.1, 2));
  CHECK(o[0] == doctest::Approx(std::sqrt((1.3 + 0.4) / std::tgamma(2.6))).epsilon(1e-14));
  CHECK(to_orthonormal(eval_P(PollaczekParams{1.0, 0, 0}, 0.1, 2))[0] ==
        doctest::Approx(1.0).epsilon(1e-15));
  CHECK(o.normalization == Normalization::orthonormal);

  // p_n obeys the Jacobi matrix recurrence
  const auto J = jacobi_coefficients(p);
  const auto s = to_orthonormal(eval_P(p, 0.37, 40));
  for (int n = 1; n < 40; ++n) {
    const double lhs = 0.37 * s[n];
    const double rhs = J.diag(n) * s[n] + J.offdiag(n - 1) * s[n - 1] + J.offdiag(n) * s[n + 1];
    CHECK(std::abs(lhs - rhs) < 1e-12);
  }
}

TEST_CASE("orthonormal values stay bounded while P_n grows") {
  const PollaczekParams p{2.0, 0.0, -0.2};
  const auto P = eval_P(p, 0.4, 4000);
  const auto o = to_orthonormal(P);
  double pmax = 0.0;
  for (int n = 2000; n <= 4000; ++n)
    pmax = std::max(pmax, std::abs(o[n]));
  CHECK(pmax < 5.0);
  CHECK(std::abs(P[4000]) > 100.0);
}

TEST_CASE("orthonormal amplitude is n-independent") {
  const PollaczekParams p{1.5, 0.0, -0.4};
  const auto o = to_orthonormal(eval_P(p, std::cos(1.1), 16001));
  auto window_max = [&](int n) {
    double m = 0.0;
    for (int k = n; k <= 2 * n; ++k)
      m = std::max(m, std::abs(o[k]));
    return m;
  };
  const double ref = window_max(500);
  for (int n : {1000, 2000, 4000, 8000})
    CHECK(std::abs(window_max(n) / ref - 1.0) < 0.05);
}

TEST_CASE("degree in x by finite differences") {
  const PollaczekParams p{1.2, 0.3, -0.4};
  for (int n : {3, 6, 9}) {
    const int m = n + 1;
    const double h = 0.05, x0 = -0.3;
    std::vector<double> v(m + 1);
    for (int k = 0; k <= m; ++k)
      v[k] = eval_P(p, x0 + k * h, n)[n];
    double scale = 0.0;
    for (double t : v)
      scale = std::max(scale, std::abs(t));
    for (int order = 0; order < m; ++order)
      for (int k = 0; k + 1 < int(v.size()) - order; ++k)
        v[k] = v[k + 1] - v[k];
    // (n+1)-th difference of a degree-n polynomial
    const double binom_scale = scale * std::pow(2.0, m);
    CHECK(std::abs(v[0]) <= 1e-8 * binom_scale);
  }
}

TEST_CASE("degree in b by finite differences") {
  const int n = 5;
  std::vector<double> v(n + 2);
  for (int k = 0; k <= n + 1; ++k)
    v[k] = eval_P(PollaczekParams{0.8, 0.1, -0.5 + 0.1 * k}, 0.3, n)[n];
  for (int order = 0; order <= n; ++order)
    for (int k = 0; k + 1 < int(v.size()) - order; ++k)
      v[k] = v[k + 1] - v[k];
  CHECK(std::abs(v[0]) < 1e-10);
}

TEST_CASE("jacobi coefficients") {
  const PollaczekParams p{1.0, 0.0, -0.3};
  const auto J = jacobi_coefficients(p);
  CHECK(J.diag(0) == doctest::Approx(0.3));
  CHECK(J.offdiag(0) == doctest::Approx(0.5 * std::sqrt(2.0 / 2.0)));
  // off-diagonal tends to 1/2: support [-1, 1]
  CHECK(J.offdiag(100000) == doctest::Approx(0.5).epsilon(1e-5));
}

TEST_CASE("generating function") {
  const PollaczekParams p{1.2, 0.0, -0.4};
  CHECK(phi(p, complex(1.0, 0.0)).real() == doctest::Approx(-0.4 / std::sin(1.0)));
  CHECK(generating_partial_sum(p, 1.0, 0.0, 10) == complex(1.0));
  const complex closed = generating_closed_form(p, 1.0, 0.3);
  double prev = 1.0;
  for (int N : {4, 8, 12, 16}) {
    const double err = std::abs(generating_partial_sum(p, 1.0, 0.3, N) - closed);
    CHECK(err < 0.2 * prev);
    prev = err;
  }
  CHECK(std::abs(generating_partial_sum(p, 1.0, 0.3, 60) - closed) < 1e-9);
  CHECK_THROWS_AS(generating_partial_sum(p, 1.0, 0.97, 10), RadiusError);
}

TEST_CASE("generating function off the real theta line") {
  const PollaczekParams p{0.9, 0.2, 0.15};
  const complex theta(0.8, 0.3);
  const complex t(0.2, 0.1);
  CHECK(std::abs(generating_partial_sum(p, theta, t, 120) - generating_closed_form(p, theta, t)) <
        1e-12);
}

TEST_CASE("Darboux approximant with vanishing phase") {
  const PollaczekParams p{1.5, 0.0, 0.0};
  const double theta = 0.9;
  const double A = 2.0 / (std::tgamma(1.5) * std::pow(2 * std::sin(theta), 1.5));
  for (int n : {10, 100})
    CHECK(asymptotic_scattering(p, theta, n) ==
          doctest::Approx(A * std::cos(n * theta + 1.5 * (theta - pi / 2))).epsilon(1e-12));
}

TEST_CASE("Darboux error shrinks with n") {
  const PollaczekParams p{1.5, 0.0, -0.4};
  const double theta = 1.1;
  const auto o = to_orthonormal(eval_P(p, std::cos(theta), 4001));
  auto err = [&](int n0) {
    double e = 0.0;
    for (int n = n0; n < 2 * n0; ++n)
      e = std::max(e, std::abs(o[n] - asymptotic_scattering(p, theta, n)));
    return e;
  };
  CHECK(err(2000) < err(200));
  CHECK(err(2000) <= 0.25 * err(200));
}

TEST_CASE("bound branch resolution") {
  const auto up = resolve_bound_theta(1.5);
  CHECK(up.branch == BoundBranch::upper);
  CHECK(up.exp_i_theta == doctest::Approx(1.5 + std::sqrt(1.25)));
  const auto lo = resolve_bound_theta(-1.5);
  CHECK(lo.branch == BoundBranch::lower);
  CHECK(std::abs(lo.exp_i_theta) < 1.0);
  CHECK(lo.exp_i_theta == doctest::Approx(-1.5 + std::sqrt(1.25)));
  CHECK_THROWS_AS(resolve_bound_theta(0.5), BranchError);
  CHECK_THROWS_AS(resolve_bound_theta(1.0), BranchError);
}

TEST_CASE("bound approximant vanishes at the quantization point") {
  // choose b with lam - i Phi = 0 on the upper branch at x = 1.5
  const double x = 1.5, lam = 1.0;
  double b_lo = -5.0, b_hi = 5.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (b_lo + b_hi);
    const double g = bound_gamma_argument(PollaczekParams{lam, 0.0, mid}, x);
    const double g_lo = bound_gamma_argument(PollaczekParams{lam, 0.0, b_lo}, x);
    ((g > 0) == (g_lo > 0) ? b_lo : b_hi) = mid;
  }
  const PollaczekParams p{lam, 0.0, 0.5 * (b_lo + b_hi)};
  CHECK(std::abs(bound_gamma_argument(p, x)) < 1e-12);
  const auto bl = asymptotic_bound_log(p, x, 50);
  CHECK(bl.vanishes);
  CHECK(asymptotic_bound(p, x, 50) == complex(0.0));
}

TEST_CASE("bound approximant tracks the extended-precision recurrence") {
  const PollaczekParams p{1.0, 0.0, -0.3};
  const double x = 1.5;
  const auto P = eval_P_extended(p, x, 1000);
  auto ratio = [&](int n) {
    const auto bl = asymptotic_bound_log(p, x, n);
    const double log_exact = log(abs(P[n])).convert_to<double>();
    return std::exp(log_exact - bl.log_value.real());
  };
  CHECK(std::abs(ratio(1000) - 1.0) < 0.02);
  CHECK(std::abs(ratio(1000) - 1.0) < std::abs(ratio(100) - 1.0));
}

TEST_CASE("lower branch gives the mirrored condition") {
  // P_n(-x; a, -b) = (-1)^n P_n(x; a, b)
  const PollaczekParams p{1.0, 0.0, -0.3}, q{1.0, 0.0, 0.3};
  CHECK(bound_gamma_argument(p, 1.5) == doctest::Approx(bound_gamma_argument(q, -1.5)));
  const auto a = asymptotic_bound_log(p, 1.5, 200);
  const auto b = asymptotic_bound_log(q, -1.5, 200);
  CHECK(b.branch == BoundBranch::lower);
  CHECK(a.log_value.real() == doctest::Approx(b.log_value.real()).epsilon(1e-12));
}

TEST_CASE("overflow is reported") {
  const PollaczekParams p{1.0, 0.0, -0.3};
  CHECK_THROWS_AS(asymptotic_bound(p, 50.0, 1000), OverflowError);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(eval_P(PollaczekParams{0.0, 0, 0}, 0.1, 3), InvalidParameterError);
  CHECK_THROWS_AS(eval_P(PollaczekParams{1.0, NAN, 0}, 0.1, 3), InvalidParameterError);
}
