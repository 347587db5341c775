#include "dcoul/errors.hpp"
#include "dcoul/spectrum.hpp"
#include "dcoul/wavefunction.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace dcoul;
using namespace dcoul::wavefunction;

namespace {

model::DerivedParams derived(double Z, int kappa, double compton, double omega) {
  model::PhysicalParams p;
  p.Z = Z;
  p.kappa = kappa;
  p.compton = compton;
  p.omega = omega;
  return model::derive(p);
}

} // namespace

TEST_CASE("basis against the Laguerre series") {
  const double g = 0.7, w = 1.3;
  for (int n : {0, 1, 4, 9}) {
    const auto e = BasisElement::make(n, g, w);
    CHECK(e.normalization ==
          doctest::Approx(std::sqrt(w * std::tgamma(n + 1.0) / std::tgamma(n + 2 * g + 2)))
              .epsilon(1e-13));
    for (double r : {0.05, 0.8, 3.0, 11.0}) {
      const double y = w * r;
      const double ref = e.normalization * std::pow(y, g + 1) * std::exp(-y / 2) *
                         oracle::laguerre_series(n, 2 * g + 1, y);
      CHECK(basis_value(e, r) == doctest::Approx(ref).epsilon(1e-9));
    }
  }
}

TEST_CASE("basis derivatives against finite differences") {
  const auto e = BasisElement::make(6, 0.4, 0.9);
  for (double r : {0.3, 1.7, 6.0}) {
    const double h = 1e-4;
    const double f1 = (basis_value(e, r - 2 * h) - 8 * basis_value(e, r - h) +
                       8 * basis_value(e, r + h) - basis_value(e, r + 2 * h)) /
                      (12 * h);
    const double f2 = (basis_derivative(e, r + h) - basis_derivative(e, r - h)) / (2 * h);
    CHECK(basis_derivative(e, r) == doctest::Approx(f1).epsilon(1e-8));
    CHECK(basis_second_derivative(e, r) == doctest::Approx(f2).epsilon(1e-6));
  }
  const auto s = basis_samples(0.4, 0.9, 10, 1.7);
  CHECK(s.value[6] == doctest::Approx(basis_value(e, 1.7)).epsilon(1e-13));
  CHECK(s.first[6] == doctest::Approx(basis_derivative(e, 1.7)).epsilon(1e-12));
  CHECK(s.second[6] == doctest::Approx(basis_second_derivative(e, 1.7)).epsilon(1e-12));
  CHECK_THROWS_AS(basis_value(e, 0.0), InvalidParameterError);
  CHECK_THROWS_AS(BasisElement::make(-1, 0.4, 0.9), InvalidParameterError);
}

TEST_CASE("recursion coefficients satisfy their recurrence") {
  const auto d = derived(-2.0, 1, 0.05, 1.2);
  const auto c = coefficients_recursion(d, 1.3, 40);
  REQUIRE(c.size() == 41);
  CHECK(c.values[0] == complex(1.0, 0.0));
  const auto rc = model::recursion_coefficients(d);
  const auto pp = model::map_to_pollaczek(d, model::EnergyPoint::at(1.3));
  for (int n = 1; n < 40; ++n) {
    const double lhs = (rc.diag(n) * pp.x + pp.params.b) * c.values[n].real();
    const double rhs = rc.offdiag(n - 1) * c.values[n - 1].real() +
                       rc.offdiag(n) * c.values[n + 1].real();
    CHECK(std::abs(lhs - rhs) <= 1e-12 * (std::abs(lhs) + std::abs(rhs)));
  }
}

TEST_CASE("closed forms against the recurrence") {
  for (double Z : {-1.0, -5.0})
    for (int kappa : {-1, 1, 2}) {
      const auto d = derived(Z, kappa, 0.05, 1.5);
      const auto cmp = compare_closed_form(d, 1.4, 30);
      CHECK(cmp.working_passes);
      CHECK(cmp.working_deviation < 1e-8);
      CHECK_FALSE(cmp.displayed_passes);
      CHECK(cmp.displayed_deviation > 1e-3);
      CHECK_FALSE(cmp.note.empty());
    }
}

TEST_CASE("Sturmian overlaps are the identity") {
  for (double g : {0.0, 0.6, 2.3}) {
    const auto m = sturmian_gram_matrix(g, 1.7, 12);
    CHECK(m.rows == 12);
    CHECK(identity_deviation(m) < 1e-12);
  }
}

TEST_CASE("plain overlaps are symmetric and tridiagonal") {
  const double g = 0.6, w = 1.7;
  const auto m = gram_matrix(g, w, 12);
  for (int i = 0; i < 12; ++i)
    for (int j = 0; j < 12; ++j) {
      CHECK(std::abs(m(i, j) - m(j, i)) < 1e-12);
      if (std::abs(i - j) > 1)
        CHECK(std::abs(m(i, j)) < 1e-12);
    }
  // <zeta_n|zeta_n> = 2 (n + g + 1), <zeta_n|zeta_{n+1}> = -sqrt((n+1)(n+2g+2))
  for (int n = 0; n < 11; ++n) {
    CHECK(m(n, n) == doctest::Approx(2 * (n + g + 1)).epsilon(1e-12));
    CHECK(m(n, n + 1) == doctest::Approx(-std::sqrt((n + 1) * (n + 2 * g + 2))).epsilon(1e-12));
  }
  CHECK(identity_deviation(m) > 0.1);
}

TEST_CASE("operator matrix is tridiagonal") {
  struct Case {
    double Z;
    int kappa;
    double compton, omega, eps;
  };
  for (const Case c : {Case{-1.0, 1, 0.05, 1.0, 1.3}, Case{-10.0, -2, 0.02, 3.0, 0.99},
                       Case{-40.0, 3, 1.0 / 137.035999, 0.5, 2.5}}) {
    const auto d = derived(c.Z, c.kappa, c.compton, c.omega);
    const auto t = verify_tridiagonal(d, c.eps, 20);
    CHECK(t.quadrature_order == 24);
    CHECK(t.matrix.rows == 20);
    CHECK(t.off_band_ratio < 1e-12);
    CHECK(t.bracket_deviation < 1e-10);
  }
  const auto d = derived(-1.0, 1, 0.05, 1.0);
  CHECK_THROWS_AS(verify_tridiagonal(d, 1.3, 2), InvalidParameterError);
  CHECK_THROWS_AS(verify_tridiagonal(d, 1.3, max_tridiagonal_order + 1), QuadratureOrderError);
}

TEST_CASE("bound state reconstruction solves the radial equation") {
  const auto d = derived(-1.0, 1, 0.05, 1.5);
  model::PhysicalParams p = d.physical;
  const double eps = spectrum::bound_energy(p, 0);
  const auto c = coefficients_minimal(d, eps, 80);
  UniformGrid grid{0.01 / 1.5, 0.01 / 1.5, 6000};
  const auto r = grid.points();
  const auto up = reconstruct_upper(c, d, r, 64);
  CHECK(up.tail_computable);
  CHECK(up.tail_fraction < 1e-20);
  CHECK(schrodinger_residual(up.values, grid, d, eps) < 1e-6);
  CHECK(dirac_residual(c, d, eps, r, 64) < 1e-6);

  // between two levels the minimal solution does not solve the equation
  const double mid = 0.5 * (eps + spectrum::bound_energy(p, 1));
  const auto cm = coefficients_minimal(d, mid, 80);
  const auto bad = reconstruct_upper(cm, d, r, 64);
  CHECK(schrodinger_residual(bad.values, grid, d, mid) > 1e-3);
}

TEST_CASE("lower component and its singular point") {
  const auto d = derived(-1.0, 1, 0.05, 1.5);
  const auto e = BasisElement::make(2, d.effective_gamma, 1.5);
  const double eps = 1.2, r = 0.9;
  const double pref = 0.05 / (eps + d.gamma / 1.0);
  const double ref = pref * ((1.0 / 1.0 + d.gamma / r) * basis_value(e, r) + basis_derivative(e, r));
  CHECK(lower_component(e, r, d, eps) == doctest::Approx(ref).epsilon(1e-13));

  const auto s = derived(-1.0, -1, 0.05, 1.5);
  CHECK_THROWS_AS(lower_component(e, r, s, s.gamma), KineticBalanceSingular);
}

TEST_CASE("grid and truncation errors") {
  const auto d = derived(-1.0, 1, 0.05, 1.5);
  const auto c = coefficients_recursion(d, 1.3, 10);
  const std::vector<double> phi(4, 1.0);
  CHECK_THROWS_AS(schrodinger_residual(phi, UniformGrid{0.1, 0.1, 4}, d, 1.3), GridError);
  const std::vector<double> phi5(5, 1.0);
  CHECK_THROWS_AS(schrodinger_residual(phi5, UniformGrid{0.0, 0.1, 5}, d, 1.3), GridError);
  CHECK_THROWS_AS(schrodinger_residual(phi5, UniformGrid{0.1, -0.1, 5}, d, 1.3), GridError);
  const std::vector<double> r{0.5, 1.0};
  CHECK_THROWS_AS(reconstruct_upper(c, d, r, 12), InvalidParameterError);
  CHECK_THROWS_AS(reconstruct_upper(c, d, r, 0), InvalidParameterError);
}

TEST_CASE("matrix text") {
  Matrix m;
  m.rows = m.cols = 2;
  m.data = {1.0, 0.1, 0.1, 2.0};
  const auto s = format_matrix(m, 0.5, 1.25);
  CHECK(s.rfind("N 2\ngamma 0.5", 0) == 0);
  CHECK(s.find("eps 1.25\n") != std::string::npos);
  CHECK(s.find("0.10000000000000001") != std::string::npos);
}
