#include <doctest.h>

#include <cmath>

#include "hypmass/quadrature.hpp"
#include "oracles.hpp"

using namespace hypmass;

TEST_CASE("gauss-legendre integrates polynomials exactly") {
  std::vector<double> nodes, weights;
  gauss_legendre(8, 0.0, 2.0, nodes, weights);
  // degree 15 polynomial x^15 over [0, 2]: exact 2^16/16 = 4096
  double s = 0.0;
  for (size_t i = 0; i < nodes.size(); ++i) s += weights[i] * std::pow(nodes[i], 15);
  CHECK(std::abs(s - 4096.0) < 1e-9 * 4096.0);
}

TEST_CASE("quadrature weights reproduce the closed-form areas") {
  for (int n : {3, 4, 5}) {
    for (double r : {10.0, 40.0}) {
      const QuadratureRule rule = build_quadrature(n, r, 16);
      const double hemi = hemisphere_area_closed_form(n, r);
      const double eq = equator_area_closed_form(n, r);
      CHECK(std::abs(rule.hemisphere_area() - hemi) < 1e-8 * hemi);
      CHECK(std::abs(rule.equator_area() - eq) < 1e-8 * eq);
    }
  }
}

TEST_CASE("quadrature integrates smooth angular functions spectrally") {
  // integral of (omega_n)^2 over the unit hemisphere S^2_+ is
  // 2 pi * int_0^{pi/2} cos^2 sin = 2 pi / 3
  const QuadratureRule rule = build_quadrature(3, 1.0, 12);
  double s = 0.0;
  for (const auto& nd : rule.hemisphere) {
    const double c = std::cos(nd.p.x[1]);
    s += c * c * nd.b_weight;
  }
  CHECK(std::abs(s - 2 * oracles::kPi / 3) < 1e-10);
}

TEST_CASE("nodes avoid the pole and the corner") {
  const QuadratureRule rule = build_quadrature(3, 10.0, 32);
  for (const auto& nd : rule.hemisphere) {
    CHECK(nd.p.x[1] > 1e-5);
    CHECK(nd.p.x[1] < oracles::kPi / 2 - 1e-5);
  }
  for (const auto& nd : rule.equator) CHECK(nd.p.x[1] == oracles::kPi / 2);
}

TEST_CASE("rule rejects bad parameters") {
  CHECK_THROWS(build_quadrature(2, 10.0, 16));
  CHECK_THROWS(build_quadrature(3, 10.0, 1));
}
