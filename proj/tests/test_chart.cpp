#include <doctest.h>

#include <random>

#include "hypmass/chart.hpp"
#include "hypmass/metric.hpp"
#include "hypmass/potentials.hpp"
#include "oracles.hpp"

using namespace hypmass;

TEST_CASE("sphere parameterization is unit and consistent with derivatives") {
  std::mt19937 rng(7);
  for (int n : {3, 4, 5}) {
    for (int t = 0; t < 50; ++t) {
      const ChartPoint p = oracles::sample_polar(n, rng, 1.0, 5.0);
      const Eigen::VectorXd angles = p.x.tail(n - 1);
      const Eigen::VectorXd w = sphere_unit(angles);
      CHECK(std::abs(w.norm() - 1.0) < 1e-12);
      // derivative check against central differences
      const Eigen::MatrixXd dw = sphere_unit_d1(angles);
      for (int k = 0; k < n - 1; ++k) {
        Eigen::VectorXd ap = angles, am = angles;
        const double h = 1e-6;
        ap[k] += h;
        am[k] -= h;
        const Eigen::VectorXd num = (sphere_unit(ap) - sphere_unit(am)) / (2 * h);
        CHECK((num - dw.row(k).transpose()).norm() < 1e-8);
      }
    }
  }
}

TEST_CASE("angle extraction inverts the parameterization") {
  std::mt19937 rng(11);
  for (int n : {3, 4, 5}) {
    for (int t = 0; t < 100; ++t) {
      const ChartPoint p = oracles::sample_polar(n, rng, 1.0, 5.0);
      const Eigen::VectorXd angles = p.x.tail(n - 1);
      const Eigen::VectorXd w = sphere_unit(angles);
      const Eigen::VectorXd back = sphere_angles(w);
      CHECK((sphere_unit(back) - w).norm() < 1e-11);
    }
  }
}

TEST_CASE("model transform round-trips and maps boundary to boundary") {
  std::mt19937 rng(13);
  for (int n : {3, 4, 5}) {
    for (int t = 0; t < 60; ++t) {
      const ChartPoint p = oracles::sample_polar(n, rng, 0.5, 30.0);
      const ChartPoint q = model_transform(p);
      CHECK(q.chart == Chart::BALL);
      CHECK(in_domain(q));
      const ChartPoint back = model_transform(q);
      CHECK(std::abs(back.x[0] - p.x[0]) < 1e-10 * (1.0 + p.x[0]));
      CHECK((sphere_unit(back.x.tail(n - 1)) - sphere_unit(p.x.tail(n - 1))).norm() < 1e-11);
    }
    // boundary maps to boundary exactly
    std::mt19937 rng2(17);
    const ChartPoint pb = oracles::sample_boundary(n, rng2, 1.0, 10.0);
    const ChartPoint qb = model_transform(pb);
    CHECK(std::abs(qb.x[n - 1]) < 1e-14);
  }
}

TEST_CASE("hyperboloid basepoint corresponds to the disk center") {
  // r -> 0 along any direction lands at x' = 0
  Eigen::VectorXd angles(2);
  angles << 0.7, 1.3;
  const ChartPoint p = polar_point(1e-12, angles);
  const ChartPoint q = model_transform(p);
  CHECK(q.x.norm() < 1e-10);
}

TEST_CASE("static potentials agree across the two models") {
  std::mt19937 rng(19);
  for (int n : {3, 4, 5}) {
    for (int t = 0; t < 200; ++t) {
      const ChartPoint p = oracles::sample_polar(n, rng, 0.3, 20.0);
      const ChartPoint q = model_transform(p);
      for (int a = 0; a < n; ++a) {
        const double vp = static_basis_eval(a, p);
        const double vq = static_basis_eval(a, q);
        CHECK(std::abs(vp - vq) < 1e-9 * (1.0 + std::abs(vp)));
      }
    }
  }
}

TEST_CASE("transform pulls the reference metric back correctly") {
  // push POLAR components through the chart map and compare with the
  // conformal form omega^{-2} delta
  std::mt19937 rng(23);
  const int n = 3;
  const MetricField bp = reference_metric(n, Chart::POLAR);
  const MetricField bb = reference_metric(n, Chart::BALL);
  for (int t = 0; t < 40; ++t) {
    const ChartPoint q = oracles::sample_ball(n, rng, 0.85);
    // Jacobian of BALL -> POLAR by central differences
    Eigen::MatrixXd J(n, n);
    for (int c = 0; c < n; ++c) {
      const double h = 1e-7;
      ChartPoint qp = q, qm = q;
      qp.x[c] += h;
      qm.x[c] -= h;
      Eigen::VectorXd diff = to_chart(qp, Chart::POLAR).x - to_chart(qm, Chart::POLAR).x;
      if (diff[n - 1] > oracles::kPi) diff[n - 1] -= 2 * oracles::kPi;
      if (diff[n - 1] < -oracles::kPi) diff[n - 1] += 2 * oracles::kPi;
      J.col(c) = diff / (2 * h);
    }
    const ChartPoint pp = to_chart(q, Chart::POLAR);
    const Eigen::MatrixXd pulled = J.transpose() * bp.components(pp) * J;
    CHECK((pulled - bb.components(q)).norm() < 1e-6 * bb.components(q).norm());
  }
}

TEST_CASE("unit sphere areas") {
  CHECK(std::abs(unit_sphere_area(1) - 2 * oracles::kPi) < 1e-14);
  CHECK(std::abs(unit_sphere_area(2) - 4 * oracles::kPi) < 1e-13);
  CHECK(std::abs(unit_sphere_area(3) - 2 * oracles::kPi * oracles::kPi) < 1e-13);
}
