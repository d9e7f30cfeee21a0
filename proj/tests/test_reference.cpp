#include <doctest.h>

#include <random>

#include "hypmass/metric.hpp"
#include "hypmass/potentials.hpp"
#include "oracles.hpp"

using namespace hypmass;

TEST_CASE("basis potentials: pinned values and growth") {
  // POLAR r -> 0: V_(0) -> 1
  Eigen::VectorXd angles(2);
  angles << 0.7, 1.9;
  CHECK(std::abs(static_basis_eval(0, polar_point(1e-8, angles)) - 1.0) < 1e-12);
  // BALL center
  const ChartPoint center = ball_point(Eigen::VectorXd::Zero(3));
  CHECK(static_basis_eval(0, center) == 1.0);
  CHECK(static_basis_eval(1, center) == 0.0);
  // |V_(a)| <= C r along rays
  std::mt19937 rng(3);
  for (int n : {3, 4}) {
    for (int t = 0; t < 10; ++t) {
      const ChartPoint p = oracles::sample_polar(n, rng, 50.0, 400.0);
      for (int a = 0; a < n; ++a)
        CHECK(std::abs(static_basis_eval(a, p)) <= 1.2 * p.x[0]);
    }
  }
}

TEST_CASE("static potentials satisfy the Hessian identity and Neumann condition") {
  std::mt19937 rng(5);
  for (int n : {3, 4, 5}) {
    for (int a = 0; a < n; ++a) {
      const StaticPotential V = basis_potential(n, a);
      for (int t = 0; t < 10; ++t) {
        const ChartPoint p = oracles::sample_polar(n, rng, 0.5, 20.0);
        CHECK(hessian_residual(V, p) < 1e-7);
        const ChartPoint q = oracles::sample_ball(n, rng, 0.85);
        CHECK(hessian_residual(V, q) < 1e-7);
      }
      // dV(eta) = 0 on the face
      for (int t = 0; t < 10; ++t) {
        const ChartPoint p = oracles::sample_boundary(n, rng, 0.5, 20.0);
        const Eigen::VectorXd eta = boundary_normal_b(p);
        CHECK(std::abs(V.d1(p).dot(eta)) < 1e-8 * (1.0 + p.x[0]));
      }
    }
    // random combinations stay static
    std::uniform_real_distribution<double> uc(-2.0, 2.0);
    StaticPotential V;
    V.dim = n;
    V.coeffs.resize(n);
    for (int a = 0; a < n; ++a) V.coeffs[a] = uc(rng);
    const ChartPoint p = oracles::sample_polar(n, rng, 1.0, 10.0);
    CHECK(hessian_residual(V, p) < 1e-7);
  }
}

TEST_CASE("the basis is n-dimensional: sample Gram matrix is well conditioned") {
  std::mt19937 rng(7);
  for (int n : {3, 4, 5}) {
    const int m = 40;
    Eigen::MatrixXd samples(m, n);
    for (int i = 0; i < m; ++i) {
      const ChartPoint p = oracles::sample_polar(n, rng, 0.5, 5.0);
      for (int a = 0; a < n; ++a) samples(i, a) = static_basis_eval(a, p);
    }
    const Eigen::MatrixXd gram = samples.transpose() * samples / m;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
    const double cond = es.eigenvalues().maxCoeff() / es.eigenvalues().minCoeff();
    CHECK(es.eigenvalues().minCoeff() > 1e-8);
    MESSAGE("dim ", n, " sample Gram condition: ", cond);
  }
}

TEST_CASE("lorentz product pinned values") {
  Eigen::VectorXd e0 = Eigen::VectorXd::Zero(3), e1 = Eigen::VectorXd::Zero(3);
  e0[0] = 1.0;
  e1[1] = 1.0;
  CHECK(lorentz_product(e0, e0) == 1.0);
  CHECK(lorentz_product(e0, e1) == 0.0);
  Eigen::VectorXd nullv = Eigen::VectorXd::Zero(3);
  nullv[0] = 1.0;
  nullv[1] = 1.0;
  CHECK(lorentz_product(nullv, nullv) == 0.0);
  CHECK_THROWS(lorentz_product(e0, Eigen::VectorXd::Zero(4)));
}

TEST_CASE("causal classification thresholds") {
  Eigen::VectorXd z = Eigen::VectorXd::Zero(3);
  CHECK(classify(z, 0.0) == CausalClass::ZERO);
  z << 2.0, 0.1, 0.0;
  CHECK(classify(z, 1e-12) == CausalClass::TIMELIKE_FUTURE);
  z << -2.0, 0.1, 0.0;
  CHECK(classify(z, 1e-12) == CausalClass::TIMELIKE_PAST);
  z << 1.0, 1.0, 0.0;
  CHECK(classify(z, 1e-12) == CausalClass::NULL_FUTURE);
  z << 0.3, 1.0, 0.4;
  CHECK(classify(z, 1e-12) == CausalClass::SPACELIKE);
  z << 1e-11, 5e-12, 0.0;
  CHECK(classify(z, 1e-9) == CausalClass::ZERO);
}

TEST_CASE("isometry elements: invariants and the group action") {
  std::mt19937 rng(11);
  for (int n : {3, 4}) {
    const IsometryElement id = isometry_identity(n);
    id.validate();
    const IsometryElement boost = isometry_boost(n, 1, 0.7);
    boost.validate();
    const IsometryElement rot = isometry_rotation(n, 1, 2, 0.9);
    rot.validate();

    // identity action leaves coefficients unchanged
    StaticPotential V = basis_potential(n, 0);
    CHECK((isometry_action(id, V).coeffs - V.coeffs).norm() == 0.0);

    // boost of V_(0): coefficients (cosh s, sinh s, 0, ...)
    const double s = 0.45;
    const StaticPotential Vb = isometry_action(isometry_boost(n, 1, s), basis_potential(n, 0));
    CHECK(std::abs(Vb.coeffs[0] - std::cosh(s)) < 1e-14);
    CHECK(std::abs(Vb.coeffs[1] - std::sinh(s)) < 1e-14);
    for (int a = 2; a < n; ++a) CHECK(std::abs(Vb.coeffs[a]) < 1e-14);

    // coefficients represent composition with the point action
    for (int t = 0; t < 100; ++t) {
      const ChartPoint p = oracles::sample_polar(n, rng, 0.5, 10.0);
      const ChartPoint q = boost.apply(p);
      double composed = 0.0;
      const StaticPotential Vb2 = isometry_action(boost, basis_potential(n, 0));
      for (int a = 0; a < n; ++a) composed += Vb2.coeffs[a] * static_basis_eval(a, p);
      CHECK(std::abs(static_basis_eval(0, q) - composed) < 1e-10 * (1.0 + p.x[0]));
    }

    // the action preserves the Lorentz product
    std::uniform_real_distribution<double> uc(-1.5, 1.5);
    for (int t = 0; t < 30; ++t) {
      StaticPotential Vz, Vw;
      Vz.dim = Vw.dim = n;
      Vz.coeffs.resize(n);
      Vw.coeffs.resize(n);
      for (int a = 0; a < n; ++a) {
        Vz.coeffs[a] = uc(rng);
        Vw.coeffs[a] = uc(rng);
      }
      const IsometryElement iso = boost.compose(rot);
      const StaticPotential Tz = isometry_action(iso, Vz);
      const StaticPotential Tw = isometry_action(iso, Vw);
      CHECK(std::abs(lorentz_product(Tz.coeffs, Tw.coeffs) -
                     lorentz_product(Vz.coeffs, Vw.coeffs)) < 1e-10);
    }

    // group action: coefficients of V o (I1 I2) match the two-step action
    const IsometryElement i1 = isometry_boost(n, 1, 0.3);
    const IsometryElement i2 = isometry_rotation(n, 1, 2, 1.2);
    StaticPotential Vr;
    Vr.dim = n;
    Vr.coeffs.resize(n);
    for (int a = 0; a < n; ++a) Vr.coeffs[a] = uc(rng);
    const StaticPotential lhs = isometry_action(i1.compose(i2), Vr);
    const StaticPotential rhs = isometry_action(i2, isometry_action(i1, Vr));
    CHECK((lhs.coeffs - rhs.coeffs).norm() < 1e-12);
  }
}

TEST_CASE("analytic isometry chart jacobian matches differencing; inverse composes") {
  std::mt19937 rng(41);
  const int n = 3;
  const IsometryElement boost = isometry_boost(n, 1, 0.35);
  for (int t = 0; t < 10; ++t) {
    const ChartPoint p = oracles::sample_polar(n, rng, 2.0, 30.0);
    const Eigen::MatrixXd J = boost.chart_jacobian(p);
    Eigen::MatrixXd Jfd(n, n);
    for (int c = 0; c < n; ++c) {
      const double h = 1e-6 * (1.0 + std::abs(p.x[c]));
      ChartPoint pp = p, pm = p;
      pp.x[c] += h;
      pm.x[c] -= h;
      Eigen::VectorXd diff = boost.apply(pp).x - boost.apply(pm).x;
      if (diff[n - 1] > oracles::kPi) diff[n - 1] -= 2 * oracles::kPi;
      if (diff[n - 1] < -oracles::kPi) diff[n - 1] += 2 * oracles::kPi;
      Jfd.col(c) = diff / (2 * h);
    }
    CHECK((J - Jfd).norm() < 1e-6 * (1.0 + J.norm()));
  }
  const IsometryElement id = boost.compose(boost.inverse());
  CHECK((id.matrix - Eigen::MatrixXd::Identity(n + 1, n + 1)).norm() < 1e-14);
}

TEST_CASE("isometry point action preserves the face and the metric") {
  std::mt19937 rng(13);
  const int n = 3;
  const MetricField b = reference_metric(n, Chart::POLAR);
  const IsometryElement boost = isometry_boost(n, 1, 0.5);
  for (int t = 0; t < 20; ++t) {
    const ChartPoint p = oracles::sample_boundary(n, rng, 1.0, 15.0);
    const ChartPoint q = boost.apply(p);
    CHECK(std::abs(q.x[1] - oracles::kPi / 2) < 1e-12);  // face is preserved
  }
  // pullback of b under the point action is b (isometry)
  for (int t = 0; t < 10; ++t) {
    const ChartPoint p = oracles::sample_polar(n, rng, 1.0, 10.0);
    Eigen::MatrixXd J(n, n);
    for (int c = 0; c < n; ++c) {
      const double h = 1e-6 * (1.0 + std::abs(p.x[c]));
      ChartPoint pp = p, pm = p;
      pp.x[c] += h;
      pm.x[c] -= h;
      Eigen::VectorXd diff = boost.apply(pp).x - boost.apply(pm).x;
      if (diff[n - 1] > oracles::kPi) diff[n - 1] -= 2 * oracles::kPi;
      if (diff[n - 1] < -oracles::kPi) diff[n - 1] += 2 * oracles::kPi;
      J.col(c) = diff / (2 * h);
    }
    const Eigen::MatrixXd pulled = J.transpose() * b.components(boost.apply(p)) * J;
    CHECK((pulled - b.components(p)).norm() < 1e-6 * b.components(p).norm());
  }
}
