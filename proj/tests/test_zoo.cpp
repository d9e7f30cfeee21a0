#include <doctest.h>

#include <random>

#include "hypmass/engine.hpp"
#include "hypmass/geometry.hpp"
#include "hypmass/zoo.hpp"
#include "oracles.hpp"

using namespace hypmass;

TEST_CASE("ads constructor: zero parameter gives the reference, horizon guard works") {
  const MetricField g0 = ads_schwarzschild_half(3, 0.0);
  CHECK(g0.name == "reference");
  CHECK(std::isinf(g0.tau));

  CHECK(std::abs(ads_horizon_radius(3, 1.0) - 1.0) < 1e-12);  // r^3 + r - 2 = 0
  const MetricField g = ads_schwarzschild_half(3, 1.0);
  Eigen::VectorXd ang(2);
  ang << 0.8, 1.2;
  CHECK_THROWS(g.components(polar_point(1.05, ang)));
  CHECK_NOTHROW(g.components(polar_point(1.2, ang)));
  CHECK_THROWS(ads_schwarzschild_half(3, -1.0));
}

TEST_CASE("zoo metrics pass the decay validation with their declared rates") {
  CHECK(validate_decay(zoo_reference(3)).pass);
  CHECK(validate_decay(ads_schwarzschild_half(3, 1.0)).pass);
  CHECK(validate_decay(trace_perturbation(3, power_profile(1.0, 3))).pass);
  CHECK(validate_decay(conformally_compact(round_conformal_data(3, 0.3))).pass);
  CHECK_THROWS(trace_perturbation(3, power_profile(1.0, 1.2)));  // tau <= n/2
}

TEST_CASE("ball-model reference components are the conformal flat metric") {
  std::mt19937 rng(3);
  const int n = 3;
  const MetricField bb = reference_metric(n, Chart::BALL);
  for (int t = 0; t < 20; ++t) {
    const ChartPoint q = oracles::sample_ball(n, rng, 0.9);
    const double om = ball_conformal_factor(q.x);
    const Eigen::MatrixXd expected =
        (1.0 / (om * om)) * Eigen::MatrixXd::Identity(n, n);
    CHECK((bb.components(q) - expected).norm() < 1e-14 * expected.norm());
  }
}

TEST_CASE("conformally compact: zero data reproduces the reference exactly") {
  ConformallyCompactData data;
  data.dim = 3;
  data.t_max = 0.15;
  data.h = nullptr;
  data.k = nullptr;
  const MetricField g = conformally_compact(data);
  const MetricField b = reference_metric(3, Chart::POLAR);
  std::mt19937 rng(5);
  for (int t = 0; t < 30; ++t) {
    const ChartPoint p = oracles::sample_polar(3, rng, 10.0, 200.0);
    CHECK((g.components(p) - b.components(p)).norm() < 1e-10 * b.components(p).norm());
  }
}

TEST_CASE("conformally compact: rounded data gives a mass linear in the coefficient") {
  EngineConfig cfg;
  cfg.workers = 2;
  const std::vector<double> radii = {10, 20, 40, 80, 160};
  const MassReport m1 = mass_vector(conformally_compact(round_conformal_data(3, 0.3)), 16,
                                    radii, cfg);
  const MassReport m2 = mass_vector(conformally_compact(round_conformal_data(3, 0.6)), 16,
                                    radii, cfg);
  CHECK(std::abs(m1.vec.components[0]) > 1e-4);
  const double ratio = m2.vec.components[0] / m1.vec.components[0];
  CHECK(std::abs(ratio - 2.0) < 0.02);
  // rotationally symmetric data: spatial components vanish
  CHECK(std::abs(m1.vec.components[1]) < 1e-8);
  CHECK(std::abs(m1.vec.components[2]) < 1e-8);
  MESSAGE("round conformal mass per unit coefficient: ", m1.vec.components[0] / 0.3);
}

TEST_CASE("conformally compact: below-threshold remainder does not move the mass") {
  EngineConfig cfg;
  cfg.workers = 2;
  const std::vector<double> radii = {10, 20, 40, 80, 160};
  ConformallyCompactData base = round_conformal_data(3, 0.3);
  const MassReport m0 = mass_vector(conformally_compact(base), 16, radii, cfg);

  ConformallyCompactData with_k = base;
  with_k.k_exponent = 5;  // t^{n+2}
  with_k.k_bound = 1.0;
  with_k.k = [](double t, const Eigen::VectorXd& angles) {
    Eigen::MatrixXd out(2, 2);
    const double s = std::pow(t, 5.0);
    out(0, 0) = 0.4 * s * std::cos(angles[0]) * std::cos(angles[0]);
    out(0, 1) = out(1, 0) = 0.0;
    out(1, 1) = 0.2 * s * std::sin(angles[0]) * std::sin(angles[0]);
    return out;
  };
  const MassReport mk = mass_vector(conformally_compact(with_k), 16, radii, cfg);
  for (int a = 0; a < 3; ++a) {
    const double shift = std::abs(mk.vec.components[a] - m0.vec.components[a]);
    CHECK(shift <= m0.vec.error_estimates[a] + mk.vec.error_estimates[a] + 1e-12);
  }
  // an above-threshold "remainder" must be rejected by the certificate
  ConformallyCompactData bad = with_k;
  bad.k_exponent = 3.5;  // <= n + 1
  CHECK_THROWS(conformally_compact(bad));
}

TEST_CASE("sampled data file: interpolants match the generating fields") {
  const ConformallyCompactData d = load_conformal_data("data/example_conformal_n3.dat");
  CHECK(d.dim == 3);
  CHECK(d.k_exponent == 5);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> upsi(0.05, oracles::kPi / 2 - 0.05);
  std::uniform_real_distribution<double> uphi(0.0, 2 * oracles::kPi);
  for (int t = 0; t < 50; ++t) {
    Eigen::VectorXd angles(2);
    angles << upsi(rng), uphi(rng);
    const Eigen::MatrixXd h = d.h(angles);
    CHECK(std::abs(h(0, 0) - 0.3) < 1e-6);
    CHECK(std::abs(h(0, 1)) < 1e-6);
    const double s2 = std::sin(angles[0]) * std::sin(angles[0]);
    CHECK(std::abs(h(1, 1) - 0.3 * s2) < 1e-4);
    const double tt = 0.08;
    const Eigen::MatrixXd k = d.k(tt, angles);
    const double c2 = std::cos(angles[0]) * std::cos(angles[0]);
    CHECK(std::abs(k(0, 0) - 0.1 * std::pow(tt, 5.0) * c2) < 1e-5 * std::pow(tt, 5.0));
  }
  // the loaded data flows through the construction and validation
  CHECK_NOTHROW(conformally_compact(d));
  CHECK_THROWS(load_conformal_data("data/missing_file.dat"));
}

TEST_CASE("diffeo spec validation") {
  CHECK_NOTHROW(standard_diffeo(3, 0.5, 3.0).validate(3));
  DiffeoSpec bad;
  bad.decay = 3.0;
  bad.boundary_tangent = true;
  bad.zeta = [](const ChartPoint& p) {
    Eigen::VectorXd z = Eigen::VectorXd::Zero(3);
    z[1] = std::pow(p.x[0], -4.0);  // normal to the face at psi = pi/2
    return z;
  };
  CHECK_THROWS(bad.validate(3));
}

TEST_CASE("pushforward: zero field is the identity, scalar curvature is preserved") {
  const int n = 3;
  DiffeoSpec none;
  none.decay = n;
  none.boundary_tangent = true;
  none.zeta = [n](const ChartPoint&) { return Eigen::VectorXd::Zero(n); };
  const MetricField g = ads_schwarzschild_half(n, 1.0);
  const MetricField same = pushforward(g, none);
  std::mt19937 rng(11);
  for (int t = 0; t < 5; ++t) {
    const ChartPoint p = oracles::sample_polar(n, rng, 10.0, 40.0);
    CHECK((same.components(p) - g.components(p)).norm() < 1e-9 * g.components(p).norm());
  }
  // diffeomorphism invariance of R: the transported ads still satisfies
  // R + n(n-1) = 0 up to flow-integration and differencing tolerance
  const MetricField moved = pushforward(g, standard_diffeo(n, 0.5, n));
  for (int t = 0; t < 5; ++t) {
    const ChartPoint p = oracles::sample_polar(n, rng, 10.0, 30.0);
    CHECK(std::abs(curvature(moved, p).scalar + n * (n - 1)) < 1e-4);
  }
}
