#include "hypmass/quadrature.hpp"

#include <cmath>

#include "hypmass/types.hpp"

namespace hypmass {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Tensor product over sphere angles: colatitudes get Gauss-Legendre on
// [0, pi] ([0, pi/2] for the first hemisphere angle) with the sphere-measure
// sin powers folded into `weights`; the final azimuth gets the trapezoid
// rule. `raw` carries the plain coordinate measure (no sin powers).
void sphere_nodes(int n_angles, int first_power, bool first_is_half, int resolution,
                  std::vector<std::vector<double>>& out_angles, std::vector<double>& out_weights,
                  std::vector<double>& out_raw) {
  out_angles.assign(1, {});
  out_weights.assign(1, 1.0);
  out_raw.assign(1, 1.0);
  for (int k = 0; k < n_angles; ++k) {
    const int power = first_power - k;
    std::vector<double> nodes, weights, raw;
    if (k == n_angles - 1) {
      const int m = 2 * resolution;
      for (int i = 0; i < m; ++i) {
        nodes.push_back(2 * kPi * i / m);
        weights.push_back(2 * kPi / m);
        raw.push_back(2 * kPi / m);
      }
    } else {
      const double hi = (k == 0 && first_is_half) ? kPi / 2 : kPi;
      gauss_legendre(resolution, 0.0, hi, nodes, weights);
      raw = weights;
      for (size_t i = 0; i < nodes.size(); ++i)
        weights[i] *= std::pow(std::sin(nodes[i]), power);
    }
    std::vector<std::vector<double>> na;
    std::vector<double> nw, nr;
    na.reserve(out_angles.size() * nodes.size());
    nw.reserve(out_angles.size() * nodes.size());
    nr.reserve(out_angles.size() * nodes.size());
    for (size_t j = 0; j < out_angles.size(); ++j)
      for (size_t i = 0; i < nodes.size(); ++i) {
        auto a = out_angles[j];
        a.push_back(nodes[i]);
        na.push_back(std::move(a));
        nw.push_back(out_weights[j] * weights[i]);
        nr.push_back(out_raw[j] * raw[i]);
      }
    out_angles = std::move(na);
    out_weights = std::move(nw);
    out_raw = std::move(nr);
  }
}

}  // namespace

void gauss_legendre(int n, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  nodes.resize(n);
  weights.resize(n);
  for (int i = 0; i < n; ++i) {
    // Newton iteration from the Chebyshev estimate
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2 * j + 1) * x * p1 - j * p2) / (j + 1);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = 0.5 * (b - a) * (-x) + 0.5 * (a + b);
    weights[i] = (b - a) / ((1.0 - x * x) * pp * pp);
  }
}

double QuadratureRule::hemisphere_area() const {
  double s = 0.0;
  for (const auto& nd : hemisphere) s += nd.b_weight;
  return s;
}

double QuadratureRule::equator_area() const {
  double s = 0.0;
  for (const auto& nd : equator) s += nd.b_weight;
  return s;
}

double hemisphere_area_closed_form(int n, double radius) {
  return 0.5 * unit_sphere_area(n - 1) * std::pow(radius, n - 1);
}

double equator_area_closed_form(int n, double radius) {
  return unit_sphere_area(n - 2) * std::pow(radius, n - 2);
}

QuadratureRule build_quadrature(int n, double radius, int resolution) {
  if (n < 3) fail("build_quadrature: dimension must be >= 3");
  if (resolution < 2) fail("build_quadrature: resolution too small");
  QuadratureRule rule;
  rule.dim = n;
  rule.radius = radius;
  rule.resolution = resolution;

  const double rpow_hemi = std::pow(radius, n - 1);
  const double rpow_eq = std::pow(radius, n - 2);

  std::vector<std::vector<double>> angs;
  std::vector<double> wts, raw;
  sphere_nodes(n - 1, n - 2, true, resolution, angs, wts, raw);
  rule.hemisphere.reserve(angs.size());
  for (size_t i = 0; i < angs.size(); ++i) {
    QuadNode nd;
    Eigen::VectorXd a = Eigen::Map<Eigen::VectorXd>(angs[i].data(), angs[i].size());
    nd.p = polar_point(radius, a);
    nd.raw_weight = raw[i];
    nd.b_weight = wts[i] * rpow_hemi;
    rule.hemisphere.push_back(std::move(nd));
  }

  // equator: theta_2 = pi/2 fixed, n-2 angles over the full S^{n-2}
  std::vector<std::vector<double>> eangs;
  std::vector<double> ewts, eraw;
  sphere_nodes(n - 2, n - 3, false, resolution, eangs, ewts, eraw);
  rule.equator.reserve(eangs.size());
  for (size_t i = 0; i < eangs.size(); ++i) {
    QuadNode nd;
    Eigen::VectorXd a(n - 1);
    a[0] = kPi / 2;
    for (int k = 0; k < n - 2; ++k) a[k + 1] = eangs[i][k];
    nd.p = polar_point(radius, a);
    nd.raw_weight = eraw[i];
    nd.b_weight = ewts[i] * rpow_eq;
    rule.equator.push_back(std::move(nd));
  }
  return rule;
}

}  // namespace hypmass
