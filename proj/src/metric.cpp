#include "hypmass/metric.hpp"

#include <cmath>
#include <sstream>

#include "hypmass/geometry.hpp"

namespace hypmass {

namespace {

// Angular scale factor of the POLAR reference metric for coordinate k >= 1:
// m_k(theta) = prod_{l=1}^{k-1} sin^2(x_l). `d` holds per-coordinate
// derivative orders (0, 1 or 2); order 1 replaces the factor by sin(2x),
// order 2 by 2 cos(2x).
double angular_factor(const Eigen::VectorXd& x, int k, const Eigen::VectorXi& d) {
  double prod = 1.0;
  for (int l = 1; l < k; ++l) {
    const double a = x[l];
    switch (d[l]) {
      case 0: prod *= std::sin(a) * std::sin(a); break;
      case 1: prod *= std::sin(2 * a); break;
      default: prod *= 2 * std::cos(2 * a); break;
    }
  }
  return prod;
}

MetricField reference_polar(int n) {
  MetricField b;
  b.dim = n;
  b.chart = Chart::POLAR;
  b.name = "reference";
  b.tau = tau_infinity();
  b.radial_extent = 0.0;
  b.einstein = true;
  b.components = [n](const ChartPoint& p) {
    const double r = p.x[0];
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
    g(0, 0) = 1.0 / (1.0 + r * r);
    Eigen::VectorXi d = Eigen::VectorXi::Zero(n);
    for (int k = 1; k < n; ++k) g(k, k) = r * r * angular_factor(p.x, k, d);
    return g;
  };
  b.d1 = [n](const ChartPoint& p) {
    const double r = p.x[0];
    const double w = 1.0 + r * r;
    Tensor3 t(n);
    t(0, 0, 0) = -2.0 * r / (w * w);
    Eigen::VectorXi d0 = Eigen::VectorXi::Zero(n);
    for (int k = 1; k < n; ++k) {
      t(0, k, k) = 2.0 * r * angular_factor(p.x, k, d0);
      for (int l = 1; l < k; ++l) {
        Eigen::VectorXi d = d0;
        d[l] = 1;
        t(l, k, k) = r * r * angular_factor(p.x, k, d);
      }
    }
    return t;
  };
  b.d2 = [n](const ChartPoint& p) {
    const double r = p.x[0];
    const double w = 1.0 + r * r;
    Tensor4 t(n);
    t(0, 0, 0, 0) = (6.0 * r * r - 2.0) / (w * w * w);
    Eigen::VectorXi d0 = Eigen::VectorXi::Zero(n);
    for (int k = 1; k < n; ++k) {
      t(0, 0, k, k) = 2.0 * angular_factor(p.x, k, d0);
      for (int l = 1; l < k; ++l) {
        Eigen::VectorXi d = d0;
        d[l] = 1;
        const double mixed_r = 2.0 * r * angular_factor(p.x, k, d);
        t(0, l, k, k) = mixed_r;
        t(l, 0, k, k) = mixed_r;
        d[l] = 2;
        t(l, l, k, k) = r * r * angular_factor(p.x, k, d);
        for (int m = 1; m < l; ++m) {
          Eigen::VectorXi dm = d0;
          dm[l] = 1;
          dm[m] = 1;
          const double mm = r * r * angular_factor(p.x, k, dm);
          t(l, m, k, k) = mm;
          t(m, l, k, k) = mm;
        }
      }
    }
    return t;
  };
  return b;
}

MetricField reference_ball(int n) {
  MetricField b;
  b.dim = n;
  b.chart = Chart::BALL;
  b.name = "reference";
  b.tau = tau_infinity();
  b.radial_extent = 0.0;
  b.einstein = true;
  b.components = [n](const ChartPoint& p) {
    const double om = ball_conformal_factor(p.x);
    return Eigen::MatrixXd((1.0 / (om * om)) * Eigen::MatrixXd::Identity(n, n));
  };
  b.d1 = [n](const ChartPoint& p) {
    const double om = ball_conformal_factor(p.x);
    Tensor3 t(n);
    for (int c = 0; c < n; ++c) {
      const double val = 2.0 * p.x[c] / (om * om * om);
      for (int i = 0; i < n; ++i) t(c, i, i) = val;
    }
    return t;
  };
  b.d2 = [n](const ChartPoint& p) {
    const double om = ball_conformal_factor(p.x);
    const double om3 = om * om * om;
    const double om4 = om3 * om;
    Tensor4 t(n);
    for (int c = 0; c < n; ++c)
      for (int d = 0; d < n; ++d) {
        const double val = 6.0 * p.x[c] * p.x[d] / om4 + (c == d ? 2.0 / om3 : 0.0);
        for (int i = 0; i < n; ++i) t(c, d, i, i) = val;
      }
    return t;
  };
  return b;
}

}  // namespace

Eigen::MatrixXd MetricField::eval(const ChartPoint& p) const { return components(p); }

MetricField reference_metric(int n, Chart chart) {
  if (n < 3) fail("reference_metric: dimension must be >= 3");
  return chart == Chart::POLAR ? reference_polar(n) : reference_ball(n);
}

Tensor3 metric_d1(const MetricField& m, const ChartPoint& p, const FdConfig& cfg) {
  if (m.has_d1()) return m.d1(p);
  return fd_matrix_d1(m.components, p, cfg);
}

Tensor4 metric_d2(const MetricField& m, const ChartPoint& p, const FdConfig& cfg) {
  if (m.has_d2()) return m.d2(p);
  return fd_matrix_d2(m.components, p, cfg);
}

Eigen::VectorXd boundary_normal_b(const ChartPoint& p) {
  const int n = p.dim();
  Eigen::VectorXd eta = Eigen::VectorXd::Zero(n);
  if (p.chart == Chart::POLAR) {
    eta[1] = 1.0 / p.x[0];
  } else {
    eta[n - 1] = -ball_conformal_factor(p.x);
  }
  return eta;
}

Eigen::VectorXd radial_unit_b(const ChartPoint& p) {
  if (p.chart != Chart::POLAR) fail("radial_unit_b: POLAR chart only");
  const int n = p.dim();
  Eigen::VectorXd mu = Eigen::VectorXd::Zero(n);
  mu[0] = std::sqrt(1.0 + p.x[0] * p.x[0]);
  return mu;
}

Eigen::MatrixXd reference_frame(const ChartPoint& p) {
  const int n = p.dim();
  if (p.chart == Chart::BALL) {
    return ball_conformal_factor(p.x) * Eigen::MatrixXd::Identity(n, n);
  }
  const MetricField b = reference_metric(n, Chart::POLAR);
  const Eigen::MatrixXd B = b.components(p);

  // differential of x_n = r cos(theta_2)
  Eigen::VectorXd dxn = Eigen::VectorXd::Zero(n);
  dxn[0] = std::cos(p.x[1]);
  dxn[1] = -p.x[0] * std::sin(p.x[1]);

  Eigen::MatrixXd F(n, n);
  Eigen::VectorXd fn = B.ldlt().solve(dxn);
  fn /= std::sqrt(fn.dot(B * fn));
  F.col(n - 1) = fn;

  auto project = [&](Eigen::VectorXd v, int ncols) {
    for (int c = 0; c < ncols; ++c) {
      const Eigen::VectorXd& u = (c == 0) ? fn : F.col(c - 1);
      v -= u.dot(B * v) * u;
    }
    return v;
  };

  // radial first, then angular coordinate directions with pivoting
  int placed = 0;
  for (int cand = 0; cand < n && placed < n - 1; ++cand) {
    Eigen::VectorXd v = Eigen::VectorXd::Unit(n, cand);
    const double orig = std::sqrt(v.dot(B * v));
    v = project(v, placed + 1);
    const double res = std::sqrt(std::max(0.0, v.dot(B * v)));
    if (res < 1e-6 * orig) continue;  // pivoted out (parallel to earlier ones)
    F.col(placed) = v / res;
    ++placed;
  }
  if (placed != n - 1) fail("reference_frame: Gram-Schmidt degenerate");
  return F;
}

Eigen::MatrixXd frame_perturbation(const MetricField& m, const ChartPoint& p) {
  const MetricField b = reference_metric(m.dim, m.chart);
  const Eigen::MatrixXd F = reference_frame(p);
  return F.transpose() * (m.components(p) - b.components(p)) * F;
}

Eigen::MatrixXd gauge_map(const MetricField& m, const ChartPoint& p) {
  const Eigen::MatrixXd F = reference_frame(p);
  const Eigen::MatrixXd G = F.transpose() * m.components(p) * F;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G);
  if (es.eigenvalues().minCoeff() <= 0.0)
    fail("gauge_map: metric matrix not positive definite");
  return es.operatorInverseSqrt();
}

DecayCheck validate_decay(const MetricField& m, int samples_per_radius, int num_radii,
                          const FdConfig& cfg) {
  DecayCheck out;
  const int n = m.dim;
  const double r0 = m.radial_extent > 0 ? m.radial_extent : 10.0;
  std::vector<double> level(num_radii, 0.0);

  for (int j = 0; j < num_radii; ++j) {
    const double r = r0 * std::pow(2.0, j);
    for (int s = 0; s < samples_per_radius; ++s) {
      Eigen::VectorXd angles(n - 1);
      // deterministic interior angle sweep (margins keep FD stencils sane)
      const double u = (s + 0.5) / samples_per_radius;
      angles[0] = 0.05 + u * (M_PI / 2 - 0.1);
      for (int k = 1; k < n - 2; ++k) angles[k] = 0.3 + 0.4 * ((s + k) % 3);
      if (n >= 3) angles[n - 2] = 2 * M_PI * ((s * 7) % samples_per_radius) /
                                  static_cast<double>(samples_per_radius);
      ChartPoint p = polar_point(r, angles);
      if (m.chart == Chart::BALL) p = to_chart(p, Chart::BALL);

      const Eigen::MatrixXd F = reference_frame(p);
      const MetricField b = reference_metric(n, m.chart);
      const Eigen::MatrixXd e = m.components(p) - b.components(p);
      const Tensor3 De = covariant_d1_sym2(
          [&](const ChartPoint& q) {
            return Eigen::MatrixXd(m.components(q) - b.components(q));
          },
          b, p, cfg);
      const Tensor4 DDe = covariant_d2_sym2(
          [&](const ChartPoint& q) {
            return Eigen::MatrixXd(m.components(q) - b.components(q));
          },
          b, p, cfg);

      double norm_e = (F.transpose() * e * F).norm();
      double norm_de = 0.0, norm_dde = 0.0;
      for (int a = 0; a < n; ++a)
        for (int bb = 0; bb < n; ++bb)
          for (int c = 0; c < n; ++c) {
            double v = 0.0;
            for (int x = 0; x < n; ++x)
              for (int y = 0; y < n; ++y)
                for (int z = 0; z < n; ++z)
                  v += De(x, y, z) * F(x, a) * F(y, bb) * F(z, c);
            norm_de += v * v;
            for (int d = 0; d < n; ++d) {
              double v2 = 0.0;
              for (int x = 0; x < n; ++x)
                for (int y = 0; y < n; ++y)
                  for (int z = 0; z < n; ++z)
                    for (int t = 0; t < n; ++t)
                      v2 += DDe(x, y, z, t) * F(x, a) * F(y, bb) * F(z, c) * F(t, d);
              norm_dde += v2 * v2;
            }
          }
      const double total = norm_e + std::sqrt(norm_de) + std::sqrt(norm_dde);
      level[j] = std::max(level[j], total);
    }
  }

  if (std::isinf(m.tau)) {
    double worst = 0.0;
    for (double v : level) worst = std::max(worst, v);
    out.pass = worst < 1e-8;
    out.measured_constant = worst;
    out.growth_ratio = 0.0;
    out.detail = out.pass ? "exact reference (e ~ 0)" : "claimed exact but e is nonzero";
    return out;
  }

  double cmax = 0.0;
  for (int j = 0; j < num_radii; ++j) {
    const double r = r0 * std::pow(2.0, j);
    cmax = std::max(cmax, level[j] * std::pow(r, m.tau));
  }
  const double c_first = level[0] * std::pow(r0, m.tau);
  out.measured_constant = cmax;
  out.growth_ratio = c_first > 0 ? cmax / c_first : 0.0;
  out.pass = std::isfinite(cmax) && (c_first == 0.0 || out.growth_ratio < 5.0);
  std::ostringstream os;
  os << "C=" << cmax << " growth=" << out.growth_ratio;
  out.detail = os.str();
  return out;
}

}  // namespace hypmass
