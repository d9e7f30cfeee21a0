#include "hypmass/charge.hpp"

#include <cmath>

namespace hypmass {

namespace {

struct LoweredJets {
  Eigen::VectorXd val;   // X_i = b_{ia} X^a
  Eigen::MatrixXd d1;    // (j, i) = d_j X_i
  Tensor3 d2;            // (j, k, i) = d_j d_k X_i
};

LoweredJets lowered_jets(const VectorField& X, const MetricField& b, const ChartPoint& p,
                         const FdConfig& cfg) {
  const int n = p.dim();
  const Eigen::MatrixXd B = b.components(p);
  const Tensor3 dB = b.d1(p);
  const Tensor4 ddB = b.d2(p);
  const Eigen::VectorXd Xv = X(p);
  const Eigen::MatrixXd dX = fd_vector_d1(X, p, cfg);   // (c, a) = d_c X^a
  const Tensor3 ddX = fd_vector_d2(X, p, cfg);          // (c, d, a)

  LoweredJets out;
  out.val = B * Xv;
  out.d1.resize(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int a = 0; a < n; ++a) s += dB(j, i, a) * Xv[a] + B(i, a) * dX(j, a);
      out.d1(j, i) = s;
    }
  out.d2 = Tensor3(n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int a = 0; a < n; ++a) {
          s += ddB(j, k, i, a) * Xv[a];
          s += dB(j, i, a) * dX(k, a) + dB(k, i, a) * dX(j, a);
          s += B(i, a) * ddX(j, k, a);
        }
        out.d2(j, k, i) = s;
      }
  return out;
}

// X_{i;j} and X_{i;jk} = (grad_k grad_j X^flat)_i for the reference metric.
void covariant_jets(const VectorField& X, const MetricField& b, const ChartPoint& p,
                    const FdConfig& cfg, Eigen::MatrixXd& cov1, Tensor3& cov2) {
  const int n = p.dim();
  const LoweredJets jets = lowered_jets(X, b, p, cfg);
  const Tensor3 gamma = christoffel(b, p, cfg);
  const Tensor4 dgamma = christoffel_d1(b, p, cfg);

  cov1.resize(n, n);  // (i, j) = X_{i;j}
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = jets.d1(j, i);
      for (int m = 0; m < n; ++m) s -= gamma(m, j, i) * jets.val[m];
      cov1(i, j) = s;
    }

  cov2 = Tensor3(n);  // (i, j, k) = X_{i;jk} = (grad_k cov1)(i, j)
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        // d_k of cov1(i, j)
        double s = jets.d2(k, j, i);
        for (int m = 0; m < n; ++m)
          s -= dgamma(k, m, j, i) * jets.val[m] + gamma(m, j, i) * jets.d1(k, m);
        // connection on both lower slots
        for (int m = 0; m < n; ++m)
          s -= gamma(m, k, i) * cov1(m, j) + gamma(m, k, j) * cov1(i, m);
        cov2(i, j, k) = s;
      }
}

}  // namespace

Eigen::VectorXd charge_form_e(const StaticPotential& V, const MatrixField& e,
                              const ChartPoint& p, const FdConfig& cfg) {
  const int n = p.dim();
  const MetricField b = reference_metric(n, p.chart);
  const Eigen::MatrixXd B = b.components(p);
  const Eigen::MatrixXd Binv = B.inverse();
  const Eigen::MatrixXd ev = e(p);
  const Eigen::VectorXd dmt = div_minus_dtr(e, b, p, cfg);
  const double v = V.eval(p);
  const Eigen::VectorXd dV = V.d1(p);
  const Eigen::VectorXd gradV = Binv * dV;
  const double tre = (Binv * ev).trace();
  return v * dmt - ev * gradV + tre * dV;
}

Eigen::VectorXd charge_form(const StaticPotential& V, const MetricField& m,
                            const ChartPoint& p, const FdConfig& cfg) {
  if (p.chart != m.chart) fail("charge_form: chart mismatch");
  if (p.chart == Chart::POLAR && p.x[0] < m.radial_extent)
    fail("charge_form: point inside the asymptotic region r < r_0");
  const MetricField b = reference_metric(m.dim, m.chart);
  auto e = [&](const ChartPoint& q) {
    return Eigen::MatrixXd(m.components(q) - b.components(q));
  };
  return charge_form_e(V, e, p, cfg);
}

Eigen::VectorXd charge_form_lie(const StaticPotential& V, const VectorField& X,
                                const ChartPoint& p, const FdConfig& cfg) {
  const int n = p.dim();
  const MetricField b = reference_metric(n, p.chart);
  const Eigen::MatrixXd B = b.components(p);
  const Eigen::MatrixXd Binv = B.inverse();
  Eigen::MatrixXd cov1;
  Tensor3 cov2;
  covariant_jets(X, b, p, cfg, cov1, cov2);

  Eigen::MatrixXd e(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) e(i, j) = cov1(i, j) + cov1(j, i);

  const double v = V.eval(p);
  const Eigen::VectorXd dV = V.d1(p);
  const Eigen::VectorXd gradV = Binv * dV;
  const double tre = (Binv * e).trace();

  Eigen::VectorXd out(n);
  for (int a = 0; a < n; ++a) {
    double dive = 0.0, dtre = 0.0;
    for (int c = 0; c < n; ++c)
      for (int d = 0; d < n; ++d) {
        dive += Binv(c, d) * (cov2(d, a, c) + cov2(a, d, c));
        dtre += 2.0 * Binv(c, d) * cov2(c, d, a);
      }
    out[a] = v * (dive - dtre) - e.row(a).dot(gradV) + tre * dV[a];
  }
  return out;
}

Eigen::MatrixXd two_form_v(const StaticPotential& V, const VectorField& X,
                           const ChartPoint& p, const FdConfig& cfg) {
  const int n = p.dim();
  const MetricField b = reference_metric(n, p.chart);
  Eigen::MatrixXd cov1;
  Tensor3 cov2;
  covariant_jets(X, b, p, cfg, cov1, cov2);
  const Eigen::VectorXd Xl = b.components(p) * X(p);
  const double v = V.eval(p);
  const Eigen::VectorXd dV = V.d1(p);
  Eigen::MatrixXd out(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      out(i, k) = v * (cov1(i, k) - cov1(k, i)) + 2.0 * (Xl[k] * dV[i] - Xl[i] * dV[k]);
  return out;
}

Eigen::VectorXd div_two_form_v(const StaticPotential& V, const VectorField& X,
                               const ChartPoint& p, const FdConfig& cfg) {
  const int n = p.dim();
  const MetricField b = reference_metric(n, p.chart);
  const Eigen::MatrixXd B = b.components(p);
  const Eigen::MatrixXd Binv = B.inverse();
  Eigen::MatrixXd cov1;
  Tensor3 cov2;
  covariant_jets(X, b, p, cfg, cov1, cov2);
  const Eigen::VectorXd Xl = B * X(p);
  const double v = V.eval(p);
  const Eigen::VectorXd dV = V.d1(p);

  // grad_k V_{ij} = V_k (X_{i;j} - X_{j;i}) + V (X_{i;jk} - X_{j;ik})
  //   + 2 (X_{j;k} dV_i + X_j (V b)_{ik} - X_{i;k} dV_j - X_i (V b)_{jk}),
  // using the static Hessian identity grad^2 V = V b exactly.
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double dv = dV[k] * (cov1(i, j) - cov1(j, i)) + v * (cov2(i, j, k) - cov2(j, i, k));
        dv += 2.0 * (cov1(j, k) * dV[i] + Xl[j] * v * B(i, k) - cov1(i, k) * dV[j] -
                     Xl[i] * v * B(j, k));
        s += Binv(j, k) * dv;
      }
    out[i] = s;
  }
  return out;
}

double exactness_residual(const StaticPotential& V, const VectorField& X,
                          const ChartPoint& p, const FdConfig& cfg) {
  const Eigen::VectorXd u = charge_form_lie(V, X, p, cfg);
  const Eigen::VectorXd dv = div_two_form_v(V, X, p, cfg);
  return (u - dv).norm();
}

double div_charge_form(const StaticPotential& V, const MatrixField& e, const ChartPoint& p,
                       const FdConfig& cfg) {
  const int n = p.dim();
  const MetricField b = reference_metric(n, p.chart);
  const Eigen::MatrixXd B = b.components(p);
  const Eigen::MatrixXd Binv = B.inverse();
  const Eigen::MatrixXd ev = e(p);
  const Tensor3 De = covariant_d1_sym2(e, b, p, cfg);
  const Tensor4 DDe = covariant_d2_sym2(e, b, p, cfg);

  const double v = V.eval(p);
  const Eigen::VectorXd dV = V.d1(p);
  const Eigen::VectorXd gradV = Binv * dV;
  const double tre = (Binv * ev).trace();

  Eigen::VectorXd dive = Eigen::VectorXd::Zero(n), dtre = Eigen::VectorXd::Zero(n);
  for (int a = 0; a < n; ++a)
    for (int c = 0; c < n; ++c)
      for (int d = 0; d < n; ++d) {
        dive[a] += Binv(c, d) * De(c, d, a);
        dtre[a] += Binv(c, d) * De(a, c, d);
      }

  double divdiv = 0.0, laptre = 0.0;
  for (int a = 0; a < n; ++a)
    for (int bb = 0; bb < n; ++bb)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          divdiv += Binv(a, c) * Binv(bb, d) * DDe(a, bb, c, d);
          laptre += Binv(a, bb) * Binv(c, d) * DDe(a, bb, c, d);
        }

  // div(V (div e - d tr e)) - div(grad V .| e) + div(tr e dV)
  double t1 = gradV.dot(dive - dtre) + v * (divdiv - laptre);
  double t2 = -(dive.dot(gradV) + v * tre);
  double t3 = dtre.dot(gradV) + n * v * tre;
  return t1 + t2 + t3;
}

MetricField perturbed_metric(const TensorField& e, double eps) {
  const int n = e.dim;
  MetricField b = reference_metric(n, e.chart);
  MetricField g = b;
  g.name = "perturbed";
  g.tau = 0.0;
  g.radial_extent = 0.0;
  auto eval = e.eval;
  auto bcomp = b.components;
  g.components = [eval, bcomp, eps](const ChartPoint& p) {
    return Eigen::MatrixXd(bcomp(p) + eps * eval(p));
  };
  auto bd1 = b.d1;
  g.d1 = [eval, bd1, eps, n](const ChartPoint& p) {
    Tensor3 t = bd1(p);
    const Tensor3 de = fd_matrix_d1(eval, p);
    for (size_t i = 0; i < t.v.size(); ++i) t.v[i] += eps * de.v[i];
    return t;
  };
  auto bd2 = b.d2;
  g.d2 = [eval, bd2, eps, n](const ChartPoint& p) {
    Tensor4 t = bd2(p);
    const Tensor4 de = fd_matrix_d2(eval, p);
    for (size_t i = 0; i < t.v.size(); ++i) t.v[i] += eps * de.v[i];
    return t;
  };
  return g;
}

double expansion_residual(const TensorField& e, const StaticPotential& V, const ChartPoint& p,
                          double eps, const FdConfig& cfg) {
  const int n = p.dim();
  if (eps == 0.0) return 0.0;
  const MetricField g_eps = perturbed_metric(e, eps);
  const Curvature curv = curvature(g_eps, p, cfg);
  const double lhs = V.eval(p) * (curv.scalar + n * (n - 1));
  auto scaled = [&](const ChartPoint& q) { return Eigen::MatrixXd(eps * e.eval(q)); };
  const double rhs = div_charge_form(V, scaled, p, cfg);
  return std::abs(lhs - rhs);
}

}  // namespace hypmass
