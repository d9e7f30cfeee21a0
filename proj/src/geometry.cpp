#include "hypmass/geometry.hpp"

#include <cmath>

namespace hypmass {

namespace {

Tensor3 christoffel_from(const Eigen::MatrixXd& ginv, const Tensor3& dg) {
  const int n = ginv.rows();
  Tensor3 gamma(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        double s = 0.0;
        for (int l = 0; l < n; ++l)
          s += ginv(k, l) * (dg(i, j, l) + dg(j, i, l) - dg(l, i, j));
        gamma(k, i, j) = 0.5 * s;
        gamma(k, j, i) = 0.5 * s;
      }
  return gamma;
}

}  // namespace

Tensor3 christoffel(const MetricField& m, const ChartPoint& p, const FdConfig& cfg) {
  const Eigen::MatrixXd g = m.components(p);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(g);
  if (!lu.isInvertible()) fail("christoffel: metric matrix not invertible");
  return christoffel_from(lu.inverse(), metric_d1(m, p, cfg));
}

Tensor4 christoffel_d1(const MetricField& m, const ChartPoint& p, const FdConfig& cfg) {
  const int n = m.dim;
  const Eigen::MatrixXd g = m.components(p);
  const Eigen::MatrixXd ginv = g.inverse();
  const Tensor3 dg = metric_d1(m, p, cfg);
  const Tensor4 ddg = metric_d2(m, p, cfg);

  // d_l g^{km} = -g^{ka} (d_l g_{ab}) g^{bm}
  Tensor3 dginv(n);
  for (int l = 0; l < n; ++l)
    for (int k = 0; k < n; ++k)
      for (int mm = 0; mm < n; ++mm) {
        double s = 0.0;
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) s += ginv(k, a) * dg(l, a, b) * ginv(b, mm);
        dginv(l, k, mm) = -s;
      }

  Tensor4 out(n);
  for (int l = 0; l < n; ++l)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
          double s = 0.0;
          for (int mm = 0; mm < n; ++mm) {
            s += dginv(l, k, mm) * (dg(i, j, mm) + dg(j, i, mm) - dg(mm, i, j));
            s += ginv(k, mm) * (ddg(l, i, j, mm) + ddg(l, j, i, mm) - ddg(l, mm, i, j));
          }
          out(l, k, i, j) = 0.5 * s;
          out(l, k, j, i) = 0.5 * s;
        }
  return out;
}

Curvature curvature(const MetricField& m, const ChartPoint& p, const FdConfig& cfg) {
  const int n = m.dim;
  const Tensor3 gamma = christoffel(m, p, cfg);
  const Tensor4 dgamma = christoffel_d1(m, p, cfg);
  Curvature out;
  out.riemann = Tensor4(n);
  // R^l_{kij} = d_i Gamma^l_{jk} - d_j Gamma^l_{ik}
  //           + Gamma^l_{im} Gamma^m_{jk} - Gamma^l_{jm} Gamma^m_{ik}
  for (int l = 0; l < n; ++l)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double s = dgamma(i, l, j, k) - dgamma(j, l, i, k);
          for (int mm = 0; mm < n; ++mm)
            s += gamma(l, i, mm) * gamma(mm, j, k) - gamma(l, j, mm) * gamma(mm, i, k);
          out.riemann(l, k, i, j) = s;
        }
  out.ricci.resize(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += out.riemann(i, j, i, k);
      out.ricci(j, k) = s;
    }
  // enforce exact symmetry of the stored Ricci
  out.ricci = 0.5 * (out.ricci + out.ricci.transpose()).eval();
  const Eigen::MatrixXd ginv = m.components(p).inverse();
  out.scalar = (ginv * out.ricci).trace();
  return out;
}

Tensor3 covariant_d1_sym2(const MatrixField& e, const MetricField& conn, const ChartPoint& p,
                          const FdConfig& cfg) {
  const int n = p.dim();
  const Eigen::MatrixXd ev = e(p);
  const Tensor3 de = fd_matrix_d1(e, p, cfg);
  const Tensor3 gamma = christoffel(conn, p, cfg);
  Tensor3 out(n);
  for (int c = 0; c < n; ++c)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        double s = de(c, a, b);
        for (int mm = 0; mm < n; ++mm)
          s -= gamma(mm, c, a) * ev(mm, b) + gamma(mm, c, b) * ev(a, mm);
        out(c, a, b) = s;
      }
  return out;
}

Tensor4 covariant_d2_sym2(const MatrixField& e, const MetricField& conn, const ChartPoint& p,
                          const FdConfig& cfg) {
  const int n = p.dim();
  const Eigen::MatrixXd ev = e(p);
  const Tensor3 de = fd_matrix_d1(e, p, cfg);
  const Tensor4 dde = fd_matrix_d2(e, p, cfg);
  const Tensor3 gamma = christoffel(conn, p, cfg);
  const Tensor4 dgamma = christoffel_d1(conn, p, cfg);

  // E_{cab} = (grad e)(c;a,b)
  Tensor3 E(n);
  for (int c = 0; c < n; ++c)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        double s = de(c, a, b);
        for (int mm = 0; mm < n; ++mm)
          s -= gamma(mm, c, a) * ev(mm, b) + gamma(mm, c, b) * ev(a, mm);
        E(c, a, b) = s;
      }

  Tensor4 out(n);
  for (int d = 0; d < n; ++d)
    for (int c = 0; c < n; ++c)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          // d_d E_{cab}
          double s = dde(d, c, a, b);
          for (int mm = 0; mm < n; ++mm) {
            s -= dgamma(d, mm, c, a) * ev(mm, b) + gamma(mm, c, a) * de(d, mm, b);
            s -= dgamma(d, mm, c, b) * ev(a, mm) + gamma(mm, c, b) * de(d, a, mm);
          }
          // connection terms of the outer derivative
          for (int mm = 0; mm < n; ++mm) {
            s -= gamma(mm, d, c) * E(mm, a, b);
            s -= gamma(mm, d, a) * E(c, mm, b);
            s -= gamma(mm, d, b) * E(c, a, mm);
          }
          out(d, c, a, b) = s;
        }
  return out;
}

Eigen::MatrixXd lie_derivative_b(const VectorField& X, const ChartPoint& p, const FdConfig& cfg) {
  const int n = p.dim();
  const MetricField b = reference_metric(n, p.chart);
  const Eigen::MatrixXd B = b.components(p);
  const Tensor3 dB = b.d1(p);
  const Tensor3 gamma = christoffel(b, p, cfg);
  const Eigen::VectorXd Xv = X(p);
  const Eigen::MatrixXd dX = fd_vector_d1(X, p, cfg);  // (c, i) = d_c X^i

  // X_{i;j} = d_j (b_{ik} X^k) - Gamma^m_{ji} (b X)_m
  Eigen::VectorXd Xl = B * Xv;
  Eigen::MatrixXd cov(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += dB(j, i, k) * Xv[k] + B(i, k) * dX(j, k);
      for (int mm = 0; mm < n; ++mm) s -= gamma(mm, j, i) * Xl[mm];
      cov(i, j) = s;
    }
  return cov + cov.transpose();
}

Eigen::VectorXd div_minus_dtr(const MatrixField& e, const MetricField& b, const ChartPoint& p,
                              const FdConfig& cfg) {
  const int n = p.dim();
  const Eigen::MatrixXd Binv = b.components(p).inverse();
  const Tensor3 E = covariant_d1_sym2(e, b, p, cfg);
  Eigen::VectorXd out(n);
  for (int a = 0; a < n; ++a) {
    double div = 0.0, dtr = 0.0;
    for (int c = 0; c < n; ++c)
      for (int d = 0; d < n; ++d) {
        div += Binv(c, d) * E(c, d, a);
        dtr += Binv(c, d) * E(a, c, d);
      }
    out[a] = div - dtr;
  }
  return out;
}

double linearized_scalar(const TensorField& e, const ChartPoint& p, const FdConfig& cfg) {
  const int n = p.dim();
  const MetricField b = reference_metric(n, e.chart);
  const Eigen::MatrixXd Binv = b.components(p).inverse();
  const Tensor4 DDe = covariant_d2_sym2(e.eval, b, p, cfg);
  const Eigen::MatrixXd ev = e.eval(p);

  // div_b(div_b e - d tr_b e) = b^{ac} b^{bd} (DDe_{abcd} - DDe_{abdc}-trace)
  double divdiv = 0.0, lap_tr = 0.0;
  for (int a = 0; a < n; ++a)
    for (int bb = 0; bb < n; ++bb)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          // (grad_a grad_b e)_{cd} with layout (d,c,a,b) = out(a_outer, c_inner, i, j)
          divdiv += Binv(a, c) * Binv(bb, d) * DDe(a, bb, c, d);
          lap_tr += Binv(a, bb) * Binv(c, d) * DDe(a, bb, c, d);
        }
  const double tr = (Binv * ev).trace();
  return divdiv - lap_tr + (n - 1) * tr;
}

BoundaryGeometry boundary_geometry(const MetricField& m, const ChartPoint& p,
                                   const FdConfig& cfg) {
  const int n = m.dim;
  const bool polar = (p.chart == Chart::POLAR);
  const int s = polar ? 1 : n - 1;  // coordinate cut out by the face
  if (polar) {
    if (std::abs(p.x[1] - M_PI / 2) > 1e-9) fail("boundary_geometry: point not on the face");
  } else {
    if (std::abs(p.x[n - 1]) > 1e-9) fail("boundary_geometry: point not on the face");
  }

  const Eigen::MatrixXd g = m.components(p);
  const Eigen::MatrixXd ginv = g.inverse();
  const Tensor3 gamma = christoffel(m, p, cfg);

  BoundaryGeometry out;
  // outward unit normal: +grad theta_2 (POLAR face at theta_2 = pi/2),
  // -grad x'_n (BALL face at x'_n = 0)
  Eigen::VectorXd conormal = Eigen::VectorXd::Zero(n);
  conormal[s] = polar ? 1.0 : -1.0;
  const double inv_norm = 1.0 / std::sqrt(ginv(s, s));
  out.normal = ginv * conormal * inv_norm;

  out.tangent_coords.clear();
  for (int c = 0; c < n; ++c)
    if (c != s) out.tangent_coords.push_back(c);

  const int nt = n - 1;
  out.second_form.resize(nt, nt);
  out.induced.resize(nt, nt);
  const double sign = polar ? -1.0 : 1.0;  // Pi_{ab} = -sign_of_conormal * Gamma^s_{ab}/|ds|
  for (int a = 0; a < nt; ++a)
    for (int bb = 0; bb < nt; ++bb) {
      const int ca = out.tangent_coords[a];
      const int cb = out.tangent_coords[bb];
      out.second_form(a, bb) = sign * gamma(s, ca, cb) * inv_norm;
      out.induced(a, bb) = g(ca, cb);
    }
  out.mean_curvature = (out.induced.inverse() * out.second_form).trace();
  return out;
}

double linearized_mean_curvature(const TensorField& e, const ChartPoint& p,
                                 const FdConfig& cfg) {
  const int n = p.dim();
  if (p.chart != Chart::POLAR) fail("linearized_mean_curvature: POLAR chart only");
  if (std::abs(p.x[1] - M_PI / 2) > 1e-9)
    fail("linearized_mean_curvature: point not on the face");
  const MetricField b = reference_metric(n, Chart::POLAR);

  const Eigen::VectorXd dmt = div_minus_dtr(e.eval, b, p, cfg);      // div e - d tr e
  const Eigen::VectorXd eta = boundary_normal_b(p);                  // outward unit
  double first = 0.0;
  for (int c = 0; c < n; ++c) first += -dmt[c] * eta[c];             // [dtr - div](eta)

  // X_e on the face: beta-dual of e(eta, .)|_TSigma; face coordinates are
  // (r, theta_3, ..., theta_n). div_beta X_e by FD along the face.
  auto face_vector = [&](const ChartPoint& q) {
    const Eigen::MatrixXd ev = e.eval(q);
    const Eigen::VectorXd et = boundary_normal_b(q);
    const MetricField bq = reference_metric(n, Chart::POLAR);
    const Eigen::MatrixXd B = bq.components(q);
    // one-form alpha_c = e(eta, d_c) for tangent coords, raise with beta
    Eigen::VectorXd alpha(n - 1);
    Eigen::MatrixXd beta(n - 1, n - 1);
    int ai = 0;
    for (int c = 0; c < n; ++c) {
      if (c == 1) continue;
      alpha[ai] = et.dot(ev.col(c));
      int bj = 0;
      for (int d = 0; d < n; ++d) {
        if (d == 1) continue;
        beta(ai, bj) = B(c, d);
        ++bj;
      }
      ++ai;
    }
    return Eigen::VectorXd(beta.ldlt().solve(alpha));
  };

  // divergence on the face: (1/sqrt(det beta)) d_a (sqrt(det beta) X^a)
  auto sqrt_det_beta = [&](const ChartPoint& q) {
    const Eigen::MatrixXd B = reference_metric(n, Chart::POLAR).components(q);
    Eigen::MatrixXd beta(n - 1, n - 1);
    int ai = 0;
    for (int c = 0; c < n; ++c) {
      if (c == 1) continue;
      int bj = 0;
      for (int d = 0; d < n; ++d) {
        if (d == 1) continue;
        beta(ai, bj) = B(c, d);
        ++bj;
      }
      ++ai;
    }
    return std::sqrt(beta.determinant());
  };

  double div_beta = 0.0;
  int ai = 0;
  for (int c = 0; c < n; ++c) {
    if (c == 1) continue;
    const double h = fd_step1(p, c, cfg);
    ChartPoint qp = shifted(p, c, h), qm = shifted(p, c, -h);
    const double plus = sqrt_det_beta(qp) * face_vector(qp)[ai];
    const double minus = sqrt_det_beta(qm) * face_vector(qm)[ai];
    div_beta += (plus - minus) / (2 * h);
    ++ai;
  }
  div_beta /= sqrt_det_beta(p);

  // <Pi_b, e>_beta vanishes for the model; keep the subtraction explicit.
  const double pi_term = 0.0;

  return 0.5 * (first - div_beta - pi_term);
}

}  // namespace hypmass
