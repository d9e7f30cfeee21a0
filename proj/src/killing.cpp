#include "hypmass/killing.hpp"

#include <cmath>

#include "hypmass/geometry.hpp"
#include "hypmass/metric.hpp"

namespace hypmass {

namespace {

using namespace std::complex_literals;

void check_ball(const ChartPoint& p) {
  if (p.chart != Chart::BALL) fail("killing spinor: BALL chart required");
  if (p.x.squaredNorm() >= 1.0) fail("killing spinor: point outside the unit half-disk");
}

CVector eval_component(const CliffordRep& rep, const CVector& u, int sign,
                       const Eigen::VectorXd& x) {
  // omega^{-1/2} (1 + sign * i * c(x)) u on the underlying fiber
  const double om = ball_conformal_factor(x);
  CMatrix slash = CMatrix::Zero(rep.rank_spin, rep.rank_spin);
  for (int i = 0; i < rep.dim; ++i)
    if (x[i] != 0.0) slash += x[i] * rep.gamma[i];
  CVector out = u + static_cast<double>(sign) * 1.0i * (slash * u);
  return out / std::sqrt(om);
}

}  // namespace

CVector killing_spinor_eval(const CliffordRep& rep, const KillingSpec& spec,
                            const ChartPoint& p) {
  check_ball(p);
  if (!rep.doubled) return eval_component(rep, spec.u, spec.sign, p.x);
  if (spec.v.size() != rep.rank_spin)
    fail("killing_spinor_eval: odd dimension requires the (u, v) pair");
  CVector out(rep.rank);
  out.head(rep.rank_spin) = eval_component(rep, spec.u, spec.sign, p.x);
  out.tail(rep.rank_spin) = eval_component(rep, spec.v, -spec.sign, p.x);
  return out;
}

Tensor3 conformal_connection_forms(const ChartPoint& p) {
  const int n = p.dim();
  const MetricField bhat = reference_metric(n, Chart::BALL);
  const Eigen::MatrixXd B = bhat.components(p);
  const Tensor3 gamma = christoffel(bhat, p);
  const double om = ball_conformal_factor(p.x);
  // d_k omega = -x_k
  Tensor3 w(n);
  for (int k = 0; k < n; ++k)
    for (int a = 0; a < n; ++a) {
      // grad_{f_k} f_a = omega * (d_k omega * delta_a^m + omega Gamma^m_{ka}) d_m
      Eigen::VectorXd nab = Eigen::VectorXd::Zero(n);
      for (int m = 0; m < n; ++m)
        nab[m] = om * ((m == a ? -p.x[k] : 0.0) + om * gamma(m, k, a));
      for (int b = 0; b < n; ++b) {
        // f_b = omega e_b; <., .> with bhat
        double s = 0.0;
        for (int m = 0; m < n; ++m) s += nab[m] * B(m, b) * om;
        w(k, a, b) = s;
      }
    }
  return w;
}

double killing_residual(const CliffordRep& rep, const KillingSpec& spec, const ChartPoint& p,
                        int direction) {
  check_ball(p);
  const int n = p.dim();
  if (direction < 0 || direction >= n) fail("killing_residual: bad frame direction");
  if (1.0 - p.x.norm() < 1e-3) fail("killing_residual: point too close to |x'| = 1");
  const double om = ball_conformal_factor(p.x);

  // frame derivative f_k(phi) = omega * d_k phi by central differences
  const double h = fd_step1(p, direction, {});
  const CVector plus = killing_spinor_eval(rep, spec, shifted(p, direction, h));
  const CVector minus = killing_spinor_eval(rep, spec, shifted(p, direction, -h));
  const CVector dphi = om * (plus - minus) / (2 * h);

  const Tensor3 w = conformal_connection_forms(p);
  const CVector phi = killing_spinor_eval(rep, spec, p);
  CVector conn = CVector::Zero(rep.rank);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (w(direction, a, b) == 0.0) continue;
      conn += 0.25 * w(direction, a, b) * (rep.action(a) * (rep.action(b) * phi));
    }

  const CVector killing_term =
      -static_cast<double>(spec.sign) * 0.5i * (rep.action(direction) * phi);
  return (dphi + conn + killing_term).norm();
}

std::vector<KillingSpec> basis_killing_specs(const CliffordRep& rep) {
  std::vector<KillingSpec> out;
  if (!rep.doubled) {
    const BoundaryChirality bc = boundary_chirality(rep);
    for (int c = 0; c < bc.basis_plus.cols(); ++c) {
      KillingSpec s;
      s.u = bc.basis_plus.col(c);
      s.sign = +1;
      s.chirality = +1;
      out.push_back(s);
    }
    for (int c = 0; c < bc.basis_minus.cols(); ++c) {
      KillingSpec s;
      s.u = bc.basis_minus.col(c);
      s.sign = +1;
      s.chirality = -1;
      out.push_back(s);
    }
    return out;
  }
  const CMatrix gn = rep.gamma[rep.dim - 1];
  for (int chir : {+1, -1}) {
    for (int c = 0; c < rep.rank_spin; ++c) {
      KillingSpec s;
      s.u = CVector::Zero(rep.rank_spin);
      s.u[c] = 1.0;
      s.v = static_cast<double>(chir) * (gn * s.u);
      s.sign = +1;
      s.chirality = chir;
      out.push_back(s);
    }
  }
  return out;
}

double v_phi_normal_component(const CliffordRep& rep, const KillingSpec& spec) {
  const int n = rep.dim;
  const auto quad = [&](const CVector& w) {
    if (w.size() == 0) return 0.0;
    return std::real(w.dot(1.0i * (rep.gamma[n - 1] * w)));  // w* (i gamma_n) w
  };
  return 2.0 * spec.sign * (quad(spec.u) - quad(spec.v));
}

StaticPotential v_phi(const CliffordRep& rep, const KillingSpec& spec) {
  const int n = rep.dim;
  const double un = spec.u.norm();
  if (un == 0.0 && (spec.v.size() == 0 || spec.v.norm() == 0.0))
    fail("v_phi: trivial spec");
  if (rep.doubled && spec.v.size() != rep.rank_spin)
    fail("v_phi: odd dimension requires the (u, v) pair");

  const double zn = v_phi_normal_component(rep, spec);
  const double scale = spec.u.squaredNorm() + (spec.v.size() ? spec.v.squaredNorm() : 0.0);
  if (std::abs(zn) > 1e-10 * scale)
    fail("v_phi: spec is not chirality-compatible (normal component nonzero)");

  StaticPotential V;
  V.dim = n;
  V.coeffs = Eigen::VectorXd::Zero(n);
  V.coeffs[0] = 2.0 * scale;
  const auto quad = [&](const CVector& w, int j) {
    if (w.size() == 0) return 0.0;
    return std::real(w.dot(1.0i * (rep.gamma[j] * w)));
  };
  for (int j = 1; j < n; ++j)
    V.coeffs[j] = 2.0 * spec.sign * (quad(spec.u, j - 1) - quad(spec.v, j - 1));
  return V;
}

KillingSpec null_cone_inverse(const CliffordRep& rep, const StaticPotential& V) {
  const int n = rep.dim;
  const Eigen::VectorXd& z = V.coeffs;
  const double mag = z.norm();
  if (mag <= 0.0) fail("null_cone_inverse: zero potential");
  const double q = lorentz_product(z, z);
  if (std::abs(q) > 1e-6 * mag * mag) fail("null_cone_inverse: potential not null within tolerance");
  if (z[0] < 0) fail("null_cone_inverse: potential not future pointing");

  Eigen::VectorXd m = z.tail(n - 1) / z[0];  // unit by nullness
  CMatrix a_op = CMatrix::Zero(rep.rank_spin, rep.rank_spin);
  for (int j = 1; j < n; ++j) a_op += m[j - 1] * (1.0i * rep.gamma[j - 1]);

  KillingSpec spec;
  spec.chirality = +1;
  CVector u0;
  if (!rep.doubled) {
    const BoundaryChirality bc = boundary_chirality(rep);
    const CMatrix W = bc.basis_plus;
    const CMatrix a_res = W.adjoint() * a_op * W;  // Hermitian on the eigenspace
    Eigen::SelfAdjointEigenSolver<CMatrix> es(a_res);
    const int d = static_cast<int>(es.eigenvalues().size());
    if (es.eigenvalues()[d - 1] > 0.99) {
      spec.sign = +1;
      u0 = W * es.eigenvectors().col(d - 1);
    } else if (es.eigenvalues()[0] < -0.99) {
      spec.sign = -1;
      u0 = W * es.eigenvectors().col(0);
    } else {
      fail("null_cone_inverse: no unit eigenvector in the chirality eigenspace");
    }
  } else {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(a_op);
    const int d = static_cast<int>(es.eigenvalues().size());
    if (es.eigenvalues()[d - 1] > 0.99) {
      spec.sign = +1;
      u0 = es.eigenvectors().col(d - 1);
    } else {
      spec.sign = -1;
      u0 = es.eigenvectors().col(0);
    }
  }
  // scale so the V_(0) coefficient matches, then fix the phase
  const double per_u = rep.doubled ? 4.0 : 2.0;
  u0 *= std::sqrt(z[0] / (per_u * u0.squaredNorm()));
  for (int i = 0; i < u0.size(); ++i) {
    if (std::abs(u0[i]) > 1e-8) {
      u0 *= std::conj(u0[i]) / std::abs(u0[i]);
      break;
    }
  }
  spec.u = u0;
  if (rep.doubled) spec.v = rep.gamma[n - 1] * u0;

  const StaticPotential back = v_phi(rep, spec);
  if ((back.coeffs - z).norm() > 1e-8 * std::max(1.0, mag))
    fail("null_cone_inverse: round-trip verification failed");
  return spec;
}

}  // namespace hypmass
