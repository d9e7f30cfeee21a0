#include "hypmass/potentials.hpp"

#include <cmath>

#include "hypmass/geometry.hpp"

namespace hypmass {

namespace {

void check_index(int a, int n) {
  if (a < 0 || a >= n) fail("static potential index out of range");
}

}  // namespace

double static_basis_eval(int a, const ChartPoint& p) {
  const int n = p.dim();
  check_index(a, n);
  if (p.chart == Chart::POLAR) {
    const double r = p.x[0];
    if (a == 0) return std::sqrt(1.0 + r * r);
    const Eigen::VectorXd w = sphere_unit(p.x.tail(n - 1));
    return r * w[a - 1];
  }
  const double s = p.x.squaredNorm();
  if (a == 0) return (1.0 + s) / (1.0 - s);
  return 2.0 * p.x[a - 1] / (1.0 - s);
}

Eigen::VectorXd static_basis_d1(int a, const ChartPoint& p) {
  const int n = p.dim();
  check_index(a, n);
  Eigen::VectorXd d = Eigen::VectorXd::Zero(n);
  if (p.chart == Chart::POLAR) {
    const double r = p.x[0];
    if (a == 0) {
      d[0] = r / std::sqrt(1.0 + r * r);
      return d;
    }
    const Eigen::VectorXd angles = p.x.tail(n - 1);
    const Eigen::VectorXd w = sphere_unit(angles);
    const Eigen::MatrixXd dw = sphere_unit_d1(angles);
    d[0] = w[a - 1];
    for (int k = 0; k < n - 1; ++k) d[k + 1] = r * dw(k, a - 1);
    return d;
  }
  const double s = p.x.squaredNorm();
  const double den = 1.0 - s;
  if (a == 0) {
    for (int i = 0; i < n; ++i) d[i] = 4.0 * p.x[i] / (den * den);
    return d;
  }
  for (int i = 0; i < n; ++i)
    d[i] = 2.0 * ((i == a - 1 ? 1.0 : 0.0) / den + 2.0 * p.x[a - 1] * p.x[i] / (den * den));
  return d;
}

Eigen::MatrixXd static_basis_d2(int a, const ChartPoint& p) {
  const int n = p.dim();
  check_index(a, n);
  Eigen::MatrixXd dd = Eigen::MatrixXd::Zero(n, n);
  if (p.chart == Chart::POLAR) {
    const double r = p.x[0];
    if (a == 0) {
      const double w = 1.0 + r * r;
      dd(0, 0) = 1.0 / (w * std::sqrt(w));
      return dd;
    }
    const Eigen::VectorXd angles = p.x.tail(n - 1);
    const Eigen::MatrixXd dw = sphere_unit_d1(angles);
    const Tensor3 ddw = sphere_unit_d2(angles);
    for (int k = 0; k < n - 1; ++k) {
      dd(0, k + 1) = dw(k, a - 1);
      dd(k + 1, 0) = dw(k, a - 1);
      for (int l = 0; l < n - 1; ++l) dd(k + 1, l + 1) = r * ddw(k, l, a - 1);
    }
    return dd;
  }
  const double s = p.x.squaredNorm();
  const double den = 1.0 - s;
  const double den2 = den * den;
  const double den3 = den2 * den;
  if (a == 0) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        dd(i, j) = 4.0 * (i == j ? 1.0 : 0.0) / den2 + 16.0 * p.x[i] * p.x[j] / den3;
    return dd;
  }
  const int m = a - 1;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      double v = 4.0 * ((m == j ? 1.0 : 0.0) * p.x[k] + (m == k ? 1.0 : 0.0) * p.x[j] +
                        (j == k ? 1.0 : 0.0) * p.x[m]) / den2;
      v += 16.0 * p.x[m] * p.x[j] * p.x[k] / den3;
      dd(j, k) = v;
    }
  return dd;
}

double StaticPotential::eval(const ChartPoint& p) const {
  double s = 0.0;
  for (int a = 0; a < dim; ++a)
    if (coeffs[a] != 0.0) s += coeffs[a] * static_basis_eval(a, p);
  return s;
}

Eigen::VectorXd StaticPotential::d1(const ChartPoint& p) const {
  Eigen::VectorXd s = Eigen::VectorXd::Zero(dim);
  for (int a = 0; a < dim; ++a)
    if (coeffs[a] != 0.0) s += coeffs[a] * static_basis_d1(a, p);
  return s;
}

Eigen::MatrixXd StaticPotential::d2(const ChartPoint& p) const {
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(dim, dim);
  for (int a = 0; a < dim; ++a)
    if (coeffs[a] != 0.0) s += coeffs[a] * static_basis_d2(a, p);
  return s;
}

StaticPotential basis_potential(int n, int a) {
  check_index(a, n);
  StaticPotential V;
  V.dim = n;
  V.coeffs = Eigen::VectorXd::Zero(n);
  V.coeffs[a] = 1.0;
  return V;
}

double hessian_residual(const StaticPotential& V, const ChartPoint& p) {
  const int n = p.dim();
  const MetricField b = reference_metric(n, p.chart);
  const Tensor3 gamma = christoffel(b, p);
  const Eigen::VectorXd dV = V.d1(p);
  const Eigen::MatrixXd ddV = V.d2(p);
  const Eigen::MatrixXd B = b.components(p);
  Eigen::MatrixXd hess(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = ddV(i, j);
      for (int m = 0; m < n; ++m) s -= gamma(m, i, j) * dV[m];
      hess(i, j) = s;
    }
  return (hess - V.eval(p) * B).norm() / std::max(1.0, B.norm());
}

const char* to_string(CausalClass c) {
  switch (c) {
    case CausalClass::ZERO: return "ZERO";
    case CausalClass::TIMELIKE_FUTURE: return "TIMELIKE_FUTURE";
    case CausalClass::TIMELIKE_PAST: return "TIMELIKE_PAST";
    case CausalClass::NULL_FUTURE: return "NULL_FUTURE";
    case CausalClass::NULL_PAST: return "NULL_PAST";
    case CausalClass::SPACELIKE: return "SPACELIKE";
  }
  return "?";
}

double lorentz_product(const Eigen::VectorXd& z, const Eigen::VectorXd& w) {
  if (z.size() != w.size()) fail("lorentz_product: dimension mismatch");
  double s = z[0] * w[0];
  for (int i = 1; i < z.size(); ++i) s -= z[i] * w[i];
  return s;
}

CausalClass classify(const Eigen::VectorXd& z, double noise_scale) {
  const double mag = z.norm();
  if (mag <= std::max(1e-9, 3.0 * noise_scale)) return CausalClass::ZERO;
  const double q = lorentz_product(z, z);
  if (std::abs(q) < 1e-6 * mag * mag)
    return z[0] >= 0 ? CausalClass::NULL_FUTURE : CausalClass::NULL_PAST;
  if (q > 0) return z[0] >= 0 ? CausalClass::TIMELIKE_FUTURE : CausalClass::TIMELIKE_PAST;
  return CausalClass::SPACELIKE;
}

void IsometryElement::validate() const {
  const int n = dim();
  Eigen::MatrixXd eta = Eigen::MatrixXd::Identity(n + 1, n + 1);
  eta(0, 0) = -1.0;
  if ((matrix.transpose() * eta * matrix - eta).norm() > 1e-12 * (1.0 + matrix.norm()))
    fail("isometry: matrix does not preserve the Minkowski form");
  Eigen::VectorXd en = Eigen::VectorXd::Unit(n + 1, n);
  if ((matrix * en - en).norm() > 1e-12 || (matrix.transpose() * en - en).norm() > 1e-12)
    fail("isometry: matrix does not fix the x_n coordinate");
  if (matrix(0, 0) <= 0) fail("isometry: matrix reverses time orientation");
}

ChartPoint IsometryElement::apply(const ChartPoint& p) const {
  Eigen::VectorXd x = hyperboloid_coords(p);
  return from_hyperboloid(matrix * x, p.chart);
}

IsometryElement IsometryElement::compose(const IsometryElement& other) const {
  IsometryElement out;
  out.matrix = matrix * other.matrix;
  return out;
}

IsometryElement IsometryElement::inverse() const {
  const int n = dim();
  Eigen::MatrixXd eta = Eigen::MatrixXd::Identity(n + 1, n + 1);
  eta(0, 0) = -1.0;
  IsometryElement out;
  out.matrix = eta * matrix.transpose() * eta;  // Lorentz inverse
  return out;
}

Eigen::MatrixXd IsometryElement::chart_jacobian(const ChartPoint& p) const {
  // d(chart at image) o B o d(embedding at p): the image tangent vectors lie
  // in the span of the image embedding Jacobian, so solving the consistent
  // system E(q) J = B E(p) recovers the chart Jacobian exactly.
  const ChartPoint q = apply(p);
  const Eigen::MatrixXd Ep = hyperboloid_embedding_jacobian(p);
  const Eigen::MatrixXd Eq = hyperboloid_embedding_jacobian(q);
  const Eigen::MatrixXd rhs = matrix * Ep;
  return (Eq.transpose() * Eq).ldlt().solve(Eq.transpose() * rhs);
}

IsometryElement isometry_identity(int n) {
  IsometryElement iso;
  iso.matrix = Eigen::MatrixXd::Identity(n + 1, n + 1);
  return iso;
}

IsometryElement isometry_rotation(int n, int i, int j, double angle) {
  if (i < 1 || j < 1 || i >= n || j >= n || i == j) fail("isometry_rotation: bad plane");
  IsometryElement iso = isometry_identity(n);
  const double c = std::cos(angle), s = std::sin(angle);
  iso.matrix(i, i) = c;
  iso.matrix(j, j) = c;
  iso.matrix(i, j) = -s;
  iso.matrix(j, i) = s;
  return iso;
}

IsometryElement isometry_boost(int n, int i, double s) {
  if (i < 1 || i >= n) fail("isometry_boost: bad axis");
  IsometryElement iso = isometry_identity(n);
  const double ch = std::cosh(s), sh = std::sinh(s);
  iso.matrix(0, 0) = ch;
  iso.matrix(i, i) = ch;
  iso.matrix(0, i) = sh;
  iso.matrix(i, 0) = sh;
  return iso;
}

StaticPotential isometry_action(const IsometryElement& iso, const StaticPotential& V) {
  iso.validate();
  const int n = V.dim;
  // (V o I)(x) = sum_a z_a (I x)_a = sum_b (sum_a z_a I_{ab}) V_(b)(x)
  StaticPotential out;
  out.dim = n;
  out.coeffs = Eigen::VectorXd::Zero(n);
  for (int b = 0; b < n; ++b) {
    double s = 0.0;
    for (int a = 0; a < n; ++a) s += V.coeffs[a] * iso.matrix(a, b);
    out.coeffs[b] = s;
  }
  return out;
}

Eigen::VectorXd conformal_field(int a, const ChartPoint& p) {
  const int n = p.dim();
  check_index(a, n);
  const MetricField b = reference_metric(n, p.chart);
  return b.components(p).ldlt().solve(static_basis_d1(a, p));
}

}  // namespace hypmass
