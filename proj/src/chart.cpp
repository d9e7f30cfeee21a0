#include "hypmass/chart.hpp"

#include <cmath>

namespace hypmass {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Factor table describing omega_i as a product of sin/cos of the angles.
// For component i (0-based, i = 0..n-1 meaning omega_1..omega_n) and angle
// k (0-based, k = 0..n-2): factor is one of {1, sin, cos}.
enum class Fac : unsigned char { One, Sin, Cos };

// omega_n (index n-1) = cos a0.
// omega_i (index i, i < n-1 components of the S^{n-2} part scaled by sin a0):
// the S^{d} recursion with angles a1..: u_1 = cos a1, u_2 = sin a1 cos a2, ...
// We lay sigma out so that sigma component j (0-based, j = 0..n-2) is
//   prod_{m=1}^{j} sin a_m * (cos a_{j+1} if j+1 <= n-2 else 1)
// i.e. last component is all-sines. omega_i for i in [0, n-2] maps to sigma
// component i with the extra leading sin a0.
Fac factor(int n, int i, int k) {
  if (i == n - 1) return k == 0 ? Fac::Cos : Fac::One;
  // sigma component i uses angles a1.. ; leading sin a0.
  if (k == 0) return Fac::Sin;
  // within sigma: angles a1..a_{n-2}; component i: sin a1...sin a_i, then
  // cos a_{i+1} if present.
  if (k <= i) return Fac::Sin;
  if (k == i + 1 && k <= n - 2) return Fac::Cos;
  return Fac::One;
}

double fac_val(Fac f, double a, int deriv) {
  // deriv-th derivative of the factor
  switch (f) {
    case Fac::One:
      return deriv == 0 ? 1.0 : 0.0;
    case Fac::Sin:
      switch (deriv % 4) {
        case 0: return std::sin(a);
        case 1: return std::cos(a);
        case 2: return -std::sin(a);
        default: return -std::cos(a);
      }
    case Fac::Cos:
      switch (deriv % 4) {
        case 0: return std::cos(a);
        case 1: return -std::sin(a);
        case 2: return -std::cos(a);
        default: return std::sin(a);
      }
  }
  return 0.0;
}

}  // namespace

ChartPoint polar_point(double r, const Eigen::VectorXd& angles) {
  ChartPoint p;
  p.chart = Chart::POLAR;
  p.x.resize(angles.size() + 1);
  p.x[0] = r;
  p.x.tail(angles.size()) = angles;
  return p;
}

ChartPoint ball_point(const Eigen::VectorXd& coords) {
  ChartPoint p;
  p.chart = Chart::BALL;
  p.x = coords;
  return p;
}

bool in_domain(const ChartPoint& p, double slack) {
  const int n = p.dim();
  if (p.chart == Chart::POLAR) {
    if (!(p.x[0] > 0.0)) return false;
    const double psi = p.x[1];
    return psi >= -slack && psi <= kPi / 2 + slack;
  }
  const double s = p.x.squaredNorm();
  return s < 1.0 && p.x[n - 1] >= -slack;
}

Eigen::VectorXd sphere_unit(const Eigen::VectorXd& angles) {
  const int n = static_cast<int>(angles.size()) + 1;
  Eigen::VectorXd w(n);
  for (int i = 0; i < n; ++i) {
    double prod = 1.0;
    for (int k = 0; k < n - 1; ++k) prod *= fac_val(factor(n, i, k), angles[k], 0);
    w[i] = prod;
  }
  return w;
}

Eigen::MatrixXd sphere_unit_d1(const Eigen::VectorXd& angles) {
  const int n = static_cast<int>(angles.size()) + 1;
  Eigen::MatrixXd d(n - 1, n);
  for (int k = 0; k < n - 1; ++k)
    for (int i = 0; i < n; ++i) {
      double prod = 1.0;
      for (int m = 0; m < n - 1; ++m)
        prod *= fac_val(factor(n, i, m), angles[m], m == k ? 1 : 0);
      d(k, i) = prod;
    }
  return d;
}

Tensor3 sphere_unit_d2(const Eigen::VectorXd& angles) {
  const int n = static_cast<int>(angles.size()) + 1;
  Tensor3 dd(n);  // indices (k, l, i); k,l < n-1
  for (int k = 0; k < n - 1; ++k)
    for (int l = 0; l < n - 1; ++l)
      for (int i = 0; i < n; ++i) {
        double prod = 1.0;
        for (int m = 0; m < n - 1; ++m) {
          int deriv = (m == k ? 1 : 0) + (m == l ? 1 : 0);
          prod *= fac_val(factor(n, i, m), angles[m], deriv);
        }
        dd(k, l, i) = prod;
      }
  return dd;
}

Eigen::VectorXd sphere_angles(const Eigen::VectorXd& omega) {
  const int n = static_cast<int>(omega.size());
  Eigen::VectorXd a = Eigen::VectorXd::Zero(n - 1);
  // Peel recursively: first angle from the LAST component, remaining from the
  // sigma recursion on components 0..n-2 (first sigma component carries cos).
  double clamped = std::min(1.0, std::max(-1.0, omega[n - 1]));
  a[0] = std::acos(clamped);
  Eigen::VectorXd rest = omega.head(n - 1);
  double scale = rest.norm();
  for (int k = 1; k < n - 1; ++k) {
    if (scale < 1e-300) break;  // degenerate; remaining angles arbitrary
    if (k == n - 2) {
      // azimuth: components n-3 and n-2 of the spatial part carry
      // (cos, sin) of the last angle times a common positive sine product
      a[k] = std::atan2(rest[n - 2], rest[n - 3]);
      if (a[k] < 0) a[k] += 2 * kPi;
      break;
    }
    double c = std::min(1.0, std::max(-1.0, rest[k - 1] / scale));
    a[k] = std::acos(c);
    double s = std::sin(a[k]);
    scale *= s;
  }
  return a;
}

Eigen::VectorXd hyperboloid_coords(const ChartPoint& p) {
  const int n = p.dim();
  Eigen::VectorXd x(n + 1);
  if (p.chart == Chart::POLAR) {
    const double r = p.x[0];
    Eigen::VectorXd w = sphere_unit(p.x.tail(n - 1));
    x[0] = std::sqrt(1.0 + r * r);
    x.tail(n) = r * w;
  } else {
    const double s = p.x.squaredNorm();
    const double d = 1.0 - s;
    x[0] = (1.0 + s) / d;
    x.tail(n) = 2.0 * p.x / d;
  }
  return x;
}

ChartPoint from_hyperboloid(const Eigen::VectorXd& x, Chart chart) {
  const int n = static_cast<int>(x.size()) - 1;
  if (chart == Chart::BALL) {
    ChartPoint p;
    p.chart = Chart::BALL;
    p.x = x.tail(n) / (1.0 + x[0]);
    return p;
  }
  ChartPoint p;
  p.chart = Chart::POLAR;
  Eigen::VectorXd spatial = x.tail(n);
  const double r = spatial.norm();
  p.x.resize(n);
  p.x[0] = r;
  if (r > 0)
    p.x.tail(n - 1) = sphere_angles(spatial / r);
  else
    p.x.tail(n - 1).setZero();
  return p;
}

ChartPoint to_chart(const ChartPoint& p, Chart target) {
  if (p.chart == target) return p;
  return from_hyperboloid(hyperboloid_coords(p), target);
}

ChartPoint model_transform(const ChartPoint& p) {
  return to_chart(p, p.chart == Chart::POLAR ? Chart::BALL : Chart::POLAR);
}

double ball_conformal_factor(const Eigen::VectorXd& coords) {
  return 0.5 * (1.0 - coords.squaredNorm());
}

Eigen::MatrixXd hyperboloid_embedding_jacobian(const ChartPoint& p) {
  const int n = p.dim();
  Eigen::MatrixXd E = Eigen::MatrixXd::Zero(n + 1, n);
  if (p.chart == Chart::POLAR) {
    const double r = p.x[0];
    const Eigen::VectorXd angles = p.x.tail(n - 1);
    const Eigen::VectorXd w = sphere_unit(angles);
    const Eigen::MatrixXd dw = sphere_unit_d1(angles);
    E(0, 0) = r / std::sqrt(1.0 + r * r);
    for (int i = 0; i < n; ++i) {
      E(1 + i, 0) = w[i];
      for (int k = 0; k < n - 1; ++k) E(1 + i, 1 + k) = r * dw(k, i);
    }
    return E;
  }
  const double s = p.x.squaredNorm();
  const double den = 1.0 - s;
  for (int c = 0; c < n; ++c) {
    E(0, c) = 4.0 * p.x[c] / (den * den);
    for (int i = 0; i < n; ++i)
      E(1 + i, c) =
          2.0 * ((i == c ? 1.0 : 0.0) / den + 2.0 * p.x[i] * p.x[c] / (den * den));
  }
  return E;
}

double unit_sphere_area(int d) {
  return 2.0 * std::pow(kPi, 0.5 * (d + 1)) / std::tgamma(0.5 * (d + 1));
}

}  // namespace hypmass
