// Charts on the hyperbolic half-space, hyperspherical angle utilities and the
// stereographic transform between the hyperboloid (POLAR) and half-disk (BALL)
// models.
//
// POLAR coordinates (r, theta_2, ..., theta_n), n entries total:
//   omega_n           = cos(theta_2),          theta_2 in [0, pi/2]
//   (omega_1..omega_{n-1}) = sin(theta_2) * sigma(theta_3..theta_n)
// with sigma the standard recursive parameterization of S^{n-2}
// (first component cos of the first angle; last angle is the full-circle
// azimuth). The hyperboloid point is x = (sqrt(1+r^2), r*omega); the boundary
// face is omega_n = 0, i.e. theta_2 = pi/2.
//
// BALL coordinates x' in R^n, |x'| < 1, x'_n >= 0; the face is x'_n = 0.
#pragma once

#include <Eigen/Dense>

#include "hypmass/types.hpp"

namespace hypmass {

enum class Chart { POLAR, BALL };

struct ChartPoint {
  Chart chart = Chart::POLAR;
  Eigen::VectorXd x;  // length n

  int dim() const { return static_cast<int>(x.size()); }

  // POLAR accessors
  double r() const { return x[0]; }
  double angle(int k) const { return x[k]; }  // k in [1, n-1]: theta_{k+1}
};

ChartPoint polar_point(double r, const Eigen::VectorXd& angles);
ChartPoint ball_point(const Eigen::VectorXd& coords);

// Validity of the chart domain (POLAR: r > 0, theta_2 in [0, pi/2];
// BALL: |x'| < 1, x'_n >= 0). `slack` loosens the face/radial constraints,
// used by finite-difference stencils that step slightly past the boundary.
bool in_domain(const ChartPoint& p, double slack = 0.0);

// Unit vector on S^{n-1} from the n-1 angles (theta_2..theta_n), plus first
// and second derivatives with respect to the angles. omega is exact (products
// of sines/cosines).
Eigen::VectorXd sphere_unit(const Eigen::VectorXd& angles);
// d_omega(k, i) = d omega_i / d angle_k (angles indexed 0..n-2)
Eigen::MatrixXd sphere_unit_d1(const Eigen::VectorXd& angles);
// dd_omega(k, l, i) = d^2 omega_i / d angle_k d angle_l, packed as Tensor3
// with first two indices the angles and the last the component.
Tensor3 sphere_unit_d2(const Eigen::VectorXd& angles);

// Angles from a unit vector; inverse of sphere_unit up to the usual
// degeneracies (returns zeros for angles that are undetermined).
Eigen::VectorXd sphere_angles(const Eigen::VectorXd& omega);

// Ambient hyperboloid coordinates (x_0, ..., x_n) of a chart point.
Eigen::VectorXd hyperboloid_coords(const ChartPoint& p);

// Chart point (in the requested chart) from hyperboloid coordinates.
ChartPoint from_hyperboloid(const Eigen::VectorXd& x, Chart chart);

// Isometry between the two models: stereographic projection centered at
// (-1, 0, ..., 0). Round-trips to machine precision and maps the boundary
// face onto the face.
ChartPoint model_transform(const ChartPoint& p);

// Point map POLAR->BALL or BALL->POLAR as used by model_transform, exposed
// for Jacobian computations.
ChartPoint to_chart(const ChartPoint& p, Chart target);

// omega(x') = (1 - |x'|^2)/2, the conformal factor of the BALL model.
double ball_conformal_factor(const Eigen::VectorXd& coords);

// (n+1) x n Jacobian of the hyperboloid embedding x(p) with respect to the
// chart coordinates, analytic.
Eigen::MatrixXd hyperboloid_embedding_jacobian(const ChartPoint& p);

// |S^{d}| = 2 pi^{(d+1)/2} / Gamma((d+1)/2), the area of the unit d-sphere.
double unit_sphere_area(int d);

}  // namespace hypmass
