// The static potential space of the reference half-space, its Lorentzian
// structure, and the isometry group action. Basis potentials V_(a) are the
// restrictions of the ambient linear coordinates x_a to the hyperboloid
// (POLAR) or their half-disk counterparts (BALL).
#pragma once

#include <Eigen/Dense>
#include <vector>

#include "hypmass/chart.hpp"
#include "hypmass/metric.hpp"
#include "hypmass/types.hpp"

namespace hypmass {

// V_(a)(p), 0 <= a <= n-1.
double static_basis_eval(int a, const ChartPoint& p);

// Chart-coordinate gradient (as a 1-form: d V_(a)) and coordinate Hessian
// (d^2 V), both analytic.
Eigen::VectorXd static_basis_d1(int a, const ChartPoint& p);
Eigen::MatrixXd static_basis_d2(int a, const ChartPoint& p);

struct StaticPotential {
  int dim = 0;
  Eigen::VectorXd coeffs;  // length n, basis {V_(0)..V_(n-1)}

  double eval(const ChartPoint& p) const;
  Eigen::VectorXd d1(const ChartPoint& p) const;
  Eigen::MatrixXd d2(const ChartPoint& p) const;
};

StaticPotential basis_potential(int n, int a);

// Hessian identity residual |grad^2_b V - V b| (Frobenius, chart components)
// at p; zero for genuine static potentials.
double hessian_residual(const StaticPotential& V, const ChartPoint& p);

enum class CausalClass { ZERO, TIMELIKE_FUTURE, TIMELIKE_PAST, NULL_FUTURE, NULL_PAST, SPACELIKE };

const char* to_string(CausalClass c);

// <<z, w>> = z_0 w_0 - sum_{i>=1} z_i w_i.
double lorentz_product(const Eigen::VectorXd& z, const Eigen::VectorXd& w);

// Classification with a noise scale (typically the extrapolation error
// estimate): ZERO when |z| is below the noise floor, NULL when the Lorentz
// norm is negligible against |z|^2.
CausalClass classify(const Eigen::VectorXd& z, double noise_scale);

// An isometry of the reference space preserving the boundary face: an
// (n+1)x(n+1) Lorentz matrix acting on hyperboloid coordinates
// (x_0, ..., x_n) and fixing the x_n coordinate.
struct IsometryElement {
  Eigen::MatrixXd matrix;  // (n+1) x (n+1)

  int dim() const { return static_cast<int>(matrix.rows()) - 1; }
  void validate() const;  // Lorentz + fixes x_n + orthochronous

  ChartPoint apply(const ChartPoint& p) const;
  IsometryElement compose(const IsometryElement& other) const;  // this after other
  IsometryElement inverse() const;

  // Analytic chart Jacobian of the point action at p (through the embedding;
  // no differencing noise).
  Eigen::MatrixXd chart_jacobian(const ChartPoint& p) const;
};

IsometryElement isometry_identity(int n);
// rotation by `angle` in the (x_i, x_j) plane, 1 <= i < j <= n-1
IsometryElement isometry_rotation(int n, int i, int j, double angle);
// boost with rapidity s in the (x_0, x_i) plane, 1 <= i <= n-1
IsometryElement isometry_boost(int n, int i, double s);

// Coefficients of V o I in the basis {V_(a)}; preserves lorentz_product.
StaticPotential isometry_action(const IsometryElement& iso, const StaticPotential& V);

// X_a = grad_b V_(a): conformal field of b tangent to the boundary face,
// contravariant chart components.
Eigen::VectorXd conformal_field(int a, const ChartPoint& p);

}  // namespace hypmass
