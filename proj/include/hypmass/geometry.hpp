// Numerical tensor calculus on chart components: connection coefficients,
// curvature, covariant derivatives of symmetric 2-tensor fields, boundary
// geometry (second fundamental form, mean curvature) and the linearizations
// of scalar and mean curvature at the reference metric.
#pragma once

#include <Eigen/Dense>
#include <functional>

#include "hypmass/fd.hpp"
#include "hypmass/metric.hpp"
#include "hypmass/types.hpp"

namespace hypmass {

// A symmetric 2-tensor field given by chart-component evaluators.
struct TensorField {
  int dim = 0;
  Chart chart = Chart::POLAR;
  MatrixField eval;
};

// Gamma^k_{ij} of m at p; uses analytic derivatives when supplied, else
// central differences. Layout: (k, i, j), symmetric in (i, j).
Tensor3 christoffel(const MetricField& m, const ChartPoint& p, const FdConfig& cfg = {});

// d_l Gamma^k_{ij}, layout (l, k, i, j). Requires second derivatives
// (analytic or FD).
Tensor4 christoffel_d1(const MetricField& m, const ChartPoint& p, const FdConfig& cfg = {});

struct Curvature {
  Tensor4 riemann;          // R^l_{kij} = dGamma + GammaGamma, layout (l, k, i, j)
  Eigen::MatrixXd ricci;    // R_{jk}
  double scalar = 0.0;      // R_g
};

Curvature curvature(const MetricField& m, const ChartPoint& p, const FdConfig& cfg = {});

struct BoundaryGeometry {
  Eigen::VectorXd normal;   // outward unit g-normal, chart components
  Eigen::MatrixXd second_form;  // Pi_g on the face tangent coordinate basis
  Eigen::MatrixXd induced;      // induced metric on the same basis
  double mean_curvature = 0.0;  // H_g = tr of the shape operator
  std::vector<int> tangent_coords;  // chart coordinate indices spanning TSigma
};

// Boundary geometry of the face at a boundary point (POLAR: theta_2 = pi/2,
// BALL: x'_n = 0). Sign convention: Pi(X, Y) = g(grad_X eta, Y) with eta the
// outward unit normal, so the mean curvature of a ball boundary with respect
// to its inner region is positive and H_b = 0.
BoundaryGeometry boundary_geometry(const MetricField& m, const ChartPoint& p,
                                   const FdConfig& cfg = {});

// First covariant derivative of a symmetric 2-tensor field with respect to
// the connection of `conn` (usually the reference metric). Layout (c, a, b)
// = (grad_c e)_{ab}.
Tensor3 covariant_d1_sym2(const MatrixField& e, const MetricField& conn, const ChartPoint& p,
                          const FdConfig& cfg = {});

// Second covariant derivative, layout (d, c, a, b) = (grad_d grad_c e)_{ab}.
Tensor4 covariant_d2_sym2(const MatrixField& e, const MetricField& conn, const ChartPoint& p,
                          const FdConfig& cfg = {});

// (L_X b)_{ij} = X_{i;j} + X_{j;i} for the reference metric b of the chart
// of p; X supplies contravariant chart components.
Eigen::MatrixXd lie_derivative_b(const VectorField& X, const ChartPoint& p,
                                 const FdConfig& cfg = {});

// Linearized scalar curvature at b: div_b(div_b e - d tr_b e) + (n-1) tr_b e.
double linearized_scalar(const TensorField& e, const ChartPoint& p, const FdConfig& cfg = {});

// Linearized mean curvature at b at a boundary point:
// 2 Hdot = [d tr_b e - div_b e](eta) - div_beta X_e - <Pi_b, e>_beta,
// with X_e the field on the face dual to e(eta, .)|_TSigma. Pi_b = 0 for the
// model, the term is kept for form.
double linearized_mean_curvature(const TensorField& e, const ChartPoint& p,
                                 const FdConfig& cfg = {});

// div_b e - d tr_b e as a 1-form (chart components), a shared building block.
Eigen::VectorXd div_minus_dtr(const MatrixField& e, const MetricField& b, const ChartPoint& p,
                              const FdConfig& cfg = {});

}  // namespace hypmass
