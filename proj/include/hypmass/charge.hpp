// The charge 1-form U(V, e) = V(div_b e - d tr_b e) - grad_b V .| e
// + (tr_b e) dV, the exact 2-form of its Lie-derivative representation, the
// assembled divergence div_b U, and the pointwise identity residuals used by
// the verification suites.
#pragma once

#include <Eigen/Dense>

#include "hypmass/fd.hpp"
#include "hypmass/geometry.hpp"
#include "hypmass/metric.hpp"
#include "hypmass/potentials.hpp"

namespace hypmass {

// Charge form against an arbitrary symmetric 2-tensor field e (chart
// components), as a 1-form in chart components.
Eigen::VectorXd charge_form_e(const StaticPotential& V, const MatrixField& e,
                              const ChartPoint& p, const FdConfig& cfg = {});

// Charge form of a metric: e = g - b. Requires p in the asymptotic region
// r >= radial_extent of m.
Eigen::VectorXd charge_form(const StaticPotential& V, const MetricField& m,
                            const ChartPoint& p, const FdConfig& cfg = {});

// U(V, L_X b) assembled from second covariant jets of X (avoids nesting
// finite differences through the Lie-derivative field).
Eigen::VectorXd charge_form_lie(const StaticPotential& V, const VectorField& X,
                                const ChartPoint& p, const FdConfig& cfg = {});

// V_{ik} = V(X_{i;k} - X_{k;i}) + 2(X_k V_i - X_i V_k), antisymmetric,
// indices lowered with b.
Eigen::MatrixXd two_form_v(const StaticPotential& V, const VectorField& X,
                           const ChartPoint& p, const FdConfig& cfg = {});

// (div_b V)_i = b^{jk} V_{ij;k}, assembled from analytic reference-metric
// data, the static Hessian identity and finite differences of X only.
Eigen::VectorXd div_two_form_v(const StaticPotential& V, const VectorField& X,
                               const ChartPoint& p, const FdConfig& cfg = {});

// |U(V, L_X b) - div_b V(V, X, b)| at p (Euclidean norm over components).
double exactness_residual(const StaticPotential& V, const VectorField& X,
                          const ChartPoint& p, const FdConfig& cfg = {});

// div_b U(V, e) assembled termwise from first and second covariant
// derivatives of e (no nested differentiation of U itself).
double div_charge_form(const StaticPotential& V, const MatrixField& e, const ChartPoint& p,
                       const FdConfig& cfg = {});

// |V (R_{b + eps e} + n(n-1)) - div_b U(V, eps e)| at p; second order in eps.
// e is given as a field; the perturbed metric combines analytic reference
// derivatives with derivatives of e.
double expansion_residual(const TensorField& e, const StaticPotential& V, const ChartPoint& p,
                          double eps, const FdConfig& cfg = {});

// b + eps * e as a MetricField (derivatives: analytic reference plus FD of e).
MetricField perturbed_metric(const TensorField& e, double eps);

}  // namespace hypmass
