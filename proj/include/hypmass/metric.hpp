// Metric fields on the half-space charts: component evaluators plus optional
// analytic derivative evaluators and decay metadata. Also the reference
// metric in both models, the boundary-adapted orthonormal frame of the
// reference metric, and the gauge map.
#pragma once

#include <Eigen/Dense>
#include <functional>
#include <limits>
#include <string>

#include "hypmass/chart.hpp"
#include "hypmass/fd.hpp"
#include "hypmass/types.hpp"

namespace hypmass {

struct MetricField {
  int dim = 0;
  Chart chart = Chart::POLAR;
  std::string name;

  MatrixField components;                                   // g_{ij}(p)
  std::function<Tensor3(const ChartPoint&)> d1;             // optional analytic d g
  std::function<Tensor4(const ChartPoint&)> d2;             // optional analytic d^2 g
  double tau = 0.0;                                         // claimed decay rate
  double radial_extent = 0.0;                               // r_0 of the decay claim
  bool einstein = false;                                    // claimed Einstein (reporting)

  bool has_d1() const { return static_cast<bool>(d1); }
  bool has_d2() const { return static_cast<bool>(d2); }

  Eigen::MatrixXd eval(const ChartPoint& p) const;
};

// Decay-rate sentinel for exact reference metrics.
inline double tau_infinity() { return std::numeric_limits<double>::infinity(); }

// The reference hyperbolic metric in the requested chart, with analytic first
// and second derivatives. POLAR: diag(1/(1+r^2), r^2 m_j(theta)); BALL:
// omega^{-2} delta.
MetricField reference_metric(int n, Chart chart);

// Derivatives of a metric with FD fallback when analytic ones are absent.
Tensor3 metric_d1(const MetricField& m, const ChartPoint& p, const FdConfig& cfg = {});
Tensor4 metric_d2(const MetricField& m, const ChartPoint& p, const FdConfig& cfg = {});

// b-orthonormal frame {f_1..f_n} at p (columns of the returned matrix are
// chart components). f_n is the unit b-gradient of the ambient coordinate
// x_n, so f_n = -eta on the boundary face (eta the outward unit normal).
// f_1 is the radial direction projected orthogonal to f_n.
Eigen::MatrixXd reference_frame(const ChartPoint& p);

// Outward unit normal (w.r.t. b) of the boundary face at a boundary point,
// as chart components. POLAR: (1/r) d/d theta_2; BALL: -omega d/d x_n.
Eigen::VectorXd boundary_normal_b(const ChartPoint& p);

// Outward unit radial vector (w.r.t. b) at p, chart components (POLAR only).
Eigen::VectorXd radial_unit_b(const ChartPoint& p);

// Gauge map at p: the linear map G on tangent chart components with
// <GX, GY>_g = <X, Y>_b and g-selfadjointness, realized as the inverse
// symmetric square root of the g-Gram matrix in the b-orthonormal frame.
// Returned in frame components (apply to frame coordinates of vectors).
Eigen::MatrixXd gauge_map(const MetricField& m, const ChartPoint& p);

// e-matrix in the b-orthonormal frame: H_{ij} = (g-b)(f_i, f_j).
Eigen::MatrixXd frame_perturbation(const MetricField& m, const ChartPoint& p);

struct DecayCheck {
  bool pass = false;
  double measured_constant = 0.0;  // max over grid of (|e|+|De|+|DDe|) r^tau
  double growth_ratio = 0.0;       // outermost/innermost of the above
  std::string detail;
};

// Sampled Definition-style decay validation: |e|_b + |grad e|_b + |grad^2 e|_b
// <= C r^{-tau} on a ray grid. For tau = infinity requires near-zero e.
DecayCheck validate_decay(const MetricField& m, int samples_per_radius = 8,
                          int num_radii = 5, const FdConfig& cfg = {});

}  // namespace hypmass
