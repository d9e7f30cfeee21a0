// Constructors for asymptotically hyperbolic metrics with boundary: exact
// solutions, radial trace perturbations, conformally compact collar data
// (evaluators or sampled files), and diffeomorphism transports.
#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>

#include "hypmass/geometry.hpp"
#include "hypmass/metric.hpp"

namespace hypmass {

// Exact reference metric (tau = infinity sentinel).
MetricField zoo_reference(int n, Chart chart = Chart::POLAR);

// g = dr^2 / (1 + r^2 - 2 mbar r^{2-n}) + r^2 h_0 on the half-space.
// Refuses evaluation at r < r_horizon + 0.1. mbar = 0 gives the reference.
MetricField ads_schwarzschild_half(int n, double mbar);
double ads_horizon_radius(int n, double mbar);

struct RadialProfile {
  std::function<double(double)> f, df, ddf;
  double tau = 0.0;  // decay rate of f and two derivatives
};

RadialProfile power_profile(double amplitude, double exponent);
// smooth bump supported in (r1, r2), amplitude A
RadialProfile bump_profile(double amplitude, double r1, double r2);

// g = (1 + f(r)) b. Requires tau > n/2.
MetricField trace_perturbation(int n, const RadialProfile& profile);

// Collar data  g = sinh^{-2} t (dt^2 + h_t),  h_t = h_0 + (t^n / n!) h + k.
// h and k are symmetric tensors on the hemisphere given in the angle
// coordinate basis (theta_2..theta_n). k carries a decay certificate:
// |k| + |grad k| + |grad^2 k| <= k_bound * t^{k_exponent}, k_exponent > n+1.
struct ConformallyCompactData {
  int dim = 0;
  double t_max = 0.15;
  std::function<Eigen::MatrixXd(const Eigen::VectorXd& angles)> h;
  std::function<Eigen::MatrixXd(double t, const Eigen::VectorXd& angles)> k;
  double k_exponent = 0.0;  // decay certificate exponent
  double k_bound = 0.0;

  void validate() const;  // symmetry + sampled remainder decay
};

// Rounded boundary data h = c * h_0.
ConformallyCompactData round_conformal_data(int n, double c);

// Sampled data file (n = 3 grids). See data/example_conformal_n3.dat for a
// worked example of the format.
ConformallyCompactData load_conformal_data(const std::string& path);

// Re-charts the collar metric to POLAR via sinh t = 1/r (exact for h = k = 0)
// so it flows through the same mass pipeline; tau = n.
MetricField conformally_compact(const ConformallyCompactData& data);

struct DiffeoSpec {
  VectorField zeta;          // contravariant chart components
  double decay = 0.0;        // |zeta|_b = O(r^{-decay})
  bool boundary_tangent = true;

  void validate(int n) const;  // sampled tangency + decay
};

// A decaying boundary-tangent field built from the azimuthal rotation and a
// polar bump, |zeta|_b ~ amplitude * r^{-decay}.
DiffeoSpec standard_diffeo(int n, double amplitude, double decay);

// Chart-component pullback of m under the time-1 b-geodesic flow along zeta
// (4th-order fixed-step integration, step 1e-2).
MetricField pushforward(const MetricField& m, const DiffeoSpec& spec);

// The flow map itself (exposed for tests).
ChartPoint exp_flow(const ChartPoint& p, const VectorField& zeta, double step = 1e-2);

}  // namespace hypmass
