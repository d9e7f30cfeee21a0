// The mass pipeline: hemisphere flux and equator correction of the charge
// form at a radius, radius-extrapolation of the limit, the mass vector with
// its causal class, the Einstein/Newton-tensor alternate mass, and the
// empirical calibration of the dimensional ratio between the two.
#pragma once

#include <Eigen/Dense>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hypmass/charge.hpp"
#include "hypmass/metric.hpp"
#include "hypmass/potentials.hpp"
#include "hypmass/quadrature.hpp"

namespace hypmass {

struct EngineConfig {
  int workers = 1;
  FdConfig fd;
};

struct RadiusMass {
  double flux = 0.0;     // hemisphere integral of <U(V,e), mu>
  double equator = 0.0;  // equator integral of V e(eta, vartheta)
  double mass() const { return flux - equator; }
};

// Flux and equator correction at one radius for a single potential.
RadiusMass mass_at_radius(const MetricField& m, const StaticPotential& V,
                          const QuadratureRule& rule, const EngineConfig& cfg = {});

// Same for all n basis potentials at once (geometric node data shared).
std::vector<RadiusMass> mass_all_at_radius(const MetricField& m, const QuadratureRule& rule,
                                           const EngineConfig& cfg = {});

struct Extrapolation {
  double mass_inf = 0.0;
  double coefficient = 0.0;     // c in mass(r) = m_inf + c r^{-q}
  double exponent = 0.0;        // fitted q
  double max_residual = 0.0;
  double error_estimate = 0.0;  // max(fit residual, projected remaining tail)
  bool converged = true;        // false flags NON_CONVERGED (reported, not fatal)
  bool exponent_constrained = true;  // false when the tail is below noise
};

// Least-squares fit of mass(r) = m_inf + c r^{-q}; q initialized at q_init
// (2 tau - n when a decay claim exists) but optimized freely.
Extrapolation extrapolate_mass(const std::vector<std::pair<double, double>>& samples,
                               double q_init);

struct MassVectorResult {
  Eigen::VectorXd components;        // P_a
  Eigen::VectorXd error_estimates;   // per component
  Eigen::VectorXd exponents;
  std::vector<bool> converged;
  CausalClass causal = CausalClass::ZERO;
  double lorentz_norm = 0.0;         // <<P, P>>
};

struct MassReport {
  std::string metric;
  int dimension = 0;
  std::vector<double> radii;
  // indexed [a][j]: basis potential a, radius j
  std::vector<std::vector<double>> flux, equator, mass;
  MassVectorResult vec;
  std::optional<std::vector<std::vector<double>>> ricci_mass;  // [a][j]
  std::optional<double> d_n;
  std::map<std::string, double> residuals;
  std::string config_echo;
  DecayCheck decay;
};

// Full pipeline: per-radius table for every basis potential, extrapolation,
// causal classification. Radii must be increasing and >= radial_extent.
MassReport mass_vector(const MetricField& m, int resolution, const std::vector<double>& radii,
                       const EngineConfig& cfg = {});

// Einstein/Newton-tensor form at one radius for basis index a:
// integral over the hemisphere of Ghat_g(X_a, mu_g) dS_g plus the equator
// integral of J_g(X_a, vartheta_g) dS_g, with Ghat_g = G_g - (n-1)(n-2)/2 g,
// J_g = Pi_g - H_g g|_Sigma and X_a = grad_b V_(a). Returned without any
// dimensional prefactor.
double ricci_mass_at_radius(const MetricField& m, int a, const QuadratureRule& rule,
                            const EngineConfig& cfg = {});

// Max over hemisphere nodes of |Ghat_g| (Frobenius in the b-frame); vanishes
// identically for Einstein metrics.
double max_modified_einstein_norm(const MetricField& m, const QuadratureRule& rule,
                                  const EngineConfig& cfg = {});

struct DnCalibration {
  double d_n = 0.0;            // least-squares ratio charge/ricci
  double max_ratio_spread = 0.0;  // relative spread of per-entry ratios
  bool consistent = false;     // spread within 2%
  bool sign_flip = false;      // ratios of both signs observed
  std::vector<double> ratios;  // per (metric, radius) entries used
  std::string detail;
};

// Empirical ratio of charge-form to Ricci-form mass over a set of metrics
// and radii. Requires >= 2 metrics with nonzero charge mass.
DnCalibration calibrate_dn(const std::vector<MetricField>& zoo, int resolution,
                           const std::vector<double>& radii, const EngineConfig& cfg = {});

// Pullback of the metric components under the point action of an isometry
// (chart change F -> F o I): components(p) = J^T m(I p) J with J the chart
// Jacobian of the point map.
MetricField rechart_by_isometry(const MetricField& m, const IsometryElement& iso);

}  // namespace hypmass
