// Pipeline orchestration: build the configured metric, run the selected
// verification suites, emit the report. The individual suites are exposed so
// the acceptance harness can drive them with pinned parameters.
#pragma once

#include <string>

#include "hypmass/config.hpp"
#include "hypmass/engine.hpp"
#include "hypmass/report.hpp"

namespace hypmass {

// Metric from the config selector (reference, ads_schwarzschild,
// trace_perturbation, conformally_compact).
MetricField build_metric(const RunConfig& cfg);

// Max pointwise residual of U(V, L_X b) = div_b V over `count` random smooth
// fields and all basis potentials.
double exactness_suite(int n, int count, unsigned seed);

struct ExpansionSlope {
  double slope = 0.0;       // log-log slope of the mean residual
  double min_slope = 0.0;   // per-point extremes
  double max_slope = 0.0;
};

// Quadratic-remainder slope of |V(R_{b+eps e} + n(n-1)) - div U(V, eps e)|
// over eps in {1e-1, 3e-2, 1e-2, 3e-3, 1e-3}.
ExpansionSlope expansion_suite(int n, unsigned seed);

struct SpinSuite {
  double clifford_residual = 0.0;     // algebra invariants
  double max_killing_residual = 0.0;  // over the basis specs, both signs
  double max_vphi_residual = 0.0;     // pointwise squared-norm identity
  double max_roundtrip_residual = 0.0;  // null-cone inverse
  double max_pairing_residual = 0.0;  // <c(nu) Psi, Psi> on eigenspaces
  int basis_count = 0;                // independent Killing specs found
  int expected_count = 0;             // working fiber rank
  bool eigenspace_dims_ok = false;    // each chirality eigenspace = rank/2
  double min_lorentz_norm = 0.0;      // of v_phi over random chirality specs
};

SpinSuite spin_suite(int n, unsigned seed);

struct InvarianceSuite {
  Eigen::VectorXd base;        // P of the metric
  Eigen::VectorXd transformed; // P of the boosted + transported chart
  Eigen::VectorXd expected;    // Lorentz image of the base vector
  double max_component_error = 0.0;  // relative to |expected|_inf
  double norm_error = 0.0;           // relative Lorentz-norm change
};

InvarianceSuite invariance_suite(const MetricField& m, double rapidity, int resolution,
                                 const std::vector<double>& radii, const EngineConfig& cfg);

// Full configured run; writes report files into cfg.out_dir and returns the
// result. Exit status for the CLI: 0 iff result.ok.
RunResult run(const RunConfig& cfg);

}  // namespace hypmass
