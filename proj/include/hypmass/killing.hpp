// Explicit imaginary Killing spinors on the half-disk model, the Killing
// equation residual with a numerically assembled spin connection, the
// squared-norm map onto static potentials, and its inverse on the future
// null cone.
//
// Components are always taken in the conformal orthonormal frame
// f_i = omega d/dx_i; the conformal bundle identification is the identity on
// component vectors. With the conventions of this module (gamma gamma +
// gamma gamma = -2 delta, spinor derivative d + (1/4) w_ab gamma_a gamma_b),
// the family phi_{u,s} = omega^{-1/2} (1 + s i c(x)) u is parallel for
// d/dX - s (i/2) c(X); a KillingSpec's sign labels the family member and
// killing_residual applies the matching connection.
#pragma once

#include <Eigen/Dense>

#include "hypmass/chart.hpp"
#include "hypmass/clifford.hpp"
#include "hypmass/potentials.hpp"

namespace hypmass {

struct KillingSpec {
  CVector u;       // constant spinor on the underlying fiber
  CVector v;       // second factor for odd n (empty for even n)
  int sign = +1;   // family label (+/-)
  int chirality = +1;  // boundary chirality class the spec belongs to
};

// phi_{u,s}(x') in working-fiber components at a BALL chart point.
CVector killing_spinor_eval(const CliffordRep& rep, const KillingSpec& spec,
                            const ChartPoint& p);

// Connection 1-forms of the conformal frame, w(k, a, b) = <grad_{f_k} f_a,
// f_b>, assembled numerically from the chart Christoffel symbols.
Tensor3 conformal_connection_forms(const ChartPoint& p);

// |grad_{f_k} phi - s (i/2) c(f_k) phi| at p for the frame direction k.
double killing_residual(const CliffordRep& rep, const KillingSpec& spec, const ChartPoint& p,
                        int direction);

// The maximal linearly independent family: one spec per boundary-chirality
// basis element (both chirality classes), count = working fiber rank.
std::vector<KillingSpec> basis_killing_specs(const CliffordRep& rep);

// Coefficients of <Phi, Phi> in the basis {V_(a)}:
// z_0 = 2(|u|^2 + |v|^2), z_j = 2 s (u* i gamma_j u - v* i gamma_j v).
// Requires the x_n-component to vanish (chirality-compatible data).
StaticPotential v_phi(const CliffordRep& rep, const KillingSpec& spec);

// The x_n-component diagnostic s * 2(u* i gamma_n u - v* i gamma_n v); zero
// for chirality-compatible specs.
double v_phi_normal_component(const CliffordRep& rep, const KillingSpec& spec);

// Inverse of v_phi on the future null cone: a spec with v_phi(spec) = V to
// 1e-8, deterministic normalization. Requires <<V,V>> = 0 within tolerance
// and <<V, V_(0)>> >= 0.
KillingSpec null_cone_inverse(const CliffordRep& rep, const StaticPotential& V);

}  // namespace hypmass
