// Clifford algebra of R^n: gamma matrices (gamma_i gamma_j + gamma_j gamma_i
// = -2 delta, skew-adjoint), the working spinor bundle fiber (doubled for odd
// n with a block sign flip on the second factor), the chirality operator and
// the boundary chirality operator with its eigenprojections.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "hypmass/types.hpp"

namespace hypmass {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

struct CliffordRep {
  int dim = 0;        // n
  int k = 0;          // n = 2k or 2k+1
  int rank_spin = 0;  // 2^k, rank of the underlying spinor fiber
  bool doubled = false;  // odd n: working fiber is two copies
  int rank = 0;          // working fiber rank (2^k even, 2^{k+1} odd)

  std::vector<CMatrix> gamma;  // n matrices on the underlying fiber
  CMatrix chirality;           // Q on the working fiber
  CMatrix boundary_chirality_op;  // script-Q = Q c(nu), nu the inward face normal

  // Clifford action on the working fiber (block sign flip for odd n).
  CMatrix action(int i) const;
  // Clifford action of a vector with components x (underlying R^n).
  CMatrix action(const Eigen::VectorXd& x) const;
};

// Deterministic construction by iterated Pauli tensor products, 3 <= n <= 8.
CliffordRep build_clifford(int n);

struct BoundaryChirality {
  CMatrix op;        // script-Q, self-adjoint involution on the working fiber
  CMatrix p_plus;    // (Id + op)/2
  CMatrix p_minus;   // (Id - op)/2
  CMatrix basis_plus;   // orthonormal columns spanning the +1 eigenspace
  CMatrix basis_minus;  // -1 eigenspace
};

BoundaryChirality boundary_chirality(const CliffordRep& rep);

// max |gamma_i gamma_j + gamma_j gamma_i + 2 delta_ij| over all pairs, plus
// skew-adjointness and chirality-operator residuals; used by the invariants.
double clifford_invariant_residual(const CliffordRep& rep);

}  // namespace hypmass
