#include "hypmass/clifford.hpp"

#include <cmath>

namespace hypmass {

namespace {

using namespace std::complex_literals;

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMatrix pauli(int which) {
  CMatrix m(2, 2);
  switch (which) {
    case 1: m << 0, 1, 1, 0; break;                  // sigma_x
    case 2: m << 0, -1.0i, 1.0i, 0; break;           // sigma_y
    default: m << 1, 0, 0, -1; break;                // sigma_z
  }
  return m;
}

// Hermitian generators S_1..S_m with S_i S_j + S_j S_i = 2 delta on rank 2^k.
std::vector<CMatrix> hermitian_generators(int k, int m) {
  std::vector<CMatrix> out;
  const CMatrix id2 = CMatrix::Identity(2, 2);
  for (int a = 1; a <= k; ++a) {
    for (int which : {1, 2}) {
      CMatrix s = CMatrix::Identity(1, 1);
      for (int b = 1; b <= k; ++b) {
        if (b < a) s = kron(s, pauli(3));
        else if (b == a) s = kron(s, pauli(which));
        else s = kron(s, id2);
      }
      out.push_back(s);
      if (static_cast<int>(out.size()) == m) return out;
    }
  }
  // odd slot: sigma_z^{(x) k}
  CMatrix s = CMatrix::Identity(1, 1);
  for (int b = 0; b < k; ++b) s = kron(s, pauli(3));
  out.push_back(s);
  return out;
}

}  // namespace

CMatrix CliffordRep::action(int i) const {
  if (!doubled) return gamma[i];
  CMatrix out = CMatrix::Zero(rank, rank);
  out.topLeftCorner(rank_spin, rank_spin) = gamma[i];
  out.bottomRightCorner(rank_spin, rank_spin) = -gamma[i];
  return out;
}

CMatrix CliffordRep::action(const Eigen::VectorXd& x) const {
  CMatrix out = CMatrix::Zero(rank, rank);
  for (int i = 0; i < dim; ++i)
    if (x[i] != 0.0) out += x[i] * action(i);
  return out;
}

CliffordRep build_clifford(int n) {
  if (n < 3 || n > 8) fail("build_clifford: supported dimensions are 3..8");
  CliffordRep rep;
  rep.dim = n;
  rep.k = n / 2;
  rep.rank_spin = 1 << rep.k;
  rep.doubled = (n % 2 == 1);
  rep.rank = rep.doubled ? 2 * rep.rank_spin : rep.rank_spin;

  const std::vector<CMatrix> gens = hermitian_generators(rep.k, n);
  rep.gamma.reserve(n);
  for (int i = 0; i < n; ++i) rep.gamma.push_back(1.0i * gens[i]);

  if (!rep.doubled) {
    // complex volume element i^k gamma_1 ... gamma_n
    CMatrix q = CMatrix::Identity(rep.rank_spin, rep.rank_spin);
    for (int i = 0; i < n; ++i) q = q * rep.gamma[i];
    std::complex<double> phase = std::pow(std::complex<double>(0, 1), rep.k);
    rep.chirality = phase * q;
  } else {
    CMatrix q = CMatrix::Zero(rep.rank, rep.rank);
    q.topRightCorner(rep.rank_spin, rep.rank_spin) =
        CMatrix::Identity(rep.rank_spin, rep.rank_spin);
    q.bottomLeftCorner(rep.rank_spin, rep.rank_spin) =
        CMatrix::Identity(rep.rank_spin, rep.rank_spin);
    rep.chirality = q;
  }
  // boundary chirality: Q c(nu), nu the inward unit face normal (+e_n)
  rep.boundary_chirality_op = rep.chirality * rep.action(n - 1);
  return rep;
}

BoundaryChirality boundary_chirality(const CliffordRep& rep) {
  BoundaryChirality out;
  out.op = rep.boundary_chirality_op;
  const int r = rep.rank;
  out.p_plus = 0.5 * (CMatrix::Identity(r, r) + out.op);
  out.p_minus = 0.5 * (CMatrix::Identity(r, r) - out.op);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(out.op);
  std::vector<int> plus, minus;
  for (int i = 0; i < r; ++i)
    (es.eigenvalues()[i] > 0 ? plus : minus).push_back(i);
  out.basis_plus.resize(r, plus.size());
  out.basis_minus.resize(r, minus.size());
  for (size_t i = 0; i < plus.size(); ++i) out.basis_plus.col(i) = es.eigenvectors().col(plus[i]);
  for (size_t i = 0; i < minus.size(); ++i)
    out.basis_minus.col(i) = es.eigenvectors().col(minus[i]);
  return out;
}

double clifford_invariant_residual(const CliffordRep& rep) {
  const int n = rep.dim;
  double worst = 0.0;
  const CMatrix id = CMatrix::Identity(rep.rank, rep.rank);
  for (int i = 0; i < n; ++i) {
    const CMatrix gi = rep.action(i);
    worst = std::max(worst, (gi + gi.adjoint()).norm());  // skew-adjoint
    for (int j = 0; j < n; ++j) {
      const CMatrix gj = rep.action(j);
      CMatrix anti = gi * gj + gj * gi;
      if (i == j) anti += 2.0 * id;
      worst = std::max(worst, anti.norm());
    }
  }
  const CMatrix& q = rep.chirality;
  worst = std::max(worst, (q - q.adjoint()).norm());
  worst = std::max(worst, (q * q - id).norm());
  for (int i = 0; i < n; ++i)
    worst = std::max(worst, (q * rep.action(i) + rep.action(i) * q).norm());
  const CMatrix& bq = rep.boundary_chirality_op;
  worst = std::max(worst, (bq - bq.adjoint()).norm());
  worst = std::max(worst, (bq * bq - id).norm());
  return worst;
}

}  // namespace hypmass
