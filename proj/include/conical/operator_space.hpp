#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "conical/errors.hpp"
#include "conical/rng.hpp"

namespace conical {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

// Hermiticity symmetrization band and PSD band; residuals of matrix
// identities are always Frobenius norms relative to max(1, ||target||_F).
inline constexpr double kHermTol = 1e-10;
inline constexpr double kPsdTol = 1e-9;
inline constexpr double kDefaultTol = 1e-9;

inline double herm_tol(double norm) { return kHermTol * std::max(1.0, norm); }

/// ||a - target||_F / max(1, ||target||_F)
double rel_residual(const CMatrix& a, const CMatrix& target);
double rel_residual(const RMatrix& a, const RMatrix& target);

/// A d x d self-adjoint operator.  Inputs are symmetrized ((M + M†)/2) on
/// construction when the asymmetry is within the Hermiticity band and
/// rejected otherwise, so eigensolvers always stay on the self-adjoint path.
class HermitianOperator {
 public:
  explicit HermitianOperator(CMatrix m);

  int dim() const { return static_cast<int>(mat_.rows()); }
  const CMatrix& mat() const { return mat_; }
  double trace() const { return mat_.trace().real(); }
  double norm() const { return mat_.norm(); }

 private:
  CMatrix mat_;
};

/// A self-adjoint operator on H (x) H with the fixed tensor index ordering
/// (j1, j2) -> d*j1 + j2 (first factor slow).
class BipartiteOperator {
 public:
  BipartiteOperator(int dim, CMatrix m);

  int dim() const { return dim_; }
  const CMatrix& mat() const { return mat_; }

 private:
  int dim_;
  CMatrix mat_;
};

/// A d^2 x d^2 matrix acting on vectorized operators, |e_j><e_k| -> d*j + k.
/// Not Hermitian in general; the Theorem-1 superoperators are required to map
/// Hermitian inputs to Hermitian outputs, which maps_hermitian_to_hermitian()
/// checks on a Hermitian basis.
class SuperoperatorMatrix {
 public:
  SuperoperatorMatrix(int dim, CMatrix m);

  int dim() const { return dim_; }
  const CMatrix& mat() const { return mat_; }

  CMatrix apply(const CMatrix& operand) const;
  HermitianOperator apply(const HermitianOperator& operand) const;
  bool maps_hermitian_to_hermitian(double tol = kHermTol) const;

 private:
  int dim_;
  CMatrix mat_;
};

/// Row-major vectorization: vec(|e_j><e_k|) has a 1 at index d*j + k.
CVector vectorize(const CMatrix& m);
CMatrix devectorize(const CVector& v, int d);

/// Hilbert-Schmidt inner product Tr(a b); real for self-adjoint arguments.
double hs_inner(const HermitianOperator& a, const HermitianOperator& b);

/// Orthonormal basis of the trace-zero subspace, ordered: symmetric
/// off-diagonal pairs, antisymmetric off-diagonal pairs, diagonal operators,
/// each group lexicographic in (row, column).  At d=2 this is the Pauli
/// basis scaled to unit Hilbert-Schmidt norm.
std::vector<HermitianOperator> gell_mann_basis(int d);

double min_eigenvalue(const HermitianOperator& a);
bool is_psd(const HermitianOperator& a, double tol = kPsdTol);

struct SymAsymProjectors {
  BipartiteOperator sym;       // (I + W)/2
  BipartiteOperator asym;      // (I - W)/2
  BipartiteOperator swap_w;    // W |psi (x) phi> = |phi (x) psi>
  BipartiteOperator phi_plus;  // projector onto (1/sqrt d) sum_j |e_j e_j>
};
SymAsymProjectors sym_asym_projectors(int d);

/// Transpose of the second tensor factor in the computational basis.
BipartiteOperator partial_transpose(const BipartiteOperator& x);

/// Entrywise complex conjugate in the computational basis.
HermitianOperator conjugate(const HermitianOperator& a);

/// Inverse of the Choi-Jamiolkowski isomorphism
/// J(L) = (1/d) sum_jk L(|e_j><e_k|) (x) |e_j><e_k|.
SuperoperatorMatrix choi_inverse(const BipartiteOperator& x);

/// Matrix of the rank-1 superoperator X -> a Tr(b X) on vectorized operators.
CMatrix ketbra_superop(const HermitianOperator& a, const HermitianOperator& b);
/// Matrix of the transpose superoperator |e_j><e_k| -> |e_k><e_j|.
CMatrix transpose_superop(int d);

// Seeded random test-data generators (deterministic per seed).
CMatrix haar_unitary(int d, Rng& rng);
HermitianOperator random_hermitian(int d, Rng& rng);
RMatrix random_orthogonal(int n, Rng& rng);

}  // namespace conical
