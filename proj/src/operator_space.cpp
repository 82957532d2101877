#include "conical/operator_space.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

namespace conical {

double rel_residual(const CMatrix& a, const CMatrix& target) {
  return (a - target).norm() / std::max(1.0, target.norm());
}

double rel_residual(const RMatrix& a, const RMatrix& target) {
  return (a - target).norm() / std::max(1.0, target.norm());
}

namespace {

CMatrix symmetrized(CMatrix m, const char* what) {
  if (m.rows() != m.cols()) {
    std::ostringstream os;
    os << what << ": matrix is " << m.rows() << "x" << m.cols() << ", expected square";
    throw DimensionError(os.str());
  }
  const double asym = (m - m.adjoint()).norm();
  if (asym > herm_tol(m.norm())) {
    std::ostringstream os;
    os << what << ": not self-adjoint, ||M - M*|| = " << asym;
    throw DomainError(os.str());
  }
  return 0.5 * (m + m.adjoint().eval());
}

}  // namespace

HermitianOperator::HermitianOperator(CMatrix m) : mat_(symmetrized(std::move(m), "HermitianOperator")) {
  if (mat_.rows() < 2) throw DimensionError("HermitianOperator: dim must be >= 2");
}

BipartiteOperator::BipartiteOperator(int dim, CMatrix m)
    : dim_(dim), mat_(symmetrized(std::move(m), "BipartiteOperator")) {
  if (dim < 2) throw DimensionError("BipartiteOperator: dim must be >= 2");
  if (mat_.rows() != static_cast<Eigen::Index>(dim) * dim)
    throw DimensionError("BipartiteOperator: matrix size does not match dim^2");
}

SuperoperatorMatrix::SuperoperatorMatrix(int dim, CMatrix m) : dim_(dim), mat_(std::move(m)) {
  if (dim < 2) throw DimensionError("SuperoperatorMatrix: dim must be >= 2");
  if (mat_.rows() != mat_.cols() || mat_.rows() != static_cast<Eigen::Index>(dim) * dim)
    throw DimensionError("SuperoperatorMatrix: matrix size does not match dim^2");
}

CMatrix SuperoperatorMatrix::apply(const CMatrix& operand) const {
  if (operand.rows() != dim_ || operand.cols() != dim_)
    throw DimensionError("SuperoperatorMatrix::apply: operand dimension mismatch");
  return devectorize(mat_ * vectorize(operand), dim_);
}

HermitianOperator SuperoperatorMatrix::apply(const HermitianOperator& operand) const {
  return HermitianOperator(apply(operand.mat()));
}

bool SuperoperatorMatrix::maps_hermitian_to_hermitian(double tol) const {
  auto check = [&](const CMatrix& h) {
    const CMatrix out = apply(h);
    return (out - out.adjoint()).norm() <= tol * std::max(1.0, out.norm());
  };
  if (!check(CMatrix::Identity(dim_, dim_))) return false;
  for (const auto& b : gell_mann_basis(dim_))
    if (!check(b.mat())) return false;
  return true;
}

CVector vectorize(const CMatrix& m) {
  const int d = static_cast<int>(m.rows());
  CVector v(d * d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) v(d * j + k) = m(j, k);
  return v;
}

CMatrix devectorize(const CVector& v, int d) {
  CMatrix m(d, d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) m(j, k) = v(d * j + k);
  return m;
}

double hs_inner(const HermitianOperator& a, const HermitianOperator& b) {
  if (a.dim() != b.dim()) throw DimensionError("hs_inner: dimension mismatch");
  // Tr(ab) = sum_jk a_jk conj(b_jk) for self-adjoint b.
  return a.mat().cwiseProduct(b.mat().conjugate()).sum().real();
}

std::vector<HermitianOperator> gell_mann_basis(int d) {
  if (d < 2) throw DimensionError("gell_mann_basis: d must be >= 2");
  std::vector<HermitianOperator> basis;
  basis.reserve(d * d - 1);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      CMatrix m = CMatrix::Zero(d, d);
      m(j, k) = inv_sqrt2;
      m(k, j) = inv_sqrt2;
      basis.emplace_back(std::move(m));
    }
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      CMatrix m = CMatrix::Zero(d, d);
      m(j, k) = Complex(0.0, -inv_sqrt2);
      m(k, j) = Complex(0.0, inv_sqrt2);
      basis.emplace_back(std::move(m));
    }
  for (int l = 1; l < d; ++l) {
    CMatrix m = CMatrix::Zero(d, d);
    const double s = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
    for (int j = 0; j < l; ++j) m(j, j) = s;
    m(l, l) = -s * l;
    basis.emplace_back(std::move(m));
  }
  return basis;
}

double min_eigenvalue(const HermitianOperator& a) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(a.mat(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("min_eigenvalue: eigensolver failed");
  return solver.eigenvalues()(0);
}

bool is_psd(const HermitianOperator& a, double tol) {
  return min_eigenvalue(a) >= -tol * std::max(1.0, a.norm());
}

SymAsymProjectors sym_asym_projectors(int d) {
  if (d < 2) throw DimensionError("sym_asym_projectors: d must be >= 2");
  const int n = d * d;
  CMatrix w = CMatrix::Zero(n, n);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) w(d * k + j, d * j + k) = 1.0;
  const CMatrix id = CMatrix::Identity(n, n);
  CVector phi = CVector::Zero(n);
  for (int j = 0; j < d; ++j) phi(d * j + j) = 1.0 / std::sqrt(static_cast<double>(d));
  return SymAsymProjectors{BipartiteOperator(d, 0.5 * (id + w)), BipartiteOperator(d, 0.5 * (id - w)),
                           BipartiteOperator(d, w), BipartiteOperator(d, phi * phi.adjoint())};
}

BipartiteOperator partial_transpose(const BipartiteOperator& x) {
  const int d = x.dim();
  CMatrix out(d * d, d * d);
  for (int j1 = 0; j1 < d; ++j1)
    for (int j2 = 0; j2 < d; ++j2)
      for (int k1 = 0; k1 < d; ++k1)
        for (int k2 = 0; k2 < d; ++k2) out(d * j1 + k2, d * k1 + j2) = x.mat()(d * j1 + j2, d * k1 + k2);
  return BipartiteOperator(d, std::move(out));
}

HermitianOperator conjugate(const HermitianOperator& a) { return HermitianOperator(a.mat().conjugate()); }

SuperoperatorMatrix choi_inverse(const BipartiteOperator& x) {
  const int d = x.dim();
  // J(L) = (1/d) sum_jk L(|e_j><e_k|) (x) |e_j><e_k|, so the column of the
  // inverse at basis index d*j+k reads off the (j,k) block of the second
  // factor, scaled by d.
  CMatrix s(d * d, d * d);
  for (int p = 0; p < d; ++p)
    for (int q = 0; q < d; ++q)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k)
          s(d * p + q, d * j + k) = static_cast<double>(d) * x.mat()(d * p + j, d * q + k);
  return SuperoperatorMatrix(d, std::move(s));
}

CMatrix ketbra_superop(const HermitianOperator& a, const HermitianOperator& b) {
  if (a.dim() != b.dim()) throw DimensionError("ketbra_superop: dimension mismatch");
  const CVector va = vectorize(a.mat());
  const CVector vb = vectorize(b.mat());
  return va * vb.adjoint();
}

CMatrix transpose_superop(int d) {
  CMatrix t = CMatrix::Zero(d * d, d * d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) t(d * k + j, d * j + k) = 1.0;
  return t;
}

CMatrix haar_unitary(int d, Rng& rng) {
  CMatrix g(d, d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) g(j, k) = Complex(rng.gaussian(), rng.gaussian());
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    const Complex rjj = r(j, j);
    const double m = std::abs(rjj);
    q.col(j) *= (m > 0.0) ? rjj / m : Complex(1.0, 0.0);
  }
  return q;
}

HermitianOperator random_hermitian(int d, Rng& rng) {
  CMatrix g(d, d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) g(j, k) = Complex(rng.gaussian(), rng.gaussian());
  return HermitianOperator(0.5 * (g + g.adjoint().eval()));
}

RMatrix random_orthogonal(int n, Rng& rng) {
  RMatrix g(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) g(j, k) = rng.gaussian();
  Eigen::HouseholderQR<RMatrix> qr(g);
  RMatrix q = qr.householderQ();
  const RMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j)
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  return q;
}

}  // namespace conical
