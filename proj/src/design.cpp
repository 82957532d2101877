#include "conical/design.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <sstream>
#include <unsupported/Eigen/KroneckerProduct>

namespace conical {

ConicalDesign::ConicalDesign(int dim, std::vector<HermitianOperator> elements)
    : dim_(dim), elements_(std::move(elements)) {
  if (dim < 2) throw DimensionError("ConicalDesign: dim must be >= 2");
  if (elements_.empty()) throw DomainError("ConicalDesign: family must be non-empty");
  for (std::size_t j = 0; j < elements_.size(); ++j) {
    const auto& a = elements_[j];
    if (a.dim() != dim) {
      std::ostringstream os;
      os << "ConicalDesign: element " << j << " has dim " << a.dim() << ", expected " << dim;
      throw DimensionError(os.str());
    }
    if (a.norm() <= herm_tol(1.0)) {
      std::ostringstream os;
      os << "ConicalDesign: element " << j << " is zero";
      throw DomainError(os.str());
    }
    if (!is_psd(a)) {
      std::ostringstream os;
      os << "ConicalDesign: element " << j << " is not positive semi-definite (min eigenvalue "
         << min_eigenvalue(a) << ")";
      throw DomainError(os.str());
    }
  }
}

std::vector<std::pair<double, BlochVector>> ConicalDesign::bloch() const {
  std::vector<std::pair<double, BlochVector>> out;
  out.reserve(elements_.size());
  for (const auto& a : elements_) out.push_back(to_bloch(a));
  return out;
}

namespace {

struct Fit2 {
  double c1 = 0.0;
  double c2 = 0.0;
  double residual = 0.0;
};

// Least-squares fit of s onto span{x1, x2}; x1, x2 self-adjoint and linearly
// independent, so the 2x2 normal equations are real and well conditioned.
Fit2 lsq_fit2(const CMatrix& s, const CMatrix& x1, const CMatrix& x2) {
  const double g11 = x1.cwiseProduct(x1.conjugate()).sum().real();
  const double g12 = x1.cwiseProduct(x2.conjugate()).sum().real();
  const double g22 = x2.cwiseProduct(x2.conjugate()).sum().real();
  const double b1 = s.cwiseProduct(x1.conjugate()).sum().real();
  const double b2 = s.cwiseProduct(x2.conjugate()).sum().real();
  const double det = g11 * g22 - g12 * g12;
  Fit2 fit;
  fit.c1 = (g22 * b1 - g12 * b2) / det;
  fit.c2 = (g11 * b2 - g12 * b1) / det;
  fit.residual = rel_residual(s, fit.c1 * x1 + fit.c2 * x2);
  return fit;
}

DesignParameters derive_parameters(const ConicalDesign& design) {
  DesignParameters p;
  const int m = design.size();
  double sum_t2 = 0.0;
  double sum_t2k2 = 0.0;
  p.per_element.reserve(design.elements().size());
  for (const auto& [tj, bj] : design.bloch()) {
    const double kj = bloch_norm(bj);
    p.per_element.emplace_back(tj, kj);
    sum_t2 += tj * tj;
    sum_t2k2 += tj * tj * kj * kj;
  }
  const int d = design.dim();
  p.t = std::sqrt(sum_t2 / m);
  p.kappa = std::sqrt(sum_t2k2 / sum_t2);
  const double mt2 = sum_t2;
  p.k_s = mt2 / (d * d) * (1.0 + (d - 1.0) * p.kappa * p.kappa / (d + 1.0));
  p.k_a = mt2 * (1.0 - p.kappa * p.kappa) / (d * d);
  p.k_plus = 0.5 * (p.k_s + p.k_a);
  p.k_minus = 0.5 * (p.k_s - p.k_a);
  return p;
}

}  // namespace

VerificationReport verify(const ConicalDesign& design, double tol, int unitary_samples, std::uint64_t seed) {
  if (tol <= 0.0) throw DomainError("verify: tol must be positive");
  const int d = design.dim();
  const int m = design.size();
  const int d2 = d * d;

  VerificationReport rep;
  rep.tol = tol;
  rep.cardinality_ok = m >= d2;

  // Condition (ii): sum A (x) A against the symmetric/antisymmetric split.
  CMatrix s2 = CMatrix::Zero(d2, d2);
  for (const auto& a : design.elements()) s2 += Eigen::kroneckerProduct(a.mat(), a.mat()).eval();
  const auto proj = sym_asym_projectors(d);
  {
    const double tr_sym = proj.sym.mat().trace().real();
    const double tr_asym = proj.asym.mat().trace().real();
    rep.k_s = s2.cwiseProduct(proj.sym.mat().conjugate()).sum().real() / tr_sym;
    rep.k_a = s2.cwiseProduct(proj.asym.mat().conjugate()).sum().real() / tr_asym;
    rep.cond_ii = rel_residual(s2, rep.k_s * proj.sym.mat() + rep.k_a * proj.asym.mat());
  }

  // Condition (iii): the partial transpose against k+ I + d k- |Phi+><Phi+|.
  {
    const CMatrix s3 = partial_transpose(BipartiteOperator(d, s2)).mat();
    const Fit2 fit = lsq_fit2(s3, CMatrix::Identity(d2, d2), proj.phi_plus.mat());
    rep.cond_iii = fit.residual;
  }

  // Conditions (iv) and (v): superoperator forms on vectorized operators.
  const HermitianOperator identity(CMatrix::Identity(d, d));
  const CMatrix ii = ketbra_superop(identity, identity);
  {
    CMatrix s4 = CMatrix::Zero(d2, d2);
    for (const auto& a : design.elements()) {
      const CVector va = vectorize(a.mat());
      const CVector vc = vectorize(a.mat().conjugate());
      s4 += va * vc.adjoint();
    }
    rep.cond_iv = lsq_fit2(s4, ii, transpose_superop(d)).residual;
  }
  {
    CMatrix s5 = CMatrix::Zero(d2, d2);
    for (const auto& a : design.elements()) {
      const CVector va = vectorize(a.mat());
      s5 += va * va.adjoint();
    }
    const Fit2 fit = lsq_fit2(s5, ii, CMatrix::Identity(d2, d2));
    rep.k_plus = fit.c1;
    rep.k_minus = fit.c2;
    rep.cond_v = fit.residual;
  }

  // Spanning: numerical rank of the Gram matrix of the family.
  {
    RMatrix gram(m, m);
    for (int j = 0; j < m; ++j)
      for (int k = j; k < m; ++k) gram(j, k) = gram(k, j) = hs_inner(design[j], design[k]);
    Eigen::SelfAdjointEigenSolver<RMatrix> solver(gram, Eigen::EigenvaluesOnly);
    const double lam_max = solver.eigenvalues()(m - 1);
    const double threshold = tol * std::max(1.0, lam_max);
    int rank = 0;
    for (int j = 0; j < m; ++j)
      if (solver.eigenvalues()(j) > threshold) ++rank;
    rep.spanning = rank == d2;
  }

  // Condition (i), sampled: commutators with seeded Haar unitaries.
  rep.unitary_samples = unitary_samples;
  if (unitary_samples > 0) {
    Rng rng(splitmix64(seed));
    const double scale = std::max(1.0, s2.norm());
    double worst = 0.0;
    for (int s = 0; s < unitary_samples; ++s) {
      const CMatrix u = haar_unitary(d, rng);
      const CMatrix uu = Eigen::kroneckerProduct(u, u).eval();
      worst = std::max(worst, (s2 * uu - uu * s2).norm() / scale);
    }
    rep.cond_i_sampled = worst;
  }

  rep.is_design = rep.cond_ii_pass() && rep.cond_iii_pass() && rep.cond_iv_pass() && rep.cond_v_pass() &&
                  rep.k_minus > tol && rep.cardinality_ok && rep.spanning;
  if (rep.is_design) rep.parameters = derive_parameters(design);
  return rep;
}

namespace {

DesignParameters require_design(const ConicalDesign& design) {
  const VerificationReport rep = verify(design, kDefaultTol, 0);
  if (!rep.is_design) {
    std::ostringstream os;
    os << "not a conical design (residuals ii-v: " << rep.cond_ii << ", " << rep.cond_iii << ", "
       << rep.cond_iv << ", " << rep.cond_v << "; k_minus " << rep.k_minus << "; m " << design.size()
       << ")";
    throw NotADesignError(os.str());
  }
  return *rep.parameters;
}

}  // namespace

DesignParameters parameters(const ConicalDesign& design) { return require_design(design); }

Expansion expand_operator(const ConicalDesign& design, const HermitianOperator& op) {
  if (op.dim() != design.dim()) throw DimensionError("expand_operator: dimension mismatch");
  const DesignParameters p = require_design(design);
  const int d = design.dim();
  const double tr_op = op.trace();
  Expansion ex;
  ex.unique = design.size() == d * d;
  ex.coefficients.reserve(design.elements().size());
  for (const auto& a : design.elements())
    ex.coefficients.push_back(
        (hs_inner(a, op) - p.k_plus * a.trace() * tr_op / (d * p.k_plus + p.k_minus)) / p.k_minus);
  return ex;
}

ConicalDesign induced_povm(const ConicalDesign& design) {
  const DesignParameters p = require_design(design);
  const int d = design.dim();
  const double mt2 = design.size() * p.t * p.t;
  std::vector<HermitianOperator> effects;
  effects.reserve(design.elements().size());
  CMatrix total = CMatrix::Zero(d, d);
  for (const auto& a : design.elements()) {
    effects.emplace_back(d * a.trace() / mt2 * a.mat());
    total += effects.back().mat();
  }
  if (rel_residual(total, CMatrix::Identity(d, d)) > 1e-6)
    throw NumericalError("induced_povm: effects do not sum to the identity");
  return ConicalDesign(d, std::move(effects));
}

Classification classify(const ConicalDesign& design, double tol) {
  const DesignParameters p = require_design(design);
  const int d = design.dim();
  const int m = design.size();

  Classification c;
  c.t = p.t;
  c.kappa = p.kappa;

  double t_spread = 0.0;
  double k_spread = 0.0;
  for (const auto& [tj, kj] : p.per_element) {
    t_spread = std::max(t_spread, std::abs(tj - p.t));
    k_spread = std::max(k_spread, std::abs(kj - p.kappa));
  }
  c.homogeneous = t_spread <= tol * std::max(1.0, p.t) && k_spread <= tol;
  c.weighted_projective = p.k_a <= tol * std::max(1.0, p.k_s);
  c.projective = c.homogeneous && std::abs(p.t - 1.0) <= tol && std::abs(p.kappa - 1.0) <= tol;

  CMatrix total = CMatrix::Zero(d, d);
  for (const auto& a : design.elements()) total += a.mat();
  c.povm_residual = rel_residual(total, CMatrix::Identity(d, d));
  c.is_povm = c.povm_residual <= tol;

  RMatrix gram(m, m);
  for (int j = 0; j < m; ++j)
    for (int k = j; k < m; ++k) gram(j, k) = gram(k, j) = hs_inner(design[j], design[k]);

  // SIM overlap law for a cardinality-d^2 POVM.
  if (m == d * d) {
    const double k2 = p.kappa * p.kappa;
    const double denom = static_cast<double>(d) * d * d * (d + 1);
    double worst = 0.0;
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        const double expected = ((j == k ? d * d * k2 : 0.0) + d + 1 - k2) / denom;
        worst = std::max(worst, std::abs(gram(j, k) - expected));
      }
    c.sim_residual = worst;
    c.sim = c.is_povm && c.homogeneous && worst <= tol;
  } else {
    c.sim_residual = -1.0;
  }

  // Grouped unbiasedness over contiguous blocks of size d.
  if (m % d == 0 && m / d >= 2) {
    const double k2 = p.kappa * p.kappa;
    double worst = 0.0;
    for (int b = 0; b < m / d; ++b) {
      CMatrix block_sum = CMatrix::Zero(d, d);
      for (int j = 0; j < d; ++j) block_sum += design[b * d + j].mat();
      worst = std::max(worst, rel_residual(block_sum, CMatrix::Identity(d, d)));
    }
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        const double expected = (j / d == k / d) ? ((j == k ? k2 : 0.0) + (1.0 - k2) / d) : 1.0 / d;
        worst = std::max(worst, std::abs(gram(j, k) - expected));
      }
    c.mum_residual = worst;
    c.mum_compatible = worst <= tol;
  } else {
    c.mum_residual = -1.0;
  }
  return c;
}

double structural_transpose_check(const std::vector<CVector>& sic_kets, double tol, int samples,
                                  std::uint64_t seed) {
  if (sic_kets.empty()) throw DomainError("structural_transpose_check: empty ket list");
  const int d = static_cast<int>(sic_kets.front().size());
  if (d < 2) throw DimensionError("structural_transpose_check: kets must have dim >= 2");
  if (static_cast<int>(sic_kets.size()) != d * d)
    throw DomainError("structural_transpose_check: a SIC needs exactly d^2 kets");
  for (const auto& k : sic_kets) {
    if (static_cast<int>(k.size()) != d) throw DimensionError("structural_transpose_check: ragged kets");
    if (std::abs(k.norm() - 1.0) > tol * 10) throw DomainError("structural_transpose_check: kets must be unit");
  }
  const double target = 1.0 / (d + 1.0);
  for (std::size_t j = 0; j < sic_kets.size(); ++j)
    for (std::size_t k = j + 1; k < sic_kets.size(); ++k) {
      const double ov = std::norm(sic_kets[j].dot(sic_kets[k]));
      if (std::abs(ov - target) > std::max(tol, 1e-9)) {
        std::ostringstream os;
        os << "structural_transpose_check: |<psi_" << j << "|psi_" << k << ">|^2 = " << ov
           << " differs from 1/(d+1) = " << target;
        throw DomainError(os.str());
      }
    }

  const HermitianOperator identity(CMatrix::Identity(d, d));
  const CMatrix t_tilde = (ketbra_superop(identity, identity) + transpose_superop(d)) / (d + 1.0);
  const SuperoperatorMatrix t_superop(d, t_tilde);

  std::vector<CMatrix> kraus;
  kraus.reserve(sic_kets.size());
  for (const auto& psi : sic_kets) kraus.push_back(psi * psi.transpose() / std::sqrt(static_cast<double>(d)));

  Rng rng(splitmix64(seed));
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const HermitianOperator a = random_hermitian(d, rng);
    const CMatrix lhs = t_superop.apply(a.mat());
    CMatrix rhs = CMatrix::Zero(d, d);
    for (const auto& b : kraus) rhs += b * a.mat() * b.adjoint();
    worst = std::max(worst, (lhs - rhs).norm() / a.norm());
  }
  return worst;
}

}  // namespace conical
