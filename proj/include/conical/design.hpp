#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "conical/bloch.hpp"
#include "conical/operator_space.hpp"

namespace conical {

/// Ordered family A_1 .. A_m of non-zero positive semi-definite operators.
/// Whether the family is actually a conical 2-design is a verification
/// outcome, not a construction precondition; only positivity, non-zero norm
/// and a common dimension are enforced here.
class ConicalDesign {
 public:
  ConicalDesign(int dim, std::vector<HermitianOperator> elements);

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(elements_.size()); }
  const std::vector<HermitianOperator>& elements() const { return elements_; }
  const HermitianOperator& operator[](int j) const { return elements_[static_cast<std::size_t>(j)]; }

  /// Bloch data (t_j, B_j) of every element.
  std::vector<std::pair<double, BlochVector>> bloch() const;

 private:
  int dim_;
  std::vector<HermitianOperator> elements_;
};

struct DesignParameters {
  double k_s = 0.0;
  double k_a = 0.0;
  double k_plus = 0.0;
  double k_minus = 0.0;
  double t = 0.0;      // rms trace
  double kappa = 0.0;  // weighted rms Bloch norm
  std::vector<std::pair<double, double>> per_element;  // (t_j, kappa_j)
};

struct VerificationReport {
  bool is_design = false;
  bool spanning = false;
  bool cardinality_ok = false;  // m >= d^2
  double tol = kDefaultTol;

  // Relative residuals of the four algebraic conditions plus the sampled
  // unitary-commutation check (advisory; -1 when no samples were drawn).
  double cond_ii = 0.0;
  double cond_iii = 0.0;
  double cond_iv = 0.0;
  double cond_v = 0.0;
  double cond_i_sampled = -1.0;
  int unitary_samples = 0;

  double k_s = 0.0;      // fitted from condition (ii)
  double k_a = 0.0;
  double k_plus = 0.0;   // fitted from condition (v)
  double k_minus = 0.0;

  std::optional<DesignParameters> parameters;

  bool cond_ii_pass() const { return cond_ii <= tol; }
  bool cond_iii_pass() const { return cond_iii <= tol; }
  bool cond_iv_pass() const { return cond_iv <= tol; }
  bool cond_v_pass() const { return cond_v <= tol; }
};

/// Checks all five Theorem-1 conditions.  Conditions (ii)-(v) are fitted by
/// least squares and authoritative; condition (i) is sampled over seeded
/// Haar-random unitaries and advisory.
VerificationReport verify(const ConicalDesign& design, double tol = kDefaultTol, int unitary_samples = 20,
                          std::uint64_t seed = 7);

/// Scalars of a verified design; throws NotADesignError otherwise.
DesignParameters parameters(const ConicalDesign& design);

struct Expansion {
  std::vector<double> coefficients;
  bool unique = false;  // m == d^2
};

/// Coefficients c_j with L = sum_j c_j A_j.
Expansion expand_operator(const ConicalDesign& design, const HermitianOperator& op);

/// The POVM E_j = d t_j A_j / (m t^2) induced by a verified design.
ConicalDesign induced_povm(const ConicalDesign& design);

struct Classification {
  bool homogeneous = false;         // constant trace and constant Bloch norm
  bool weighted_projective = false; // k_a = 0, i.e. all elements rank 1
  bool projective = false;          // homogeneous with t = kappa = 1
  bool is_povm = false;
  bool sim = false;                 // m = d^2 POVM matching the SIM overlap law
  bool mum_compatible = false;      // contiguous d-blocks form unbiased POVMs
  double povm_residual = 0.0;
  double sim_residual = 0.0;
  double mum_residual = 0.0;
  double t = 0.0;
  double kappa = 0.0;
};

/// Classifies a verified design.  The MUM check uses the caller-visible
/// ordering: contiguous blocks of size d.
Classification classify(const ConicalDesign& design, double tol = kDefaultTol);

/// Validates that the kets form a SIC, builds the structural transpose
/// approximation (|I>><<I| + T)/(d+1) and its SIC Kraus decomposition, and
/// returns the worst relative disagreement over a seeded Hermitian test set.
double structural_transpose_check(const std::vector<CVector>& sic_kets, double tol = kDefaultTol,
                                  int samples = 20, std::uint64_t seed = 11);

}  // namespace conical
