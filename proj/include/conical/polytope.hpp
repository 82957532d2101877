#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "conical/design.hpp"

namespace conical {

/// An m x m rank-(d^2 - 1) projector with zero row sums, constant diagonal
/// (d^2 - 1)/m and off-diagonal entries bounded by the diagonal: the Gram
/// shape of a homogeneous conical design.
class DesignProjector {
 public:
  int m() const { return m_; }
  int dim() const { return d_; }
  const RMatrix& matrix() const { return mat_; }

  friend DesignProjector validate_projector(const RMatrix& p, int d, double tol);

 private:
  DesignProjector(int m, int d, RMatrix mat) : m_(m), d_(d), mat_(std::move(mat)) {}
  int m_;
  int d_;
  RMatrix mat_;
};

/// Checks idempotence, rank, zero row sums, constant diagonal and the
/// off-diagonal bound; throws InvalidProjectorError with the list of violated
/// conditions otherwise.
DesignProjector validate_projector(const RMatrix& p, int d, double tol = kDefaultTol);

/// I_m - J/m: the single-simplex Gram shape (valid in P_m iff m = d^2).
RMatrix centering_projector(int m);
/// Direct sum of d+1 blocks I_d - J_d/d: the full-MUM Gram shape.
RMatrix mub_block_projector(int d);

/// Bloch Gram matrix of a verified homogeneous design, split as lambda * P
/// with P validated in P_m.  lambda is the mean non-zero Gram eigenvalue and
/// satisfies lambda <= m d/(d+1); kappa = sqrt(lambda (d+1)/(m d)).
std::pair<double, DesignProjector> gram_projector(const ConicalDesign& design);

struct OneDesignCheck {
  bool ok = false;
  double lambda = 0.0;          // fitted frame constant
  double norm_spread = 0.0;     // max deviation from the common Bloch norm
  double sum_residual = 0.0;    // || sum_j B_j ||, relative
  double frame_residual = 0.0;  // distance of sum |B><B| from lambda * Pi_B
};

/// Theorem-4 check: equal norms, zero sum and the frame condition.  True iff
/// (t/d)(I + B_j) verifies as a homogeneous conical design for any t > 0.
OneDesignCheck verify_bloch_one_design(const std::vector<BlochVector>& vectors, double tol = kDefaultTol);

struct SearchConfig {
  int restarts = 32;
  int max_iters = 500;
  std::uint64_t seed = 7;
  double step0 = 0.1;
  int threads = 0;                  // 0: hardware concurrency
  double softmin_temperature = 0.0; // 0: hard lowest-index subgradient
};

struct RestartTrace {
  int restart_index = 0;
  std::uint64_t seed = 0;
  int iterations_run = 0;
  double best_kappa = 0.0;
  std::vector<std::pair<int, double>> improvements;  // (iteration, best kappa so far)
};

struct SearchResult {
  double best_kappa = 0.0;  // certified lower bound on c_P
  double floor = 0.0;       // 1/(d-1)
  std::vector<BlochVector> witness;
  double witness_gram_residual = 0.0;
  int restarts_run = 0;
  std::uint64_t seed = 0;
  std::vector<RestartTrace> iterations;
};

/// Maximizes min_j kappa_max_direction(B_j(O)) over orthogonal rotations O of
/// the trace-zero subspace by subgradient ascent with polar retraction and
/// seeded random restarts.  Reports a lower bound on c_P, never c_P itself.
SearchResult cp_search(const DesignProjector& p, const SearchConfig& config = SearchConfig{});

/// The search objective min_j kappa_max_direction(B_j(O)) at a fixed
/// orthogonal transformation O of the trace-zero subspace.
double search_objective(const DesignProjector& p, const RMatrix& o);

}  // namespace conical
