#pragma once

#include <utility>

#include "conical/operator_space.hpp"

namespace conical {

/// Trace-zero self-adjoint operator B; the state it represents is
/// (1/d)(I + B), and more generally A = (t/d)(I + B) for trace t.
class BlochVector {
 public:
  explicit BlochVector(HermitianOperator op);

  int dim() const { return op_.dim(); }
  const HermitianOperator& op() const { return op_; }
  const CMatrix& mat() const { return op_.mat(); }

 private:
  HermitianOperator op_;
};

enum class BodyMembership { Inside, Boundary, Outside };

std::pair<double, BlochVector> to_bloch(const HermitianOperator& rho);
HermitianOperator from_bloch(double t, const BlochVector& b);

/// Scaled norm ||B|| / sqrt(d(d-1)); equals 1 on Bloch vectors of pure states.
double bloch_norm(const BlochVector& b);

/// Classification of B against the positivity cone of (I + B)/d, with a
/// tolerance band on the boundary: design vertices intentionally sit on it.
BodyMembership body_membership(const BlochVector& b);

/// Largest kappa such that (I + kappa * b_hat)/d stays positive
/// semi-definite, for a unit-Bloch-norm direction; always in [1/(d-1), 1].
double kappa_max_direction(const BlochVector& b_hat);

}  // namespace conical
