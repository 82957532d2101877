#include "conical/bloch.hpp"

#include <cmath>
#include <sstream>

namespace conical {

BlochVector::BlochVector(HermitianOperator op) : op_(std::move(op)) {
  const double tr = std::abs(op_.mat().trace().real());
  if (tr > kHermTol * std::max(1.0, op_.norm()) * op_.dim()) {
    std::ostringstream os;
    os << "BlochVector: trace " << tr << " is not zero";
    throw DomainError(os.str());
  }
}

std::pair<double, BlochVector> to_bloch(const HermitianOperator& rho) {
  const double t = rho.trace();
  if (t <= herm_tol(rho.norm())) throw ZeroTraceError("to_bloch: trace must be positive");
  const int d = rho.dim();
  CMatrix b = (d / t) * rho.mat() - CMatrix::Identity(d, d);
  return {t, BlochVector(HermitianOperator(std::move(b)))};
}

HermitianOperator from_bloch(double t, const BlochVector& b) {
  if (t <= 0.0) throw DomainError("from_bloch: trace must be positive");
  const int d = b.dim();
  return HermitianOperator((t / d) * (CMatrix::Identity(d, d) + b.mat()));
}

double bloch_norm(const BlochVector& b) {
  const int d = b.dim();
  return b.mat().norm() / std::sqrt(static_cast<double>(d) * (d - 1));
}

BodyMembership body_membership(const BlochVector& b) {
  const int d = b.dim();
  const HermitianOperator shifted(CMatrix::Identity(d, d) + b.mat());
  const double lam = min_eigenvalue(shifted);
  const double band = kPsdTol * std::max(1.0, shifted.norm());
  if (lam > band) return BodyMembership::Inside;
  if (lam >= -band) return BodyMembership::Boundary;
  return BodyMembership::Outside;
}

double kappa_max_direction(const BlochVector& b_hat) {
  const double nrm = bloch_norm(b_hat);
  if (std::abs(nrm - 1.0) > 1e-9) {
    std::ostringstream os;
    os << "kappa_max_direction: Bloch norm " << nrm << " is not 1";
    throw DomainError(os.str());
  }
  // A traceless direction always has lambda_min in [-(d-1), -1].
  const double lam = min_eigenvalue(b_hat.op());
  return 1.0 / std::abs(lam);
}

}  // namespace conical
