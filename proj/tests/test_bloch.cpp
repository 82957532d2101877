#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "conical/bloch.hpp"
#include "test_helpers.hpp"

using namespace conical;
using namespace conical::testing;

namespace {

// Independent oracle: bisect the membership boundary instead of using the
// spectral formula.
double kappa_max_bisection(const BlochVector& b_hat) {
  double lo = 0.0;
  double hi = 1.0 + 1e-12;
  const int d = b_hat.dim();
  auto feasible = [&](double kappa) {
    const HermitianOperator shifted(CMatrix::Identity(d, d) + kappa * b_hat.mat());
    return min_eigenvalue(shifted) >= -1e-13;
  };
  for (int iter = 0; iter < 60; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace

TEST_CASE("to_bloch on canonical states") {
  for (int d = 2; d <= 5; ++d) {
    const auto [t, b] = to_bloch(HermitianOperator(CMatrix::Identity(d, d) / d));
    CHECK(t == doctest::Approx(1.0));
    CHECK(b.mat().norm() < 1e-14);
  }
  CMatrix e00(2, 2);
  e00 << 1, 0, 0, 0;
  const auto [t, b] = to_bloch(HermitianOperator(e00));
  CHECK(t == doctest::Approx(1.0));
  CHECK((b.mat() - pauli_z()).norm() < 1e-14);

  const CMatrix dir = (pauli_x() + pauli_y() + pauli_z()) / std::sqrt(3.0);
  const auto [tt, bb] = to_bloch(HermitianOperator(0.5 * (CMatrix::Identity(2, 2) + dir)));
  CHECK(tt == doctest::Approx(1.0));
  CHECK((bb.mat() - dir).norm() < 1e-14);

  CHECK_THROWS_AS(to_bloch(HermitianOperator(pauli_z())), ZeroTraceError);
}

TEST_CASE("from_bloch inverts to_bloch") {
  const BlochVector zero(HermitianOperator(CMatrix::Zero(3, 3)));
  CHECK((from_bloch(1.0, zero).mat() - CMatrix::Identity(3, 3) / 3.0).norm() < 1e-15);
  CHECK_THROWS_AS(from_bloch(0.0, zero), DomainError);
  CHECK_THROWS_AS(from_bloch(-1.0, zero), DomainError);

  const BlochVector z{HermitianOperator(pauli_z())};
  CMatrix e00(2, 2);
  e00 << 1, 0, 0, 0;
  CHECK((from_bloch(1.0, z).mat() - e00).norm() < 1e-15);

  Rng rng(17);
  for (int d = 2; d <= 5; ++d)
    for (int trial = 0; trial < 10; ++trial) {
      const auto rho = random_state(d, rng);
      const auto [t, b] = to_bloch(rho);
      CHECK((from_bloch(t, b).mat() - rho.mat()).norm() / rho.norm() < 1e-12);
    }
}

TEST_CASE("bloch_norm") {
  CHECK(bloch_norm(BlochVector(HermitianOperator(pauli_z()))) == doctest::Approx(1.0));
  CHECK(bloch_norm(BlochVector(HermitianOperator(CMatrix::Zero(4, 4)))) == doctest::Approx(0.0));
  CMatrix dg = CMatrix::Zero(3, 3);
  dg(0, 0) = 1;
  dg(1, 1) = 1;
  dg(2, 2) = -2;
  CHECK(bloch_norm(BlochVector(HermitianOperator(dg))) == doctest::Approx(1.0));
}

TEST_CASE("BlochVector rejects traced operators") {
  CHECK_THROWS_AS(BlochVector{HermitianOperator(CMatrix::Identity(2, 2))}, DomainError);
}

TEST_CASE("body_membership") {
  CHECK(body_membership(BlochVector(HermitianOperator(CMatrix::Zero(2, 2)))) == BodyMembership::Inside);
  CHECK(body_membership(BlochVector(HermitianOperator(pauli_z()))) == BodyMembership::Boundary);
  CHECK(body_membership(BlochVector(HermitianOperator(1.5 * pauli_z()))) == BodyMembership::Outside);

  Rng rng(23);
  for (int d = 2; d <= 5; ++d)
    for (int trial = 0; trial < 20; ++trial) {
      const auto dir = random_direction(d, rng);
      // In-ball directions are never outside; norms above 1 always are.
      CHECK(body_membership(BlochVector(HermitianOperator(dir.mat() / (d - 1)))) != BodyMembership::Outside);
      CHECK(body_membership(BlochVector(HermitianOperator(1.5 * dir.mat()))) == BodyMembership::Outside);
    }
}

TEST_CASE("kappa_max_direction on explicit spectra") {
  CHECK(kappa_max_direction(BlochVector(HermitianOperator(pauli_z()))) == doctest::Approx(1.0));

  CMatrix dg = CMatrix::Zero(3, 3);
  dg(0, 0) = 1;
  dg(1, 1) = 1;
  dg(2, 2) = -2;
  CHECK(kappa_max_direction(BlochVector(HermitianOperator(dg))) == doctest::Approx(0.5));

  CMatrix dg2 = CMatrix::Zero(3, 3);
  dg2(0, 0) = 2;
  dg2(1, 1) = -1;
  dg2(2, 2) = -1;
  CHECK(kappa_max_direction(BlochVector(HermitianOperator(dg2))) == doctest::Approx(1.0));

  CHECK_THROWS_AS(kappa_max_direction(BlochVector(HermitianOperator(2.0 * pauli_z()))), DomainError);
  CHECK_THROWS_AS(kappa_max_direction(BlochVector(HermitianOperator(CMatrix::Zero(2, 2)))), DomainError);
}

TEST_CASE("kappa_max_direction agrees with membership bisection") {
  Rng rng(31);
  for (int d = 2; d <= 5; ++d)
    for (int trial = 0; trial < 10; ++trial) {
      const BlochVector dir(random_direction(d, rng));
      CHECK(kappa_max_direction(dir) == doctest::Approx(kappa_max_bisection(dir)).epsilon(1e-9));
    }
}

TEST_CASE("kappa_max_direction range over random directions") {
  Rng rng(37);
  for (int d = 2; d <= 6; ++d) {
    CAPTURE(d);
    for (int trial = 0; trial < 1000; ++trial) {
      const double kappa = kappa_max_direction(BlochVector(random_direction(d, rng)));
      CHECK(kappa >= 1.0 / (d - 1) - 1e-12);
      CHECK(kappa <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("kappa_max is 1 exactly on pure-state directions") {
  Rng rng(41);
  for (int d = 2; d <= 5; ++d) {
    // Pure-state direction: Bloch vector of a random rank-1 projector.
    CVector psi(d);
    for (int j = 0; j < d; ++j) psi(j) = Complex(rng.gaussian(), rng.gaussian());
    psi.normalize();
    const auto [t, b] = to_bloch(HermitianOperator(psi * psi.adjoint()));
    CHECK(bloch_norm(b) == doctest::Approx(1.0));
    CHECK(kappa_max_direction(b) == doctest::Approx(1.0));
    // At kappa_max the state is a rank-1 projector again.
    const CMatrix rho = from_bloch(1.0, b).mat();
    CHECK((rho * rho - rho).norm() < 1e-12);

    // A generic direction has kappa_max < 1 and a non-idempotent endpoint.
    const BlochVector dir(random_direction(d, rng));
    const double kappa = kappa_max_direction(dir);
    if (kappa < 1.0 - 1e-6) {
      const CMatrix sigma = from_bloch(1.0, BlochVector(HermitianOperator(kappa * dir.mat()))).mat();
      CHECK((sigma * sigma - sigma).norm() > 1e-6);
    }
  }
}

TEST_CASE("membership is preserved under shrinking (convexity)") {
  Rng rng(43);
  for (int d = 2; d <= 4; ++d)
    for (int trial = 0; trial < 10; ++trial) {
      const BlochVector dir(random_direction(d, rng));
      const double kappa = kappa_max_direction(dir);
      // Boundary case: the scaled direction at its maximal kappa.
      const BlochVector boundary(HermitianOperator(kappa * dir.mat()));
      CHECK(body_membership(boundary) != BodyMembership::Outside);
      for (double eta : {0.9, 0.5, 0.1, 0.01})
        CHECK(body_membership(BlochVector(HermitianOperator(eta * boundary.mat()))) !=
              BodyMembership::Outside);
    }
}
