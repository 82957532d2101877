#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "conical/constructors.hpp"
#include "conical/polytope.hpp"
#include "test_helpers.hpp"

using namespace conical;
using namespace conical::testing;

namespace {

RMatrix bloch_gram(const ConicalDesign& design) {
  const auto bloch = design.bloch();
  const int m = design.size();
  RMatrix g(m, m);
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < m; ++k) g(j, k) = hs_inner(bloch[j].second.op(), bloch[k].second.op());
  return g;
}

std::vector<std::string> violations_of(const RMatrix& p, int d) {
  try {
    validate_projector(p, d);
  } catch (const InvalidProjectorError& e) {
    return e.violations();
  }
  return {};
}

}  // namespace

TEST_CASE("validate_projector accepts the canonical families") {
  const DesignProjector cent = validate_projector(centering_projector(4), 2);
  CHECK(cent.m() == 4);
  CHECK(cent.matrix()(0, 0) == doctest::Approx(0.75));
  CHECK(cent.matrix()(0, 1) == doctest::Approx(-0.25));

  for (int d = 2; d <= 5; ++d) {
    const RMatrix blocks = mub_block_projector(d);
    CHECK(blocks.rowwise().sum().norm() == doctest::Approx(0.0));
    const DesignProjector p = validate_projector(blocks, d);
    CHECK(p.m() == d * (d + 1));
    CHECK(p.matrix()(0, 0) == doctest::Approx((d * d - 1.0) / (d * (d + 1.0))));
    CHECK(validate_projector(centering_projector(d * d), d).m() == d * d);
    CHECK(centering_projector(d * d).rowwise().sum().norm() == doctest::Approx(0.0));
  }
}

TEST_CASE("validate_projector rejects with named conditions") {
  // Wrong rank: centering at m = d^2 + 1.
  const auto rank_violations = violations_of(centering_projector(5), 2);
  REQUIRE_FALSE(rank_violations.empty());
  bool mentions_rank = false;
  for (const auto& v : rank_violations)
    if (v.find("rank") != std::string::npos) mentions_rank = true;
  CHECK(mentions_rank);

  // Broken row sums (and idempotence) from an asymmetric bump.
  RMatrix bumped = centering_projector(4);
  bumped(0, 1) += 0.1;
  bumped(1, 0) += 0.1;
  const auto bump_violations = violations_of(bumped, 2);
  bool mentions_rows = false;
  for (const auto& v : bump_violations)
    if (v.find("row-sum") != std::string::npos) mentions_rows = true;
  CHECK(mentions_rows);

  // m below d^2.
  const auto small_violations = violations_of(centering_projector(8), 3);
  bool mentions_m = false;
  for (const auto& v : small_violations)
    if (v.find("cardinality") != std::string::npos) mentions_m = true;
  CHECK(mentions_m);

  // Not symmetric.
  RMatrix asym = centering_projector(4);
  asym(0, 1) += 0.05;
  bool mentions_sym = false;
  for (const auto& v : violations_of(asym, 2))
    if (v.find("symmetric") != std::string::npos) mentions_sym = true;
  CHECK(mentions_sym);
}

TEST_CASE("gram_projector on canonical designs") {
  // d=2 SIC: lambda = md/(d+1) = 8/3 and the centering projector.
  const auto [lambda2, p2] = gram_projector(sic_fixture(2));
  CHECK(lambda2 == doctest::Approx(8.0 / 3.0).epsilon(1e-12));
  CHECK((p2.matrix() - centering_projector(4)).cwiseAbs().maxCoeff() < 1e-12);

  // d=3 theorem-3 SIM: lambda = m d kappa^2/(d+1) = 27/16.
  const ConicalDesign sim3 = theorem3_design(validate_projector(centering_projector(9), 3), 1.0 / 3.0);
  const auto [lambda3, p3] = gram_projector(sim3);
  CHECK(lambda3 == doctest::Approx(27.0 / 16.0).epsilon(1e-12));
  CHECK((p3.matrix() - centering_projector(9)).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(lambda3 <= 9.0 * 3.0 / 4.0 + 1e-9);

  // mum_inball recovers the MUB block projector.
  const auto [lambda_m, pm] = gram_projector(mum_inball(3, 0.5));
  CHECK((pm.matrix() - mub_block_projector(3)).cwiseAbs().maxCoeff() < 1e-10);

  // Recovered kappa matches parameters().kappa.
  const double kappa = std::sqrt(lambda_m * 4.0 / (12.0 * 3.0));
  CHECK(kappa == doctest::Approx(parameters(mum_inball(3, 0.5)).kappa).epsilon(1e-10));

  // Non-homogeneous designs are rejected.
  const ConicalDesign ce = mum_counterexample(induced_povm(sic_fixture(2)));
  CHECK_THROWS_AS(gram_projector(ce), DomainError);
}

TEST_CASE("theorem-2 round trip reproduces the Gram matrix") {
  std::vector<ConicalDesign> designs;
  designs.push_back(sic_fixture(2));
  designs.push_back(sic_fixture(3));
  designs.push_back(mub_prime(5));
  designs.push_back(sim_inball(3, 0.4, 1.0 / 3.0));
  designs.push_back(mum_inball(4, 0.25));
  designs.push_back(scale_design(mub_prime(3), 0.6));
  designs.push_back(random_rotate(sic_fixture(3), 5));
  for (const auto& design : designs) {
    const auto [lambda, p] = gram_projector(design);
    const int d = design.dim();
    const int m = design.size();
    CHECK(lambda <= m * d / (d + 1.0) + 1e-9);
    // Rebuild through the theorem-3 construction and rescale its Bloch
    // vectors from 1/(d-1) to the design's kappa.  The rescaled vectors may
    // leave the Bloch body (rotating them back in is the hard part), so the
    // comparison is between Gram matrices, not operator families.
    const double kappa = std::sqrt(lambda * (d + 1.0) / (m * d));
    const double eta = kappa * (d - 1.0);
    const ConicalDesign base = theorem3_design(p, 1.0);
    const auto base_bloch = base.bloch();
    RMatrix rebuilt_gram(m, m);
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        rebuilt_gram(j, k) =
            eta * eta * hs_inner(base_bloch[j].second.op(), base_bloch[k].second.op());
    CHECK((rebuilt_gram - bloch_gram(design)).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("verify_bloch_one_design") {
  // Bloch vectors of the d=2 SIC form a one-design with lambda = 8/3.
  std::vector<BlochVector> sic_vectors;
  for (const auto& [t, b] : sic_fixture(2).bloch()) sic_vectors.push_back(b);
  const OneDesignCheck ok = verify_bloch_one_design(sic_vectors);
  CHECK(ok.ok);
  CHECK(ok.lambda == doctest::Approx(8.0 / 3.0).epsilon(1e-12));

  // {sigma_z, -sigma_z} spans a single line: the frame condition fails.
  const std::vector<BlochVector> pair = {BlochVector(HermitianOperator(pauli_z())),
                                         BlochVector(HermitianOperator(-pauli_z()))};
  CHECK_FALSE(verify_bloch_one_design(pair).ok);

  // Theorem-3 output for any valid projector passes.
  std::vector<BlochVector> t3;
  for (const auto& [t, b] : theorem3_design(validate_projector(mub_block_projector(4), 4), 0.25).bloch())
    t3.push_back(b);
  CHECK(verify_bloch_one_design(t3).ok);

  // A vector outside the body is a domain error.
  std::vector<BlochVector> outside = sic_vectors;
  outside[0] = BlochVector(HermitianOperator(1.5 * pauli_z()));
  CHECK_THROWS_AS(verify_bloch_one_design(outside), DomainError);
}

TEST_CASE("one-design check agrees with design-level verification") {
  Rng rng(612);
  int cases = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const int d = 2 + trial % 3;
    ConicalDesign design = (trial % 3 == 0) ? sim_inball(d, 0.8 / (d - 1), 1.0 / d)
                          : (trial % 3 == 1) ? scale_design(mub_prime(d == 4 ? 5 : d), 0.5 + 0.1 * (trial % 4))
                                             : sic_fixture(2 + trial % 2);
    std::vector<BlochVector> vectors;
    for (const auto& [t, b] : design.bloch()) vectors.push_back(b);

    const bool corrupt = trial % 2 == 0;
    if (corrupt) {
      // Replace one vector by a random one well inside the body.
      const auto dir = random_direction(design.dim(), rng);
      vectors[0] = BlochVector(HermitianOperator(dir.mat() / design.dim()));
    }
    std::vector<HermitianOperator> elements;
    for (const auto& b : vectors)
      elements.push_back(from_bloch(1.0 / design.dim(), b));
    const ConicalDesign rebuilt(design.dim(), elements);

    const VerificationReport rep = verify(rebuilt);
    const bool design_level = rep.is_design && classify(rebuilt).homogeneous;
    CHECK(verify_bloch_one_design(vectors).ok == design_level);
    CHECK(design_level == !corrupt);
    ++cases;
  }
  CHECK(cases == 30);
}
