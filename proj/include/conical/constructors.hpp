#pragma once

#include <cstdint>
#include <vector>

#include "conical/design.hpp"
#include "conical/polytope.hpp"

namespace conical {

/// Row-orthonormal factor of a projector in P_m: u is (d^2-1) x m with
/// u^T u = P, every row summing to zero.  Column j carries the simplex vertex
/// coordinates of design element j.
struct SimplexFrame {
  int m = 0;
  int dim = 0;
  RMatrix u;
};

/// Spectral factorization of P with a deterministic sign convention (first
/// non-negligible component of each eigenvector positive).
SimplexFrame simplex_frame(const DesignProjector& p);

/// Theorem-3 construction: the in-ball design with Bloch Gram
/// md/((d+1)(d-1)^2) * P and element traces t, contraction 1/(d-1).
ConicalDesign theorem3_design(const DesignProjector& p, double t);

/// A SIM of d^2 effects with contraction kappa <= 1/(d-1) and trace t
/// (t = 1/d makes it a POVM).
ConicalDesign sim_inball(int d, double kappa, double t);

/// A full MUM set: d+1 POVMs of d trace-1 effects each, kappa <= 1/(d-1).
ConicalDesign mum_inball(int d, double kappa);

/// Full set of d+1 MUBs for prime d: the computational basis plus the
/// eigenbases of the Weyl-Heisenberg operators X Z^k.
ConicalDesign mub_prime(int d);

/// Known SIC projectors for d = 2 (tetrahedron) and d = 3 (Weyl-Heisenberg
/// orbit of the fiducial (0, 1, -1)/sqrt(2)); validated at load against the
/// 1/(d+1) overlap law.
ConicalDesign sic_fixture(int d);
/// The same SICs as unit kets, for Kraus decompositions.
std::vector<CVector> sic_fixture_kets(int d);

/// Replaces every Bloch vector B_j by eta * B_j, keeping the traces.
ConicalDesign scale_design(const ConicalDesign& design, double eta);

/// The cardinality-d(d+1) POVM {E_j / 2} + d copies of I/(2d) built from a
/// SIM: a conical design that is not a full MUM set under any grouping.
ConicalDesign mum_counterexample(const ConicalDesign& sim);

/// Applies a seeded random orthogonal rotation of the trace-zero subspace to
/// all Bloch vectors, then shrinks them by the largest common factor <= 1
/// that keeps every element positive semi-definite.
ConicalDesign random_rotate(const ConicalDesign& design, std::uint64_t seed);

bool is_prime(int n);

}  // namespace conical
