#pragma once

#include <optional>
#include <string>
#include <vector>

#include "conical/design.hpp"

namespace conical {

/// rho_W = k_s Pi_sym + k_a Pi_asym with k_s = 2(1-p)/(d(d+1)) and
/// k_a = 2p/(d(d-1)); entangled iff p > 1/2, symmetrically decomposable iff
/// p <= (d-1)/(2d).
struct WernerState {
  int dim;
  double p;
  BipartiteOperator matrix;
  bool entangled;
  bool decomposable;
};

/// rho_I = (1-F)/(d^2-1) I + (d^2 F - 1)/(d^2-1) |Phi+><Phi+|; entangled iff
/// F > 1/d, symmetrically decomposable iff F >= 1/d^2.
struct IsotropicState {
  int dim;
  double F;
  BipartiteOperator matrix;
  bool entangled;
  bool decomposable;
};

WernerState werner_state(int d, double p);
IsotropicState isotropic_state(int d, double F);

enum class TargetFamily { Werner, Isotropic };

struct TargetDescriptor {
  TargetFamily family = TargetFamily::Werner;
  int dim = 0;
  double parameter = 0.0;  // p or F
};

struct DecompositionReport {
  std::vector<double> weights;            // lambda_j > 0, summing to 1
  std::vector<HermitianOperator> states;  // trace-1 PSD rho_j
  TargetDescriptor target;
  double residual = 0.0;
  bool homogeneous = false;
  bool pure = false;
  bool ideal = false;
  std::string design_source;
};

/// Reconstruction sum lambda_j rho_j (x) rho_j for Werner targets,
/// sum lambda_j rho_j (x) rho_j^* for isotropic targets.
BipartiteOperator reconstruct(const DecompositionReport& report);
BipartiteOperator target_matrix(const TargetDescriptor& target);

/// Decomposes via a homogeneous conical design at contraction
/// kappa = sqrt(1 - 2dp/(d-1)).  Design sourcing priority: caller-supplied
/// (rescaled), SIC fixture or prime-d MUBs (scaled), in-ball SIM; the chosen
/// source is recorded in the report.
DecompositionReport symmetric_decomposition(const WernerState& target,
                                            const std::optional<ConicalDesign>& source = std::nullopt);
DecompositionReport symmetric_decomposition(const IsotropicState& target,
                                            const std::optional<ConicalDesign>& source = std::nullopt);

/// Partial-transpose bijection: the same weights and states re-targeted at
/// the isotropic state with F = 1 - (d^2 - 1) k_plus.
DecompositionReport werner_isotropic_transform(const DecompositionReport& report, double tol = 1e-8);
DecompositionReport isotropic_werner_transform(const DecompositionReport& report, double tol = 1e-8);

struct DecompositionCheck {
  double residual = 0.0;
  bool homogeneous = false;
  bool pure = false;
  bool ideal = false;
};

/// Recomputes the reconstruction residual and all flags from scratch.
DecompositionCheck verify_decomposition(const DecompositionReport& report, double tol = kDefaultTol);

}  // namespace conical
