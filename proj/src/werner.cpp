#include "conical/werner.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unsupported/Eigen/KroneckerProduct>

#include "conical/constructors.hpp"

namespace conical {

namespace {

void check_unit_interval(double x, const char* name) {
  if (!(x >= 0.0) || x > 1.0) {
    std::ostringstream os;
    os << name << " = " << x << " lies outside [0, 1]";
    throw DomainError(os.str());
  }
}

constexpr double kParamSlack = 1e-12;

}  // namespace

WernerState werner_state(int d, double p) {
  if (d < 2) throw DimensionError("werner_state: d must be >= 2");
  check_unit_interval(p, "p");
  const double ks = 2.0 * (1.0 - p) / (d * (d + 1.0));
  const double ka = 2.0 * p / (d * (d - 1.0));
  const auto proj = sym_asym_projectors(d);
  return WernerState{d, p, BipartiteOperator(d, ks * proj.sym.mat() + ka * proj.asym.mat()), p > 0.5,
                     p <= (d - 1.0) / (2.0 * d) + kParamSlack};
}

IsotropicState isotropic_state(int d, double F) {
  if (d < 2) throw DimensionError("isotropic_state: d must be >= 2");
  check_unit_interval(F, "F");
  const int d2 = d * d;
  const auto proj = sym_asym_projectors(d);
  const CMatrix mat = (1.0 - F) / (d2 - 1.0) * CMatrix::Identity(d2, d2) +
                      (d2 * F - 1.0) / (d2 - 1.0) * proj.phi_plus.mat();
  return IsotropicState{d, F, BipartiteOperator(d, mat), F > 1.0 / d + kParamSlack,
                        F >= 1.0 / d2 - kParamSlack};
}

BipartiteOperator target_matrix(const TargetDescriptor& target) {
  return target.family == TargetFamily::Werner ? werner_state(target.dim, target.parameter).matrix
                                               : isotropic_state(target.dim, target.parameter).matrix;
}

BipartiteOperator reconstruct(const DecompositionReport& report) {
  if (report.states.empty()) throw DomainError("reconstruct: empty report");
  const int d = report.states.front().dim();
  CMatrix sum = CMatrix::Zero(d * d, d * d);
  for (std::size_t j = 0; j < report.states.size(); ++j) {
    const CMatrix& rho = report.states[j].mat();
    const CMatrix second = report.target.family == TargetFamily::Werner ? rho : rho.conjugate().eval();
    sum += report.weights[j] * Eigen::kroneckerProduct(rho, second).eval();
  }
  return BipartiteOperator(d, std::move(sum));
}

namespace {

struct SourcedBloch {
  std::vector<CMatrix> vectors;
  std::string source;
};

// Bloch vectors of a homogeneous family at norm kappa, longest source first:
// caller-supplied design, projective fixture, in-ball construction.
SourcedBloch bloch_at_kappa(int d, double kappa, const std::optional<ConicalDesign>& source) {
  SourcedBloch out;
  if (source) {
    if (source->dim() != d) throw DimensionError("symmetric_decomposition: source dimension mismatch");
    const Classification cls = classify(*source);
    if (!cls.homogeneous) throw DomainError("symmetric_decomposition: source design is not homogeneous");
    if (cls.kappa + 1e-9 < kappa) {
      std::ostringstream os;
      os << "supplied design has kappa = " << cls.kappa << " but the target needs kappa = " << kappa;
      throw ConstructionUnavailableError(os.str(), kappa, cls.kappa);
    }
    const double eta = std::min(1.0, kappa / cls.kappa);
    for (const auto& [t, b] : source->bloch()) out.vectors.push_back(eta * b.mat());
    std::ostringstream os;
    os << "caller-supplied design scaled by " << eta;
    out.source = os.str();
    return out;
  }
  if (d == 2 || d == 3) {
    for (const auto& [t, b] : sic_fixture(d).bloch()) out.vectors.push_back(kappa * b.mat());
    std::ostringstream os;
    os << "sic_fixture(" << d << ") scaled to kappa = " << kappa;
    out.source = os.str();
    return out;
  }
  if (is_prime(d)) {
    for (const auto& [t, b] : mub_prime(d).bloch()) out.vectors.push_back(kappa * b.mat());
    std::ostringstream os;
    os << "mub_prime(" << d << ") scaled to kappa = " << kappa;
    out.source = os.str();
    return out;
  }
  const double inball = 1.0 / (d - 1);
  if (kappa <= inball + 1e-12) {
    for (const auto& [t, b] : sim_inball(d, std::min(kappa, inball), 1.0 / d).bloch())
      out.vectors.push_back(b.mat());
    std::ostringstream os;
    os << "sim_inball(" << d << ", " << kappa << ")";
    out.source = os.str();
    return out;
  }
  std::ostringstream os;
  os << "no construction reaches kappa = " << kappa << " at d = " << d
     << " (projective fixtures exist for d in {2,3} and prime d; otherwise kappa <= 1/(d-1) = " << inball
     << ")";
  throw ConstructionUnavailableError(os.str(), kappa, inball);
}

DecompositionReport decompose_at_kappa(const TargetDescriptor& target, double kappa,
                                       const std::optional<ConicalDesign>& source) {
  const int d = target.dim;
  DecompositionReport report;
  report.target = target;
  if (kappa <= 1e-12) {
    // Maximally mixed target: the trivial family of d^2 copies of I/d.
    const int m = d * d;
    report.weights.assign(static_cast<std::size_t>(m), 1.0 / m);
    report.states.assign(static_cast<std::size_t>(m), HermitianOperator(CMatrix::Identity(d, d) / d));
    report.design_source = "degenerate maximally-mixed family";
  } else {
    SourcedBloch sourced = bloch_at_kappa(d, kappa, source);
    const std::size_t m = sourced.vectors.size();
    report.weights.assign(m, 1.0 / static_cast<double>(m));
    report.states.reserve(m);
    for (const auto& b : sourced.vectors)
      report.states.emplace_back((CMatrix::Identity(d, d) + b) / d);
    report.design_source = std::move(sourced.source);
  }
  report.homogeneous = true;
  report.pure = true;
  // States at contraction kappa(p) have purity deficit exactly 2p, so a
  // 2*tol band makes the flag flip at p = tol.
  for (const auto& rho : report.states) {
    const double t = rho.trace();
    if (std::abs(t * t - rho.mat().squaredNorm()) > 2.0 * kDefaultTol) {
      report.pure = false;
      break;
    }
  }
  report.ideal =
      report.homogeneous && static_cast<int>(report.states.size()) == d * d && kappa > 1e-12;
  report.residual = rel_residual(reconstruct(report).mat(), target_matrix(target).mat());
  return report;
}

}  // namespace

DecompositionReport symmetric_decomposition(const WernerState& target,
                                            const std::optional<ConicalDesign>& source) {
  const int d = target.dim;
  const double threshold = (d - 1.0) / (2.0 * d);
  if (target.p > threshold + kParamSlack) {
    std::ostringstream os;
    os << "Werner state with p = " << target.p << " > (d-1)/(2d) = " << threshold
       << " does not have a symmetric decomposition";
    throw NoDecompositionError(os.str());
  }
  const double kappa2 = std::max(0.0, 1.0 - 2.0 * d * target.p / (d - 1.0));
  return decompose_at_kappa(TargetDescriptor{TargetFamily::Werner, d, target.p}, std::sqrt(kappa2),
                            source);
}

DecompositionReport symmetric_decomposition(const IsotropicState& target,
                                            const std::optional<ConicalDesign>& source) {
  const int d = target.dim;
  const int d2 = d * d;
  if (target.F < 1.0 / d2 - kParamSlack) {
    std::ostringstream os;
    os << "isotropic state with F = " << target.F << " < 1/d^2 = " << 1.0 / d2
       << " does not have a symmetric decomposition";
    throw NoDecompositionError(os.str());
  }
  if (target.F > 1.0 / d + kParamSlack) {
    std::ostringstream os;
    os << "isotropic state with F = " << target.F << " > 1/d = " << 1.0 / d
       << " is entangled and has no symmetric decomposition";
    throw NoDecompositionError(os.str());
  }
  const double kappa2 = std::max(0.0, (d2 * target.F - 1.0) / (d - 1.0));
  return decompose_at_kappa(TargetDescriptor{TargetFamily::Isotropic, d, target.F}, std::sqrt(kappa2),
                            source);
}

namespace {

// k_plus of the design A_j = sqrt(lambda_j) rho_j via the traced identities;
// sum lambda_j = 1 normalizes mt^2 to 1.
double report_k_plus(const DecompositionReport& report) {
  const int d = report.states.front().dim();
  double purity = 0.0;
  for (std::size_t j = 0; j < report.states.size(); ++j)
    purity += report.weights[j] * report.states[j].mat().squaredNorm();
  const double ks = (1.0 + purity) / (d * (d + 1.0));
  const double ka = (1.0 - purity) / (d * (d - 1.0));
  return 0.5 * (ks + ka);
}

// Keeps parameters produced by float arithmetic inside their closed domain.
double clamp_unit(double x) { return std::min(1.0, std::max(0.0, x)); }

DecompositionReport retarget(const DecompositionReport& report, const TargetDescriptor& target) {
  DecompositionReport out = report;
  out.target = target;
  out.residual = rel_residual(reconstruct(out).mat(), target_matrix(target).mat());
  return out;
}

}  // namespace

DecompositionReport werner_isotropic_transform(const DecompositionReport& report, double tol) {
  if (report.target.family != TargetFamily::Werner)
    throw DomainError("werner_isotropic_transform: report does not target a Werner state");
  if (report.residual > tol) {
    std::ostringstream os;
    os << "werner_isotropic_transform: reconstruction residual " << report.residual << " exceeds " << tol;
    throw DomainError(os.str());
  }
  const int d = report.states.front().dim();
  const double f = clamp_unit(1.0 - (d * d - 1.0) * report_k_plus(report));
  return retarget(report, TargetDescriptor{TargetFamily::Isotropic, d, f});
}

DecompositionReport isotropic_werner_transform(const DecompositionReport& report, double tol) {
  if (report.target.family != TargetFamily::Isotropic)
    throw DomainError("isotropic_werner_transform: report does not target an isotropic state");
  if (report.residual > tol) {
    std::ostringstream os;
    os << "isotropic_werner_transform: reconstruction residual " << report.residual << " exceeds " << tol;
    throw DomainError(os.str());
  }
  const int d = report.states.front().dim();
  double purity = 0.0;
  for (std::size_t j = 0; j < report.states.size(); ++j)
    purity += report.weights[j] * report.states[j].mat().squaredNorm();
  const double p = clamp_unit(0.5 * (1.0 - purity));
  return retarget(report, TargetDescriptor{TargetFamily::Werner, d, p});
}

DecompositionCheck verify_decomposition(const DecompositionReport& report, double tol) {
  if (report.states.empty() || report.weights.size() != report.states.size())
    throw DomainError("verify_decomposition: weights and states disagree");
  const int d = report.states.front().dim();
  if (report.target.dim != d) throw DomainError("verify_decomposition: target dimension mismatch");
  double total = 0.0;
  for (double w : report.weights) {
    if (!(w > 0.0)) throw DomainError("verify_decomposition: weights must be positive");
    total += w;
  }
  if (std::abs(total - 1.0) > kDefaultTol) {
    std::ostringstream os;
    os << "verify_decomposition: weights sum to " << total << ", not 1";
    throw DomainError(os.str());
  }
  for (const auto& rho : report.states) {
    if (rho.dim() != d) throw DimensionError("verify_decomposition: mixed state dimensions");
    if (std::abs(rho.trace() - 1.0) > kDefaultTol) throw DomainError("verify_decomposition: state trace is not 1");
    if (!is_psd(rho)) throw DomainError("verify_decomposition: state is not positive semi-definite");
  }

  DecompositionCheck check;
  check.residual = rel_residual(reconstruct(report).mat(), target_matrix(report.target).mat());
  const double uniform = 1.0 / static_cast<double>(report.weights.size());
  check.homogeneous = true;
  for (double w : report.weights)
    if (std::abs(w - uniform) > tol) check.homogeneous = false;
  check.pure = true;
  for (const auto& rho : report.states)
    if (std::abs(1.0 - rho.mat().squaredNorm()) > 2.0 * tol) check.pure = false;
  check.ideal = false;
  if (check.homogeneous && static_cast<int>(report.states.size()) == d * d) {
    // Ideal additionally requires the underlying family sqrt(lambda_j) rho_j
    // to be a genuine design (excludes the degenerate maximally mixed case).
    std::vector<HermitianOperator> family;
    family.reserve(report.states.size());
    for (std::size_t j = 0; j < report.states.size(); ++j)
      family.emplace_back(std::sqrt(report.weights[j]) * report.states[j].mat());
    check.ideal = verify(ConicalDesign(d, std::move(family)), std::max(tol, 1e-9), 0).is_design;
  }
  return check;
}

}  // namespace conical
