#include "conical/constructors.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace conical {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int k = 2; k * k <= n; ++k)
    if (n % k == 0) return false;
  return true;
}

SimplexFrame simplex_frame(const DesignProjector& p) {
  const int m = p.m();
  const int n = p.dim() * p.dim() - 1;
  Eigen::SelfAdjointEigenSolver<RMatrix> solver(p.matrix());
  if (solver.info() != Eigen::Success) throw NumericalError("simplex_frame: eigensolver failed");
  SimplexFrame frame;
  frame.m = m;
  frame.dim = p.dim();
  frame.u.resize(n, m);
  // Eigenvalues ascend, so the unit-eigenvalue rows sit at the top end.
  for (int a = 0; a < n; ++a) {
    RVector u = solver.eigenvectors().col(m - n + a);
    const double peak = u.cwiseAbs().maxCoeff();
    for (int j = 0; j < m; ++j)
      if (std::abs(u(j)) > 1e-8 * peak) {
        if (u(j) < 0.0) u = -u;
        break;
      }
    frame.u.row(a) = u.transpose();
  }
  return frame;
}

namespace {

std::vector<HermitianOperator> bloch_family_to_elements(const std::vector<CMatrix>& bloch, double t, int d) {
  std::vector<HermitianOperator> elements;
  elements.reserve(bloch.size());
  const CMatrix id = CMatrix::Identity(d, d);
  for (const auto& b : bloch) elements.emplace_back((t / d) * (id + b));
  return elements;
}

std::vector<CMatrix> theorem3_bloch(const DesignProjector& p) {
  const int d = p.dim();
  const int m = p.m();
  const int n = d * d - 1;
  const SimplexFrame frame = simplex_frame(p);
  const auto basis = gell_mann_basis(d);
  const double scale = std::sqrt(static_cast<double>(m) * d / ((d + 1.0) * (d - 1.0) * (d - 1.0)));
  std::vector<CMatrix> bloch;
  bloch.reserve(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    CMatrix b = CMatrix::Zero(d, d);
    for (int a = 0; a < n; ++a) b += scale * frame.u(a, j) * basis[a].mat();
    bloch.push_back(std::move(b));
  }
  return bloch;
}

void check_inball_kappa(int d, double kappa) {
  const double bound = 1.0 / (d - 1);
  if (!(kappa > 0.0) || kappa > bound + 1e-12) {
    std::ostringstream os;
    os << "kappa " << kappa << " exceeds in-ball bound " << bound << " for d=" << d;
    throw DomainError(os.str());
  }
}

}  // namespace

ConicalDesign theorem3_design(const DesignProjector& p, double t) {
  if (t <= 0.0) throw DomainError("theorem3_design: trace must be positive");
  return ConicalDesign(p.dim(), bloch_family_to_elements(theorem3_bloch(p), t, p.dim()));
}

ConicalDesign sim_inball(int d, double kappa, double t) {
  if (d < 2) throw DimensionError("sim_inball: d must be >= 2");
  check_inball_kappa(d, kappa);
  if (t <= 0.0) throw DomainError("sim_inball: trace must be positive");
  const DesignProjector p = validate_projector(centering_projector(d * d), d);
  auto bloch = theorem3_bloch(p);
  const double eta = kappa * (d - 1);  // theorem-3 vectors have norm 1/(d-1)
  for (auto& b : bloch) b *= eta;
  return ConicalDesign(d, bloch_family_to_elements(bloch, t, d));
}

ConicalDesign mum_inball(int d, double kappa) {
  if (d < 2) throw DimensionError("mum_inball: d must be >= 2");
  check_inball_kappa(d, kappa);
  const DesignProjector p = validate_projector(mub_block_projector(d), d);
  auto bloch = theorem3_bloch(p);
  const double eta = kappa * (d - 1);
  for (auto& b : bloch) b *= eta;
  return ConicalDesign(d, bloch_family_to_elements(bloch, 1.0, d));
}

ConicalDesign mub_prime(int d) {
  if (!is_prime(d)) {
    std::ostringstream os;
    os << "mub_prime: " << d << " is not prime";
    throw DomainError(os.str());
  }
  const Complex omega = std::exp(Complex(0.0, 2.0 * std::numbers::pi / d));
  CMatrix shift = CMatrix::Zero(d, d);
  for (int k = 0; k < d; ++k) shift((k + 1) % d, k) = 1.0;
  CMatrix clock = CMatrix::Zero(d, d);
  for (int k = 0; k < d; ++k) clock(k, k) = std::pow(omega, k);

  std::vector<HermitianOperator> projectors;
  projectors.reserve(static_cast<std::size_t>(d) * (d + 1));
  for (int j = 0; j < d; ++j) {
    CMatrix e = CMatrix::Zero(d, d);
    e(j, j) = 1.0;
    projectors.emplace_back(std::move(e));
  }
  CMatrix zk = CMatrix::Identity(d, d);
  for (int k = 0; k < d; ++k) {
    const CMatrix xzk = shift * zk;
    Eigen::ComplexEigenSolver<CMatrix> solver(xzk);
    if (solver.info() != Eigen::Success) throw NumericalError("mub_prime: eigensolver failed");
    // X Z^k has d distinct eigenvalues for prime d; order by phase.
    std::vector<int> order(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) order[j] = j;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return std::arg(solver.eigenvalues()(a)) < std::arg(solver.eigenvalues()(b));
    });
    for (int j = 0; j < d; ++j) {
      CVector v = solver.eigenvectors().col(order[j]);
      v.normalize();
      projectors.emplace_back(v * v.adjoint());
    }
    zk = zk * clock;
  }
  return ConicalDesign(d, std::move(projectors));
}

namespace {

std::vector<CVector> tetrahedron_kets() {
  // Bloch vectors (+-1, +-1, +-1)/sqrt(3) with even sign products.
  const double s = 1.0 / std::sqrt(3.0);
  const double signs[4][3] = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
  std::vector<CVector> kets;
  kets.reserve(4);
  for (const auto& n : signs) {
    CMatrix proj(2, 2);
    proj(0, 0) = 0.5 * (1.0 + s * n[2]);
    proj(1, 1) = 0.5 * (1.0 - s * n[2]);
    proj(0, 1) = 0.5 * Complex(s * n[0], -s * n[1]);
    proj(1, 0) = 0.5 * Complex(s * n[0], s * n[1]);
    // A rank-1 projector's normalized dominant column is its ket.
    const int col = proj(0, 0).real() >= proj(1, 1).real() ? 0 : 1;
    CVector psi = proj.col(col);
    psi /= std::sqrt(proj(col, col).real());
    kets.push_back(std::move(psi));
  }
  return kets;
}

std::vector<CVector> hesse_kets() {
  // Weyl-Heisenberg orbit D(p,q) = omega^{pq} X^p Z^q of the fiducial
  // (0, 1, -1)/sqrt(2), ordered lexicographically in (p, q).
  const Complex omega = std::exp(Complex(0.0, 2.0 * std::numbers::pi / 3.0));
  CVector fiducial(3);
  fiducial << 0.0, 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
  CMatrix shift = CMatrix::Zero(3, 3);
  for (int k = 0; k < 3; ++k) shift((k + 1) % 3, k) = 1.0;
  CMatrix clock = CMatrix::Zero(3, 3);
  for (int k = 0; k < 3; ++k) clock(k, k) = std::pow(omega, k);
  std::vector<CVector> kets;
  kets.reserve(9);
  for (int p = 0; p < 3; ++p)
    for (int q = 0; q < 3; ++q) {
      CMatrix disp = std::pow(omega, p * q) * CMatrix::Identity(3, 3);
      for (int i = 0; i < p; ++i) disp = shift * disp;
      CMatrix zq = CMatrix::Identity(3, 3);
      for (int i = 0; i < q; ++i) zq = clock * zq;
      kets.push_back(disp * zq * fiducial);
    }
  return kets;
}

}  // namespace

std::vector<CVector> sic_fixture_kets(int d) {
  std::vector<CVector> kets;
  if (d == 2) {
    kets = tetrahedron_kets();
  } else if (d == 3) {
    kets = hesse_kets();
  } else {
    std::ostringstream os;
    os << "sic_fixture: no fixture for d = " << d << " (supported: 2, 3)";
    throw DomainError(os.str());
  }
  const double target = 1.0 / (d + 1.0);
  for (std::size_t j = 0; j < kets.size(); ++j)
    for (std::size_t k = j + 1; k < kets.size(); ++k)
      if (std::abs(std::norm(kets[j].dot(kets[k])) - target) > 1e-12)
        throw NumericalError("sic_fixture: stored solution fails the 1/(d+1) overlap test");
  return kets;
}

ConicalDesign sic_fixture(int d) {
  const auto kets = sic_fixture_kets(d);
  std::vector<HermitianOperator> projectors;
  projectors.reserve(kets.size());
  for (const auto& psi : kets) projectors.emplace_back(psi * psi.adjoint());
  return ConicalDesign(d, std::move(projectors));
}

ConicalDesign scale_design(const ConicalDesign& design, double eta) {
  if (!(eta > 0.0) || eta > 1.0) throw DomainError("scale_design: eta must lie in (0, 1]");
  (void)parameters(design);
  std::vector<HermitianOperator> scaled;
  scaled.reserve(design.elements().size());
  for (const auto& [t, b] : design.bloch())
    scaled.push_back(from_bloch(t, BlochVector(HermitianOperator(eta * b.mat()))));
  return ConicalDesign(design.dim(), std::move(scaled));
}

ConicalDesign mum_counterexample(const ConicalDesign& sim) {
  const Classification cls = classify(sim);
  if (!cls.sim) throw DomainError("mum_counterexample: input does not classify as a SIM");
  const int d = sim.dim();
  std::vector<HermitianOperator> elements;
  elements.reserve(static_cast<std::size_t>(d) * (d + 1));
  for (const auto& e : sim.elements()) elements.emplace_back(0.5 * e.mat());
  for (int j = 0; j < d; ++j)
    elements.emplace_back(CMatrix::Identity(d, d) / (2.0 * d));
  return ConicalDesign(d, std::move(elements));
}

ConicalDesign random_rotate(const ConicalDesign& design, std::uint64_t seed) {
  (void)parameters(design);
  const int d = design.dim();
  const int n = d * d - 1;
  const auto basis = gell_mann_basis(d);
  Rng rng(splitmix64(seed));
  const RMatrix o = random_orthogonal(n, rng);

  const auto bloch_data = design.bloch();
  std::vector<CMatrix> rotated;
  rotated.reserve(bloch_data.size());
  double shrink = 1.0;
  for (const auto& [t, b] : bloch_data) {
    RVector c(n);
    for (int a = 0; a < n; ++a) c(a) = hs_inner(basis[a], b.op());
    const RVector rc = o * c;
    CMatrix rb = CMatrix::Zero(d, d);
    for (int a = 0; a < n; ++a) rb += rc(a) * basis[a].mat();
    const double lam = min_eigenvalue(HermitianOperator(CMatrix(rb)));
    if (lam < -1.0) shrink = std::min(shrink, 1.0 / std::abs(lam));
    rotated.push_back(std::move(rb));
  }
  std::vector<HermitianOperator> elements;
  elements.reserve(rotated.size());
  for (std::size_t j = 0; j < rotated.size(); ++j) {
    const double t = bloch_data[j].first;
    elements.emplace_back((t / d) * (CMatrix::Identity(d, d) + shrink * rotated[j]));
  }
  return ConicalDesign(d, std::move(elements));
}

}  // namespace conical
