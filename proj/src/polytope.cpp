#include "conical/polytope.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "conical/constructors.hpp"

namespace conical {

DesignProjector validate_projector(const RMatrix& p, int d, double tol) {
  if (d < 2) throw DomainError("validate_projector: d must be >= 2");
  std::vector<std::string> violations;
  const int m = static_cast<int>(p.rows());
  if (p.rows() != p.cols()) {
    violations.push_back("matrix is not square");
    throw InvalidProjectorError("invalid projector: matrix is not square", violations);
  }
  const int d2 = d * d;
  const double scaled_tol = tol * std::max(1.0, p.norm());
  if (m < d2) {
    std::ostringstream os;
    os << "cardinality m = " << m << " is smaller than d^2 = " << d2;
    violations.push_back(os.str());
  }
  if ((p - p.transpose()).norm() > scaled_tol) {
    std::ostringstream os;
    os << "matrix is not symmetric (||P - P^T|| = " << (p - p.transpose()).norm() << ")";
    violations.push_back(os.str());
  }
  const RMatrix sym = 0.5 * (p + p.transpose());
  if (rel_residual(sym * sym, sym) > tol) {
    std::ostringstream os;
    os << "idempotence violated (||P^2 - P|| = " << (sym * sym - sym).norm() << ")";
    violations.push_back(os.str());
  }
  {
    Eigen::SelfAdjointEigenSolver<RMatrix> solver(sym, Eigen::EigenvaluesOnly);
    int rank = 0;
    for (int j = 0; j < m; ++j)
      if (solver.eigenvalues()(j) > 0.5) ++rank;
    if (rank != d2 - 1) {
      std::ostringstream os;
      os << "rank " << rank << " != d^2 - 1 = " << d2 - 1;
      violations.push_back(os.str());
    }
  }
  {
    std::vector<int> bad;
    for (int j = 0; j < m; ++j)
      if (std::abs(sym.row(j).sum()) > scaled_tol) bad.push_back(j);
    if (!bad.empty()) {
      std::ostringstream os;
      os << "row-sum condition violated at rows [";
      for (std::size_t i = 0; i < bad.size(); ++i) os << (i ? ", " : "") << bad[i];
      os << "]";
      violations.push_back(os.str());
    }
  }
  const double diag = static_cast<double>(d2 - 1) / m;
  {
    std::vector<int> bad;
    for (int j = 0; j < m; ++j)
      if (std::abs(sym(j, j) - diag) > scaled_tol) bad.push_back(j);
    if (!bad.empty()) {
      std::ostringstream os;
      os << "diagonal condition violated at rows [";
      for (std::size_t i = 0; i < bad.size(); ++i) os << (i ? ", " : "") << bad[i];
      os << "] (expected (d^2-1)/m = " << diag << ")";
      violations.push_back(os.str());
    }
    int over = 0;
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        if (j != k && sym(j, k) > diag + scaled_tol) ++over;
    if (over > 0) {
      std::ostringstream os;
      os << over << " off-diagonal entries exceed the bound (d^2-1)/m = " << diag;
      violations.push_back(os.str());
    }
  }
  if (!violations.empty()) {
    std::ostringstream os;
    os << "invalid projector (" << violations.size() << " condition(s) violated)";
    throw InvalidProjectorError(os.str(), violations);
  }
  return DesignProjector(m, d, sym);
}

RMatrix centering_projector(int m) {
  if (m < 2) throw DomainError("centering_projector: m must be >= 2");
  return RMatrix::Identity(m, m) - RMatrix::Constant(m, m, 1.0 / m);
}

RMatrix mub_block_projector(int d) {
  if (d < 2) throw DomainError("mub_block_projector: d must be >= 2");
  const int m = d * (d + 1);
  RMatrix p = RMatrix::Zero(m, m);
  const RMatrix block = RMatrix::Identity(d, d) - RMatrix::Constant(d, d, 1.0 / d);
  for (int b = 0; b <= d; ++b) p.block(b * d, b * d, d, d) = block;
  return p;
}

std::pair<double, DesignProjector> gram_projector(const ConicalDesign& design) {
  const Classification cls = classify(design);
  if (!cls.homogeneous) throw DomainError("gram_projector: design is not homogeneous");
  const int m = design.size();
  const int d = design.dim();
  const auto bloch_data = design.bloch();
  RMatrix gram(m, m);
  for (int j = 0; j < m; ++j)
    for (int k = j; k < m; ++k)
      gram(j, k) = gram(k, j) = hs_inner(bloch_data[j].second.op(), bloch_data[k].second.op());
  const double lambda = gram.trace() / (d * d - 1);
  if (lambda <= 0.0) throw NumericalError("gram_projector: non-positive frame constant");
  return {lambda, validate_projector(gram / lambda, d)};
}

OneDesignCheck verify_bloch_one_design(const std::vector<BlochVector>& vectors, double tol) {
  if (vectors.empty()) throw DomainError("verify_bloch_one_design: empty vector list");
  const int d = vectors.front().dim();
  const int n = d * d - 1;
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    if (vectors[j].dim() != d) throw DimensionError("verify_bloch_one_design: mixed dimensions");
    if (body_membership(vectors[j]) == BodyMembership::Outside) {
      std::ostringstream os;
      os << "verify_bloch_one_design: vector " << j << " lies outside the Bloch body";
      throw DomainError(os.str());
    }
  }
  const auto basis = gell_mann_basis(d);
  const int m = static_cast<int>(vectors.size());
  RMatrix coords(n, m);
  for (int j = 0; j < m; ++j)
    for (int a = 0; a < n; ++a) coords(a, j) = hs_inner(basis[a], vectors[j].op());

  OneDesignCheck check;
  double mean_norm = 0.0;
  for (const auto& v : vectors) mean_norm += bloch_norm(v);
  mean_norm /= m;
  for (const auto& v : vectors) check.norm_spread = std::max(check.norm_spread, std::abs(bloch_norm(v) - mean_norm));
  check.sum_residual = coords.rowwise().sum().norm() / std::max(1.0, coords.norm());
  const RMatrix frame = coords * coords.transpose();
  check.lambda = frame.trace() / n;
  check.frame_residual = rel_residual(frame, check.lambda * RMatrix::Identity(n, n));
  check.ok = check.norm_spread <= tol * std::max(1.0, mean_norm) && check.sum_residual <= tol &&
             check.frame_residual <= tol && check.lambda > tol;
  return check;
}

namespace {

RMatrix polar_retract(const RMatrix& m) {
  Eigen::JacobiSVD<RMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().transpose();
}

struct VertexState {
  double g = 0.0;     // min_j lambda_min(B_j)
  int worst = -1;     // lowest-index vertex attaining the min
  CVector eigvec;     // its ground eigenvector
  double gap = 0.0;   // spectral gap above lambda_min at the worst vertex
  RVector lambdas;    // per-vertex minimal eigenvalues
};

class DirectionField {
 public:
  DirectionField(const DesignProjector& p)
      : d_(p.dim()),
        m_(p.m()),
        n_(d_ * d_ - 1),
        scale_(std::sqrt(static_cast<double>(d_) * (d_ - 1))),
        basis_(gell_mann_basis(d_)) {
    const SimplexFrame frame = simplex_frame(p);
    // Columns normalized to unit length so every direction has unit Bloch norm.
    uhat_ = frame.u * std::sqrt(static_cast<double>(m_) / n_);
  }

  int d() const { return d_; }
  int m() const { return m_; }
  int n() const { return n_; }
  const RMatrix& uhat() const { return uhat_; }

  CMatrix direction(const RMatrix& o, int j) const {
    const RVector c = o.transpose() * uhat_.col(j);
    CMatrix b = CMatrix::Zero(d_, d_);
    for (int a = 0; a < n_; ++a) b += scale_ * c(a) * basis_[a].mat();
    return b;
  }

  VertexState evaluate(const RMatrix& o) const {
    VertexState st;
    st.lambdas.resize(m_);
    st.g = std::numeric_limits<double>::infinity();
    for (int j = 0; j < m_; ++j) {
      Eigen::SelfAdjointEigenSolver<CMatrix> solver(direction(o, j), Eigen::EigenvaluesOnly);
      if (solver.info() != Eigen::Success) throw NumericalError("cp_search: eigensolver failed");
      st.lambdas(j) = solver.eigenvalues()(0);
      if (st.lambdas(j) < st.g) {
        st.g = st.lambdas(j);
        st.worst = j;
      }
    }
    if (!std::isfinite(st.g)) throw NumericalError("cp_search: non-finite objective");
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(direction(o, st.worst));
    st.eigvec = solver.eigenvectors().col(0);
    st.gap = solver.eigenvalues()(1) - solver.eigenvalues()(0);
    return st;
  }

  // Euclidean ascent direction for lambda_min of one vertex:
  // d lambda / dO_{ab} = uhat_{a,j} * scale * Re(v^dag D_b v).
  RMatrix vertex_gradient(int j, const CVector& v) const {
    RVector w(n_);
    for (int b = 0; b < n_; ++b) w(b) = (v.adjoint() * basis_[b].mat() * v)(0).real() * scale_;
    return uhat_.col(j) * w.transpose();
  }

  RMatrix softmin_gradient(const RMatrix& o, const VertexState& st, double temperature) const {
    RMatrix grad = RMatrix::Zero(n_, n_);
    double total = 0.0;
    for (int j = 0; j < m_; ++j) {
      const double wj = std::exp(-(st.lambdas(j) - st.g) / temperature);
      if (wj < 1e-12) continue;
      Eigen::SelfAdjointEigenSolver<CMatrix> solver(direction(o, j));
      grad += wj * vertex_gradient(j, solver.eigenvectors().col(0));
      total += wj;
    }
    return grad / total;
  }

 private:
  int d_;
  int m_;
  int n_;
  double scale_;
  std::vector<HermitianOperator> basis_;
  RMatrix uhat_;
};

double kappa_of(double g) { return std::min(1.0, -1.0 / g); }

RestartTrace run_restart(const DirectionField& field, const SearchConfig& config, int restart_index,
                         RMatrix* best_o_out) {
  RestartTrace trace;
  trace.restart_index = restart_index;
  trace.seed = splitmix64(config.seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(restart_index + 1)));
  Rng rng(trace.seed);
  RMatrix o = random_orthogonal(field.n(), rng);

  VertexState st = field.evaluate(o);
  double best_g = st.g;
  RMatrix best_o = o;
  trace.improvements.emplace_back(0, kappa_of(best_g));

  double step = config.step0;
  int non_improving = 0;
  int iter = 0;
  for (iter = 1; iter <= config.max_iters; ++iter) {
    const bool degenerate = st.gap <= 1e-8 * std::max(1.0, std::abs(st.g));
    const double used_step = degenerate ? 0.5 * step : step;
    RMatrix grad = config.softmin_temperature > 0.0
                       ? field.softmin_gradient(o, st, config.softmin_temperature)
                       : field.vertex_gradient(st.worst, st.eigvec);
    const double gn = grad.norm();
    if (gn <= 1e-15) break;
    o = polar_retract(o + (used_step / gn) * grad);
    st = field.evaluate(o);
    if (st.g > best_g + 1e-14) {
      best_g = st.g;
      best_o = o;
      non_improving = 0;
      trace.improvements.emplace_back(iter, kappa_of(best_g));
    } else {
      ++non_improving;
      if (non_improving % 10 == 0) step *= 0.5;
      if (non_improving >= 50) break;
    }
  }
  trace.iterations_run = std::min(iter, config.max_iters);
  trace.best_kappa = kappa_of(best_g);
  *best_o_out = best_o;
  return trace;
}

}  // namespace

double search_objective(const DesignProjector& p, const RMatrix& o) {
  const DirectionField field(p);
  if (o.rows() != field.n() || o.cols() != field.n())
    throw DimensionError("search_objective: O must be (d^2-1) x (d^2-1)");
  return kappa_of(field.evaluate(o).g);
}

SearchResult cp_search(const DesignProjector& p, const SearchConfig& config) {
  if (config.restarts < 1) throw DomainError("cp_search: restarts must be >= 1");
  if (config.max_iters < 0) throw DomainError("cp_search: max_iters must be >= 0");
  const DirectionField field(p);

  std::vector<RestartTrace> traces(static_cast<std::size_t>(config.restarts));
  std::vector<RMatrix> best_os(static_cast<std::size_t>(config.restarts));

  int threads = config.threads > 0 ? config.threads : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min(threads, config.restarts));

  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&]() {
    for (;;) {
      const int r = next.fetch_add(1);
      if (r >= config.restarts) return;
      try {
        traces[r] = run_restart(field, config, r, &best_os[r]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  // Deterministic merge: the maximum kappa, ties to the lowest restart index.
  int best_r = 0;
  for (int r = 1; r < config.restarts; ++r)
    if (traces[r].best_kappa > traces[best_r].best_kappa) best_r = r;

  SearchResult result;
  result.best_kappa = traces[best_r].best_kappa;
  result.floor = 1.0 / (p.dim() - 1);
  result.restarts_run = config.restarts;
  result.seed = config.seed;
  result.iterations = std::move(traces);

  const RMatrix& o = best_os[best_r];
  result.witness.reserve(static_cast<std::size_t>(field.m()));
  for (int j = 0; j < field.m(); ++j)
    result.witness.emplace_back(HermitianOperator(result.best_kappa * field.direction(o, j)));

  const int d = p.dim();
  const double lambda = field.m() * d * result.best_kappa * result.best_kappa / (d + 1.0);
  double worst = 0.0;
  for (int j = 0; j < field.m(); ++j)
    for (int k = 0; k < field.m(); ++k)
      worst = std::max(worst, std::abs(hs_inner(result.witness[j].op(), result.witness[k].op()) -
                                       lambda * p.matrix()(j, k)));
  result.witness_gram_residual = worst;
  return result;
}

}  // namespace conical
