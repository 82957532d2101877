// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "conical/constructors.hpp"
#include "conical/design.hpp"
#include "conical/polytope.hpp"
#include "conical/werner.hpp"

using namespace conical;

namespace {

int g_failures = 0;

struct Criterion {
  explicit Criterion(std::string name) : name_(std::move(name)) {}

  void require(bool ok, const std::string& detail) {
    if (!ok && failures_.empty()) first_failure_ = detail;
    if (!ok) failures_.push_back(detail);
    ++checks_;
  }

  void finish(double seconds) {
    const bool ok = failures_.empty();
    if (!ok) ++g_failures;
    std::printf("%s %-38s (%d checks, %.2fs)%s%s\n", ok ? "PASS" : "FAIL", name_.c_str(), checks_,
                seconds, ok ? "" : " first failure: ", ok ? "" : first_failure_.c_str());
  }

  std::string name_;
  std::vector<std::string> failures_;
  std::string first_failure_;
  int checks_ = 0;
};

void run(const std::string& name, const std::function<void(Criterion&)>& body) {
  Criterion criterion(name);
  const auto start = std::chrono::steady_clock::now();
  try {
    body(criterion);
  } catch (const std::exception& e) {
    criterion.require(false, std::string("unexpected exception: ") + e.what());
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  criterion.finish(seconds);
}

std::string fmt(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

ConicalDesign random_psd_family(int d, int m, Rng& rng) {
  std::vector<HermitianOperator> elements;
  for (int j = 0; j < m; ++j) {
    CMatrix g(d, d);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) g(r, c) = Complex(rng.gaussian(), rng.gaussian());
    elements.emplace_back(g * g.adjoint());
  }
  return ConicalDesign(d, std::move(elements));
}

// Deterministic pool of constructed designs across d = 2..5.
ConicalDesign constructed_design(int index) {
  const int d = 2 + index % 4;
  const double inball = 1.0 / (d - 1);
  switch (index % 5) {
    case 0:
      return sim_inball(d, inball * (0.35 + 0.05 * (index % 6)), 1.0 / d);
    case 1:
      return mum_inball(d, inball * (0.4 + 0.05 * (index % 5)));
    case 2:
      return theorem3_design(validate_projector(centering_projector(d * d), d), 0.2 + 0.1 * (index % 4));
    case 3:
      return theorem3_design(validate_projector(mub_block_projector(d), d), 1.0);
    default:
      if (d == 4) return random_rotate(sim_inball(4, 0.25, 0.25), 1000 + index);
      return scale_design(d == 2 || d == 3 ? sic_fixture(d) : mub_prime(d), 0.5 + 0.04 * (index % 9));
  }
}

RMatrix bloch_gram(const ConicalDesign& design) {
  const auto bloch = design.bloch();
  const int m = design.size();
  RMatrix g(m, m);
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < m; ++k) g(j, k) = hs_inner(bloch[j].second.op(), bloch[k].second.op());
  return g;
}

}  // namespace

int main() {
  run("1: Theorem-1 five-way equivalence", [](Criterion& c) {
    const auto start = std::chrono::steady_clock::now();
    Rng rng(20160101);
    for (int i = 0; i < 100; ++i) {
      const bool expect_design = i < 50;
      const ConicalDesign family =
          expect_design ? constructed_design(i) : random_psd_family(2 + i % 4, (2 + i % 4) * (2 + i % 4) + i % 3, rng);
      const VerificationReport rep = verify(family, 1e-9);
      const bool v2 = rep.cond_ii_pass();
      c.require(v2 == rep.cond_iii_pass() && v2 == rep.cond_iv_pass() && v2 == rep.cond_v_pass(),
                "conditions (ii)-(v) disagree on family " + std::to_string(i));
      c.require(rep.is_design == expect_design,
                "family " + std::to_string(i) + " verdict " + (rep.is_design ? "true" : "false"));
      c.require(std::abs(rep.k_plus - 0.5 * (rep.k_s + rep.k_a)) <= 1e-9 * std::max(1.0, rep.k_plus) &&
                    std::abs(rep.k_minus - 0.5 * (rep.k_s - rep.k_a)) <= 1e-9 * std::max(1.0, std::abs(rep.k_minus)),
                "k_pm relation fails on family " + std::to_string(i));
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    c.require(seconds <= 60.0, "runtime " + fmt(seconds) + "s exceeds 60s");
  });

  run("2: canonical constants", [](Criterion& c) {
    const VerificationReport sic = verify(sic_fixture(2));
    c.require(std::abs(sic.k_s - 4.0 / 3.0) <= 1e-9, "SIC k_s = " + fmt(sic.k_s));
    c.require(sic.k_a <= 1e-10, "SIC k_a = " + fmt(sic.k_a));
    c.require(sic.parameters && std::abs(sic.parameters->t - 1.0) <= 1e-9 &&
                  std::abs(sic.parameters->kappa - 1.0) <= 1e-9,
              "SIC t/kappa differ from 1");
    for (int d : {2, 3}) {
      const int m = d * (d + 1);
      const VerificationReport mub = verify(mub_prime(d));
      c.require(std::abs(mub.k_s - 2.0 * m / (d * (d + 1.0))) <= 1e-9,
                "MUB d=" + std::to_string(d) + " k_s = " + fmt(mub.k_s));
      c.require(mub.k_a <= 1e-10, "MUB d=" + std::to_string(d) + " k_a = " + fmt(mub.k_a));
    }
  });

  run("3: Theorem-3 construction", [](Criterion& c) {
    const auto start = std::chrono::steady_clock::now();
    for (int d = 2; d <= 6; ++d) {
      const ConicalDesign sim = theorem3_design(validate_projector(centering_projector(d * d), d), 1.0 / d);
      const DesignParameters p = parameters(sim);
      c.require(std::abs(p.kappa - 1.0 / (d - 1)) <= 1e-9,
                "d=" + std::to_string(d) + " kappa = " + fmt(p.kappa));
      c.require(classify(sim).sim, "d=" + std::to_string(d) + " does not classify as a SIM");

      const double k2 = p.kappa * p.kappa;
      const double denom = static_cast<double>(d) * d * d * (d + 1);
      double worst = 0.0;
      for (int j = 0; j < sim.size(); ++j)
        for (int k = 0; k < sim.size(); ++k) {
          const double law = ((j == k ? d * d * k2 : 0.0) + d + 1 - k2) / denom;
          worst = std::max(worst, std::abs(hs_inner(sim[j], sim[k]) - law));
        }
      c.require(worst <= 1e-10, "d=" + std::to_string(d) + " SIM law deviation " + fmt(worst));
      if (d == 3) {
        c.require(std::abs(hs_inner(sim[0], sim[0]) - 1.0 / 18.0) <= 1e-10, "d=3 Gram diagonal");
        c.require(std::abs(hs_inner(sim[0], sim[1]) - 5.0 / 144.0) <= 1e-10, "d=3 Gram off-diagonal");
      }

      const ConicalDesign povm = induced_povm(sim);
      CMatrix sum = CMatrix::Zero(d, d);
      for (const auto& e : povm.elements()) sum += e.mat();
      c.require((sum - CMatrix::Identity(d, d)).norm() <= 1e-10, "d=" + std::to_string(d) + " POVM sum");
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    c.require(seconds <= 10.0, "runtime " + fmt(seconds) + "s exceeds 10s");
  });

  run("4: Theorem-2 round-trip", [](Criterion& c) {
    std::vector<ConicalDesign> designs;
    designs.push_back(sic_fixture(2));
    designs.push_back(sic_fixture(3));
    for (int d : {2, 3, 5}) designs.push_back(mub_prime(d));
    for (int d = 2; d <= 6; ++d)
      designs.push_back(theorem3_design(validate_projector(centering_projector(d * d), d), 1.0 / d));
    for (int d = 2; d <= 5; ++d) designs.push_back(mum_inball(d, 0.7 / (d - 1)));
    for (int d = 2; d <= 5; ++d) designs.push_back(sim_inball(d, 0.9 / (d - 1), 1.0 / d));
    designs.push_back(scale_design(sic_fixture(3), 0.8));
    designs.push_back(random_rotate(sic_fixture(2), 17));
    designs.push_back(random_rotate(mum_inball(3, 0.5), 18));

    for (std::size_t i = 0; i < designs.size(); ++i) {
      const ConicalDesign& design = designs[i];
      const int d = design.dim();
      const int m = design.size();
      try {
        const auto [lambda, p] = gram_projector(design);
        c.require(lambda <= m * d / (d + 1.0) + 1e-9, "design " + std::to_string(i) + " lambda bound");
        const double kappa = std::sqrt(lambda * (d + 1.0) / (m * d));
        const double eta = kappa * (d - 1.0);
        const ConicalDesign base = theorem3_design(p, 1.0);
        const RMatrix rebuilt = eta * eta * bloch_gram(base);
        c.require((rebuilt - bloch_gram(design)).cwiseAbs().maxCoeff() <= 1e-9,
                  "design " + std::to_string(i) + " Gram mismatch");
      } catch (const Error& e) {
        c.require(false, "design " + std::to_string(i) + " threw: " + e.what());
      }
    }
  });

  run("5: Theorem-4 equivalence", [](Criterion& c) {
    Rng rng(50505);
    for (int i = 0; i < 50; ++i) {
      const int d = 2 + i % 3;
      ConicalDesign design = (i % 3 == 0)   ? sim_inball(d, 0.8 / (d - 1), 1.0 / d)
                             : (i % 3 == 1) ? scale_design(mub_prime(d), 0.4 + 0.1 * (i % 6))
                                            : theorem3_design(validate_projector(centering_projector(d * d), d), 1.0);
      std::vector<BlochVector> vectors;
      for (const auto& [t, b] : design.bloch()) vectors.push_back(b);
      const bool corrupt = i % 2 == 0;
      if (corrupt) {
        const HermitianOperator h = random_hermitian(d, rng);
        CMatrix b = h.mat() - (h.trace() / d) * CMatrix::Identity(d, d);
        b *= std::sqrt(static_cast<double>(d) * (d - 1)) / b.norm() / d;  // well inside the body
        vectors[static_cast<std::size_t>(i % design.size())] = BlochVector(HermitianOperator(b));
      }
      std::vector<HermitianOperator> elements;
      for (const auto& b : vectors) elements.push_back(from_bloch(1.0 / d, b));
      const ConicalDesign rebuilt(d, elements);
      const VerificationReport rep = verify(rebuilt);
      const bool design_level = rep.is_design && classify(rebuilt).homogeneous;
      const bool bloch_level = verify_bloch_one_design(vectors).ok;
      c.require(bloch_level == design_level, "case " + std::to_string(i) + " verdicts disagree");
      c.require(design_level == !corrupt, "case " + std::to_string(i) + " unexpected verdict");
    }
  });

  run("6: search floor and rediscovery", [](Criterion& c) {
    SearchConfig zero;
    zero.restarts = 3;
    zero.max_iters = 0;
    for (int d = 2; d <= 5; ++d) {
      const SearchResult r1 = cp_search(validate_projector(centering_projector(d * d), d), zero);
      c.require(r1.best_kappa >= 1.0 / (d - 1) - 1e-9,
                "floor violated at d=" + std::to_string(d) + ": " + fmt(r1.best_kappa));
      const SearchResult r2 = cp_search(validate_projector(mub_block_projector(d), d), zero);
      c.require(r2.best_kappa >= 1.0 / (d - 1) - 1e-9, "MUB-blocks floor at d=" + std::to_string(d));
    }

    auto timed = [](const DesignProjector& p, const SearchConfig& config, double* seconds) {
      const auto start = std::chrono::steady_clock::now();
      const SearchResult result = cp_search(p, config);
      *seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      return result;
    };

    double sec2 = 0.0;
    const SearchResult d2 = timed(validate_projector(centering_projector(4), 2), SearchConfig{}, &sec2);
    c.require(d2.best_kappa >= 0.999, "d=2 best kappa = " + fmt(d2.best_kappa));
    c.require(sec2 <= 60.0, "d=2 runtime " + fmt(sec2) + "s exceeds 1 min");
    std::vector<HermitianOperator> elements;
    for (const auto& b : d2.witness) elements.push_back(from_bloch(1.0, b));
    c.require(classify(ConicalDesign(2, elements), 1e-3).projective,
              "d=2 witness does not classify as projective at 1e-3");

    double sec3 = 0.0;
    SearchConfig spec_budget;  // 32 restarts x 500 iterations
    const SearchResult d3 = timed(validate_projector(centering_projector(9), 3), spec_budget, &sec3);
    c.require(d3.best_kappa >= 0.95, "d=3 best kappa = " + fmt(d3.best_kappa));
    c.require(sec3 <= 300.0, "d=3 runtime " + fmt(sec3) + "s exceeds 5 min");
  });

  run("7: Werner thresholds", [](Criterion& c) {
    const std::vector<std::pair<int, double>> cases = {{2, 0.0}, {2, 0.2}, {3, 0.0}, {3, 0.2}, {3, 1.0 / 3.0}};
    for (const auto& [d, p] : cases) {
      const DecompositionReport report = symmetric_decomposition(werner_state(d, p));
      c.require(report.residual <= 1e-8,
                "d=" + std::to_string(d) + " p=" + fmt(p) + " residual " + fmt(report.residual));
      c.require(report.pure == (p <= 1e-9), "pure flag at d=" + std::to_string(d) + " p=" + fmt(p));
    }
    for (int d : {2, 3}) {
      const double over = (d - 1.0) / (2.0 * d) + 1e-3;
      bool threw = false;
      try {
        symmetric_decomposition(werner_state(d, over));
      } catch (const NoDecompositionError&) {
        threw = true;
      }
      c.require(threw, "no exception above the threshold at d=" + std::to_string(d));
    }
    const DecompositionReport tetra = symmetric_decomposition(werner_state(2, 0.0));
    const auto proj = sym_asym_projectors(2);
    c.require((reconstruct(tetra).mat() - proj.sym.mat() / 3.0).cwiseAbs().maxCoeff() <= 1e-10,
              "d=2 p=0 reconstruction is not Pi_sym/3");
  });

  run("8: isotropic bijection", [](Criterion& c) {
    for (double p : {0.0, 0.1, 0.24}) {
      const DecompositionReport werner = symmetric_decomposition(werner_state(2, p));
      const DecompositionReport back = isotropic_werner_transform(werner_isotropic_transform(werner));
      c.require(std::abs(back.target.parameter - p) <= 1e-12, "round trip at p=" + fmt(p));
      c.require(std::abs(back.residual - werner.residual) <= 1e-12, "residual drift at p=" + fmt(p));
    }
    for (int d : {2, 3, 5}) {
      const DecompositionReport at_one = symmetric_decomposition(werner_state(d, 0.0));
      c.require(std::abs(werner_isotropic_transform(at_one).target.parameter - 1.0 / d) <= 1e-10,
                "F(kappa=1) at d=" + std::to_string(d));
      const DecompositionReport at_zero = symmetric_decomposition(werner_state(d, (d - 1.0) / (2.0 * d)));
      c.require(std::abs(werner_isotropic_transform(at_zero).target.parameter - 1.0 / (d * d)) <= 1e-10,
                "F(kappa=0) at d=" + std::to_string(d));
    }
  });

  run("9: structural transpose", [](Criterion& c) {
    for (int d : {2, 3}) {
      const double residual = structural_transpose_check(sic_fixture_kets(d), 1e-9, 20);
      c.require(residual <= 1e-9, "d=" + std::to_string(d) + " Kraus residual " + fmt(residual));
    }
  });

  run("10: MUM counterexample", [](Criterion& c) {
    for (int d : {2, 3}) {
      const ConicalDesign sim = d == 2 ? induced_povm(sic_fixture(2))
                                       : theorem3_design(validate_projector(centering_projector(9), 3), 1.0 / 3.0);
      const ConicalDesign ce = mum_counterexample(sim);
      c.require(ce.size() == d * (d + 1), "cardinality at d=" + std::to_string(d));
      c.require(verify(ce).is_design, "counterexample fails verify at d=" + std::to_string(d));
      CMatrix sum = CMatrix::Zero(d, d);
      for (const auto& e : ce.elements()) sum += e.mat();
      c.require((sum - CMatrix::Identity(d, d)).norm() <= 1e-10, "POVM sum at d=" + std::to_string(d));
      const Classification cls = classify(ce);
      c.require(!cls.mum_compatible && cls.mum_residual >= 1e-2,
                "MUM law residual " + fmt(cls.mum_residual) + " at d=" + std::to_string(d));
    }
  });

  std::printf("%d/10 criteria passed\n", 10 - g_failures);
  return g_failures;
}
