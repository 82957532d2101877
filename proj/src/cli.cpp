#include "conical/cli.hpp"

#include <CLI11.hpp>
#include <iostream>
#include <optional>

#include "conical/constructors.hpp"
#include "conical/io.hpp"
#include "conical/polytope.hpp"
#include "conical/werner.hpp"

namespace conical::cli {

namespace {

struct ConstructOptions {
  std::string kind;
  int dim = 0;
  double kappa = -1.0;  // default: in-ball bound
  double trace = -1.0;  // default: 1/d (POVM normalization)
  std::string projector_path;
  std::uint64_t seed = 0;
  std::string output;
};

int cmd_construct(const ConstructOptions& opt, std::ostream& out) {
  const double kappa = opt.kappa > 0.0 ? opt.kappa : 1.0 / (opt.dim - 1);
  const double trace = opt.trace > 0.0 ? opt.trace : 1.0 / opt.dim;
  std::vector<std::pair<std::string, double>> params;
  std::optional<ConicalDesign> design;
  if (opt.kind == "sic") {
    design = sic_fixture(opt.dim);
  } else if (opt.kind == "mub") {
    design = mub_prime(opt.dim);
  } else if (opt.kind == "sim") {
    design = sim_inball(opt.dim, kappa, trace);
    params = {{"kappa", kappa}, {"trace", trace}};
  } else if (opt.kind == "mum") {
    design = mum_inball(opt.dim, kappa);
    params = {{"kappa", kappa}};
  } else {
    if (opt.projector_path.empty())
      throw DomainError("construct --kind theorem3 requires --projector");
    const auto [mat, dim] = parse_projector_file(read_file(opt.projector_path));
    if (dim != opt.dim) throw DomainError("projector file dimension disagrees with --dim");
    design = theorem3_design(validate_projector(mat, dim), trace);
    params = {{"trace", trace}};
  }
  std::string generator = "construct --kind " + opt.kind;
  const DesignFile file = make_design_file(*design, opt.kind, std::move(generator), opt.seed, params);
  write_file(opt.output, to_json(file));
  out << "wrote " << opt.output << ": kind=" << opt.kind << " d=" << opt.dim << " m=" << design->size()
      << "\n";
  return 0;
}

struct VerifyOptions {
  std::string path;
  double tol = kDefaultTol;
  int unitary_samples = 20;
  bool json = false;
};

int cmd_verify(const VerifyOptions& opt, std::ostream& out) {
  const ConicalDesign design = to_design(parse_design_file(read_file(opt.path)));
  const VerificationReport report = verify(design, opt.tol, opt.unitary_samples);
  if (opt.json) {
    out << to_json(report) << "\n";
  } else {
    out << (report.is_design ? "conical 2-design" : "NOT a conical 2-design") << " (m=" << design.size()
        << ", d=" << design.dim() << ", tol=" << opt.tol << ")\n";
    out << "  residuals: cond_ii=" << report.cond_ii << " cond_iii=" << report.cond_iii
        << " cond_iv=" << report.cond_iv << " cond_v=" << report.cond_v
        << " cond_i_sampled=" << report.cond_i_sampled << "\n";
    out << "  k_s=" << report.k_s << " k_a=" << report.k_a << " k_plus=" << report.k_plus
        << " k_minus=" << report.k_minus << "\n";
    out << "  spanning=" << (report.spanning ? "yes" : "no")
        << " cardinality_ok=" << (report.cardinality_ok ? "yes" : "no") << "\n";
    if (report.parameters)
      out << "  t=" << report.parameters->t << " kappa=" << report.parameters->kappa << "\n";
  }
  return report.is_design ? 0 : 1;
}

struct SearchOptions {
  std::string projector_path;
  SearchConfig config;
  std::string output;
};

int cmd_search(const SearchOptions& opt, std::ostream& out) {
  const auto [mat, dim] = parse_projector_file(read_file(opt.projector_path));
  const DesignProjector p = validate_projector(mat, dim);
  const SearchResult result = cp_search(p, opt.config);
  out << "best kappa = " << result.best_kappa << " over " << result.restarts_run
      << " restarts (floor = 1/(d-1) = " << result.floor << ")\n";
  if (!opt.output.empty()) {
    write_file(opt.output, to_json(result, dim));
    out << "wrote " << opt.output << "\n";
  }
  return 0;
}

struct DecomposeOptions {
  std::string family;
  int dim = 0;
  double param = 0.0;
  std::string design_path;
  std::string output;
};

int cmd_decompose(const DecomposeOptions& opt, std::ostream& out) {
  std::optional<ConicalDesign> source;
  if (!opt.design_path.empty()) source = to_design(parse_design_file(read_file(opt.design_path)));
  const DecompositionReport report =
      opt.family == "werner" ? symmetric_decomposition(werner_state(opt.dim, opt.param), source)
                             : symmetric_decomposition(isotropic_state(opt.dim, opt.param), source);
  write_file(opt.output, to_json(report));
  out << "wrote " << opt.output << ": family=" << opt.family << " d=" << opt.dim
      << " parameter=" << opt.param << " m=" << report.states.size() << " residual=" << report.residual
      << "\n  flags: homogeneous=" << (report.homogeneous ? "yes" : "no")
      << " pure=" << (report.pure ? "yes" : "no") << " ideal=" << (report.ideal ? "yes" : "no")
      << "\n  source: " << report.design_source << "\n";
  return 0;
}

struct ProjectorOptions {
  std::string family;
  int dim = 0;
  int m = 0;
  std::string output;
};

int cmd_projector(const ProjectorOptions& opt, std::ostream& out) {
  RMatrix p;
  if (opt.family == "centering") {
    p = centering_projector(opt.m > 0 ? opt.m : opt.dim * opt.dim);
  } else {
    p = mub_block_projector(opt.dim);
  }
  write_file(opt.output, projector_to_json(p, opt.dim));
  out << "wrote " << opt.output << ": family=" << opt.family << " d=" << opt.dim << " m=" << p.rows()
      << "\n";
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"conical 2-design toolkit: construct, verify, search, decompose"};
  app.require_subcommand(1);

  ConstructOptions construct;
  auto* c = app.add_subcommand("construct", "construct a design and write it as JSON");
  c->add_option("--kind", construct.kind, "design kind")
      ->required()
      ->check(CLI::IsMember({"sic", "mub", "sim", "mum", "theorem3"}));
  c->add_option("--dim", construct.dim, "Hilbert space dimension")->required()->check(CLI::Range(2, 64));
  c->add_option("--kappa", construct.kappa, "contraction parameter (default: in-ball bound 1/(d-1))");
  c->add_option("--trace", construct.trace, "element trace (default: 1/d)");
  c->add_option("--projector", construct.projector_path, "projector JSON file (theorem3 only)");
  c->add_option("--seed", construct.seed, "seed recorded in metadata");
  c->add_option("-o,--output", construct.output, "output design file")->required();

  VerifyOptions verify_opt;
  auto* v = app.add_subcommand("verify", "verify a design file against the five conditions");
  v->add_option("design", verify_opt.path, "design JSON file")->required();
  v->add_option("--tol", verify_opt.tol, "relative residual tolerance");
  v->add_option("--unitary-samples", verify_opt.unitary_samples, "sampled unitaries for condition (i)");
  v->add_flag("--json", verify_opt.json, "print the report as JSON");

  SearchOptions search;
  auto* s = app.add_subcommand("search", "lower-bound c_P for a projector by seeded ascent");
  s->add_option("--projector", search.projector_path, "projector JSON file")->required();
  s->add_option("--restarts", search.config.restarts, "independent restarts");
  s->add_option("--iters", search.config.max_iters, "iterations per restart");
  s->add_option("--seed", search.config.seed, "master seed");
  s->add_option("--step0", search.config.step0, "initial step size");
  s->add_option("--threads", search.config.threads, "worker threads (0: all cores)");
  s->add_option("-o,--output", search.output, "result JSON file");

  DecomposeOptions decompose;
  auto* dec = app.add_subcommand("decompose", "symmetric decomposition of a Werner/isotropic state");
  dec->add_option("--family", decompose.family, "state family")
      ->required()
      ->check(CLI::IsMember({"werner", "isotropic"}));
  dec->add_option("--dim", decompose.dim, "Hilbert space dimension")->required()->check(CLI::Range(2, 64));
  dec->add_option("--param", decompose.param, "p (werner) or F (isotropic)")->required();
  dec->add_option("--design", decompose.design_path, "source design file");
  dec->add_option("-o,--output", decompose.output, "output report file")->required();

  ProjectorOptions projector;
  auto* pr = app.add_subcommand("projector", "write a canonical projector file");
  pr->add_option("--family", projector.family, "projector family")
      ->required()
      ->check(CLI::IsMember({"centering", "mub-blocks"}));
  pr->add_option("--dim", projector.dim, "Hilbert space dimension")->required()->check(CLI::Range(2, 64));
  pr->add_option("-m", projector.m, "cardinality (centering only; default d^2)");
  pr->add_option("-o,--output", projector.output, "output projector file")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (*c) return cmd_construct(construct, out);
    if (*v) return cmd_verify(verify_opt, out);
    if (*s) return cmd_search(search, out);
    if (*dec) return cmd_decompose(decompose, out);
    if (*pr) return cmd_projector(projector, out);
    err << "no subcommand given\n";
    return 2;
  } catch (const NoDecompositionError& e) {
    err << "no symmetric decomposition exists: " << e.what() << "\n";
    return 1;
  } catch (const NotADesignError& e) {
    err << e.what() << "\n";
    return 1;
  } catch (const InvalidProjectorError& e) {
    err << e.what() << "\n";
    for (const auto& violation : e.violations()) err << "  - " << violation << "\n";
    return 2;
  } catch (const ConstructionUnavailableError& e) {
    err << e.what() << " (required kappa " << e.required_kappa() << ", available " << e.available_kappa()
        << ")\n";
    return 2;
  } catch (const DomainError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const DimensionError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    err << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return 3;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  args.reserve(static_cast<std::size_t>(argc > 0 ? argc - 1 : 0));
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace conical::cli
