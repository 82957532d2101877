#include "conical/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace conical {

std::string canonical_double(double v) {
  if (!std::isfinite(v)) throw NumericalError("canonical_double: non-finite value");
  if (v == 0.0) return "0";  // normalizes -0
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

// Minimal JSON emitter with explicit key order.
class JsonEmitter {
 public:
  void begin_object() {
    separate();
    out_ += '{';
    stack_.push_back(true);
  }
  void end_object() {
    out_ += '}';
    stack_.pop_back();
  }
  void begin_array() {
    separate();
    out_ += '[';
    stack_.push_back(true);
  }
  void end_array() {
    out_ += ']';
    stack_.pop_back();
  }
  void key(const std::string& k) {
    separate();
    quote(k);
    out_ += ':';
    pending_value_ = true;
  }
  void value(double v) {
    separate();
    out_ += canonical_double(v);
  }
  void value(int v) { value_integer(static_cast<long long>(v)); }
  void value(std::uint64_t v) {
    separate();
    out_ += std::to_string(v);
  }
  void value(bool v) {
    separate();
    out_ += v ? "true" : "false";
  }
  void value(const std::string& v) {
    separate();
    quote(v);
  }
  std::string str() && { return std::move(out_); }

 private:
  void value_integer(long long v) {
    separate();
    out_ += std::to_string(v);
  }
  void separate() {
    if (pending_value_) {
      pending_value_ = false;
      return;
    }
    if (!stack_.empty()) {
      if (!stack_.back()) out_ += ',';
      stack_.back() = false;
    }
  }
  void quote(const std::string& s) {
    out_ += '"';
    for (char c : s) {
      switch (c) {
        case '"': out_ += "\\\""; break;
        case '\\': out_ += "\\\\"; break;
        case '\n': out_ += "\\n"; break;
        case '\t': out_ += "\\t"; break;
        case '\r': out_ += "\\r"; break;
        default:
          if (static_cast<unsigned char>(c) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof(buf), "\\u%04x", c);
            out_ += buf;
          } else {
            out_ += c;
          }
      }
    }
    out_ += '"';
  }

  std::string out_;
  std::vector<bool> stack_;
  bool pending_value_ = false;
};

void emit_cmatrix(JsonEmitter& j, const CMatrix& m) {
  j.begin_array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    j.begin_array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      j.begin_array();
      j.value(m(r, c).real());
      j.value(m(r, c).imag());
      j.end_array();
    }
    j.end_array();
  }
  j.end_array();
}

void emit_rmatrix(JsonEmitter& j, const RMatrix& m) {
  j.begin_array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    j.begin_array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) j.value(m(r, c));
    j.end_array();
  }
  j.end_array();
}

using json = nlohmann::ordered_json;

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw IoError(std::string("JSON parse error: ") + e.what());
  }
}

CMatrix cmatrix_from_json(const json& node) {
  if (!node.is_array() || node.empty()) throw IoError("matrix: expected a non-empty array of rows");
  const std::size_t rows = node.size();
  const std::size_t cols = node[0].size();
  CMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!node[r].is_array() || node[r].size() != cols) throw IoError("matrix: ragged rows");
    for (std::size_t c = 0; c < cols; ++c) {
      const auto& cell = node[r][c];
      if (!cell.is_array() || cell.size() != 2) throw IoError("matrix: entries must be [re, im] pairs");
      m(r, c) = Complex(cell[0].get<double>(), cell[1].get<double>());
    }
  }
  return m;
}

}  // namespace

DesignFile make_design_file(const ConicalDesign& design, std::string kind, std::string generator,
                            std::uint64_t seed, std::vector<std::pair<std::string, double>> params) {
  DesignFile file;
  file.dimension = design.dim();
  file.kind = std::move(kind);
  file.generator = std::move(generator);
  file.seed = seed;
  file.parameters = std::move(params);
  file.operators.reserve(design.elements().size());
  for (const auto& a : design.elements()) file.operators.push_back(a.mat());
  return file;
}

ConicalDesign to_design(const DesignFile& file) {
  std::vector<HermitianOperator> elements;
  elements.reserve(file.operators.size());
  try {
    for (const auto& m : file.operators) elements.emplace_back(m);
    return ConicalDesign(file.dimension, std::move(elements));
  } catch (const Error& e) {
    throw IoError(std::string("design file does not hold a valid operator family: ") + e.what());
  }
}

std::string to_json(const DesignFile& file) {
  JsonEmitter j;
  j.begin_object();
  j.key("dimension");
  j.value(file.dimension);
  j.key("kind");
  j.value(file.kind);
  j.key("operators");
  j.begin_array();
  for (const auto& m : file.operators) emit_cmatrix(j, m);
  j.end_array();
  j.key("metadata");
  j.begin_object();
  j.key("generator");
  j.value(file.generator);
  j.key("seed");
  j.value(file.seed);
  j.key("parameters");
  j.begin_object();
  for (const auto& [k, v] : file.parameters) {
    j.key(k);
    j.value(v);
  }
  j.end_object();
  j.end_object();
  j.end_object();
  return std::move(j).str();
}

std::string to_json(const VerificationReport& report) {
  JsonEmitter j;
  j.begin_object();
  j.key("is_design");
  j.value(report.is_design);
  j.key("tol");
  j.value(report.tol);
  j.key("residuals");
  j.begin_object();
  j.key("cond_ii");
  j.value(report.cond_ii);
  j.key("cond_iii");
  j.value(report.cond_iii);
  j.key("cond_iv");
  j.value(report.cond_iv);
  j.key("cond_v");
  j.value(report.cond_v);
  j.key("cond_i_sampled");
  j.value(report.cond_i_sampled);
  j.end_object();
  j.key("k_s");
  j.value(report.k_s);
  j.key("k_a");
  j.value(report.k_a);
  j.key("k_plus");
  j.value(report.k_plus);
  j.key("k_minus");
  j.value(report.k_minus);
  j.key("spanning");
  j.value(report.spanning);
  j.key("cardinality_ok");
  j.value(report.cardinality_ok);
  j.key("unitary_samples");
  j.value(report.unitary_samples);
  if (report.parameters) {
    const auto& p = *report.parameters;
    j.key("parameters");
    j.begin_object();
    j.key("t");
    j.value(p.t);
    j.key("kappa");
    j.value(p.kappa);
    j.key("k_s");
    j.value(p.k_s);
    j.key("k_a");
    j.value(p.k_a);
    j.key("k_plus");
    j.value(p.k_plus);
    j.key("k_minus");
    j.value(p.k_minus);
    j.key("per_element");
    j.begin_array();
    for (const auto& [t, kappa] : p.per_element) {
      j.begin_array();
      j.value(t);
      j.value(kappa);
      j.end_array();
    }
    j.end_array();
    j.end_object();
  }
  j.end_object();
  return std::move(j).str();
}

std::string to_json(const SearchResult& result, int dim) {
  const auto basis = gell_mann_basis(dim);
  JsonEmitter j;
  j.begin_object();
  j.key("dimension");
  j.value(dim);
  j.key("m");
  j.value(static_cast<int>(result.witness.size()));
  j.key("best_kappa");
  j.value(result.best_kappa);
  j.key("floor");
  j.value(result.floor);
  j.key("restarts_run");
  j.value(result.restarts_run);
  j.key("seed");
  j.value(result.seed);
  j.key("witness_gram_residual");
  j.value(result.witness_gram_residual);
  j.key("witness");
  j.begin_array();
  for (const auto& b : result.witness) {
    j.begin_array();
    for (const auto& d_a : basis) j.value(hs_inner(d_a, b.op()));
    j.end_array();
  }
  j.end_array();
  j.key("iterations");
  j.begin_array();
  for (const auto& trace : result.iterations) {
    j.begin_object();
    j.key("restart");
    j.value(trace.restart_index);
    j.key("seed");
    j.value(trace.seed);
    j.key("iterations_run");
    j.value(trace.iterations_run);
    j.key("best_kappa");
    j.value(trace.best_kappa);
    j.key("trace");
    j.begin_array();
    for (const auto& [iter, kappa] : trace.improvements) {
      j.begin_array();
      j.value(iter);
      j.value(kappa);
      j.end_array();
    }
    j.end_array();
    j.end_object();
  }
  j.end_array();
  j.end_object();
  return std::move(j).str();
}

std::string to_json(const DecompositionReport& report) {
  JsonEmitter j;
  j.begin_object();
  j.key("family");
  j.value(std::string(report.target.family == TargetFamily::Werner ? "werner" : "isotropic"));
  j.key("dimension");
  j.value(report.target.dim);
  j.key("parameter");
  j.value(report.target.parameter);
  j.key("weights");
  j.begin_array();
  for (double w : report.weights) j.value(w);
  j.end_array();
  j.key("states");
  j.begin_array();
  for (const auto& rho : report.states) emit_cmatrix(j, rho.mat());
  j.end_array();
  j.key("residual");
  j.value(report.residual);
  j.key("flags");
  j.begin_object();
  j.key("homogeneous");
  j.value(report.homogeneous);
  j.key("pure");
  j.value(report.pure);
  j.key("ideal");
  j.value(report.ideal);
  j.end_object();
  j.key("design_source");
  j.value(report.design_source);
  j.end_object();
  return std::move(j).str();
}

std::string projector_to_json(const RMatrix& p, int dim) {
  JsonEmitter j;
  j.begin_object();
  j.key("m");
  j.value(static_cast<int>(p.rows()));
  j.key("dimension");
  j.value(dim);
  j.key("matrix");
  emit_rmatrix(j, p);
  j.end_object();
  return std::move(j).str();
}

DesignFile parse_design_file(const std::string& text) {
  const json node = parse_json(text);
  try {
    DesignFile file;
    file.dimension = node.at("dimension").get<int>();
    file.kind = node.value("kind", std::string{});
    for (const auto& op : node.at("operators")) file.operators.push_back(cmatrix_from_json(op));
    if (node.contains("metadata")) {
      const auto& meta = node["metadata"];
      file.generator = meta.value("generator", std::string{});
      file.seed = meta.value("seed", std::uint64_t{0});
      if (meta.contains("parameters"))
        for (const auto& [k, v] : meta["parameters"].items())
          file.parameters.emplace_back(k, v.get<double>());
    }
    return file;
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed design file: ") + e.what());
  }
}

std::pair<RMatrix, int> parse_projector_file(const std::string& text) {
  const json node = parse_json(text);
  try {
    const int m = node.at("m").get<int>();
    const int dim = node.at("dimension").get<int>();
    const auto& rows = node.at("matrix");
    if (static_cast<int>(rows.size()) != m) throw IoError("projector file: matrix size disagrees with m");
    RMatrix p(m, m);
    for (int r = 0; r < m; ++r) {
      if (static_cast<int>(rows[r].size()) != m) throw IoError("projector file: ragged matrix");
      for (int c = 0; c < m; ++c) p(r, c) = rows[r][c].get<double>();
    }
    return {p, dim};
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed projector file: ") + e.what());
  }
}

DecompositionReport parse_decomposition_report(const std::string& text) {
  const json node = parse_json(text);
  try {
    DecompositionReport report;
    const std::string family = node.at("family").get<std::string>();
    if (family == "werner")
      report.target.family = TargetFamily::Werner;
    else if (family == "isotropic")
      report.target.family = TargetFamily::Isotropic;
    else
      throw IoError("decomposition report: unknown family \"" + family + "\"");
    report.target.dim = node.at("dimension").get<int>();
    report.target.parameter = node.at("parameter").get<double>();
    report.weights = node.at("weights").get<std::vector<double>>();
    for (const auto& s : node.at("states")) report.states.emplace_back(cmatrix_from_json(s));
    report.residual = node.at("residual").get<double>();
    const auto& flags = node.at("flags");
    report.homogeneous = flags.at("homogeneous").get<bool>();
    report.pure = flags.at("pure").get<bool>();
    report.ideal = flags.at("ideal").get<bool>();
    report.design_source = node.value("design_source", std::string{});
    return report;
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed decomposition report: ") + e.what());
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw IoError(std::string("malformed decomposition report: ") + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path + " for reading");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << content;
  if (!out) throw IoError("failed writing " + path);
}

}  // namespace conical
