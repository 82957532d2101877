#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "conical/design.hpp"
#include "conical/polytope.hpp"
#include "conical/werner.hpp"

namespace conical {

/// Design file envelope.  Matrices serialize as nested row-major arrays of
/// [re, im] pairs; files round-trip bit-identically through load/save.
struct DesignFile {
  int dimension = 0;
  std::string kind;
  std::vector<CMatrix> operators;
  std::string generator;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, double>> parameters;
};

DesignFile make_design_file(const ConicalDesign& design, std::string kind, std::string generator,
                            std::uint64_t seed, std::vector<std::pair<std::string, double>> params);
ConicalDesign to_design(const DesignFile& file);

// Canonical serialization: fixed key order, floats at 17 significant digits,
// so identical inputs always produce byte-identical files.
std::string to_json(const DesignFile& file);
std::string to_json(const VerificationReport& report);
std::string to_json(const SearchResult& result, int dim);
std::string to_json(const DecompositionReport& report);
std::string projector_to_json(const RMatrix& p, int dim);

DesignFile parse_design_file(const std::string& text);
/// Projector files: {"m": int, "dimension": int, "matrix": [[real]]}.
std::pair<RMatrix, int> parse_projector_file(const std::string& text);
DecompositionReport parse_decomposition_report(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

/// 17-significant-digit locale-independent float rendering.
std::string canonical_double(double v);

}  // namespace conical
