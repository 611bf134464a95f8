#pragma once

#include "qgt/wsa.hpp"

namespace qgt {

// Right module over an FDAlgebra: one fiber per vertex, one action matrix
// per arrow mapping the source fiber into the target fiber.
struct RightModule {
  const FDAlgebra* alg = nullptr;
  std::map<int, size_t> fiber;
  std::map<std::string, ExactMatrix> action;

  size_t total() const;
  bool is_zero() const { return total() == 0; }
  ExactMatrix act_path(const Path& p) const;
  // per-relation violations (nonzero induced action); empty when well-defined
  std::vector<std::string> relation_violations() const;
};

RightModule simple_module(const FDAlgebra& a, int i);
RightModule projective_module(const FDAlgebra& a, int i);

// Direct sum of projectives, by component vertices.
struct ProjSum {
  std::vector<int> comps;
  size_t dim(const FDAlgebra& a) const;
};

// Map of projective sums: entry[i][j] lies in e_{to[i]} A e_{from[j]} and
// acts by left multiplication.
struct ModuleMap {
  ProjSum from, to;
  std::vector<std::vector<PathExpr>> entry;

  static ModuleMap of(ProjSum to, ProjSum from, std::vector<std::vector<PathExpr>> e) {
    return ModuleMap{std::move(from), std::move(to), std::move(e)};
  }
};

ExactMatrix module_map_matrix(const FDAlgebra& a, const ModuleMap& m);

struct Cover {
  ProjSum source;
  ExactMatrix matrix;  // module coords x source coords
};

Cover projective_cover(const RightModule& m);
RightModule syzygy(const RightModule& m);

struct PeriodResult {
  std::optional<int> period;
  int steps_tried = 0;
  std::vector<size_t> dims;  // dim of each syzygy along the way
};

PeriodResult period_of_simple(const FDAlgebra& a, int i, int max_steps = 8);

struct ResolutionCertificate {
  int vertex = 0;
  std::string case_label;
  size_t dim_pz = 0, dim_pminus = 0, dim_pplus = 0;
  size_t rank_d1 = 0, rank_d2 = 0, rank_d3 = 0;
  size_t ker_d1 = 0, ker_d2 = 0, ker_d3 = 0;
  bool exact = false;
  std::string failure;
};

// Checks the four-term sequence P_z -> P_z^- -> P_z^+ -> P_z around the
// simple at z: compositions vanish and kernels match images by dimension.
// Throws NotAComplex / NotExact with the failing step.
ResolutionCertificate verify_sequence(
    const FDAlgebra& a, int z, const ModuleMap& d3, const ModuleMap& d2,
    const ModuleMap& d1,
    const std::map<std::string, Scalar>& arrow_rescale = {});

struct CatalogMaps {
  ModuleMap d1, d2, d3;
  std::string case_label;
};

// The middle map attached to the two commutativity relations starting at z,
// rows (t(alpha), t(bar)); columns (t(f(alpha)), t(f(bar))).
// base_blocks/base_reg, when given, select the reported case label and gate
// the unsupported two-V1-neighbour configuration.
CatalogMaps middle_map_catalog(const TriangulationData& td, int z,
                               const BlockDecomposition* base_blocks = nullptr,
                               const RegularityReport* base_reg = nullptr);

}  // namespace qgt
