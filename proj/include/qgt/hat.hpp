#pragma once

#include "qgt/modules.hpp"

namespace qgt {

// Input data of a 2-regularization: a biregular quiver with its cycle
// permutation g, orbit weights and parameters, plus one new weight per
// block of 1-regular vertices.
struct HatSpec {
  Quiver base;
  std::map<std::string, std::string> g;  // total on base arrows
  std::map<std::string, int> m;          // per arrow, constant on g-orbits
  std::map<std::string, Scalar> c;
  std::vector<int> v2_weights;  // m_i per 4-cycle block, >= 1
  std::vector<int> v1_weights;  // m'_j per 2-cycle block, >= 2
  Field field = Field::rationals();
  int cap = 0;
};

struct HatStructure {
  BlockDecomposition base_blocks;  // V2 blocks first, then V1
  RegularityReport base_reg;
  TriangulationData hat;  // the 2-regular extension with total f
  std::vector<std::string> xi, mu;  // per V2 block
  std::vector<std::string> rho;     // per V1 block
};

// Builds the extended 2-regular quiver: a 2-cycle through the two 1-vertices
// of each 4-cycle block and a loop at the 1-vertex of each 2-cycle block.
// Throws ExcludedQuiver for the 8-arrow spherical shape.
HatStructure hat_quiver(const HatSpec& spec);

struct HatRelations {
  std::vector<TaggedRelation> r0, r1, r2;
  bool admissible = false;  // all m_i >= 2 and m'_j >= 3

  std::vector<PathExpr> exprs() const;
};

HatRelations hat_relations(const HatSpec& spec, const HatStructure& hs);

FDAlgebra build_hat(const HatSpec& spec, const HatStructure& hs);

// The base algebra presented on the biregular quiver itself: relations of
// the 2-regular part plus the length-3 relations around each block.
std::vector<TaggedRelation> base_relations(const HatSpec& spec, const HatStructure& hs);
FDAlgebra build_base(const HatSpec& spec, const HatStructure& hs);

struct TrivialWeightsCheck {
  bool ok = false;
  bool substitution_ok = false;
  bool dims_ok = false;
  bool gabriel_ok = false;
  std::string first_failure;
};

// With weights m_i = 1, m'_j = 2, replacing the new arrows by the paths they
// force must send every new relation into the base ideal, and the extension
// must reproduce the base dimensions and Gabriel quiver.
TrivialWeightsCheck check_trivial_weights_iso(const FDAlgebra& base_alg,
                                              const HatSpec& spec);

struct SymmetrizingForm {
  // value on the chosen socle monomial per vertex; zero on all other basis paths
  std::map<FDAlgebra::NodeId, Scalar> socle_value;
  std::map<int, Scalar> lambda;  // per-vertex unit discrepancy of the cycle path

  Scalar eval(const FDAlgebra& a, const FDAlgebra::Vec& v) const;
};

// The linear form vanishing off the socle and taking 1/c on each full cycle;
// throws SocleMismatch when a projective socle is not spanned that way.
SymmetrizingForm hat_symmetrizing_form(const FDAlgebra& a, const TriangulationData& td);

struct FormCertificate {
  bool symmetric = false;
  bool nondegenerate = false;
  std::string witness;
};

FormCertificate certify_symmetric_nondegenerate(const FDAlgebra& a,
                                                const SymmetrizingForm& t);

}  // namespace qgt
