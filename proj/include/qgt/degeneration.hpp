#pragma once

#include "qgt/wsa.hpp"

namespace qgt {

// Degree data of the one-parameter deformation: q is the cycle length
// m*n per arrow, M their least common multiple, u = M/q the arrow degree,
// and v the exponent picked up by each commutativity relation.
struct DegreeData {
  int M = 1;
  std::map<std::string, int> q, u, v;
};

DegreeData degree_data(const TriangulationData& td);

// Rescales every relation by the degree function: each term is multiplied by
// t^(u(term) - u_min). At t = 1 this is the identity; at t = 0 only the
// lowest-degree terms survive.
std::vector<TaggedRelation> family_relations(const TriangulationData& td,
                                             const DegreeData& dd,
                                             const std::vector<TaggedRelation>& rels,
                                             const Scalar& t);

FDAlgebra build_family_member(const TriangulationData& td, const DegreeData& dd,
                              const std::vector<TaggedRelation>& rels,
                              const Scalar& t, int cap);

struct BiserialVerdict {
  bool pass = false;
  bool quiver_biserial = false;
  std::vector<std::string> violations;
  std::vector<std::string> surviving_products;  // nonzero arrow pairs
};

// Special biserial test on the arrows of the Gabriel quiver: at most one
// nonzero composition on each side of every arrow.
BiserialVerdict special_biserial_check(const FDAlgebra& a);

struct TetrahedralReport {
  std::vector<std::string> nonpositive;  // arrows with v <= 0
  bool all_q3 = true;     // every such arrow has q = 3 along its triangle
  bool tetrahedral = false;
  std::string note;
};

TetrahedralReport tetrahedral_obstruction(const TriangulationData& td);

}  // namespace qgt
