#pragma once

#include "qgt/blocks.hpp"
#include "qgt/path_algebra.hpp"

namespace qgt {

// Quiver with a triangle permutation f, orbit-constant weights m and
// parameters c, and an optional border function on sources of f-fixed loops.
struct TriangulationData {
  Quiver q;
  FPermutation perm;              // f total
  std::map<std::string, int> m;   // per arrow
  std::map<std::string, Scalar> c;
  std::map<int, Scalar> border;
  Field field = Field::rationals();

  std::map<std::string, int> n;  // g-orbit length per arrow

  int mn(const std::string& a) const { return m.at(a) * n.at(a); }
  bool is_virtual(const std::string& a) const { return mn(a) == 2; }
  bool is_fixed_loop(const std::string& a) const { return perm.f_of(a) == a; }

  Path theta(const std::string& a, int k) const;  // length-k walk along g
  Path a_path(const std::string& a) const;        // length mn - 1
  Path b_path(const std::string& a) const;        // length mn

  std::vector<int> border_vertices() const;  // sources of f-fixed loops
  void validate() const;                     // throws InvalidSpec
};

struct WSASpec {
  TriangulationData data;
  int cap = 0;  // 0 = default

  int default_cap() const;
};

struct GOrbitPaths {
  Path a_path;
  Path b_path;
  std::map<int, Path> theta;
};

GOrbitPaths g_orbit_paths(const WSASpec& spec, const std::string& arrow,
                          const std::vector<int>& ks);

struct VirtualArrow {
  std::string name;
  bool loop = false;  // loop in a one-loop-plus-two-arrows block, else 2-cycle
};

std::vector<VirtualArrow> virtual_arrows(const TriangulationData& td);

struct TaggedRelation {
  enum class Kind { Comm, CommBorder, Zero };
  PathExpr expr;
  Kind kind = Kind::Comm;
  std::string anchor;  // the arrow the relation is attached to
  std::string label;
};

struct WSARelationSet {
  std::vector<TaggedRelation> relations;
  std::vector<std::string> suppressed;  // zero relations skipped by exceptions

  std::vector<PathExpr> exprs() const;
};

WSARelationSet wsa_relations(const WSASpec& spec);

FDAlgebra build_wsa(const WSASpec& spec);

struct BasisCheck {
  struct VertexCheck {
    int vertex = 0;
    size_t expected_dim = 0;
    size_t actual_dim = 0;
    bool monomials_span = false;
    bool ok = false;
  };
  std::vector<VertexCheck> vertices;
  bool ok = true;
  std::string first_failure;
};

// Verifies that the computed projectives have the dimensions and monomial
// bases predicted by the orbit data; BasisMismatch is reported, not thrown.
BasisCheck check_projective_bases(const FDAlgebra& a, const WSASpec& spec);

struct SingularFlags {
  enum class Status { NotSingular, Singular, Unknown };
  Status status = Status::Unknown;
  bool spherical_singular = false;
  bool triangle_or_disc_family = false;
  std::string note;
};

SingularFlags detect_singular(const WSASpec& spec);

}  // namespace qgt
