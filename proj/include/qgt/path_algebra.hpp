#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "qgt/linalg.hpp"
#include "qgt/quiver.hpp"

namespace qgt {

// A path: the stationary path at `base` when `arrows` is empty, otherwise a
// composable arrow-name sequence (base is then ignored).
struct Path {
  int base = -1;
  std::vector<std::string> arrows;

  static Path stationary(int v) { return Path{v, {}}; }
  static Path of(std::vector<std::string> names) { return Path{-1, std::move(names)}; }
  size_t length() const { return arrows.size(); }
  bool operator==(const Path&) const = default;
  bool operator<(const Path& o) const;
  std::string str() const;
};

// Linear combination of paths with nonzero coefficients only.
class PathExpr {
 public:
  PathExpr() = default;
  static PathExpr path(const Path& p, const Scalar& c);
  static PathExpr single(const Path& p, const Field& f) { return path(p, Scalar::one(f)); }

  void add(const Path& p, const Scalar& c);
  bool is_zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }
  const std::map<Path, Scalar>& terms() const { return terms_; }

  PathExpr operator+(const PathExpr& o) const;
  PathExpr operator-(const PathExpr& o) const;
  PathExpr scaled(const Scalar& c) const;
  bool operator==(const PathExpr& o) const { return terms_ == o.terms_; }

  // Replace arrows by paths (used for identification checks).
  PathExpr substitute(const std::map<std::string, std::vector<std::string>>& repl) const;

  std::string str() const;

 private:
  std::map<Path, Scalar> terms_;
};

struct RadicalLayer {
  int k = 0;
  size_t dim = 0;
  std::vector<Path> representatives;
};

struct SocleInfo {
  // span of the right annihilator of the radical inside e_i * algebra, and of
  // its preimage one level up; vectors over the e_i basis, rref'd
  std::vector<std::vector<Scalar>> soc;
  std::vector<size_t> soc_pivots;
  std::vector<std::vector<Scalar>> soc2;
  std::vector<size_t> soc2_pivots;
};

struct MinimalRelationSpace {
  struct Entry {
    int source = 0, target = 0;
    size_t dim = 0;         // minimal generators at (source,target)
    size_t ideal_dim = 0;   // truncated ideal slice
    std::vector<PathExpr> lifts;
  };
  std::vector<Entry> entries;
  size_t total() const;
};

// Finite-dimensional quotient of a path algebra by a finite relation set,
// with a canonical path basis (non-pivot paths under length-then-lex order)
// and a normal-form map.
class FDAlgebra {
 public:
  using NodeId = uint32_t;
  static constexpr NodeId kNoNode = UINT32_MAX;
  // sparse vector over node ids, ascending, no zero coefficients
  using Vec = std::vector<std::pair<NodeId, Scalar>>;

  const Quiver& quiver() const { return q_; }
  const Field& field() const { return field_; }
  const std::vector<PathExpr>& relations() const { return rels_; }

  size_t dim() const { return basis_.size(); }
  size_t dim_at(int vertex) const;
  int nilpotency() const { return nilpotency_; }
  int truncation() const { return trunc_; }
  bool admissible_input() const { return admissible_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  const std::vector<NodeId>& basis() const { return basis_; }
  const std::vector<NodeId>& basis_from(int vertex) const;
  std::vector<NodeId> basis_between(int source, int target) const;

  int node_source(NodeId n) const { return nodes_[n].source; }
  int node_target(NodeId n) const { return nodes_[n].target; }
  int node_length(NodeId n) const { return nodes_[n].len; }
  Path node_path(NodeId n) const;
  bool is_basis_node(NodeId n) const { return basis_pos_.count(n) > 0; }
  size_t basis_index(NodeId n) const { return basis_pos_.at(n); }

  // Node of a path, when it exists within the truncation (paths beyond the
  // truncation are zero in the algebra).
  std::optional<NodeId> find_node(const Path& p) const;

  Vec nf_node(NodeId n) const;
  Vec nf_concat(NodeId a, NodeId b) const;
  Vec nf_vec(const Vec& v) const;
  PathExpr normal_form(const PathExpr& x) const;
  PathExpr multiply(const PathExpr& a, const PathExpr& b) const;
  PathExpr expr_of(const Vec& v) const;
  Vec vec_of(const PathExpr& x) const;

  // coordinates over basis_from(source)
  std::vector<Scalar> coords_from(const Vec& v, int source) const;

  std::vector<RadicalLayer> radical_layers(int vertex) const;
  SocleInfo socle_layers(int vertex) const;
  bool in_socle(const Vec& v, int level = 1) const;  // level 1 or 2
  Quiver gabriel_quiver() const;
  bool weakly_symmetric() const;

  MinimalRelationSpace minimal_relation_space() const;
  // Whether some choice of minimal generating relations has w as a summand.
  // A negative answer is choice-dependent for inhomogeneous ideals.
  bool may_occur_in_minimal_relation(const Path& w) const;

  friend FDAlgebra quotient_algebra(const Quiver& q, const std::vector<PathExpr>& rels,
                                    const Field& field, int cap);

 private:
  struct PNode {
    int source, target;
    int len;
    NodeId parent;
    int last;  // arrow index into arrow_names_
  };

  Quiver q_;
  Field field_;
  std::vector<PathExpr> rels_;
  int cap_ = 0;
  int trunc_ = 0;
  int nilpotency_ = 1;
  bool admissible_ = true;
  std::vector<std::string> warnings_;

  std::vector<std::string> arrow_names_;  // sorted
  std::vector<int> arrow_src_, arrow_tgt_;
  std::vector<PNode> nodes_;
  std::map<int, NodeId> stationary_;
  std::unordered_map<uint64_t, NodeId> child_;

  struct Row {
    int source, target;
    Vec t;  // monic, lead first
  };
  std::vector<Row> rows_;
  std::unordered_map<NodeId, uint32_t> pivot_;

  std::vector<NodeId> basis_;
  std::unordered_map<NodeId, size_t> basis_pos_;
  std::map<int, std::vector<NodeId>> basis_by_source_;
  std::unordered_map<NodeId, Vec> nf_;

  bool build(int L);  // returns true when stabilized
  void finalize();
  Vec reduce(Vec v) const;
  NodeId child_of(NodeId n, int arrow) const;
  NodeId concat_nodes(NodeId a, NodeId b) const;
  Vec intern(const PathExpr& x, bool* short_term) const;
  std::vector<std::vector<Scalar>> socle_at(int v) const;
};

// Builds the quotient, raising the truncation degree until the basis
// stabilizes; throws NotFiniteDimensionalWithinCap past `cap`.
FDAlgebra quotient_algebra(const Quiver& q, const std::vector<PathExpr>& rels,
                           const Field& field, int cap);

}  // namespace qgt
