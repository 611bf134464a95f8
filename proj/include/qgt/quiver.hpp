#pragma once

#include <map>
#include <string>
#include <vector>

#include "qgt/error.hpp"

namespace qgt {

struct Arrow {
  std::string name;
  int source = 0;
  int target = 0;
  bool operator==(const Arrow&) const = default;
};

// Finite directed multigraph. Arrow identity is by name; vertex ids are
// opaque integers.
struct Quiver {
  std::vector<int> vertices;  // sorted, unique
  std::vector<Arrow> arrows;

  void add_vertex(int v);
  void add_arrow(const std::string& name, int source, int target);
  bool has_vertex(int v) const;
  const Arrow* find_arrow(const std::string& name) const;
  const Arrow& arrow(const std::string& name) const;

  std::vector<std::string> out_arrows(int v) const;  // sorted by name
  std::vector<std::string> in_arrows(int v) const;   // sorted by name

  // Throws MalformedQuiver on duplicate arrow names or dangling endpoints.
  void validate() const;
  bool connected() const;

  bool same_as(const Quiver& o) const;  // exact equality (names included)
};

struct RegularityReport {
  struct VertexDegrees {
    int vertex = 0;
    int indeg = 0;
    int outdeg = 0;
  };
  std::vector<VertexDegrees> degrees;
  bool is_biregular = false;
  bool is_2regular = false;
  std::vector<int> one_vertices;
  std::vector<int> two_vertices;
};

RegularityReport validate_regularity(const Quiver& q);

// The permutation data of a triangulation-type quiver: f, the involution
// pairing the two arrows at a common source (identity at 1-regular sources),
// and g = bar of f.
struct FPermutation {
  std::map<std::string, std::string> f;    // may be partial in biregular mode
  std::map<std::string, std::string> bar;  // total
  std::map<std::string, std::string> g;    // total whenever f covers enough

  const std::string& f_of(const std::string& a) const;
  const std::string& g_of(const std::string& a) const;
  const std::string& bar_of(const std::string& a) const;
  bool f_defined(const std::string& a) const { return f.count(a) > 0; }
  std::string f_iter(const std::string& a, int k) const;
  std::string g_iter(const std::string& a, int k) const;  // k may be negative
};

// Requires a 2-regular quiver and f with t(a) = s(f(a)).
FPermutation derive_bar_and_g(const Quiver& q,
                              const std::map<std::string, std::string>& f);

// Involution pairing out-arrows at 2-regular sources; identity at 1-regular.
std::map<std::string, std::string> bar_involution(const Quiver& q);

// Cycle decomposition; each orbit starts at its lexicographically smallest
// element, orbits sorted by first element.
std::vector<std::vector<std::string>> orbits(
    const std::map<std::string, std::string>& perm);

// Orbit length of each element.
std::map<std::string, int> orbit_lengths(
    const std::map<std::string, std::string>& perm);

bool quiver_isomorphic(const Quiver& a, const Quiver& b);

}  // namespace qgt
