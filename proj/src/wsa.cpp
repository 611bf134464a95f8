#include "qgt/wsa.hpp"

#include <algorithm>
#include <set>

namespace qgt {

Path TriangulationData::theta(const std::string& a, int k) const {
  if (k == 0) return Path::stationary(q.arrow(a).source);
  std::vector<std::string> names;
  std::string cur = a;
  for (int i = 0; i < k; ++i) {
    names.push_back(cur);
    cur = perm.g_of(cur);
  }
  return Path::of(std::move(names));
}

Path TriangulationData::a_path(const std::string& a) const {
  return theta(a, mn(a) - 1);
}

Path TriangulationData::b_path(const std::string& a) const {
  return theta(a, mn(a));
}

std::vector<int> TriangulationData::border_vertices() const {
  std::vector<int> out;
  for (const Arrow& a : q.arrows)
    if (a.source == a.target && is_fixed_loop(a.name)) out.push_back(a.source);
  std::sort(out.begin(), out.end());
  return out;
}

void TriangulationData::validate() const {
  q.validate();
  if (!q.connected()) fail("InvalidSpec", "quiver is not connected");
  RegularityReport reg = validate_regularity(q);
  if (!reg.is_2regular) fail("NotTwoRegular", "triangulation data needs a 2-regular quiver");
  for (const auto& orb : orbits(perm.f))
    if (orb.size() != 1 && orb.size() != 3)
      fail("InvalidSpec", "f-orbit of size " + std::to_string(orb.size()) +
                              " (sizes 1 and 3 only)");
  for (const auto& orb : orbits(perm.f))
    if (orb.size() == 1 && q.arrow(orb[0]).source != q.arrow(orb[0]).target)
      fail("InvalidSpec", "f fixes the non-loop arrow '" + orb[0] + "'");
  // weights and parameters are constant on g-orbits and defined everywhere
  for (const auto& orb : orbits(perm.g)) {
    auto it = m.find(orb[0]);
    if (it == m.end()) fail("InvalidSpec", "missing weight on the orbit of '" + orb[0] + "'");
    auto ic = c.find(orb[0]);
    if (ic == c.end()) fail("InvalidSpec", "missing parameter on the orbit of '" + orb[0] + "'");
    for (const auto& a : orb) {
      if (m.at(a) != it->second)
        fail("InvalidSpec", "weight not constant on the orbit of '" + orb[0] + "'");
      if (!(c.at(a) == ic->second))
        fail("InvalidSpec", "parameter not constant on the orbit of '" + orb[0] + "'");
      if (m.at(a) < 1) fail("InvalidSpec", "weight at '" + a + "' must be positive");
      if (c.at(a).is_zero()) fail("InvalidSpec", "parameter at '" + a + "' must be nonzero");
    }
  }
  for (const Arrow& a : q.arrows)
    if (mn(a.name) < 2)
      fail("InvalidSpec", "m*n = 1 at arrow '" + a.name + "'");
  auto borders = border_vertices();
  for (const auto& [v, b] : border) {
    (void)b;
    if (!std::binary_search(borders.begin(), borders.end(), v))
      fail("InvalidSpec", "border value at the non-border vertex " + std::to_string(v));
  }
}

int WSASpec::default_cap() const {
  int mx = 2;
  for (const Arrow& a : data.q.arrows) mx = std::max(mx, data.mn(a.name));
  return 2 * mx + 4;
}

GOrbitPaths g_orbit_paths(const WSASpec& spec, const std::string& arrow,
                          const std::vector<int>& ks) {
  GOrbitPaths out;
  out.a_path = spec.data.a_path(arrow);
  out.b_path = spec.data.b_path(arrow);
  for (int k : ks) out.theta[k] = spec.data.theta(arrow, k);
  return out;
}

std::vector<VirtualArrow> virtual_arrows(const TriangulationData& td) {
  std::vector<VirtualArrow> out;
  for (const Arrow& a : td.q.arrows)
    if (td.is_virtual(a.name))
      out.push_back({a.name, a.source == a.target});
  std::sort(out.begin(), out.end(),
            [](const VirtualArrow& x, const VirtualArrow& y) { return x.name < y.name; });
  return out;
}

std::vector<PathExpr> WSARelationSet::exprs() const {
  std::vector<PathExpr> out;
  out.reserve(relations.size());
  for (const auto& r : relations) out.push_back(r.expr);
  return out;
}

WSARelationSet wsa_relations(const WSASpec& spec) {
  const TriangulationData& td = spec.data;
  td.validate();
  const Field& F = td.field;
  WSARelationSet out;

  std::vector<std::string> names;
  for (const Arrow& a : td.q.arrows) names.push_back(a.name);
  std::sort(names.begin(), names.end());

  for (const std::string& a : names) {
    const std::string& bar_a = td.perm.bar_of(a);
    Scalar cbar = td.c.at(bar_a);
    if (td.is_fixed_loop(a)) {
      // square of the loop against the companion cycle, plus the border term
      PathExpr e = PathExpr::path(Path::of({a, a}), Scalar::one(F));
      e = e - PathExpr::path(td.a_path(bar_a), cbar);
      Scalar b = Scalar::zero(F);
      if (auto it = td.border.find(td.q.arrow(a).source); it != td.border.end())
        b = it->second;
      TaggedRelation rel;
      rel.kind = b.is_zero() ? TaggedRelation::Kind::Comm : TaggedRelation::Kind::CommBorder;
      if (!b.is_zero()) e = e - PathExpr::path(td.b_path(a), b);
      rel.expr = e;
      rel.anchor = a;
      rel.label = "comm(" + a + ")";
      out.relations.push_back(std::move(rel));
    } else {
      PathExpr e = PathExpr::path(Path::of({a, td.perm.f_of(a)}), Scalar::one(F));
      e = e - PathExpr::path(td.a_path(bar_a), cbar);
      out.relations.push_back({e, TaggedRelation::Kind::Comm, a, "comm(" + a + ")"});
    }
  }

  for (const std::string& a : names) {
    // follower zero relation a f(a) g(f(a))
    const std::string fa = td.perm.f_of(a);
    const std::string f2a = td.perm.f_of(fa);
    const std::string bar_a = td.perm.bar_of(a);
    const std::string fbar = td.perm.f_of(bar_a);
    if (td.is_virtual(f2a)) {
      out.suppressed.push_back("zero-f(" + a + "): " + f2a + " is virtual");
    } else if (td.is_virtual(fbar) && td.mn(bar_a) == 3) {
      out.suppressed.push_back("zero-f(" + a + "): " + fbar + " is virtual and m*n(" +
                               bar_a + ") = 3");
    } else {
      PathExpr e = PathExpr::path(Path::of({a, fa, td.perm.g_of(fa)}), Scalar::one(F));
      out.relations.push_back({e, TaggedRelation::Kind::Zero, a, "zero-f(" + a + ")"});
    }
  }
  for (const std::string& a : names) {
    // cycle-then-follower zero relation a g(a) f(g(a))
    const std::string fa = td.perm.f_of(a);
    const std::string f2a = td.perm.f_of(fa);
    const std::string ga = td.perm.g_of(a);
    if (td.is_virtual(fa)) {
      out.suppressed.push_back("zero-g(" + a + "): " + fa + " is virtual");
    } else if (td.is_virtual(f2a) && td.mn(fa) == 3) {
      out.suppressed.push_back("zero-g(" + a + "): " + f2a + " is virtual and m*n(" +
                               fa + ") = 3");
    } else {
      PathExpr e = PathExpr::path(Path::of({a, ga, td.perm.f_of(ga)}), Scalar::one(F));
      out.relations.push_back({e, TaggedRelation::Kind::Zero, a, "zero-g(" + a + ")"});
    }
  }
  return out;
}

FDAlgebra build_wsa(const WSASpec& spec) {
  WSARelationSet rels = wsa_relations(spec);
  int cap = spec.cap > 0 ? spec.cap : spec.default_cap();
  return quotient_algebra(spec.data.q, rels.exprs(), spec.data.field, cap);
}

BasisCheck check_projective_bases(const FDAlgebra& a, const WSASpec& spec) {
  const TriangulationData& td = spec.data;
  BasisCheck out;
  for (int v : td.q.vertices) {
    BasisCheck::VertexCheck vc;
    vc.vertex = v;
    auto arrows = td.q.out_arrows(v);
    size_t expected = 0;
    for (const auto& ar : arrows) expected += td.mn(ar);
    vc.expected_dim = expected;
    vc.actual_dim = a.dim_at(v);

    // predicted monomials: every initial walk of the full cycle of the first
    // arrow, and the proper ones of the second
    std::vector<std::vector<Scalar>> vectors;
    if (arrows.size() == 2) {
      const std::string& a1 = arrows[0];
      const std::string& a2 = arrows[1];
      for (int k = 0; k <= td.mn(a1); ++k)
        vectors.push_back(a.coords_from(a.vec_of(PathExpr::single(td.theta(a1, k), td.field)), v));
      for (int k = 1; k < td.mn(a2); ++k)
        vectors.push_back(a.coords_from(a.vec_of(PathExpr::single(td.theta(a2, k), td.field)), v));
    }
    size_t rank = rref_rows(vectors, nullptr);
    vc.monomials_span = rank == vc.actual_dim;
    vc.ok = vc.expected_dim == vc.actual_dim && vc.monomials_span;
    if (!vc.ok && out.ok) {
      out.ok = false;
      out.first_failure = "BasisMismatch at vertex " + std::to_string(v);
    }
    out.vertices.push_back(vc);
  }
  return out;
}

SingularFlags detect_singular(const WSASpec& spec) {
  const TriangulationData& td = spec.data;
  SingularFlags out;

  AssembledQuiver sph = spherical_triangulation_quiver();
  if (quiver_isomorphic(td.q, sph.quiver)) {
    // singular exactly when both 2-cycle orbits carry weight 1
    bool all_one = true;
    int two_cycles = 0;
    for (const auto& orb : orbits(td.perm.g))
      if (orb.size() == 2) {
        ++two_cycles;
        if (td.m.at(orb[0]) != 1) all_one = false;
      }
    if (two_cycles == 2) {
      out.spherical_singular = all_one;
      out.status = all_one ? SingularFlags::Status::Singular
                           : SingularFlags::Status::NotSingular;
      out.note = all_one ? "both 2-cycle weights are 1" : "a 2-cycle weight exceeds 1";
      return out;
    }
  }

  AssembledQuiver tri = triangle_triangulation_quiver();
  bool is_triangle = quiver_isomorphic(td.q, tri.quiver);
  bool is_disc = false;
  if (!is_triangle) {
    // two triangles glued along all three slots: 3 vertices, 6 arrows, no loops
    RegularityReport reg = validate_regularity(td.q);
    if (td.q.vertices.size() == 3 && td.q.arrows.size() == 6 && reg.is_2regular) {
      is_disc = true;
      for (const Arrow& a : td.q.arrows)
        if (a.source == a.target) is_disc = false;
    }
  }
  if (is_triangle || is_disc) {
    out.triangle_or_disc_family = true;
    out.status = SingularFlags::Status::Unknown;
    out.note = "triangle/disc family; singular locus not decided here";
    return out;
  }

  out.status = SingularFlags::Status::Unknown;
  out.note = "no singularity certificate for this configuration";
  return out;
}

}  // namespace qgt
