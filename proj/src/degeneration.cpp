#include "qgt/degeneration.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>

namespace qgt {

DegreeData degree_data(const TriangulationData& td) {
  DegreeData dd;
  for (const Arrow& a : td.q.arrows) {
    int q = td.mn(a.name);
    if (q < 2) fail("InvalidSpec", "cycle length below 2 at '" + a.name + "'");
    dd.q[a.name] = q;
    dd.M = std::lcm(dd.M, q);
  }
  for (const Arrow& a : td.q.arrows) {
    if (dd.M % dd.q[a.name] != 0)
      fail("NonIntegralExponent", "degree of '" + a.name + "' is not integral");
    dd.u[a.name] = dd.M / dd.q[a.name];
  }
  for (const Arrow& a : td.q.arrows) {
    const std::string fa = td.perm.f_of(a.name);
    const std::string f2a = td.perm.f_of(fa);
    dd.v[a.name] = dd.M - dd.u[a.name] - dd.u[fa] - dd.u[f2a];
  }
  return dd;
}

std::vector<TaggedRelation> family_relations(const TriangulationData& td,
                                             const DegreeData& dd,
                                             const std::vector<TaggedRelation>& rels,
                                             const Scalar& t) {
  (void)td;
  auto deg = [&](const Path& p) {
    int d = 0;
    for (const std::string& a : p.arrows) d += dd.u.at(a);
    return d;
  };
  std::vector<TaggedRelation> out;
  for (const TaggedRelation& r : rels) {
    int dmin = INT32_MAX;
    for (const auto& [p, c] : r.expr.terms()) dmin = std::min(dmin, deg(p));
    TaggedRelation nr = r;
    PathExpr e;
    for (const auto& [p, c] : r.expr.terms()) {
      int ex = deg(p) - dmin;
      e.add(p, ex == 0 ? c : c * t.pow(ex));
    }
    nr.expr = std::move(e);
    out.push_back(std::move(nr));
  }
  return out;
}

FDAlgebra build_family_member(const TriangulationData& td, const DegreeData& dd,
                              const std::vector<TaggedRelation>& rels,
                              const Scalar& t, int cap) {
  auto fam = family_relations(td, dd, rels, t);
  std::vector<PathExpr> exprs;
  for (const auto& r : fam) exprs.push_back(r.expr);
  // the scaled socle identities: both cycle paths at a vertex have the same
  // degree, so they pass through the rescaling unchanged; they are redundant
  // away from t = 0 and cut the degenerate member down to the same dimension
  for (int v : td.q.vertices) {
    auto outs = td.q.out_arrows(v);
    if (outs.size() != 2) continue;
    PathExpr e = PathExpr::path(td.b_path(outs[0]), td.c.at(outs[0]));
    e = e - PathExpr::path(td.b_path(outs[1]), td.c.at(outs[1]));
    if (!e.is_zero()) exprs.push_back(e);
  }
  if (cap <= 0) {
    int mx = 2;
    for (const Arrow& a : td.q.arrows) mx = std::max(mx, td.mn(a.name));
    cap = 2 * mx + 4;
  }
  return quotient_algebra(td.q, exprs, td.field, cap);
}

BiserialVerdict special_biserial_check(const FDAlgebra& a) {
  BiserialVerdict out;
  Quiver g = a.gabriel_quiver();
  RegularityReport reg = validate_regularity(g);
  out.quiver_biserial = true;
  for (const auto& d : reg.degrees)
    if (d.indeg > 2 || d.outdeg > 2) out.quiver_biserial = false;

  const Field& F = a.field();
  out.pass = out.quiver_biserial;
  for (const Arrow& x : g.arrows) {
    int right = 0, left = 0;
    for (const Arrow& y : g.arrows) {
      if (x.target == y.source) {
        PathExpr prod = a.normal_form(PathExpr::single(Path::of({x.name, y.name}), F));
        if (!prod.is_zero()) {
          ++right;
          out.surviving_products.push_back(x.name + "." + y.name);
        }
      }
      if (y.target == x.source) {
        PathExpr prod = a.normal_form(PathExpr::single(Path::of({y.name, x.name}), F));
        if (!prod.is_zero()) ++left;
      }
    }
    if (right > 1) {
      out.pass = false;
      out.violations.push_back("two nonzero products after '" + x.name + "'");
    }
    if (left > 1) {
      out.pass = false;
      out.violations.push_back("two nonzero products before '" + x.name + "'");
    }
  }
  std::sort(out.surviving_products.begin(), out.surviving_products.end());
  out.surviving_products.erase(
      std::unique(out.surviving_products.begin(), out.surviving_products.end()),
      out.surviving_products.end());
  return out;
}

TetrahedralReport tetrahedral_obstruction(const TriangulationData& td) {
  DegreeData dd = degree_data(td);
  TetrahedralReport out;
  for (const Arrow& a : td.q.arrows)
    if (dd.v.at(a.name) <= 0) out.nonpositive.push_back(a.name);
  std::sort(out.nonpositive.begin(), out.nonpositive.end());
  if (out.nonpositive.empty()) {
    out.note = "every relation exponent is positive";
    return out;
  }
  for (const std::string& a : out.nonpositive) {
    const std::string fa = td.perm.f_of(a);
    const std::string f2a = td.perm.f_of(fa);
    if (dd.q.at(a) != 3 || dd.q.at(fa) != 3 || dd.q.at(f2a) != 3) out.all_q3 = false;
  }
  bool all_len3 = true, all_m1 = true;
  for (const auto& orb : orbits(td.perm.g)) {
    if (orb.size() != 3) all_len3 = false;
    if (td.m.at(orb[0]) != 1) all_m1 = false;
  }
  out.tetrahedral = out.all_q3 && all_len3 && all_m1 &&
                    quiver_isomorphic(td.q, tetrahedral_quiver().quiver);
  out.note = out.tetrahedral
                 ? "all cycle lengths are 3: the tetrahedral configuration"
                 : "nonpositive exponents outside the tetrahedral configuration";
  return out;
}

}  // namespace qgt
