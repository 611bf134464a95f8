#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracle.hpp"
#include "qgt/wsa.hpp"

using namespace qgt;

namespace {

const Field Q = Field::rationals();

Quiver loop_quiver() {
  Quiver q;
  q.add_vertex(1);
  q.add_arrow("x", 1, 1);
  return q;
}

FDAlgebra loop_cube() {
  return quotient_algebra(loop_quiver(), {PathExpr::single(Path::of({"x", "x", "x"}), Q)},
                          Q, 8);
}

WSASpec triangle_spec(int m_rho = 3, int m_sigma = 3, const Field& F = Field::rationals()) {
  AssembledQuiver tq = triangle_triangulation_quiver();
  TriangulationData td;
  td.q = tq.quiver;
  td.perm = tq.perm;
  td.field = F;
  td.n = orbit_lengths(tq.perm.g);
  for (const Arrow& a : tq.quiver.arrows) {
    td.m[a.name] = a.name == "rho" ? m_rho : a.name == "sigma" ? m_sigma : 1;
    td.c[a.name] = Scalar::one(F);
  }
  return WSASpec{td, 0};
}

WSASpec spherical_spec(int n, int nprime, const Field& F = Field::rationals()) {
  AssembledQuiver sph = spherical_triangulation_quiver();
  TriangulationData td;
  td.q = sph.quiver;
  td.perm = sph.perm;
  td.field = F;
  td.n = orbit_lengths(sph.perm.g);
  for (const Arrow& a : sph.quiver.arrows) {
    int w = 1;
    if (a.name == "xi" || a.name == "mu") w = n;
    if (a.name == "xiP" || a.name == "muP") w = nprime;
    td.m[a.name] = w;
    td.c[a.name] = Scalar::one(F);
  }
  return WSASpec{td, 0};
}

}  // namespace

TEST_CASE("path expressions") {
  Path p = Path::of({"a", "b"});
  CHECK(p.str() == "a.b");
  CHECK(Path::stationary(3).str() == "e(3)");
  PathExpr e = PathExpr::path(p, Scalar::of(Q, 2));
  e.add(p, Scalar::of(Q, -2));
  CHECK(e.is_zero());
}

TEST_CASE("one loop modulo its cube") {
  FDAlgebra a = loop_cube();
  CHECK(a.dim() == 3);
  CHECK(a.nilpotency() == 3);
  CHECK(a.admissible_input());
  std::vector<Path> basis;
  for (auto n : a.basis()) basis.push_back(a.node_path(n));
  REQUIRE(basis.size() == 3);
  CHECK(basis[0] == Path::stationary(1));
  CHECK(basis[1] == Path::of({"x"}));
  CHECK(basis[2] == Path::of({"x", "x"}));

  // radical layers 1,1,1 and socle {x^2}, second socle {x, x^2}
  auto layers = a.radical_layers(1);
  REQUIRE(layers.size() == 3);
  for (const auto& l : layers) CHECK(l.dim == 1);
  SocleInfo soc = a.socle_layers(1);
  CHECK(soc.soc.size() == 1);
  CHECK(soc.soc2.size() == 2);
  CHECK(a.weakly_symmetric());

  // Gabriel quiver: one vertex, one loop
  Quiver g = a.gabriel_quiver();
  CHECK(g.vertices == std::vector<int>{1});
  REQUIRE(g.arrows.size() == 1);
  CHECK(g.arrows[0].name == "x");

  // one minimal relation, of degree 3
  MinimalRelationSpace sp = a.minimal_relation_space();
  CHECK(sp.total() == 1);
  REQUIRE(sp.entries.size() == 1);
  CHECK(sp.entries[0].dim == 1);
  CHECK(a.may_occur_in_minimal_relation(Path::of({"x", "x", "x"})));
  CHECK(!a.may_occur_in_minimal_relation(Path::of({"x", "x"})));
}

TEST_CASE("normal forms kill the relations") {
  FDAlgebra a = loop_cube();
  for (const PathExpr& r : a.relations()) CHECK(a.normal_form(r).is_zero());
  // e_i * p = p, and 0 for a mismatched idempotent
  PathExpr x = PathExpr::single(Path::of({"x"}), Q);
  CHECK(a.multiply(PathExpr::single(Path::stationary(1), Q), x) == a.normal_form(x));
}

TEST_CASE("infinite quotient is rejected at the cap") {
  Quiver q;
  q.add_vertex(1);
  q.add_vertex(2);
  q.add_arrow("a", 1, 2);
  q.add_arrow("b", 2, 1);
  CHECK_THROWS_WITH_AS(quotient_algebra(q, {}, Q, 12),
                       doctest::Contains("still growing"), QgtError);
}

TEST_CASE("duplicate relation changes nothing") {
  auto r = PathExpr::single(Path::of({"x", "x", "x"}), Q);
  FDAlgebra once = quotient_algebra(loop_quiver(), {r}, Q, 8);
  FDAlgebra twice = quotient_algebra(loop_quiver(), {r, r}, Q, 8);
  CHECK(once.dim() == twice.dim());
  CHECK(once.minimal_relation_space().total() == twice.minimal_relation_space().total());
}

TEST_CASE("triangle algebra dimensions against the brute-force oracle") {
  WSASpec spec = triangle_spec();
  WSARelationSet rels = wsa_relations(spec);
  CHECK(rels.relations.size() == 18);
  CHECK(rels.suppressed.empty());

  FDAlgebra a = build_wsa(spec);
  CHECK(a.dim() == 22);
  CHECK(a.dim_at(1) == 7);
  CHECK(a.dim_at(2) == 8);
  CHECK(a.dim_at(3) == 7);

  oracle::Result oracle_dims =
      oracle::brute_force_dims(spec.data.q, rels.exprs(), Q, a.nilpotency() + 2);
  CHECK(oracle_dims.total == a.dim());
  for (int v : spec.data.q.vertices)
    CHECK(oracle_dims.dim_by_vertex.at(v) == a.dim_at(v));
}

TEST_CASE("multiplication is associative and unital") {
  FDAlgebra a = build_wsa(triangle_spec());
  std::vector<PathExpr> be;
  for (auto n : a.basis()) be.push_back(a.expr_of({{n, Scalar::one(Q)}}));
  size_t mismatches = 0;
  for (const auto& x : be)
    for (const auto& y : be) {
      PathExpr xy = a.multiply(x, y);
      for (const auto& z : be)
        if (!(a.multiply(xy, z) == a.multiply(x, a.multiply(y, z)))) ++mismatches;
    }
  CHECK(mismatches == 0);

  // the sum of the stationary paths is a two-sided unit
  PathExpr unit;
  for (int v : a.quiver().vertices) unit.add(Path::stationary(v), Scalar::one(Q));
  for (const auto& x : be) {
    CHECK(a.multiply(unit, x) == x);
    CHECK(a.multiply(x, unit) == x);
  }
}

TEST_CASE("malformed relations are rejected") {
  Quiver q;
  q.add_vertex(1);
  q.add_vertex(2);
  q.add_arrow("a", 1, 2);
  q.add_arrow("b", 2, 1);
  // a stationary term
  PathExpr bad1 = PathExpr::single(Path::of({"a", "b"}), Q);
  bad1.add(Path::stationary(1), Scalar::one(Q));
  CHECK_THROWS_WITH_AS(quotient_algebra(q, {bad1}, Q, 8),
                       doctest::Contains("stationary"), QgtError);
  // terms with different endpoints
  PathExpr bad2 = PathExpr::single(Path::of({"a", "b"}), Q);
  bad2.add(Path::of({"a", "b", "a"}), Scalar::one(Q));
  CHECK_THROWS_WITH_AS(quotient_algebra(q, {bad2}, Q, 8),
                       doctest::Contains("common source"), QgtError);
  // a non-composable path
  PathExpr bad3 = PathExpr::single(Path::of({"a", "a"}), Q);
  CHECK_THROWS_WITH_AS(quotient_algebra(q, {bad3}, Q, 8),
                       doctest::Contains("non-composable"), QgtError);
}

TEST_CASE("normal form is multiplicative on random path pairs") {
  FDAlgebra a = build_wsa(triangle_spec());
  const auto& basis = a.basis();
  uint64_t seed = 12345;
  for (int trial = 0; trial < 60; ++trial) {
    seed = seed * 6364136223846793005ull + 1442695040888963407ull;
    auto x = basis[seed % basis.size()];
    seed = seed * 6364136223846793005ull + 1442695040888963407ull;
    auto y = basis[seed % basis.size()];
    PathExpr px = a.expr_of({{x, Scalar::one(Q)}});
    PathExpr py = a.expr_of({{y, Scalar::one(Q)}});
    PathExpr direct = a.multiply(px, py);
    PathExpr nested = a.multiply(a.normal_form(px), a.normal_form(py));
    CHECK(direct == nested);
  }
}

TEST_CASE("basis closed under initial subpaths") {
  FDAlgebra a = build_wsa(triangle_spec());
  for (auto n : a.basis()) {
    Path p = a.node_path(n);
    if (p.length() == 0) continue;
    Path prefix = p;
    prefix.arrows.pop_back();
    if (prefix.arrows.empty()) prefix = Path::stationary(a.node_source(n));
    auto pn = a.find_node(prefix);
    REQUIRE(pn.has_value());
    CHECK(a.is_basis_node(*pn));
  }
  // layer dims sum to the total
  size_t sum = 0;
  for (int v : a.quiver().vertices)
    for (const auto& l : a.radical_layers(v)) sum += l.dim;
  CHECK(sum == a.dim());
}

TEST_CASE("radical layers of the triangle algebra") {
  FDAlgebra a = build_wsa(triangle_spec());
  for (int v : a.quiver().vertices)
    for (const auto& l : a.radical_layers(v)) CHECK(l.dim <= 2);
  // the two length-2 walks from a 1-vertex of the Gabriel quiver generate
  // layer two; here every vertex is 2-regular, so check layer dims directly
  auto layers = a.radical_layers(2);
  REQUIRE(layers.size() >= 3);
  CHECK(layers[0].dim == 1);  // stationary
  CHECK(layers[1].dim == 2);  // two arrows
  CHECK(layers[2].dim == 2);
}

TEST_CASE("socle identities in the triangle algebra") {
  WSASpec spec = triangle_spec();
  FDAlgebra a = build_wsa(spec);
  // the socle at each vertex is one-dimensional and both cycles reach it
  for (int v : a.quiver().vertices) {
    SocleInfo soc = a.socle_layers(v);
    CHECK(soc.soc.size() == 1);
    auto outs = spec.data.q.out_arrows(v);
    PathExpr b1 = a.normal_form(PathExpr::single(spec.data.b_path(outs[0]), Q));
    PathExpr b2 = a.normal_form(PathExpr::single(spec.data.b_path(outs[1]), Q));
    CHECK(!b1.is_zero());
    CHECK(b1 == b2);
    // the socle sits exactly at the cycle length
    for (const auto& ar : outs) {
      int n = spec.data.n.at(ar);
      int m = spec.data.m.at(ar);
      Path c_m = spec.data.theta(ar, n * m);
      Path c_m1 = spec.data.theta(ar, n * (m + 1));
      CHECK(!a.normal_form(PathExpr::single(c_m, Q)).is_zero());
      CHECK(a.normal_form(PathExpr::single(c_m1, Q)).is_zero());
    }
  }
  // each full cycle lies in the socle, each one-shorter walk in the second socle
  for (const Arrow& ar : spec.data.q.arrows) {
    auto n = a.find_node(spec.data.a_path(ar.name));
    REQUIRE(n.has_value());
    CHECK(a.in_socle(a.nf_node(*n), 2));
  }
}

TEST_CASE("g-orbit paths") {
  WSASpec spec = triangle_spec();
  GOrbitPaths g = g_orbit_paths(spec, "alpha", {0, 2});
  CHECK(g.a_path == Path::of({"alpha", "beta", "nu"}));
  CHECK(g.b_path == Path::of({"alpha", "beta", "nu", "delta"}));
  CHECK(g.theta.at(0) == Path::stationary(2));
  CHECK(g.theta.at(2) == Path::of({"alpha", "beta"}));
  GOrbitPaths gr = g_orbit_paths(spec, "rho", {});
  CHECK(gr.a_path == Path::of({"rho", "rho"}));
  CHECK(gr.b_path == Path::of({"rho", "rho", "rho"}));
}

TEST_CASE("virtual arrows and their Gabriel quivers") {
  CHECK(virtual_arrows(triangle_spec().data).empty());

  WSASpec one_loop = triangle_spec(2, 3);
  auto va = virtual_arrows(one_loop.data);
  REQUIRE(va.size() == 1);
  CHECK(va[0].name == "rho");
  CHECK(va[0].loop);
  FDAlgebra a = build_wsa(one_loop);
  CHECK(classify_special(a.gabriel_quiver()) == SpecialTag::AlmostTriangle);
  CHECK(!a.admissible_input());  // presented with an arrow inside the square radical

  WSASpec sph = spherical_spec(1, 2);
  auto vs = virtual_arrows(sph.data);
  REQUIRE(vs.size() == 2);
  CHECK(vs[0].name == "mu");
  CHECK(!vs[0].loop);
  FDAlgebra s = build_wsa(sph);
  CHECK(classify_special(s.gabriel_quiver()) == SpecialTag::AlmostSpherical);

  WSASpec sph21 = spherical_spec(2, 1);
  CHECK(classify_special(build_wsa(sph21).gabriel_quiver()) == SpecialTag::AlmostSpherical);
}

TEST_CASE("relation exceptions around virtual arrows") {
  WSASpec sing = spherical_spec(1, 1);
  WSARelationSet rels = wsa_relations(sing);
  CHECK(!rels.suppressed.empty());
  SingularFlags flags = detect_singular(sing);
  CHECK(flags.spherical_singular);
  CHECK(flags.status == SingularFlags::Status::Singular);

  CHECK(detect_singular(spherical_spec(2, 1)).status == SingularFlags::Status::NotSingular);
  CHECK(detect_singular(triangle_spec()).triangle_or_disc_family);
}

TEST_CASE("spherical algebra dimensions") {
  WSASpec spec = spherical_spec(2, 2);
  FDAlgebra a = build_wsa(spec);
  for (int v : a.quiver().vertices) CHECK(a.dim_at(v) == 8);
  CHECK(a.dim() == 48);
  CHECK(a.weakly_symmetric());

  BasisCheck bc = check_projective_bases(a, spec);
  CHECK(bc.ok);
}

TEST_CASE("one-vertex dimension law") {
  WSASpec spec = spherical_spec(2, 1);  // xiP, muP virtual
  FDAlgebra a = build_wsa(spec);
  BasisCheck bc = check_projective_bases(a, spec);
  CHECK(bc.ok);
  Quiver g = a.gabriel_quiver();
  RegularityReport reg = validate_regularity(g);
  for (int v : reg.one_vertices) {
    const std::string ar = g.out_arrows(v).at(0);
    CHECK(a.dim_at(v) == static_cast<size_t>(spec.data.mn(ar)) + 2);
  }
}

TEST_CASE("basis checker flags a corrupted relation set") {
  WSASpec spec = triangle_spec();
  WSARelationSet rels = wsa_relations(spec);
  // drop the first commutativity relation: the quotient grows past the
  // predicted monomials
  std::vector<PathExpr> exprs;
  for (size_t i = 1; i < rels.relations.size(); ++i) exprs.push_back(rels.relations[i].expr);
  FDAlgebra corrupted = quotient_algebra(spec.data.q, exprs, Q, spec.default_cap());
  BasisCheck bc = check_projective_bases(corrupted, spec);
  CHECK(!bc.ok);
  CHECK(bc.first_failure.find("BasisMismatch") == 0);
}

TEST_CASE("relation relabeling equivariance") {
  WSASpec spec = triangle_spec();
  // rename every arrow with a prefix; the relation set must map over
  std::map<std::string, std::string> rename;
  for (const Arrow& a : spec.data.q.arrows) rename[a.name] = "w_" + a.name;
  WSASpec renamed = spec;
  renamed.data.q.arrows.clear();
  for (const Arrow& a : spec.data.q.arrows)
    renamed.data.q.add_arrow(rename[a.name], a.source, a.target);
  auto map_keys = [&](auto& m) {
    std::decay_t<decltype(m)> out;
    for (auto& [k, v] : m) out[rename.at(k)] = v;
    m = out;
  };
  map_keys(renamed.data.m);
  map_keys(renamed.data.c);
  map_keys(renamed.data.n);
  std::map<std::string, std::string> f2;
  for (auto& [k, v] : spec.data.perm.f) f2[rename.at(k)] = rename.at(v);
  renamed.data.perm = derive_bar_and_g(renamed.data.q, f2);

  WSARelationSet r1 = wsa_relations(spec);
  WSARelationSet r2 = wsa_relations(renamed);
  REQUIRE(r1.relations.size() == r2.relations.size());
  std::map<std::string, std::vector<std::string>> subst;
  for (auto& [k, v] : rename) subst[k] = {v};
  std::set<std::string> want, got;
  for (const auto& r : r1.relations) want.insert(r.expr.substitute(subst).str());
  for (const auto& r : r2.relations) got.insert(r.expr.str());
  CHECK(want == got);
}

TEST_CASE("rational and prime-field backends agree") {
  for (auto make : {+[](const Field& f) { return triangle_spec(3, 3, f); },
                    +[](const Field& f) { return spherical_spec(2, 1, f); }}) {
    FDAlgebra over_q = build_wsa(make(Field::rationals()));
    FDAlgebra over_p = build_wsa(make(Field::prime(10007)));
    CHECK(over_q.dim() == over_p.dim());
    for (int v : over_q.quiver().vertices) CHECK(over_q.dim_at(v) == over_p.dim_at(v));
    CHECK(over_q.nilpotency() == over_p.nilpotency());
  }
}

TEST_CASE("border term on a fixed loop") {
  // one single-loop block glued to a triangle-with-loop block
  std::vector<BlockSpec> blocks{{"L", BlockType::I, {"ell"}},
                                {"B", BlockType::II, {"gam", "al", "be"}}};
  AssembledQuiver asm_q = assemble_from_blocks(blocks, {{"L", 0, "B", 0}});
  CHECK(validate_regularity(asm_q.quiver).is_2regular);
  CHECK(asm_q.perm.f.at("ell") == "ell");

  TriangulationData td;
  td.q = asm_q.quiver;
  td.perm = asm_q.perm;
  td.field = Q;
  td.n = orbit_lengths(asm_q.perm.g);
  for (const Arrow& a : td.q.arrows) {
    td.m[a.name] = a.name == "gam" ? 3 : 1;
    td.c[a.name] = Scalar::one(Q);
  }
  CHECK(td.border_vertices() == std::vector<int>{td.q.arrow("ell").source});

  WSASpec plain{td, 0};
  WSASpec bordered = plain;
  bordered.data.border[td.q.arrow("ell").source] = Scalar::one(Q);

  // the bordered presentation carries the extra cycle term on the loop square
  bool found = false;
  for (const auto& r : wsa_relations(bordered).relations)
    if (r.kind == TaggedRelation::Kind::CommBorder) {
      found = true;
      PathExpr want = PathExpr::single(Path::of({"ell", "ell"}), Q) -
                      PathExpr::single(td.a_path(td.perm.bar_of("ell")), Q) -
                      PathExpr::single(td.b_path("ell"), Q);
      CHECK(r.expr == want);
    }
  CHECK(found);

  FDAlgebra a0 = build_wsa(plain);
  FDAlgebra a1 = build_wsa(bordered);
  CHECK(a0.dim() == a1.dim());  // a socle deformation
  CHECK(check_projective_bases(a1, bordered).ok);
  CHECK(a1.weakly_symmetric());

  // border values are only allowed at sources of fixed loops
  WSASpec bad = plain;
  bad.data.border[td.q.arrow("gam").source] = Scalar::one(Q);
  CHECK_THROWS_WITH_AS(wsa_relations(bad), doctest::Contains("non-border"), QgtError);
}

TEST_CASE("cycle length one is rejected") {
  WSASpec spec = triangle_spec(1, 3);  // the loop would have m*n = 1
  CHECK_THROWS_WITH_AS(build_wsa(spec), doctest::Contains("m*n"), QgtError);
}

TEST_CASE("radical layers at a 1-regular vertex of the Gabriel quiver") {
  FDAlgebra a = build_wsa(spherical_spec(2, 1));
  Quiver g = a.gabriel_quiver();
  RegularityReport reg = validate_regularity(g);
  REQUIRE(!reg.one_vertices.empty());
  int v = reg.one_vertices.front();
  auto layers = a.radical_layers(v);
  std::vector<size_t> dims;
  for (const auto& l : layers) dims.push_back(l.dim);
  CHECK(dims == std::vector<size_t>{1, 1, 2, 1, 1});
}

TEST_CASE("minimal relations of the triangle algebra") {
  WSASpec spec = triangle_spec();
  FDAlgebra a = build_wsa(spec);
  // the commutativity relation at alpha is minimal: its lead survives
  CHECK(a.may_occur_in_minimal_relation(Path::of({"alpha", "sigma"})));
  MinimalRelationSpace sp = a.minimal_relation_space();
  bool found = false;
  for (const auto& e : sp.entries)
    if (e.source == 2 && e.target == 3 && e.dim > 0) found = true;
  CHECK(found);
}
