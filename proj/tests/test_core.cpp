#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "qgt/blocks.hpp"
#include "qgt/linalg.hpp"

using namespace qgt;

namespace {

// deterministic xorshift for the property tests
struct Rng {
  uint64_t s = 0x9e3779b97f4a7c15ull;
  uint64_t next() {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return s;
  }
  int range(int lo, int hi) { return lo + static_cast<int>(next() % (hi - lo + 1)); }
  Scalar scalar(const Field& f) {
    int num = range(-6, 6);
    if (f.kind == FieldKind::Rationals) {
      int den = range(1, 5);
      return Scalar::parse(f, std::to_string(num) + "/" + std::to_string(den));
    }
    return Scalar::of(f, num);
  }
};

}  // namespace

TEST_CASE("scalar arithmetic and parsing") {
  Field Q = Field::rationals();
  CHECK(Scalar::parse(Q, "-3/7").str() == "-3/7");
  CHECK(Scalar::parse(Q, "2").str() == "2");
  CHECK(Scalar::parse(Q, "4/6").str() == "2/3");
  CHECK(Scalar::parse(Q, "1/2") + Scalar::parse(Q, "1/3") == Scalar::parse(Q, "5/6"));
  CHECK_THROWS_AS(Scalar::parse(Q, "1/0"), QgtError);
  CHECK_THROWS_AS(Scalar::parse(Q, "x"), QgtError);

  Field F7 = Field::prime(7);
  CHECK(Scalar::parse(F7, "10").str() == "3");
  CHECK(Scalar::parse(F7, "1/2") == Scalar::of(F7, 4));
  CHECK(Scalar::of(F7, 3).inverse() == Scalar::of(F7, 5));
  CHECK_THROWS_AS(Field::prime(6), QgtError);

  // field axioms on random values
  for (auto f : {Q, F7}) {
    Rng rng;
    for (int i = 0; i < 200; ++i) {
      Scalar a = rng.scalar(f), b = rng.scalar(f), c = rng.scalar(f);
      CHECK(a * (b + c) == a * b + a * c);
      CHECK((a + b) + c == a + (b + c));
      CHECK(a - a == Scalar::zero(f));
      if (!a.is_zero()) CHECK(a * a.inverse() == Scalar::one(f));
    }
  }
}

TEST_CASE("rref, kernel and membership") {
  Field Q = Field::rationals();
  ExactMatrix m(Q, 2, 2);
  m.at(0, 0) = Scalar::of(Q, 1);
  m.at(0, 1) = Scalar::of(Q, 2);
  m.at(1, 0) = Scalar::of(Q, 2);
  m.at(1, 1) = Scalar::of(Q, 4);
  CHECK(rank_of(m) == 1);

  CHECK(rank_of(ExactMatrix::identity(Q, 3)) == 3);
  auto r = rref(ExactMatrix::identity(Q, 3));
  CHECK(r.pivot_cols == std::vector<size_t>{0, 1, 2});

  Field F2 = Field::prime(2);
  ExactMatrix f2(F2, 2, 3);
  f2.at(0, 0) = f2.at(0, 1) = Scalar::of(F2, 1);
  f2.at(1, 1) = f2.at(1, 2) = Scalar::of(F2, 1);
  CHECK(rank_of(f2) == 2);

  ExactMatrix row(Q, 1, 2);
  row.at(0, 0) = row.at(0, 1) = Scalar::of(Q, 1);
  auto ker = kernel_basis(row);
  REQUIRE(ker.size() == 1);
  CHECK(ker[0][0] + ker[0][1] == Scalar::zero(Q));
  CHECK(kernel_basis(ExactMatrix::identity(Q, 4)).empty());

  ExactMatrix wide(Q, 1, 3);
  wide.at(0, 0) = Scalar::of(Q, 1);
  wide.at(0, 1) = Scalar::of(Q, 2);
  wide.at(0, 2) = Scalar::of(Q, 3);
  auto kb = kernel_basis(wide);
  REQUIRE(kb.size() == 2);
  for (const auto& v : kb) {
    Scalar dot = Scalar::zero(Q);
    for (size_t j = 0; j < 3; ++j) dot += wide.at(0, j) * v[j];
    CHECK(dot.is_zero());
  }

  std::vector<std::vector<Scalar>> span{{Scalar::of(Q, 1), Scalar::of(Q, 0)},
                                        {Scalar::of(Q, 0), Scalar::of(Q, 1)}};
  auto sol = solve_membership(span, {Scalar::of(Q, 3), Scalar::of(Q, 5)}, Q);
  REQUIRE(sol.has_value());
  CHECK((*sol)[0] == Scalar::of(Q, 3));
  CHECK((*sol)[1] == Scalar::of(Q, 5));
  CHECK(!solve_membership({{Scalar::of(Q, 1), Scalar::of(Q, 1)}},
                          {Scalar::of(Q, 1), Scalar::of(Q, 2)}, Q));
  auto half = solve_membership({{Scalar::of(Q, 2), Scalar::of(Q, 4)}},
                               {Scalar::of(Q, 1), Scalar::of(Q, 2)}, Q);
  REQUIRE(half.has_value());
  CHECK((*half)[0] == Scalar::parse(Q, "1/2"));
}

TEST_CASE("rref properties on random matrices") {
  for (auto f : {Field::rationals(), Field::prime(10007)}) {
    Rng rng;
    for (int trial = 0; trial < 12; ++trial) {
      size_t rows = static_cast<size_t>(rng.range(1, 40));
      size_t cols = static_cast<size_t>(rng.range(1, 40));
      ExactMatrix m(f, rows, cols);
      for (auto& x : m.a)
        if (rng.range(0, 2) == 0) x = rng.scalar(f);
      auto r1 = rref(m);
      auto r2 = rref(r1.m);
      CHECK(r1.m == r2.m);  // idempotent
      CHECK(r1.rank + kernel_basis(m).size() == cols);  // rank-nullity
    }
  }
}

TEST_CASE("row scaling preserves the reduced form") {
  Field Q = Field::rationals();
  Rng rng;
  for (int trial = 0; trial < 8; ++trial) {
    size_t rows = static_cast<size_t>(rng.range(1, 12));
    size_t cols = static_cast<size_t>(rng.range(1, 12));
    ExactMatrix m(Q, rows, cols);
    for (auto& x : m.a)
      if (rng.range(0, 1) == 0) x = rng.scalar(Q);
    // clearing denominators row by row keeps the row space
    ExactMatrix scaled = m;
    for (size_t i = 0; i < rows; ++i) {
      mpz_class l = 1;
      for (size_t j = 0; j < cols; ++j)
        if (!scaled.at(i, j).is_zero())
          l = lcm(l, scaled.at(i, j).rat().get_den());
      Scalar f = Scalar::rational(mpq_class(l));
      for (size_t j = 0; j < cols; ++j) scaled.at(i, j) = scaled.at(i, j) * f;
    }
    CHECK(rref(m).m == rref(scaled).m);
  }
}

TEST_CASE("regularity reports") {
  Quiver qt = triangle_quiver();
  RegularityReport r = validate_regularity(qt);
  CHECK(r.is_biregular);
  CHECK(!r.is_2regular);
  CHECK(r.one_vertices == std::vector<int>{1, 3});
  CHECK(r.two_vertices == std::vector<int>{2});

  Quiver lone;
  lone.add_vertex(1);
  RegularityReport r1 = validate_regularity(lone);
  CHECK(!r1.is_biregular);
  CHECK(r1.degrees[0].indeg == 0);
  CHECK(r1.degrees[0].outdeg == 0);

  RegularityReport rs = validate_regularity(spherical_quiver());
  CHECK(rs.is_biregular);
  CHECK(rs.one_vertices == std::vector<int>{2, 4, 5, 6});
  CHECK(rs.two_vertices == std::vector<int>{1, 3});

  Quiver bad;
  bad.add_vertex(1);
  bad.add_arrow("a", 1, 2);
  CHECK_THROWS_WITH_AS(validate_regularity(bad),
                       doctest::Contains("missing vertex"), QgtError);
}

TEST_CASE("bar and g derivation") {
  AssembledQuiver tq = triangle_triangulation_quiver();
  FPermutation p = derive_bar_and_g(tq.quiver, tq.perm.f);
  auto gorbs = orbits(p.g);
  REQUIRE(gorbs.size() == 3);
  CHECK(gorbs[0] == std::vector<std::string>{"alpha", "beta", "nu", "delta"});
  CHECK(gorbs[1] == std::vector<std::string>{"rho"});
  CHECK(gorbs[2] == std::vector<std::string>{"sigma"});
  // bar is an involution
  for (const auto& [a, b] : p.bar) CHECK(p.bar.at(b) == a);

  AssembledQuiver sph = spherical_triangulation_quiver();
  std::map<std::string, int> lens = orbit_lengths(sph.perm.g);
  CHECK(lens.at("xi") == 2);
  CHECK(lens.at("xiP") == 2);
  CHECK(lens.at("alpha") == 4);
  CHECK(lens.at("rho") == 4);

  CHECK_THROWS_AS(derive_bar_and_g(triangle_quiver(), {}), QgtError);
  std::map<std::string, std::string> badf = tq.perm.f;
  badf["alpha"] = "nu";  // t(alpha) != s(nu)
  badf["sigma"] = "sigma";
  CHECK_THROWS_AS(derive_bar_and_g(tq.quiver, badf), QgtError);
}

TEST_CASE("orbit decomposition") {
  std::map<std::string, std::string> ident{{"a", "a"}, {"b", "b"}, {"c", "c"}, {"d", "d"}};
  CHECK(orbits(ident).size() == 4);

  AssembledQuiver tq = triangle_triangulation_quiver();
  std::map<std::string, int> lens = orbit_lengths(tq.perm.g);
  std::multiset<int> sizes;
  for (const auto& orb : orbits(tq.perm.g)) sizes.insert(static_cast<int>(orb.size()));
  CHECK(sizes == std::multiset<int>{1, 1, 4});
  // every arrow is in exactly one orbit
  size_t covered = 0;
  for (const auto& orb : orbits(tq.perm.g)) covered += orb.size();
  CHECK(covered == tq.quiver.arrows.size());

  std::map<std::string, std::string> notperm{{"a", "b"}, {"b", "b"}};
  CHECK_THROWS_AS(orbits(notperm), QgtError);

  // iterated application, both ways around the cycle
  FPermutation p = tq.perm;
  CHECK(p.g_iter("alpha", 4) == "alpha");
  CHECK(p.g_iter("alpha", -1) == "delta");
  CHECK(p.f_iter("alpha", 3) == "alpha");
}

TEST_CASE("assembly from blocks") {
  AssembledQuiver tq = triangle_triangulation_quiver();
  CHECK(tq.quiver.vertices == std::vector<int>{1, 2, 3});
  CHECK(tq.quiver.arrows.size() == 6);
  RegularityReport reg = validate_regularity(tq.quiver);
  CHECK(reg.is_2regular);
  // f-cubes on triangles, fixed on single-loop blocks
  for (const auto& orb : orbits(tq.perm.f)) CHECK((orb.size() == 1 || orb.size() == 3));
  CHECK(tq.perm.f.at("alpha") == "sigma");
  CHECK(tq.perm.f.at("sigma") == "beta");
  CHECK(tq.perm.f.at("beta") == "alpha");

  AssembledQuiver sph = spherical_triangulation_quiver();
  CHECK(sph.quiver.vertices.size() == 6);
  CHECK(sph.quiver.arrows.size() == 12);
  CHECK(validate_regularity(sph.quiver).is_2regular);

  // a 2-cycle block and a 4-cycle block leave three unmatched slots
  std::vector<BlockSpec> bad{{"A", BlockType::V1, {"e", "h"}},
                             {"B", BlockType::V2, {"a", "b", "c", "d"}}};
  CHECK_THROWS_WITH_AS(assemble_from_blocks(bad, {}), doctest::Contains("unmatched"),
                       QgtError);
}

TEST_CASE("one-vertex block location") {
  BlockDecomposition qs = locate_one_vertex_blocks(spherical_quiver());
  REQUIRE(qs.blocks.size() == 2);
  CHECK(qs.blocks[0].type == BlockType::V2);
  CHECK(qs.blocks[0].vertices == std::vector<int>{1, 2, 3, 5});
  CHECK(qs.blocks[0].arrows == std::vector<std::string>{"alpha", "beta", "nu", "delta"});
  CHECK(qs.blocks[1].vertices == std::vector<int>{3, 4, 1, 6});
  CHECK(qs.blocks[1].arrows == std::vector<std::string>{"gamma", "sigma", "rho", "omega"});

  BlockDecomposition qtp = locate_one_vertex_blocks(almost_triangle_quiver());
  REQUIRE(qtp.blocks.size() == 1);
  CHECK(qtp.blocks[0].type == BlockType::V1);
  CHECK(qtp.blocks[0].vertices == std::vector<int>{2, 3});

  // a 2-regular quiver has nothing to locate
  CHECK(locate_one_vertex_blocks(triangle_triangulation_quiver().quiver).blocks.empty());

  Quiver bad;
  bad.add_vertex(1);
  bad.add_vertex(2);
  bad.add_arrow("a", 1, 2);
  bad.add_arrow("b", 1, 2);
  bad.add_arrow("c", 1, 2);
  bad.add_arrow("r", 2, 1);
  CHECK_THROWS_AS(locate_one_vertex_blocks(bad), QgtError);
}

TEST_CASE("one-vertex block violations") {
  // a 1-vertex whose square does not close
  Quiver q;
  for (int v : {1, 2, 3, 4, 5}) q.add_vertex(v);
  q.add_arrow("a", 1, 2);   // 1 -> 2 (c)
  q.add_arrow("b", 2, 3);   // c -> b
  q.add_arrow("x", 3, 4);   // b -> d candidate
  q.add_arrow("y", 4, 5);   // d -> elsewhere: square will not close
  q.add_arrow("u", 3, 1);
  q.add_arrow("v", 5, 3);
  q.add_arrow("w", 5, 1);
  q.add_arrow("z", 1, 5);
  CHECK(validate_regularity(q).is_biregular);
  CHECK_THROWS_WITH_AS(locate_one_vertex_blocks(q), doctest::Contains("neither block"),
                       QgtError);
}

TEST_CASE("sup-critical detection") {
  // the closed 9-arrow shape around one 4-cycle block
  Quiver q;
  for (int v : {1, 2, 3, 4, 5, 6}) q.add_vertex(v);
  q.add_arrow("alpha", 1, 2);
  q.add_arrow("beta", 2, 3);
  q.add_arrow("nu", 3, 4);
  q.add_arrow("delta", 4, 1);
  q.add_arrow("abar", 1, 3);   // second arrow 1 -> 3
  q.add_arrow("nbar", 3, 5);   // second arrow out of 3
  q.add_arrow("dstar", 5, 1);  // closes into 1
  q.add_arrow("eps", 5, 6);
  q.add_arrow("eta", 6, 5);
  CHECK(validate_regularity(q).is_biregular);
  BlockDecomposition blocks = locate_one_vertex_blocks(q);
  auto hits = detect_supcritical_shapes(q, blocks);
  bool found = false;
  for (const auto& h : hits)
    if (h.sup_critical) {
      found = true;
      CHECK(h.outer_vertex == 5);
    }
  CHECK(found);

  // the 8-arrow spherical shape is not sup-critical
  auto qs_hits = detect_supcritical_shapes(spherical_quiver(),
                                           locate_one_vertex_blocks(spherical_quiver()));
  for (const auto& h : qs_hits) CHECK(!h.sup_critical);

  // no 1-vertices: nothing to report
  AssembledQuiver tq = triangle_triangulation_quiver();
  BlockDecomposition none;
  CHECK(detect_supcritical_shapes(tq.quiver, none).empty());
}

TEST_CASE("special quiver classification") {
  CHECK(classify_special(triangle_quiver()) == SpecialTag::Triangle);
  CHECK(classify_special(almost_triangle_quiver()) == SpecialTag::AlmostTriangle);
  CHECK(classify_special(spherical_quiver()) == SpecialTag::Spherical);
  CHECK(classify_special(almost_spherical_quiver()) == SpecialTag::AlmostSpherical);
  CHECK(classify_special(tetrahedral_quiver().quiver) == SpecialTag::Tetrahedral);
  CHECK(classify_special(markov_quiver()) == SpecialTag::Markov);
  CHECK(classify_special(triangle_triangulation_quiver().quiver) == SpecialTag::Other);

  // invariance under relabeling
  Rng rng;
  for (int trial = 0; trial < 5; ++trial) {
    Quiver q = spherical_quiver();
    std::vector<int> perm = q.vertices;
    for (size_t i = perm.size(); i > 1; --i)
      std::swap(perm[i - 1], perm[rng.next() % i]);
    Quiver relabeled;
    std::map<int, int> to;
    for (size_t i = 0; i < q.vertices.size(); ++i) to[q.vertices[i]] = perm[i];
    for (int v : q.vertices) relabeled.add_vertex(to[v]);
    for (const Arrow& a : q.arrows) relabeled.add_arrow(a.name, to[a.source], to[a.target]);
    CHECK(classify_special(relabeled) == SpecialTag::Spherical);
  }
}

TEST_CASE("tetrahedral quiver has triangle cycles") {
  AssembledQuiver tet = tetrahedral_quiver();
  CHECK(validate_regularity(tet.quiver).is_2regular);
  for (const Arrow& a : tet.quiver.arrows) CHECK(a.source != a.target);
  for (const auto& orb : orbits(tet.perm.g)) CHECK(orb.size() == 3);
  for (const auto& orb : orbits(tet.perm.f)) CHECK(orb.size() == 3);
}
