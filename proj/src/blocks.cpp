#include "qgt/blocks.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>

namespace qgt {

std::string block_type_name(BlockType t) {
  switch (t) {
    case BlockType::I: return "I";
    case BlockType::II: return "II";
    case BlockType::III: return "III";
    case BlockType::V1: return "V1";
    case BlockType::V2: return "V2";
  }
  return "?";
}

std::vector<const Block*> BlockDecomposition::of_type(BlockType t) const {
  std::vector<const Block*> out;
  for (const Block& b : blocks)
    if (b.type == t) out.push_back(&b);
  return out;
}

namespace {

struct Template {
  int n_vertices;
  std::vector<int> slots;                      // circle-slot vertex indices
  std::vector<std::pair<int, int>> arrows;     // (from,to) as vertex indices
  std::vector<std::array<int, 3>> f_cycles;    // arrow-index cycles, -1 padded
};

const Template& block_template(BlockType t) {
  static const Template tI{1, {0}, {{0, 0}}, {{0, -1, -1}}};
  static const Template tII{2, {1}, {{0, 0}, {0, 1}, {1, 0}}, {{1, 2, 0}}};
  static const Template tIII{3, {0, 1, 2}, {{0, 1}, {1, 2}, {2, 0}}, {{0, 1, 2}}};
  static const Template tV1{2, {0}, {{0, 1}, {1, 0}}, {}};
  static const Template tV2{4, {0, 2}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}, {}};
  switch (t) {
    case BlockType::I: return tI;
    case BlockType::II: return tII;
    case BlockType::III: return tIII;
    case BlockType::V1: return tV1;
    case BlockType::V2: return tV2;
  }
  fail("InternalError", "unknown block type");
}

}  // namespace

AssembledQuiver assemble_from_blocks(const std::vector<BlockSpec>& blocks,
                                     const std::vector<GluePair>& pairing) {
  std::map<std::string, size_t> by_name;
  for (size_t i = 0; i < blocks.size(); ++i) {
    if (by_name.count(blocks[i].name))
      fail("BadPairing", "duplicate block name '" + blocks[i].name + "'");
    by_name[blocks[i].name] = i;
    const Template& t = block_template(blocks[i].type);
    if (blocks[i].arrow_names.size() != t.arrows.size())
      fail("BadPairing", "block '" + blocks[i].name + "' needs " +
                             std::to_string(t.arrows.size()) + " arrow names");
  }

  // resolve the glue matching on circle slots
  std::map<std::pair<size_t, int>, std::pair<size_t, int>> match;
  for (const GluePair& g : pairing) {
    auto ia = by_name.find(g.block_a);
    auto ib = by_name.find(g.block_b);
    if (ia == by_name.end() || ib == by_name.end())
      fail("BadPairing", "glue references an unknown block");
    const Template& ta = block_template(blocks[ia->second].type);
    const Template& tb = block_template(blocks[ib->second].type);
    if (g.slot_a < 0 || g.slot_a >= static_cast<int>(ta.slots.size()) ||
        g.slot_b < 0 || g.slot_b >= static_cast<int>(tb.slots.size()))
      fail("BadPairing", "glue slot out of range");
    if (ia->second == ib->second)
      fail("BadPairing", "slots of the same block cannot be glued");
    std::pair<size_t, int> ka{ia->second, g.slot_a}, kb{ib->second, g.slot_b};
    if (match.count(ka) || match.count(kb))
      fail("BadPairing", "a glue slot is matched twice");
    match[ka] = kb;
    match[kb] = ka;
  }
  for (size_t i = 0; i < blocks.size(); ++i) {
    const Template& t = block_template(blocks[i].type);
    for (int s = 0; s < static_cast<int>(t.slots.size()); ++s)
      if (!match.count({i, s}))
        fail("BadPairing", "unmatched glue slot " + std::to_string(s) +
                               " of block '" + blocks[i].name + "'");
  }

  // assign vertex ids in first-mention order
  AssembledQuiver out;
  std::map<std::pair<size_t, int>, int> vertex_of;  // (block, template vertex)
  int next_id = 1;
  for (size_t i = 0; i < blocks.size(); ++i) {
    const Template& t = block_template(blocks[i].type);
    for (int tv = 0; tv < t.n_vertices; ++tv) {
      auto slot_it = std::find(t.slots.begin(), t.slots.end(), tv);
      if (slot_it == t.slots.end()) {
        vertex_of[{i, tv}] = next_id++;
        continue;
      }
      int slot = static_cast<int>(slot_it - t.slots.begin());
      auto partner = match.at({i, slot});
      const Template& tp = block_template(blocks[partner.first].type);
      int ptv = tp.slots[partner.second];
      auto seen = vertex_of.find({partner.first, ptv});
      vertex_of[{i, tv}] = (seen != vertex_of.end()) ? seen->second : next_id++;
    }
  }

  bool biregular_mode = false;
  for (const BlockSpec& b : blocks)
    if (b.type == BlockType::V1 || b.type == BlockType::V2) biregular_mode = true;
  out.triangulation_mode = !biregular_mode;

  std::set<std::string> arrow_seen;
  for (size_t i = 0; i < blocks.size(); ++i) {
    const Template& t = block_template(blocks[i].type);
    Block placed;
    placed.type = blocks[i].type;
    for (int tv = 0; tv < t.n_vertices; ++tv)
      placed.vertices.push_back(vertex_of.at({i, tv}));
    for (size_t k = 0; k < t.arrows.size(); ++k) {
      const std::string& name = blocks[i].arrow_names[k];
      if (!arrow_seen.insert(name).second)
        fail("BadPairing", "duplicate arrow name '" + name + "'");
      int s = vertex_of.at({i, t.arrows[k].first});
      int tg = vertex_of.at({i, t.arrows[k].second});
      out.quiver.add_vertex(s);
      out.quiver.add_vertex(tg);
      out.quiver.add_arrow(name, s, tg);
      placed.arrows.push_back(name);
    }
    if (blocks[i].type == BlockType::I) {
      out.perm.f[blocks[i].arrow_names[0]] = blocks[i].arrow_names[0];
    } else {
      for (const auto& cyc : t.f_cycles)
        for (int k = 0; k < 3; ++k)
          out.perm.f[blocks[i].arrow_names[cyc[k]]] =
              blocks[i].arrow_names[cyc[(k + 1) % 3]];
    }
    out.blocks.blocks.push_back(std::move(placed));
  }

  out.quiver.validate();
  if (out.triangulation_mode) {
    out.perm = derive_bar_and_g(out.quiver, out.perm.f);
  } else {
    // partial f: add the forced values around V-blocks, then bar and g
    out.perm.bar = bar_involution(out.quiver);
    for (const Block& b : out.blocks.blocks) {
      if (b.type == BlockType::V2) {
        out.perm.f[b.arrows[1]] = b.arrows[2];  // beta -> nu
        out.perm.f[b.arrows[3]] = b.arrows[0];  // delta -> alpha
        out.perm.g[b.arrows[0]] = b.arrows[1];  // g(alpha) = beta
        out.perm.g[b.arrows[2]] = b.arrows[3];  // g(nu) = delta
      } else if (b.type == BlockType::V1) {
        out.perm.f[b.arrows[1]] = b.arrows[0];  // eta -> eps
        out.perm.g[b.arrows[0]] = b.arrows[1];  // g(eps) = eta
      }
    }
    for (const auto& [a, fa] : out.perm.f)
      out.perm.g[a] = out.perm.bar.at(fa);
  }
  return out;
}

BlockDecomposition locate_one_vertex_blocks(const Quiver& q) {
  RegularityReport reg = validate_regularity(q);
  if (!reg.is_biregular) fail("NotBiregular", "quiver is not biregular");
  std::set<int> ones(reg.one_vertices.begin(), reg.one_vertices.end());
  std::set<int> assigned;
  BlockDecomposition out;

  auto the_in = [&](int v) { return q.in_arrows(v).at(0); };
  auto the_out = [&](int v) { return q.out_arrows(v).at(0); };

  for (int v : reg.one_vertices) {
    if (assigned.count(v)) continue;
    const Arrow& in = q.arrow(the_in(v));
    const Arrow& outa = q.arrow(the_out(v));
    if (in.source == outa.target) {
      int x = in.source;
      if (ones.count(x))
        fail("BlockShapeViolation",
             "two adjacent 1-vertices " + std::to_string(x) + "," + std::to_string(v));
      Block b;
      b.type = BlockType::V1;
      b.vertices = {x, v};
      b.arrows = {in.name, outa.name};
      assigned.insert(v);
      out.blocks.push_back(std::move(b));
      continue;
    }
    // V2: v plays c; find the companion d with b -> d -> a
    int a = in.source, bvx = outa.target;
    if (ones.count(a) || ones.count(bvx))
      fail("BlockShapeViolation",
           "1-vertex " + std::to_string(v) + " between 1-regular neighbours");
    struct Cand {
      int d;
      std::string nu, delta;
    };
    std::vector<Cand> cands;
    for (const std::string& nu_name : q.out_arrows(bvx)) {
      const Arrow& nu = q.arrow(nu_name);
      int d = nu.target;
      if (!ones.count(d) || d == v || assigned.count(d)) continue;
      const Arrow& delta = q.arrow(the_out(d));
      if (delta.target == a) cands.push_back({d, nu.name, delta.name});
    }
    if (cands.empty())
      fail("BlockShapeViolation",
           "1-vertex " + std::to_string(v) + " fits neither block shape");
    // when two companions close the square, take the lex-smallest closing arrow
    std::sort(cands.begin(), cands.end(),
              [](const Cand& x, const Cand& y) { return x.delta < y.delta; });
    const Cand& pick = cands.front();
    Block b;
    b.type = BlockType::V2;
    // orient the cycle so the lex-smallest of the two circle->dot arrows is alpha
    const std::string& alpha1 = in.name;
    const std::string& alpha2 = pick.nu;
    if (alpha1 <= alpha2) {
      b.vertices = {a, v, bvx, pick.d};
      b.arrows = {in.name, outa.name, pick.nu, pick.delta};
    } else {
      b.vertices = {bvx, pick.d, a, v};
      b.arrows = {pick.nu, pick.delta, in.name, outa.name};
    }
    assigned.insert(v);
    assigned.insert(pick.d);
    out.blocks.push_back(std::move(b));
  }
  std::sort(out.blocks.begin(), out.blocks.end(), [](const Block& x, const Block& y) {
    if (x.type != y.type) return x.type == BlockType::V2;
    return x.vertices < y.vertices;
  });
  return out;
}

std::vector<SupCriticalHit> detect_supcritical_shapes(
    const Quiver& q, const BlockDecomposition& blocks) {
  RegularityReport reg = validate_regularity(q);
  std::set<int> twos(reg.two_vertices.begin(), reg.two_vertices.end());
  auto bar = bar_involution(q);
  std::vector<SupCriticalHit> out;
  size_t idx = 0;
  for (const Block& b : blocks.blocks) {
    if (b.type != BlockType::V2) continue;
    SupCriticalHit hit;
    hit.block_index = idx++;
    int a = b.vertices[0], bb = b.vertices[2];
    const std::string& alpha = b.arrows[0];
    const std::string& nu = b.arrows[2];
    const std::string& delta = b.arrows[3];
    const Arrow& abar = q.arrow(bar.at(alpha));
    const Arrow& nbar = q.arrow(bar.at(nu));
    // the second arrow into a, besides delta
    std::string delta_star;
    for (const std::string& n : q.in_arrows(a))
      if (n != delta) delta_star = n;
    bool ok = abar.name != alpha && abar.target == bb;
    if (ok) {
      int e = nbar.target;
      ok = twos.count(e) && e != a && e != bb &&
           std::find(b.vertices.begin(), b.vertices.end(), e) == b.vertices.end() &&
           !delta_star.empty() && q.arrow(delta_star).source == e;
      if (ok) hit.outer_vertex = e;
    }
    hit.sup_critical = ok;
    out.push_back(hit);
  }
  return out;
}

Quiver triangle_quiver() {
  Quiver q;
  for (int v : {1, 2, 3}) q.add_vertex(v);
  q.add_arrow("delta", 1, 2);
  q.add_arrow("nu", 2, 1);
  q.add_arrow("alpha", 2, 3);
  q.add_arrow("beta", 3, 2);
  return q;
}

Quiver almost_triangle_quiver() {
  Quiver q = triangle_quiver();
  q.add_arrow("rho", 1, 1);
  return q;
}

Quiver spherical_quiver() {
  Quiver q;
  for (int v : {1, 2, 3, 4, 5, 6}) q.add_vertex(v);
  q.add_arrow("alpha", 1, 2);
  q.add_arrow("rho", 1, 6);
  q.add_arrow("beta", 2, 3);
  q.add_arrow("gamma", 3, 4);
  q.add_arrow("nu", 3, 5);
  q.add_arrow("sigma", 4, 1);
  q.add_arrow("delta", 5, 1);
  q.add_arrow("omega", 6, 3);
  return q;
}

Quiver almost_spherical_quiver() {
  Quiver q = spherical_quiver();
  q.add_arrow("xiP", 4, 6);
  q.add_arrow("muP", 6, 4);
  return q;
}

Quiver markov_quiver() {
  Quiver q;
  q.add_vertex(1);
  q.add_vertex(2);
  q.add_arrow("a1", 1, 2);
  q.add_arrow("a2", 1, 2);
  q.add_arrow("b1", 2, 1);
  q.add_arrow("b2", 2, 1);
  return q;
}

AssembledQuiver triangle_triangulation_quiver() {
  std::vector<BlockSpec> blocks{
      {"B1", BlockType::II, {"rho", "delta", "nu"}},
      {"B2", BlockType::II, {"sigma", "beta", "alpha"}},
  };
  std::vector<GluePair> glue{{"B1", 0, "B2", 0}};
  return assemble_from_blocks(blocks, glue);
}

AssembledQuiver spherical_triangulation_quiver() {
  // four triangles of a sphere; vertices come out as
  // 1,2,5 / 2,3,5(no) -- ids assigned in first-mention order below
  std::vector<BlockSpec> blocks{
      {"T1", BlockType::III, {"alpha", "mu", "delta"}},
      {"T2", BlockType::III, {"beta", "nu", "xi"}},
      {"T3", BlockType::III, {"gamma", "xiP", "omega"}},
      {"T4", BlockType::III, {"rho", "muP", "sigma"}},
  };
  // T1 = (1 -> 2 -> 5 -> 1), T2 = (2 -> 3 -> 5 -> 2),
  // T3 = (3 -> 4 -> 6 -> 3), T4 = (1 -> 6 -> 4 -> 1)
  std::vector<GluePair> glue{
      {"T1", 0, "T4", 0},  // vertex 1
      {"T1", 1, "T2", 0},  // vertex 2
      {"T1", 2, "T2", 2},  // vertex 5
      {"T2", 1, "T3", 0},  // vertex 3
      {"T3", 1, "T4", 2},  // vertex 4
      {"T3", 2, "T4", 1},  // vertex 6
  };
  return assemble_from_blocks(blocks, glue);
}

AssembledQuiver tetrahedral_quiver() {
  std::vector<BlockSpec> blocks{
      {"F1", BlockType::III, {"a1", "a2", "a3"}},
      {"F2", BlockType::III, {"b1", "b2", "b3"}},
      {"F3", BlockType::III, {"c1", "c2", "c3"}},
      {"F4", BlockType::III, {"d1", "d2", "d3"}},
  };
  // faces of the tetrahedron glued edge-to-edge with coherent orientation
  std::vector<GluePair> glue{
      {"F1", 0, "F3", 2},
      {"F1", 1, "F4", 2},
      {"F1", 2, "F2", 0},
      {"F2", 1, "F4", 1},
      {"F2", 2, "F3", 0},
      {"F3", 1, "F4", 0},
  };
  return assemble_from_blocks(blocks, glue);
}

std::string special_tag_name(SpecialTag t) {
  switch (t) {
    case SpecialTag::Spherical: return "Spherical";
    case SpecialTag::AlmostSpherical: return "AlmostSpherical";
    case SpecialTag::Triangle: return "Triangle";
    case SpecialTag::AlmostTriangle: return "AlmostTriangle";
    case SpecialTag::Tetrahedral: return "Tetrahedral";
    case SpecialTag::Markov: return "Markov";
    case SpecialTag::Other: return "Other";
  }
  return "?";
}

SpecialTag classify_special(const Quiver& q) {
  if (quiver_isomorphic(q, triangle_quiver())) return SpecialTag::Triangle;
  if (quiver_isomorphic(q, almost_triangle_quiver())) return SpecialTag::AlmostTriangle;
  if (quiver_isomorphic(q, spherical_quiver())) return SpecialTag::Spherical;
  if (quiver_isomorphic(q, almost_spherical_quiver())) return SpecialTag::AlmostSpherical;
  if (quiver_isomorphic(q, tetrahedral_quiver().quiver)) return SpecialTag::Tetrahedral;
  if (quiver_isomorphic(q, markov_quiver())) return SpecialTag::Markov;
  return SpecialTag::Other;
}

}  // namespace qgt
