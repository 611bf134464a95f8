#pragma once

#include "qgt/quiver.hpp"

namespace qgt {

enum class BlockType { I, II, III, V1, V2 };

std::string block_type_name(BlockType t);

// Vertex and arrow layout by block type:
//   I:   vertices [s0],          arrows [loop]
//   II:  vertices [dot, s0],     arrows [loop, out(dot->s0), in(s0->dot)]
//   III: vertices [s0, s1, s2],  arrows [s0->s1, s1->s2, s2->s0]
//   V1:  vertices [x, y],        arrows [eps(x->y), eta(y->x)]
//   V2:  vertices [a, c, b, d],  arrows [alpha(a->c), beta(c->b), nu(b->d), delta(d->a)]
struct Block {
  BlockType type;
  std::vector<int> vertices;
  std::vector<std::string> arrows;
};

struct BlockDecomposition {
  std::vector<Block> blocks;

  std::vector<const Block*> of_type(BlockType t) const;
};

// Input description for assembling a quiver from blocks.
struct BlockSpec {
  std::string name;
  BlockType type;
  std::vector<std::string> arrow_names;  // in the layout order above
};

struct GluePair {
  std::string block_a;
  int slot_a = 0;  // 0-based circle-slot index within the block
  std::string block_b;
  int slot_b = 0;
};

struct AssembledQuiver {
  Quiver quiver;
  FPermutation perm;  // f total in triangulation mode, partial otherwise
  BlockDecomposition blocks;
  bool triangulation_mode = true;
};

AssembledQuiver assemble_from_blocks(const std::vector<BlockSpec>& blocks,
                                     const std::vector<GluePair>& pairing);

// Groups every 1-regular vertex of a biregular quiver into a V1 or V2 block.
BlockDecomposition locate_one_vertex_blocks(const Quiver& q);

struct SupCriticalHit {
  size_t block_index = 0;  // into the V2 list of the decomposition
  bool sup_critical = false;
  int outer_vertex = -1;  // the extra 2-vertex closing the shape
};

std::vector<SupCriticalHit> detect_supcritical_shapes(
    const Quiver& q, const BlockDecomposition& blocks);

enum class SpecialTag {
  Spherical,
  AlmostSpherical,
  Triangle,
  AlmostTriangle,
  Tetrahedral,
  Markov,
  Other
};

std::string special_tag_name(SpecialTag t);
SpecialTag classify_special(const Quiver& q);

// Named reference quivers.
Quiver triangle_quiver();          // 3 vertices, 4 arrows
Quiver almost_triangle_quiver();   // triangle plus one loop
Quiver spherical_quiver();         // 6 vertices, 8 arrows
Quiver almost_spherical_quiver();  // 6 vertices, 10 arrows
Quiver markov_quiver();

// Reference triangulation quivers, with their f.
AssembledQuiver triangle_triangulation_quiver();
AssembledQuiver spherical_triangulation_quiver();
AssembledQuiver tetrahedral_quiver();

}  // namespace qgt
