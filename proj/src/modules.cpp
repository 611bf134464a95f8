#include "qgt/modules.hpp"

#include <algorithm>

namespace qgt {

size_t RightModule::total() const {
  size_t n = 0;
  for (const auto& [v, d] : fiber) n += d;
  return n;
}

ExactMatrix RightModule::act_path(const Path& p) const {
  const Field& F = alg->field();
  if (p.arrows.empty()) {
    size_t d = fiber.count(p.base) ? fiber.at(p.base) : 0;
    return ExactMatrix::identity(F, d);
  }
  const Arrow& first = alg->quiver().arrow(p.arrows.front());
  ExactMatrix m = ExactMatrix::identity(F, fiber.count(first.source) ? fiber.at(first.source) : 0);
  for (const std::string& name : p.arrows) {
    auto it = action.find(name);
    if (it == action.end()) fail("UnknownArrow", "module has no action for '" + name + "'");
    m = it->second * m;
  }
  return m;
}

std::vector<std::string> RightModule::relation_violations() const {
  std::vector<std::string> out;
  for (const PathExpr& r : alg->relations()) {
    if (r.is_zero()) continue;
    const Path& p0 = r.terms().begin()->first;
    const Arrow& first = alg->quiver().arrow(p0.arrows.front());
    const Arrow& last = alg->quiver().arrow(p0.arrows.back());
    size_t rows = fiber.count(last.target) ? fiber.at(last.target) : 0;
    size_t cols = fiber.count(first.source) ? fiber.at(first.source) : 0;
    ExactMatrix acc(alg->field(), rows, cols);
    for (const auto& [p, c] : r.terms()) {
      ExactMatrix m = act_path(p);
      for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j) acc.at(i, j) += c * m.at(i, j);
    }
    if (!acc.is_zero()) out.push_back(r.str());
  }
  return out;
}

RightModule simple_module(const FDAlgebra& a, int i) {
  if (!a.quiver().has_vertex(i)) fail("UnknownVertex", "no vertex " + std::to_string(i));
  RightModule m;
  m.alg = &a;
  for (int v : a.quiver().vertices) m.fiber[v] = (v == i) ? 1 : 0;
  for (const Arrow& ar : a.quiver().arrows)
    m.action[ar.name] = ExactMatrix(a.field(), m.fiber[ar.target], m.fiber[ar.source]);
  return m;
}

RightModule projective_module(const FDAlgebra& a, int i) {
  RightModule m;
  m.alg = &a;
  // fibers: basis paths from i grouped by target, in basis order
  std::map<int, std::vector<FDAlgebra::NodeId>> fib;
  for (int v : a.quiver().vertices) fib[v] = a.basis_between(i, v);
  std::map<int, std::map<FDAlgebra::NodeId, size_t>> pos;
  for (auto& [v, list] : fib) {
    m.fiber[v] = list.size();
    for (size_t k = 0; k < list.size(); ++k) pos[v][list[k]] = k;
  }
  for (const Arrow& ar : a.quiver().arrows) {
    ExactMatrix mat(a.field(), m.fiber[ar.target], m.fiber[ar.source]);
    auto an = a.find_node(Path::of({ar.name}));
    const auto& src_list = fib[ar.source];
    for (size_t j = 0; j < src_list.size(); ++j) {
      if (!an) continue;
      for (const auto& [n, c] : a.nf_concat(src_list[j], *an))
        mat.at(pos[ar.target].at(n), j) = c;
    }
    m.action[ar.name] = std::move(mat);
  }
  return m;
}

size_t ProjSum::dim(const FDAlgebra& a) const {
  size_t n = 0;
  for (int v : comps) n += a.dim_at(v);
  return n;
}

ExactMatrix module_map_matrix(const FDAlgebra& a, const ModuleMap& m) {
  const Field& F = a.field();
  if (m.entry.size() != m.to.comps.size())
    fail("ShapeMismatch", "module map rows");
  for (const auto& row : m.entry)
    if (row.size() != m.from.comps.size()) fail("ShapeMismatch", "module map columns");

  // global coordinates: concatenated full bases of the components
  std::vector<size_t> to_offset(m.to.comps.size() + 1, 0);
  for (size_t i = 0; i < m.to.comps.size(); ++i)
    to_offset[i + 1] = to_offset[i] + a.dim_at(m.to.comps[i]);
  std::vector<size_t> from_offset(m.from.comps.size() + 1, 0);
  for (size_t j = 0; j < m.from.comps.size(); ++j)
    from_offset[j + 1] = from_offset[j] + a.dim_at(m.from.comps[j]);

  ExactMatrix out(F, to_offset.back(), from_offset.back());
  for (size_t i = 0; i < m.to.comps.size(); ++i) {
    std::map<FDAlgebra::NodeId, size_t> pos;
    const auto& tb = a.basis_from(m.to.comps[i]);
    for (size_t k = 0; k < tb.size(); ++k) pos[tb[k]] = k;
    for (size_t j = 0; j < m.from.comps.size(); ++j) {
      const PathExpr& e = m.entry[i][j];
      if (e.is_zero()) continue;
      const auto& fb = a.basis_from(m.from.comps[j]);
      for (const auto& [p, c] : e.terms()) {
        auto pn = a.find_node(p);
        if (!pn) continue;
        if (a.node_source(*pn) != m.to.comps[i] || a.node_target(*pn) != m.from.comps[j])
          fail("ShapeMismatch", "entry " + p.str() + " has wrong endpoints");
        for (size_t col = 0; col < fb.size(); ++col)
          for (const auto& [n, cc] : a.nf_concat(*pn, fb[col]))
            out.at(to_offset[i] + pos.at(n), from_offset[j] + col) += c * cc;
      }
    }
  }
  return out;
}

namespace {

// global coordinates of a module: fibers concatenated in vertex order
struct ModCoords {
  std::vector<int> vverts;
  std::map<int, size_t> offset;
  size_t total = 0;
};

ModCoords coords_of(const RightModule& m) {
  ModCoords c;
  for (const auto& [v, d] : m.fiber) {
    c.vverts.push_back(v);
    c.offset[v] = c.total;
    c.total += d;
  }
  return c;
}

}  // namespace

Cover projective_cover(const RightModule& m) {
  if (m.is_zero()) fail("ZeroModule", "projective cover of the zero module");
  const FDAlgebra& a = *m.alg;
  const Field& F = a.field();
  ModCoords mc = coords_of(m);

  // top = fiber / (sum of arrow images); lifts are the free coordinates
  Cover cov;
  std::vector<std::pair<int, size_t>> lifts;  // (vertex, fiber coordinate)
  for (const auto& [v, d] : m.fiber) {
    if (d == 0) continue;
    std::vector<std::vector<Scalar>> rows;
    for (const Arrow& ar : a.quiver().arrows) {
      if (ar.target != v) continue;
      const ExactMatrix& act = m.action.at(ar.name);
      for (size_t j = 0; j < act.cols; ++j) {
        std::vector<Scalar> col(d, Scalar::zero(F));
        for (size_t i = 0; i < d; ++i) col[i] = act.at(i, j);
        rows.push_back(std::move(col));
      }
    }
    std::vector<size_t> piv;
    rref_rows(rows, &piv);
    std::vector<bool> is_piv(d, false);
    for (size_t p : piv) is_piv[p] = true;
    for (size_t k = 0; k < d; ++k)
      if (!is_piv[k]) {
        cov.source.comps.push_back(v);
        lifts.emplace_back(v, k);
      }
  }

  // cover matrix: column (component s, basis path w) maps to lift_s * act(w)
  std::vector<size_t> col_offset(cov.source.comps.size() + 1, 0);
  for (size_t s = 0; s < cov.source.comps.size(); ++s)
    col_offset[s + 1] = col_offset[s] + a.dim_at(cov.source.comps[s]);
  ExactMatrix mat(F, mc.total, col_offset.back());
  for (size_t s = 0; s < cov.source.comps.size(); ++s) {
    auto [v, coord] = lifts[s];
    const auto& bs = a.basis_from(v);
    for (size_t k = 0; k < bs.size(); ++k) {
      ExactMatrix act = m.act_path(a.node_path(bs[k]));
      int tv = a.node_target(bs[k]);
      for (size_t i = 0; i < act.rows; ++i)
        mat.at(mc.offset.at(tv) + i, col_offset[s] + k) = act.at(i, coord);
    }
  }
  if (rank_of(mat) != mc.total)
    fail("InternalError", "projective cover is not surjective");
  cov.matrix = std::move(mat);
  return cov;
}

RightModule syzygy(const RightModule& m) {
  if (m.is_zero()) fail("ZeroModule", "syzygy of the zero module");
  const FDAlgebra& a = *m.alg;
  const Field& F = a.field();
  Cover cov = projective_cover(m);
  ModCoords mc = coords_of(m);

  // columns of the cover grouped by the target vertex of the basis path
  struct ColRef {
    size_t col;
    size_t comp;
    FDAlgebra::NodeId node;
  };
  std::map<int, std::vector<ColRef>> cols_at;
  {
    size_t col = 0;
    for (size_t s = 0; s < cov.source.comps.size(); ++s) {
      const auto& bs = a.basis_from(cov.source.comps[s]);
      for (size_t k = 0; k < bs.size(); ++k, ++col)
        cols_at[a.node_target(bs[k])].push_back({col, s, bs[k]});
    }
  }

  // per-vertex kernels
  RightModule syz;
  syz.alg = &a;
  std::map<int, std::vector<std::vector<Scalar>>> kernels;
  for (int v : a.quiver().vertices) {
    const auto& cols = cols_at[v];
    size_t rows = m.fiber.count(v) ? m.fiber.at(v) : 0;
    ExactMatrix sub(F, rows, cols.size());
    for (size_t j = 0; j < cols.size(); ++j)
      for (size_t i = 0; i < rows; ++i)
        sub.at(i, j) = cov.matrix.at(mc.offset.at(v) + i, cols[j].col);
    kernels[v] = kernel_basis(sub);
    syz.fiber[v] = kernels[v].size();
  }

  // induced arrow actions: push a kernel vector along the arrow inside the
  // projective sum, then express it in the target kernel basis
  for (const Arrow& ar : a.quiver().arrows) {
    const auto& src_cols = cols_at[ar.source];
    const auto& tgt_cols = cols_at[ar.target];
    std::map<std::pair<size_t, FDAlgebra::NodeId>, size_t> tgt_pos;
    for (size_t j = 0; j < tgt_cols.size(); ++j)
      tgt_pos[{tgt_cols[j].comp, tgt_cols[j].node}] = j;
    auto an = a.find_node(Path::of({ar.name}));
    ExactMatrix act(F, syz.fiber[ar.target], syz.fiber[ar.source]);
    for (size_t kcol = 0; kcol < kernels[ar.source].size(); ++kcol) {
      const auto& kv = kernels[ar.source][kcol];
      std::vector<Scalar> img(tgt_cols.size(), Scalar::zero(F));
      for (size_t j = 0; j < src_cols.size(); ++j) {
        if (kv[j].is_zero() || !an) continue;
        for (const auto& [n, c] : a.nf_concat(src_cols[j].node, *an))
          img[tgt_pos.at({src_cols[j].comp, n})] += kv[j] * c;
      }
      auto sol = solve_membership(kernels[ar.target], img, F);
      if (!sol)
        fail("InternalError", "syzygy image escapes the kernel");
      for (size_t i = 0; i < sol->size(); ++i) act.at(i, kcol) = (*sol)[i];
    }
    syz.action[ar.name] = std::move(act);
  }
  return syz;
}

PeriodResult period_of_simple(const FDAlgebra& a, int i, int max_steps) {
  PeriodResult res;
  RightModule m = simple_module(a, i);
  for (int d = 1; d <= max_steps; ++d) {
    m = syzygy(m);
    res.steps_tried = d;
    res.dims.push_back(m.total());
    if (m.is_zero()) return res;  // projective simple; no period
    if (m.total() == 1 && m.fiber.at(i) == 1) {
      res.period = d;
      return res;
    }
  }
  return res;
}

ResolutionCertificate verify_sequence(
    const FDAlgebra& a, int z, const ModuleMap& d3, const ModuleMap& d2,
    const ModuleMap& d1, const std::map<std::string, Scalar>& arrow_rescale) {
  auto rescaled = [&](const ModuleMap& m) {
    if (arrow_rescale.empty()) return m;
    ModuleMap r = m;
    for (auto& row : r.entry)
      for (auto& e : row) {
        PathExpr ne;
        for (const auto& [p, c] : e.terms()) {
          Scalar f = c;
          for (const std::string& ar : p.arrows) {
            auto it = arrow_rescale.find(ar);
            if (it != arrow_rescale.end()) f = f * it->second;
          }
          ne.add(p, f);
        }
        e = ne;
      }
    return r;
  };

  ExactMatrix m1 = module_map_matrix(a, rescaled(d1));
  ExactMatrix m2 = module_map_matrix(a, rescaled(d2));
  ExactMatrix m3 = module_map_matrix(a, rescaled(d3));

  ResolutionCertificate cert;
  cert.vertex = z;
  cert.dim_pz = a.dim_at(z);
  cert.dim_pminus = d2.from.dim(a);
  cert.dim_pplus = d2.to.dim(a);
  cert.rank_d1 = rank_of(m1);
  cert.rank_d2 = rank_of(m2);
  cert.rank_d3 = rank_of(m3);
  cert.ker_d1 = m1.cols - cert.rank_d1;
  cert.ker_d2 = m2.cols - cert.rank_d2;
  cert.ker_d3 = m3.cols - cert.rank_d3;

  ExactMatrix c12 = m1 * m2;
  if (!c12.is_zero()) {
    cert.failure = "d1*d2 != 0";
    for (size_t i = 0; i < c12.rows && cert.failure.size() < 200; ++i)
      for (size_t j = 0; j < c12.cols; ++j)
        if (!c12.at(i, j).is_zero()) {
          cert.failure += " at output " + std::to_string(i) + ", input " + std::to_string(j);
          i = c12.rows;
          break;
        }
    throw QgtError("NotAComplex", cert.failure);
  }
  ExactMatrix c23 = m2 * m3;
  if (!c23.is_zero()) {
    cert.failure = "d2*d3 != 0";
    throw QgtError("NotAComplex", cert.failure);
  }

  auto expect = [&](size_t got, size_t want, const std::string& what) {
    if (got != want)
      throw QgtError("NotExact", what + ": " + std::to_string(got) +
                                      " != " + std::to_string(want) + " at vertex " +
                                      std::to_string(z));
  };
  expect(cert.ker_d3, 1, "dim ker d3");
  expect(cert.ker_d2, cert.rank_d3, "dim ker d2 vs im d3");
  expect(cert.ker_d1, cert.rank_d2, "dim ker d1 vs im d2");
  expect(cert.rank_d1, cert.dim_pz - 1, "dim im d1 vs rad");
  cert.exact = true;
  return cert;
}

CatalogMaps middle_map_catalog(const TriangulationData& td, int z,
                               const BlockDecomposition* base_blocks,
                               const RegularityReport* base_reg) {
  const Field& F = td.field;
  auto outs = td.q.out_arrows(z);
  if (outs.size() != 2) fail("UnsupportedCase", "vertex is not 2-regular");
  const std::string alpha = outs[0], abar = outs[1];

  std::string label = "generic";
  if (base_blocks && base_reg) {
    auto in = [&](const std::vector<int>& vs, int v) {
      return std::find(vs.begin(), vs.end(), v) != vs.end();
    };
    bool z_one = in(base_reg->one_vertices, z);
    if (z_one) {
      label = "II.?";
      for (const Block& b : base_blocks->blocks) {
        if (b.type == BlockType::V2 && (b.vertices[1] == z || b.vertices[3] == z))
          label = "II.1";
        if (b.type == BlockType::V1 && b.vertices[1] == z) label = "II.2";
      }
    } else {
      // base successors of z
      std::vector<int> succ;
      for (const Arrow& ar : td.q.arrows)
        if (ar.source == z && in(base_reg->one_vertices, ar.target))
          succ.push_back(ar.target);
      // new arrows of the 2-regularization start only at former 1-vertices,
      // so out-arrows of z in the extended quiver are base arrows
      if (succ.empty()) {
        label = "I.1";
      } else if (succ.size() == 1) {
        label = "I.2a";
        for (const Block& b : base_blocks->blocks)
          if (b.type == BlockType::V1 && b.vertices[1] == succ[0]) label = "I.2b";
      } else {
        int v1_count = 0;
        for (int s : succ)
          for (const Block& b : base_blocks->blocks)
            if (b.type == BlockType::V1 && b.vertices[1] == s) ++v1_count;
        if (v1_count == 2)
          fail("UnsupportedCase",
               "both neighbours of vertex " + std::to_string(z) +
                   " sit in 2-cycle blocks; no catalog matrix for this shape");
        label = v1_count == 1 ? "I.3b" : "I.3a";
      }
    }
  }

  auto strip_first = [&](const std::string& ar) {
    // tail of the cycle path of ar, one arrow shorter
    return td.theta(td.perm.g_of(ar), td.mn(ar) - 2);
  };

  const std::string fa = td.perm.f_of(alpha);
  const std::string fb = td.perm.f_of(abar);
  int j = td.q.arrow(alpha).target, k = td.q.arrow(abar).target;
  int x = td.q.arrow(fa).target, y = td.q.arrow(fb).target;

  CatalogMaps maps;
  maps.case_label = label;
  maps.d1 = ModuleMap::of(
      ProjSum{{z}}, ProjSum{{j, k}},
      {{PathExpr::single(Path::of({alpha}), F), PathExpr::single(Path::of({abar}), F)}});
  maps.d2 = ModuleMap::of(
      ProjSum{{j, k}}, ProjSum{{x, y}},
      {{PathExpr::single(Path::of({fa}), F),
        PathExpr::path(strip_first(alpha), -td.c.at(alpha))},
       {PathExpr::path(strip_first(abar), -td.c.at(abar)),
        PathExpr::single(Path::of({fb}), F)}});
  maps.d3 = ModuleMap::of(
      ProjSum{{x, y}}, ProjSum{{z}},
      {{PathExpr::single(Path::of({td.perm.f_iter(alpha, 2)}), F)},
       {PathExpr::single(Path::of({td.perm.f_iter(abar, 2)}), F)}});
  return maps;
}

}  // namespace qgt
