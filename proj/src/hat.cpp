#include "qgt/hat.hpp"

#include <algorithm>
#include <set>

namespace qgt {

namespace {

std::string fresh_name(const Quiver& q, const std::string& want) {
  std::string name = want;
  while (q.find_arrow(name)) name += "h";
  return name;
}

// relation x f(x) - c A, with the border term on f-fixed loops
TaggedRelation comm_relation(const TriangulationData& td, const std::string& a) {
  const Field& F = td.field;
  const std::string& bar_a = td.perm.bar_of(a);
  Scalar cbar = td.c.at(bar_a);
  TaggedRelation rel;
  rel.anchor = a;
  rel.label = "comm(" + a + ")";
  if (td.is_fixed_loop(a)) {
    PathExpr e = PathExpr::path(Path::of({a, a}), Scalar::one(F));
    e = e - PathExpr::path(td.a_path(bar_a), cbar);
    Scalar b = Scalar::zero(F);
    if (auto it = td.border.find(td.q.arrow(a).source); it != td.border.end())
      b = it->second;
    rel.kind = b.is_zero() ? TaggedRelation::Kind::Comm : TaggedRelation::Kind::CommBorder;
    if (!b.is_zero()) e = e - PathExpr::path(td.b_path(a), b);
    rel.expr = e;
  } else {
    PathExpr e = PathExpr::path(Path::of({a, td.perm.f_of(a)}), Scalar::one(F));
    rel.expr = e - PathExpr::path(td.a_path(bar_a), cbar);
    rel.kind = TaggedRelation::Kind::Comm;
  }
  return rel;
}

TaggedRelation zero_relation(const Field& F, std::vector<std::string> arrows,
                             const std::string& label) {
  TaggedRelation rel;
  rel.expr = PathExpr::single(Path::of(std::move(arrows)), F);
  rel.kind = TaggedRelation::Kind::Zero;
  rel.label = label;
  return rel;
}

}  // namespace

HatStructure hat_quiver(const HatSpec& spec) {
  spec.base.validate();
  if (!spec.base.connected()) fail("InvalidSpec", "base quiver is not connected");
  if (classify_special(spec.base) == SpecialTag::Spherical)
    fail("ExcludedQuiver", "the 8-arrow spherical shape is handled by a different family");

  HatStructure hs;
  hs.base_reg = validate_regularity(spec.base);
  if (!hs.base_reg.is_biregular) fail("NotBiregular", "base quiver is not biregular");
  hs.base_blocks = locate_one_vertex_blocks(spec.base);

  // validate g: a permutation moving along composable pairs, matching the
  // forced values around the blocks
  if (spec.g.size() != spec.base.arrows.size())
    fail("SemanticError", "g must be defined on every base arrow");
  for (const auto& [a, ga] : spec.g) {
    const Arrow& src = spec.base.arrow(a);
    const Arrow& dst = spec.base.arrow(ga);
    if (src.target != dst.source)
      fail("SemanticError", "g(" + a + ") does not start at t(" + a + ")");
  }
  auto base_bar = bar_involution(spec.base);
  for (const Block& b : hs.base_blocks.blocks) {
    if (b.type == BlockType::V2) {
      if (spec.g.at(b.arrows[0]) != b.arrows[1] || spec.g.at(b.arrows[2]) != b.arrows[3])
        fail("SemanticError", "g disagrees with the 4-cycle block at vertex " +
                                  std::to_string(b.vertices[1]));
      if (spec.g.at(b.arrows[3]) != base_bar.at(b.arrows[0]))
        fail("SemanticError", "g after the block must return through the partner arrow");
    } else if (b.type == BlockType::V1) {
      if (spec.g.at(b.arrows[0]) != b.arrows[1])
        fail("SemanticError", "g disagrees with the 2-cycle block at vertex " +
                                  std::to_string(b.vertices[1]));
      if (spec.g.at(b.arrows[1]) != base_bar.at(b.arrows[0]))
        fail("SemanticError", "g after the block must return through the partner arrow");
    }
  }

  auto v2 = hs.base_blocks.of_type(BlockType::V2);
  auto v1 = hs.base_blocks.of_type(BlockType::V1);
  if (spec.v2_weights.size() != v2.size() || spec.v1_weights.size() != v1.size())
    fail("InvalidWeights", "expected " + std::to_string(v2.size()) + " + " +
                               std::to_string(v1.size()) + " block weights");
  for (int w : spec.v2_weights)
    if (w < 1) fail("InvalidWeights", "4-cycle block weight must be >= 1");
  for (int w : spec.v1_weights)
    if (w < 2) fail("InvalidWeights", "2-cycle block weight must be >= 2");

  TriangulationData& td = hs.hat;
  td.q = spec.base;
  td.field = spec.field;

  for (size_t i = 0; i < v2.size(); ++i) {
    const Block& b = *v2[i];
    std::string xi = fresh_name(td.q, "xi" + std::to_string(i + 1));
    td.q.add_arrow(xi, b.vertices[1], b.vertices[3]);
    std::string mu = fresh_name(td.q, "mu" + std::to_string(i + 1));
    td.q.add_arrow(mu, b.vertices[3], b.vertices[1]);
    hs.xi.push_back(xi);
    hs.mu.push_back(mu);
  }
  for (size_t j = 0; j < v1.size(); ++j) {
    const Block& b = *v1[j];
    std::string rho = fresh_name(td.q, "rho" + std::to_string(j + 1));
    td.q.add_arrow(rho, b.vertices[1], b.vertices[1]);
    hs.rho.push_back(rho);
  }

  // f on arrows with a 2-regular base target, extended over the new arrows
  std::map<std::string, std::string> f;
  std::set<int> one_set(hs.base_reg.one_vertices.begin(), hs.base_reg.one_vertices.end());
  for (const Arrow& a : spec.base.arrows)
    if (!one_set.count(a.target)) f[a.name] = base_bar.at(spec.g.at(a.name));
  for (size_t i = 0; i < v2.size(); ++i) {
    const Block& b = *v2[i];
    f[b.arrows[0]] = hs.xi[i];   // into the first 1-vertex, then across
    f[hs.xi[i]] = b.arrows[3];
    f[b.arrows[2]] = hs.mu[i];
    f[hs.mu[i]] = b.arrows[1];
  }
  for (size_t j = 0; j < v1.size(); ++j) {
    const Block& b = *v1[j];
    f[b.arrows[0]] = hs.rho[j];
    f[hs.rho[j]] = b.arrows[1];
  }
  td.perm = derive_bar_and_g(td.q, f);

  // weights and parameters: base orbits keep theirs, new orbits get the
  // block weight and parameter 1
  std::map<std::string, int> morb = spec.m;
  std::map<std::string, Scalar> corb = spec.c;
  for (size_t i = 0; i < v2.size(); ++i) {
    morb[hs.xi[i]] = spec.v2_weights[i];
    morb[hs.mu[i]] = spec.v2_weights[i];
    corb[hs.xi[i]] = Scalar::one(spec.field);
    corb[hs.mu[i]] = Scalar::one(spec.field);
  }
  for (size_t j = 0; j < v1.size(); ++j) {
    morb[hs.rho[j]] = spec.v1_weights[j];
    corb[hs.rho[j]] = Scalar::one(spec.field);
  }
  td.m = std::move(morb);
  td.c = std::move(corb);
  td.n = orbit_lengths(td.perm.g);
  td.validate();

  // the base g must be the restriction of the extended one
  for (const auto& [a, ga] : spec.g)
    if (td.perm.g_of(a) != ga)
      fail("SemanticError", "g(" + a + ") is inconsistent with the extension");
  return hs;
}

std::vector<PathExpr> HatRelations::exprs() const {
  std::vector<PathExpr> out;
  for (const auto* part : {&r0, &r1, &r2})
    for (const auto& r : *part) out.push_back(r.expr);
  return out;
}

HatRelations hat_relations(const HatSpec& spec, const HatStructure& hs) {
  const TriangulationData& td = hs.hat;
  const Field& F = td.field;
  HatRelations out;
  out.admissible = true;
  for (int w : spec.v2_weights)
    if (w < 2) out.admissible = false;
  for (int w : spec.v1_weights)
    if (w < 3) out.admissible = false;

  std::set<std::string> block_arrows;
  auto v2 = hs.base_blocks.of_type(BlockType::V2);
  auto v1 = hs.base_blocks.of_type(BlockType::V1);
  for (size_t i = 0; i < v2.size(); ++i) {
    for (const std::string& a : v2[i]->arrows) block_arrows.insert(a);
    block_arrows.insert(hs.xi[i]);
    block_arrows.insert(hs.mu[i]);
  }
  for (size_t j = 0; j < v1.size(); ++j) {
    for (const std::string& a : v1[j]->arrows) block_arrows.insert(a);
    block_arrows.insert(hs.rho[j]);
  }

  std::vector<std::string> names;
  for (const Arrow& a : td.q.arrows)
    if (!block_arrows.count(a.name)) names.push_back(a.name);
  std::sort(names.begin(), names.end());
  for (const std::string& a : names) out.r0.push_back(comm_relation(td, a));

  auto bar = [&](const std::string& a) { return td.perm.bar_of(a); };
  auto second_in = [&](int v, const std::string& not_this) {
    for (const std::string& n : td.q.in_arrows(v))
      if (n != not_this) return n;
    fail("InternalError", "missing second arrow into " + std::to_string(v));
  };

  for (size_t i = 0; i < v2.size(); ++i) {
    const Block& b = *v2[i];
    const std::string &alpha = b.arrows[0], &beta = b.arrows[1], &nu = b.arrows[2],
                      &delta = b.arrows[3];
    const std::string &xi = hs.xi[i], &mu = hs.mu[i];
    for (const std::string& a : {alpha, xi, delta, beta, nu, mu})
      out.r1.push_back(comm_relation(td, a));
    std::string delta_star = second_in(b.vertices[0], delta);
    std::string beta_star = second_in(b.vertices[2], beta);
    out.r1.push_back(zero_relation(F, {xi, delta, bar(alpha)}, "zero(" + xi + ")"));
    out.r1.push_back(zero_relation(F, {mu, beta, bar(nu)}, "zero(" + mu + ")"));
    out.r1.push_back(zero_relation(F, {alpha, xi, mu}, "zero(" + alpha + ")"));
    out.r1.push_back(zero_relation(F, {nu, mu, xi}, "zero(" + nu + ")"));
    out.r1.push_back(zero_relation(F, {xi, mu, beta}, "zero2(" + xi + ")"));
    out.r1.push_back(zero_relation(F, {mu, xi, delta}, "zero2(" + mu + ")"));
    out.r1.push_back(zero_relation(F, {delta_star, alpha, xi}, "zero(" + delta_star + ")"));
    out.r1.push_back(zero_relation(F, {beta_star, nu, mu}, "zero(" + beta_star + ")"));
  }

  for (size_t j = 0; j < v1.size(); ++j) {
    const Block& b = *v1[j];
    const std::string &eps = b.arrows[0], &eta = b.arrows[1];
    const std::string& rho = hs.rho[j];
    for (const std::string& a : {eps, rho, eta}) out.r2.push_back(comm_relation(td, a));
    std::string eta_star = second_in(b.vertices[0], eta);
    out.r2.push_back(zero_relation(F, {rho, eta, bar(eps)}, "zero(" + rho + ")"));
    out.r2.push_back(zero_relation(F, {eps, rho, rho}, "zero(" + eps + ")"));
    out.r2.push_back(zero_relation(F, {rho, rho, eta}, "zero2(" + rho + ")"));
    out.r2.push_back(zero_relation(F, {eta_star, eps, rho}, "zero(" + eta_star + ")"));
  }
  return out;
}

FDAlgebra build_hat(const HatSpec& spec, const HatStructure& hs) {
  HatRelations rels = hat_relations(spec, hs);
  int cap = spec.cap;
  if (cap <= 0) {
    int mx = 2;
    for (const Arrow& a : hs.hat.q.arrows) mx = std::max(mx, hs.hat.mn(a.name));
    cap = 2 * mx + 4;
  }
  return quotient_algebra(hs.hat.q, rels.exprs(), spec.field, cap);
}

std::vector<TaggedRelation> base_relations(const HatSpec& spec, const HatStructure& hs) {
  const TriangulationData& td = hs.hat;
  const Field& F = spec.field;
  std::vector<TaggedRelation> out;

  std::set<int> one_set(hs.base_reg.one_vertices.begin(), hs.base_reg.one_vertices.end());
  std::vector<std::string> names;
  for (const Arrow& a : spec.base.arrows)
    if (!one_set.count(a.source) && !one_set.count(a.target)) names.push_back(a.name);
  std::sort(names.begin(), names.end());
  // the 2-regular part carries the usual commutativity relations; the base
  // g-cycle data agrees with the extended one on base arrows
  for (const std::string& a : names) out.push_back(comm_relation(td, a));

  auto mk = [&](std::vector<std::string> lead, const std::string& through,
                const std::string& label) {
    // lead path minus c * cycle path of `through`
    TaggedRelation rel;
    PathExpr e = PathExpr::single(Path::of(std::move(lead)), F);
    rel.expr = e - PathExpr::path(td.a_path(through), td.c.at(through));
    rel.kind = TaggedRelation::Kind::Comm;
    rel.anchor = through;
    rel.label = label;
    return rel;
  };

  auto bar = [&](const std::string& a) { return td.perm.bar_of(a); };
  for (const Block* b : hs.base_blocks.of_type(BlockType::V2)) {
    const std::string &alpha = b->arrows[0], &beta = b->arrows[1], &nu = b->arrows[2],
                      &delta = b->arrows[3];
    out.push_back(mk({alpha, beta, nu}, bar(alpha), "rho1(" + alpha + ")"));
    out.push_back(mk({beta, nu, delta}, beta, "rho2(" + beta + ")"));
    out.push_back(mk({nu, delta, alpha}, bar(nu), "rho3(" + nu + ")"));
    out.push_back(mk({delta, alpha, beta}, delta, "rho4(" + delta + ")"));
  }
  for (const Block* b : hs.base_blocks.of_type(BlockType::V1)) {
    const std::string &eps = b->arrows[0], &eta = b->arrows[1];
    out.push_back(mk({eps, eta, eps}, bar(eps), "rho5(" + eps + ")"));
    out.push_back(mk({eta, eps, eta}, eta, "rho6(" + eta + ")"));
  }
  return out;
}

FDAlgebra build_base(const HatSpec& spec, const HatStructure& hs) {
  auto rels = base_relations(spec, hs);
  std::vector<PathExpr> exprs;
  for (const auto& r : rels) exprs.push_back(r.expr);
  int cap = spec.cap;
  if (cap <= 0) {
    int mx = 2;
    for (const Arrow& a : spec.base.arrows) mx = std::max(mx, hs.hat.mn(a.name));
    cap = 2 * mx + 4;
  }
  return quotient_algebra(spec.base, exprs, spec.field, cap);
}

TrivialWeightsCheck check_trivial_weights_iso(const FDAlgebra& base_alg,
                                              const HatSpec& spec) {
  for (int w : spec.v2_weights)
    if (w != 1) fail("InvalidWeights", "trivial weights need every 4-cycle weight 1");
  for (int w : spec.v1_weights)
    if (w != 2) fail("InvalidWeights", "trivial weights need every 2-cycle weight 2");

  HatStructure hs = hat_quiver(spec);
  HatRelations rels = hat_relations(spec, hs);

  std::map<std::string, std::vector<std::string>> subst;
  auto v2 = hs.base_blocks.of_type(BlockType::V2);
  auto v1 = hs.base_blocks.of_type(BlockType::V1);
  for (size_t i = 0; i < v2.size(); ++i) {
    subst[hs.xi[i]] = {v2[i]->arrows[1], v2[i]->arrows[2]};   // beta nu
    subst[hs.mu[i]] = {v2[i]->arrows[3], v2[i]->arrows[0]};   // delta alpha
  }
  for (size_t j = 0; j < v1.size(); ++j)
    subst[hs.rho[j]] = {v1[j]->arrows[1], v1[j]->arrows[0]};  // eta eps

  TrivialWeightsCheck out;
  out.substitution_ok = true;
  for (const auto* part : {&rels.r1, &rels.r2}) {
    for (const TaggedRelation& r : *part) {
      PathExpr sub = r.expr.substitute(subst);
      if (!base_alg.normal_form(sub).is_zero()) {
        out.substitution_ok = false;
        if (out.first_failure.empty())
          out.first_failure = "substituted relation " + r.label + " survives in the base";
      }
    }
  }

  FDAlgebra hat_alg = build_hat(spec, hs);
  out.dims_ok = true;
  for (int v : spec.base.vertices)
    if (hat_alg.dim_at(v) != base_alg.dim_at(v)) out.dims_ok = false;
  if (!out.dims_ok && out.first_failure.empty()) out.first_failure = "dimension mismatch";
  out.gabriel_ok = hat_alg.gabriel_quiver().same_as(base_alg.gabriel_quiver());
  if (!out.gabriel_ok && out.first_failure.empty())
    out.first_failure = "Gabriel quivers differ";
  out.ok = out.substitution_ok && out.dims_ok && out.gabriel_ok;
  return out;
}

Scalar SymmetrizingForm::eval(const FDAlgebra& a, const FDAlgebra::Vec& v) const {
  Scalar s = Scalar::zero(a.field());
  for (const auto& [n, c] : v) {
    auto it = socle_value.find(n);
    if (it != socle_value.end()) s += c * it->second;
  }
  return s;
}

SymmetrizingForm hat_symmetrizing_form(const FDAlgebra& a, const TriangulationData& td) {
  SymmetrizingForm form;
  for (int z : a.quiver().vertices) {
    SocleInfo soc = a.socle_layers(z);
    if (soc.soc.size() != 1)
      fail("SocleMismatch", "socle at vertex " + std::to_string(z) + " has dimension " +
                                std::to_string(soc.soc.size()));
    const auto& bs = a.basis_from(z);
    // the chosen socle monomial: the longest basis path carrying the socle
    size_t mono = bs.size();
    for (size_t j = 0; j < bs.size(); ++j)
      if (!soc.soc[0][j].is_zero()) mono = j;
    if (mono == bs.size())
      fail("SocleMismatch", "empty socle vector at vertex " + std::to_string(z));

    std::optional<Scalar> value;
    for (const std::string& ar : td.q.out_arrows(z)) {
      FDAlgebra::Vec bnf = a.vec_of(PathExpr::single(td.b_path(ar), td.field));
      // must be proportional to the socle vector, supported on the monomial
      Scalar coeff = Scalar::zero(td.field);
      for (const auto& [n, c] : bnf) {
        if (n == bs[mono]) {
          coeff = c;
        } else {
          fail("SocleMismatch", "cycle of '" + ar + "' is not a socle monomial multiple");
        }
      }
      if (coeff.is_zero())
        fail("SocleMismatch", "cycle of '" + ar + "' vanishes at vertex " + std::to_string(z));
      Scalar v = td.c.at(ar).inverse() / coeff;
      if (value && !(*value == v))
        fail("SocleMismatch", "the two cycles at vertex " + std::to_string(z) +
                                  " demand different socle values");
      value = v;
      form.lambda[z] = coeff;
    }
    form.socle_value[bs[mono]] = *value;
  }
  return form;
}

FormCertificate certify_symmetric_nondegenerate(const FDAlgebra& a,
                                                const SymmetrizingForm& t) {
  FormCertificate out;
  const auto& basis = a.basis();
  out.symmetric = true;
  for (size_t i = 0; i < basis.size() && out.symmetric; ++i)
    for (size_t j = 0; j < basis.size(); ++j) {
      FDAlgebra::NodeId x = basis[i], y = basis[j];
      if (a.node_target(x) != a.node_source(y) || a.node_target(y) != a.node_source(x))
        continue;  // both products vanish
      Scalar txy = t.eval(a, a.nf_concat(x, y));
      Scalar tyx = t.eval(a, a.nf_concat(y, x));
      if (!(txy == tyx)) {
        out.symmetric = false;
        out.witness = "t(" + a.node_path(x).str() + " * " + a.node_path(y).str() +
                      ") != t(reverse)";
        break;
      }
    }

  ExactMatrix gram(a.field(), basis.size(), basis.size());
  for (size_t i = 0; i < basis.size(); ++i)
    for (size_t j = 0; j < basis.size(); ++j) {
      if (a.node_target(basis[i]) != a.node_source(basis[j])) continue;
      gram.at(i, j) = t.eval(a, a.nf_concat(basis[i], basis[j]));
    }
  out.nondegenerate = rank_of(gram) == basis.size();
  if (!out.nondegenerate && out.witness.empty()) out.witness = "Gram matrix is singular";
  return out;
}

}  // namespace qgt
