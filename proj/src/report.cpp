#include "qgt/report.hpp"

#include <algorithm>
#include <sstream>

namespace qgt {

bool Report::all_pass() const {
  for (const Check& c : checks)
    if (!c.pass) return false;
  return true;
}

void Report::check(const std::string& name, bool pass, const std::string& details) {
  checks.push_back({name, pass, details});
}

std::string Report::to_json() const {
  Json out = body;
  Json cj = Json::array();
  for (const Check& c : checks) {
    Json e;
    e["name"] = c.name;
    e["pass"] = c.pass;
    if (!c.details.empty()) e["details"] = c.details;
    cj.push_back(e);
  }
  out["checks"] = cj;
  out["all_pass"] = all_pass();
  return out.dump(2) + "\n";
}

std::string Report::to_text() const {
  std::ostringstream out;
  auto walk = [&](const Json& j, const std::string& prefix, auto&& self) -> void {
    if (j.is_object()) {
      for (const auto& [k, v] : j.items()) self(v, prefix.empty() ? k : prefix + "." + k, self);
    } else {
      out << prefix << " = " << j.dump() << "\n";
    }
  };
  walk(body, "", walk);
  for (const Check& c : checks)
    out << (c.pass ? "[ ok ] " : "[FAIL] ") << c.name
        << (c.details.empty() ? "" : " (" + c.details + ")") << "\n";
  return out.str();
}

Suite parse_suite(const std::string& name) {
  if (name == "analyze") return Suite::Analyze;
  if (name == "wsa") return Suite::Wsa;
  if (name == "hat") return Suite::Hat;
  if (name == "period") return Suite::Period;
  if (name == "degenerate") return Suite::Degenerate;
  if (name == "all") return Suite::All;
  fail("ParseError", "unknown suite '" + name + "'");
}

namespace {

Json quiver_json(const Quiver& q) {
  Json j;
  j["vertices"] = q.vertices;
  Json arrows = Json::array();
  std::vector<Arrow> sorted = q.arrows;
  std::sort(sorted.begin(), sorted.end(),
            [](const Arrow& a, const Arrow& b) { return a.name < b.name; });
  for (const Arrow& a : sorted) {
    Json e;
    e["name"] = a.name;
    e["source"] = a.source;
    e["target"] = a.target;
    arrows.push_back(e);
  }
  j["arrows"] = arrows;
  return j;
}

Json regularity_json(const RegularityReport& reg) {
  Json j;
  j["is_biregular"] = reg.is_biregular;
  j["is_2regular"] = reg.is_2regular;
  j["one_vertices"] = reg.one_vertices;
  j["two_vertices"] = reg.two_vertices;
  Json d = Json::object();
  for (const auto& vd : reg.degrees)
    d[std::to_string(vd.vertex)] = {{"in", vd.indeg}, {"out", vd.outdeg}};
  j["degrees"] = d;
  return j;
}

Json blocks_json(const BlockDecomposition& blocks) {
  Json arr = Json::array();
  for (const Block& b : blocks.blocks) {
    Json e;
    e["type"] = block_type_name(b.type);
    e["vertices"] = b.vertices;
    e["arrows"] = b.arrows;
    arr.push_back(e);
  }
  return arr;
}

Json algebra_json(const FDAlgebra& a) {
  Json j;
  Json dims = Json::object();
  for (int v : a.quiver().vertices) dims[std::to_string(v)] = a.dim_at(v);
  j["dims"] = dims;
  j["total_dim"] = a.dim();
  j["nilpotency"] = a.nilpotency();
  j["admissible_presentation"] = a.admissible_input();
  j["gabriel_quiver"] = quiver_json(a.gabriel_quiver());
  return j;
}

void analyze_into(Report& rep, const SpecFile& spec) {
  RegularityReport reg = validate_regularity(spec.quiver);
  rep.body["quiver"] = quiver_json(spec.quiver);
  rep.body["regularity"] = regularity_json(reg);
  rep.body["classification"] = special_tag_name(classify_special(spec.quiver));
  if (reg.is_biregular) {
    try {
      BlockDecomposition blocks = locate_one_vertex_blocks(spec.quiver);
      rep.body["one_vertex_blocks"] = blocks_json(blocks);
      Json sj = Json::array();
      for (const auto& hit : detect_supcritical_shapes(spec.quiver, blocks)) {
        Json e;
        e["block"] = hit.block_index;
        e["sup_critical"] = hit.sup_critical;
        if (hit.outer_vertex >= 0) e["outer_vertex"] = hit.outer_vertex;
        sj.push_back(e);
      }
      rep.body["sup_critical"] = sj;
    } catch (const QgtError& err) {
      // a 1-vertex fitting neither block shape is a verdict, not a crash
      rep.body["one_vertex_blocks"] = {{"error", err.what()}};
    }
  }
}

void socle_checks(Report& rep, const FDAlgebra& alg, const TriangulationData& td,
                  const std::string& tag) {
  // the two cycle paths at each vertex agree after scaling and are nonzero
  bool all_ok = true;
  std::string detail;
  for (int v : td.q.vertices) {
    auto outs = td.q.out_arrows(v);
    if (outs.size() != 2) continue;
    PathExpr b1 = alg.normal_form(PathExpr::path(td.b_path(outs[0]), td.c.at(outs[0])));
    PathExpr b2 = alg.normal_form(PathExpr::path(td.b_path(outs[1]), td.c.at(outs[1])));
    if (b1.is_zero() || !(b1 == b2)) {
      all_ok = false;
      detail = "vertex " + std::to_string(v);
      break;
    }
  }
  rep.check(tag + ": scaled socle cycles agree and are nonzero", all_ok, detail);
}

void second_socle_checks(Report& rep, const FDAlgebra& alg,
                         const BlockDecomposition& blocks, const std::string& tag) {
  bool all_ok = true;
  std::string detail;
  auto probe = [&](std::vector<std::string> arrows) {
    if (!all_ok) return;
    auto n = alg.find_node(Path::of(arrows));
    FDAlgebra::Vec v;
    if (n) v = alg.nf_node(*n);
    if (!alg.in_socle(v, 2)) {
      all_ok = false;
      detail = Path::of(arrows).str();
    }
  };
  for (const Block& b : blocks.blocks) {
    if (b.type == BlockType::V2) {
      const auto& ar = b.arrows;
      probe({ar[0], ar[1], ar[2]});
      probe({ar[1], ar[2], ar[3]});
      probe({ar[2], ar[3], ar[0]});
      probe({ar[3], ar[0], ar[1]});
    } else if (b.type == BlockType::V1) {
      probe({b.arrows[1], b.arrows[0], b.arrows[1]});
      probe({b.arrows[0], b.arrows[1], b.arrows[0]});
    }
  }
  rep.check(tag + ": length-3 block paths lie in the second socle", all_ok, detail);
}

void periods_into(Report& rep, const FDAlgebra& alg, int max_steps, int expected) {
  Json pj = Json::object();
  bool all = true;
  for (int v : alg.quiver().vertices) {
    PeriodResult pr = period_of_simple(alg, v, max_steps);
    pj[std::to_string(v)] = pr.period ? Json(*pr.period) : Json(nullptr);
    if (expected > 0 && (!pr.period || *pr.period != expected)) all = false;
  }
  rep.body["periods"] = pj;
  if (expected > 0)
    rep.check("every simple has period " + std::to_string(expected), all);
}

void certificates_into(Report& rep, const FDAlgebra& alg, const TriangulationData& td,
                       const BlockDecomposition* base_blocks,
                       const RegularityReport* base_reg) {
  Json arr = Json::array();
  bool all = true;
  for (int z : td.q.vertices) {
    Json e;
    e["vertex"] = z;
    try {
      CatalogMaps maps = middle_map_catalog(td, z, base_blocks, base_reg);
      ResolutionCertificate cert = verify_sequence(alg, z, maps.d3, maps.d2, maps.d1);
      e["case"] = maps.case_label;
      e["exact"] = cert.exact;
      e["dims"] = {{"P_z", cert.dim_pz},
                   {"P_minus", cert.dim_pminus},
                   {"P_plus", cert.dim_pplus}};
      e["ranks"] = {{"d1", cert.rank_d1}, {"d2", cert.rank_d2}, {"d3", cert.rank_d3}};
      e["kernels"] = {{"d1", cert.ker_d1}, {"d2", cert.ker_d2}, {"d3", cert.ker_d3}};
    } catch (const QgtError& err) {
      e["error"] = std::string(err.code) + ": " + err.what();
      if (err.code != "UnsupportedCase") all = false;
    }
    arr.push_back(e);
  }
  rep.body["certificates"] = arr;
  rep.check("resolution certificates exact at every supported vertex", all);
}

void relations_into(Report& rep, const std::vector<TaggedRelation>& rels,
                    const std::vector<std::string>& suppressed) {
  Json arr = Json::array();
  for (const auto& r : rels) {
    Json e;
    e["label"] = r.label;
    e["relation"] = r.expr.str();
    arr.push_back(e);
  }
  rep.body["relations"] = arr;
  if (!suppressed.empty()) rep.body["suppressed_relations"] = suppressed;
}

void wsa_into(Report& rep, const SpecFile& spec, bool emit_relations, bool with_periods) {
  WSASpec w = spec.to_wsa();
  WSARelationSet rels = wsa_relations(w);
  if (emit_relations) relations_into(rep, rels.relations, rels.suppressed);

  FDAlgebra alg = build_wsa(w);
  rep.body["algebra"] = algebra_json(alg);
  rep.body["weakly_symmetric"] = alg.weakly_symmetric();

  Json vj = Json::array();
  for (const auto& va : virtual_arrows(w.data)) {
    Json e;
    e["arrow"] = va.name;
    e["kind"] = va.loop ? "loop" : "two_cycle";
    vj.push_back(e);
  }
  rep.body["virtual_arrows"] = vj;

  // the Gabriel quiver drops exactly the length-2 cycles
  Quiver expected = w.data.q;
  {
    Quiver g;
    for (int v : expected.vertices) g.add_vertex(v);
    for (const Arrow& a : expected.arrows)
      if (!w.data.is_virtual(a.name)) g.add_arrow(a.name, a.source, a.target);
    rep.check("Gabriel quiver drops exactly the virtual arrows",
              alg.gabriel_quiver().same_as(g));
  }

  BasisCheck bc = check_projective_bases(alg, w);
  Json bj = Json::array();
  for (const auto& vc : bc.vertices) {
    Json e;
    e["vertex"] = vc.vertex;
    e["expected_dim"] = vc.expected_dim;
    e["actual_dim"] = vc.actual_dim;
    e["monomials_span"] = vc.monomials_span;
    bj.push_back(e);
  }
  rep.body["basis_checks"] = bj;
  rep.check("projective bases match the cycle data", bc.ok, bc.first_failure);

  SingularFlags sf = detect_singular(w);
  Json sj;
  sj["status"] = sf.status == SingularFlags::Status::Singular      ? "singular"
                 : sf.status == SingularFlags::Status::NotSingular ? "not_singular"
                                                                   : "unknown";
  sj["spherical_singular"] = sf.spherical_singular;
  sj["triangle_or_disc_family"] = sf.triangle_or_disc_family;
  sj["note"] = sf.note;
  rep.body["singular"] = sj;

  socle_checks(rep, alg, w.data, "wsa");
  Quiver gq = alg.gabriel_quiver();
  RegularityReport greg = validate_regularity(gq);
  if (greg.is_biregular && !greg.is_2regular) {
    BlockDecomposition gb = locate_one_vertex_blocks(gq);
    second_socle_checks(rep, alg, gb, "wsa");
  }
  if (with_periods) {
    periods_into(rep, alg, 8, 4);
    // the catalog middle maps presume a presentation without virtual arrows
    if (virtual_arrows(w.data).empty())
      certificates_into(rep, alg, w.data, nullptr, nullptr);
  }
}

void degenerate_into(Report& rep, const TriangulationData& td,
                     const std::vector<TaggedRelation>& rels, const Scalar& extra_t,
                     int cap) {
  DegreeData dd = degree_data(td);
  Json dj;
  dj["M"] = dd.M;
  Json uj = Json::object(), vj = Json::object();
  std::vector<std::string> names;
  for (const auto& [a, u] : dd.u) names.push_back(a);
  std::sort(names.begin(), names.end());
  bool all_positive = true;
  for (const auto& a : names) {
    uj[a] = dd.u.at(a);
    vj[a] = dd.v.at(a);
    if (dd.v.at(a) < 1) all_positive = false;
  }
  dj["u"] = uj;
  dj["v"] = vj;
  rep.body["degree_data"] = dj;
  rep.check("every relation exponent is at least 1", all_positive);

  const Field& F = td.field;
  FDAlgebra at1 = build_family_member(td, dd, rels, Scalar::one(F), cap);
  FDAlgebra at0 = build_family_member(td, dd, rels, Scalar::zero(F), cap);
  FDAlgebra att = build_family_member(td, dd, rels, extra_t, cap);
  Json fam;
  fam["dim_t1"] = at1.dim();
  fam["dim_t0"] = at0.dim();
  fam["extra_t"] = extra_t.str();
  fam["dim_extra"] = att.dim();
  rep.body["family"] = fam;
  rep.check("family dimension is constant", at1.dim() == at0.dim() && at1.dim() == att.dim());

  BiserialVerdict b0 = special_biserial_check(at0);
  BiserialVerdict b1 = special_biserial_check(at1);
  rep.body["special_biserial_t0"] = b0.pass;
  rep.body["special_biserial_t1"] = b1.pass;
  rep.check("the degenerate member is special biserial", b0.pass,
            b0.violations.empty() ? "" : b0.violations.front());

  TetrahedralReport tr = tetrahedral_obstruction(td);
  Json tj;
  tj["nonpositive"] = tr.nonpositive;
  tj["all_q3"] = tr.all_q3;
  tj["tetrahedral"] = tr.tetrahedral;
  tj["note"] = tr.note;
  rep.body["tetrahedral_obstruction"] = tj;
}

void hat_into(Report& rep, const SpecFile& spec, bool emit_relations, Suite suite) {
  HatSpec h = spec.to_hat();
  HatStructure hs = hat_quiver(h);
  rep.body["base_quiver"] = quiver_json(h.base);
  rep.body["base_blocks"] = blocks_json(hs.base_blocks);
  rep.body["hat_quiver"] = quiver_json(hs.hat.q);
  Json wj;
  wj["four_cycle"] = h.v2_weights;
  wj["two_cycle"] = h.v1_weights;
  rep.body["hat_weights"] = wj;

  HatRelations rels = hat_relations(h, hs);
  rep.body["admissible_weights"] = rels.admissible;
  if (emit_relations) {
    Json rj;
    auto part = [&](const std::vector<TaggedRelation>& list) {
      Json arr = Json::array();
      for (const auto& r : list) arr.push_back(r.label + ": " + r.expr.str());
      return arr;
    };
    rj["R0"] = part(rels.r0);
    rj["R1"] = part(rels.r1);
    rj["R2"] = part(rels.r2);
    rep.body["relations"] = rj;
  }

  FDAlgebra alg = build_hat(h, hs);
  rep.body["algebra"] = algebra_json(alg);
  rep.body["weakly_symmetric"] = alg.weakly_symmetric();
  if (rels.admissible)
    rep.check("Gabriel quiver of the extension is the extended quiver",
              alg.gabriel_quiver().same_as(hs.hat.q));

  // trivial-weights identification of the base
  {
    HatSpec triv = h;
    triv.v2_weights.assign(h.v2_weights.size(), 1);
    triv.v1_weights.assign(h.v1_weights.size(), 2);
    FDAlgebra base_alg = build_base(triv, hs);
    TrivialWeightsCheck tw = check_trivial_weights_iso(base_alg, triv);
    Json tj;
    tj["substitution_ok"] = tw.substitution_ok;
    tj["dims_ok"] = tw.dims_ok;
    tj["gabriel_ok"] = tw.gabriel_ok;
    rep.body["trivial_weights"] = tj;
    rep.check("trivial weights reproduce the base", tw.ok, tw.first_failure);
  }

  socle_checks(rep, alg, hs.hat, "hat");
  second_socle_checks(rep, alg, hs.base_blocks, "hat");

  try {
    SymmetrizingForm form = hat_symmetrizing_form(alg, hs.hat);
    FormCertificate fc = certify_symmetric_nondegenerate(alg, form);
    Json fj;
    fj["symmetric"] = fc.symmetric;
    fj["nondegenerate"] = fc.nondegenerate;
    if (!fc.witness.empty()) fj["witness"] = fc.witness;
    rep.body["symmetrizing_form"] = fj;
    rep.check("symmetrizing form is symmetric and nondegenerate",
              fc.symmetric && fc.nondegenerate, fc.witness);
  } catch (const QgtError& err) {
    rep.body["symmetrizing_form"] = {{"error", err.what()}};
    rep.check("symmetrizing form is symmetric and nondegenerate", false, err.what());
  }

  if (suite == Suite::Hat || suite == Suite::All || suite == Suite::Period) {
    periods_into(rep, alg, 8, 4);
    if (suite != Suite::Period)
      certificates_into(rep, alg, hs.hat, &hs.base_blocks, &hs.base_reg);
  }
  if (suite == Suite::Degenerate || suite == Suite::All) {
    std::vector<TaggedRelation> all;
    for (const auto* part : {&rels.r0, &rels.r1, &rels.r2})
      for (const auto& r : *part) all.push_back(r);
    Scalar extra = spec.t ? *spec.t : Scalar::of(spec.field, 2);
    degenerate_into(rep, hs.hat, all, extra, h.cap);
  }
}

}  // namespace

Report run_suite(const SpecFile& spec, Suite suite, bool emit_relations) {
  Report rep;
  rep.body["field"] = spec.field.name();
  rep.body["mode"] = spec.mode == SpecFile::Mode::Triangulation ? "triangulation"
                     : spec.mode == SpecFile::Mode::Base        ? "base"
                                                                : "raw";

  if (suite == Suite::Analyze) {
    analyze_into(rep, spec);
    return rep;
  }

  switch (spec.mode) {
    case SpecFile::Mode::Triangulation: {
      if (suite == Suite::All) analyze_into(rep, spec);
      if (suite == Suite::Degenerate) {
        WSASpec w = spec.to_wsa();
        WSARelationSet rels = wsa_relations(w);
        Scalar extra = spec.t ? *spec.t : Scalar::of(spec.field, 2);
        degenerate_into(rep, w.data, rels.relations, extra, w.cap);
      } else if (suite == Suite::Period) {
        FDAlgebra alg = build_wsa(spec.to_wsa());
        rep.body["algebra"] = algebra_json(alg);
        periods_into(rep, alg, 8, 4);
      } else {
        wsa_into(rep, spec, emit_relations, suite == Suite::All);
        if (suite == Suite::All) {
          WSASpec w = spec.to_wsa();
          WSARelationSet rels = wsa_relations(w);
          Scalar extra = spec.t ? *spec.t : Scalar::of(spec.field, 2);
          degenerate_into(rep, w.data, rels.relations, extra, w.cap);
        }
      }
      break;
    }
    case SpecFile::Mode::Base: {
      if (suite == Suite::All) analyze_into(rep, spec);
      hat_into(rep, spec, emit_relations, suite);
      break;
    }
    case SpecFile::Mode::Raw: {
      int cap = spec.cap > 0 ? spec.cap : 12;
      FDAlgebra alg = quotient_algebra(spec.quiver, spec.raw_relations, spec.field, cap);
      rep.body["algebra"] = algebra_json(alg);
      rep.body["weakly_symmetric"] = alg.weakly_symmetric();
      if (suite == Suite::Period || suite == Suite::All) periods_into(rep, alg, 8, 0);
      break;
    }
  }
  return rep;
}

}  // namespace qgt
