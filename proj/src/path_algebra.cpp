#include "qgt/path_algebra.hpp"

#include <algorithm>
#include <climits>
#include <deque>

namespace qgt {

bool Path::operator<(const Path& o) const {
  if (arrows.size() != o.arrows.size()) return arrows.size() < o.arrows.size();
  if (arrows != o.arrows) return arrows < o.arrows;
  return base < o.base;
}

std::string Path::str() const {
  if (arrows.empty()) return "e(" + std::to_string(base) + ")";
  std::string s;
  for (size_t i = 0; i < arrows.size(); ++i) {
    if (i) s += ".";
    s += arrows[i];
  }
  return s;
}

PathExpr PathExpr::path(const Path& p, const Scalar& c) {
  PathExpr e;
  e.add(p, c);
  return e;
}

void PathExpr::add(const Path& p, const Scalar& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(p);
  if (it == terms_.end()) {
    terms_.emplace(p, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

PathExpr PathExpr::operator+(const PathExpr& o) const {
  PathExpr r = *this;
  for (const auto& [p, c] : o.terms_) r.add(p, c);
  return r;
}

PathExpr PathExpr::operator-(const PathExpr& o) const {
  PathExpr r = *this;
  for (const auto& [p, c] : o.terms_) r.add(p, -c);
  return r;
}

PathExpr PathExpr::scaled(const Scalar& c) const {
  PathExpr r;
  for (const auto& [p, k] : terms_) r.add(p, k * c);
  return r;
}

PathExpr PathExpr::substitute(
    const std::map<std::string, std::vector<std::string>>& repl) const {
  PathExpr r;
  for (const auto& [p, c] : terms_) {
    Path q = p;
    q.arrows.clear();
    for (const std::string& a : p.arrows) {
      auto it = repl.find(a);
      if (it == repl.end())
        q.arrows.push_back(a);
      else
        q.arrows.insert(q.arrows.end(), it->second.begin(), it->second.end());
    }
    r.add(q, c);
  }
  return r;
}

std::string PathExpr::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [p, c] : terms_) {
    Scalar mag = c.abs();
    if (s.empty())
      s += c.negative() ? "-" : "";
    else
      s += c.negative() ? " - " : " + ";
    if (mag.is_one())
      s += p.str();
    else
      s += mag.str() + " * " + p.str();
  }
  return s;
}

size_t MinimalRelationSpace::total() const {
  size_t n = 0;
  for (const auto& e : entries) n += e.dim;
  return n;
}

// ---------------------------------------------------------------------------

namespace {

// acc += c * v on sorted sparse vectors
void axpy(FDAlgebra::Vec& acc, const Scalar& c, const FDAlgebra::Vec& v) {
  if (c.is_zero() || v.empty()) return;
  FDAlgebra::Vec out;
  out.reserve(acc.size() + v.size());
  size_t i = 0, j = 0;
  while (i < acc.size() || j < v.size()) {
    if (j == v.size() || (i < acc.size() && acc[i].first < v[j].first)) {
      out.push_back(acc[i++]);
    } else if (i == acc.size() || v[j].first < acc[i].first) {
      Scalar s = c * v[j].second;
      if (!s.is_zero()) out.emplace_back(v[j].first, s);
      ++j;
    } else {
      Scalar s = acc[i].second + c * v[j].second;
      if (!s.is_zero()) out.emplace_back(acc[i].first, s);
      ++i;
      ++j;
    }
  }
  acc = std::move(out);
}

void sort_vec(FDAlgebra::Vec& v) {
  std::sort(v.begin(), v.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
}

}  // namespace

FDAlgebra::NodeId FDAlgebra::child_of(NodeId n, int arrow) const {
  auto it = child_.find((static_cast<uint64_t>(n) << 16) | static_cast<uint32_t>(arrow));
  return it == child_.end() ? kNoNode : it->second;
}

std::optional<FDAlgebra::NodeId> FDAlgebra::find_node(const Path& p) const {
  if (p.arrows.empty()) {
    auto it = stationary_.find(p.base);
    if (it == stationary_.end())
      fail("UnknownVertex", "no vertex " + std::to_string(p.base));
    return it->second;
  }
  auto arrow_index = [&](const std::string& name) {
    auto it = std::lower_bound(arrow_names_.begin(), arrow_names_.end(), name);
    if (it == arrow_names_.end() || *it != name)
      fail("UnknownArrow", "no arrow '" + name + "'");
    return static_cast<int>(it - arrow_names_.begin());
  };
  int a0 = arrow_index(p.arrows[0]);
  NodeId cur = stationary_.at(arrow_src_[a0]);
  for (const std::string& name : p.arrows) {
    int ai = arrow_index(name);
    if (nodes_[cur].target != arrow_src_[ai])
      fail("NonComposable", "path breaks at '" + name + "'");
    cur = child_of(cur, ai);
    if (cur == kNoNode) return std::nullopt;
  }
  return cur;
}

Path FDAlgebra::node_path(NodeId n) const {
  if (nodes_[n].len == 0) return Path::stationary(nodes_[n].source);
  std::vector<std::string> rev;
  NodeId cur = n;
  while (nodes_[cur].len > 0) {
    rev.push_back(arrow_names_[nodes_[cur].last]);
    cur = nodes_[cur].parent;
  }
  return Path::of({rev.rbegin(), rev.rend()});
}

// a . b as a table node, kNoNode when the product leaves the truncation
FDAlgebra::NodeId FDAlgebra::concat_nodes(NodeId a, NodeId b) const {
  std::vector<int> seq;
  NodeId cur = b;
  while (nodes_[cur].len > 0) {
    seq.push_back(nodes_[cur].last);
    cur = nodes_[cur].parent;
  }
  NodeId dst = a;
  for (auto it = seq.rbegin(); it != seq.rend(); ++it) {
    dst = child_of(dst, *it);
    if (dst == kNoNode) return kNoNode;
  }
  return dst;
}

FDAlgebra::Vec FDAlgebra::intern(const PathExpr& x, bool* short_term) const {
  Vec v;
  for (const auto& [p, c] : x.terms()) {
    if (short_term && p.length() < 2) *short_term = true;
    auto n = find_node(p);
    if (!n) continue;  // beyond the truncation
    axpy(v, Scalar::one(field_), Vec{{*n, c}});
  }
  return v;
}

FDAlgebra::Vec FDAlgebra::reduce(Vec v) const {
  while (!v.empty()) {
    auto it = pivot_.find(v[0].first);
    if (it == pivot_.end()) break;
    Scalar c = -v[0].second;
    axpy(v, c, rows_[it->second].t);
  }
  return v;
}

bool FDAlgebra::build(int L) {
  trunc_ = L;
  nodes_.clear();
  stationary_.clear();
  child_.clear();
  rows_.clear();
  pivot_.clear();
  admissible_ = true;
  warnings_.clear();

  arrow_names_.clear();
  arrow_src_.clear();
  arrow_tgt_.clear();
  std::vector<Arrow> sorted = q_.arrows;
  std::sort(sorted.begin(), sorted.end(),
            [](const Arrow& a, const Arrow& b) { return a.name < b.name; });
  for (const Arrow& a : sorted) {
    arrow_names_.push_back(a.name);
    arrow_src_.push_back(a.source);
    arrow_tgt_.push_back(a.target);
  }
  std::map<int, std::vector<int>> out_arrows;
  for (size_t i = 0; i < arrow_names_.size(); ++i)
    out_arrows[arrow_src_[i]].push_back(static_cast<int>(i));

  // path table, level by level; generation order within a level is lex,
  // so node id order realizes the length-then-lex path order
  for (int v : q_.vertices) {
    stationary_[v] = static_cast<NodeId>(nodes_.size());
    nodes_.push_back({v, v, 0, kNoNode, -1});
  }
  size_t level_begin = 0, level_end = nodes_.size();
  for (int len = 1; len <= L; ++len) {
    for (size_t n = level_begin; n < level_end; ++n) {
      auto it = out_arrows.find(nodes_[n].target);
      if (it == out_arrows.end()) continue;
      for (int ai : it->second) {
        NodeId id = static_cast<NodeId>(nodes_.size());
        nodes_.push_back(
            {nodes_[n].source, arrow_tgt_[ai], len, static_cast<NodeId>(n), ai});
        child_[(static_cast<uint64_t>(n) << 16) | static_cast<uint32_t>(ai)] = id;
      }
    }
    level_begin = level_end;
    level_end = nodes_.size();
    if (level_begin == level_end) break;
  }

  std::deque<uint32_t> queue;
  auto insert_row = [&](Vec v) {
    v = reduce(std::move(v));
    if (v.empty()) return;
    Scalar inv = v[0].second.inverse();
    for (auto& [n, c] : v) c = c * inv;
    Row row{nodes_[v[0].first].source, nodes_[v[0].first].target, std::move(v)};
    pivot_[row.t[0].first] = static_cast<uint32_t>(rows_.size());
    rows_.push_back(std::move(row));
    queue.push_back(static_cast<uint32_t>(rows_.size() - 1));
  };

  for (const PathExpr& r : rels_) {
    bool short_term = false;
    Vec v = intern(r, &short_term);
    if (short_term && admissible_) {
      admissible_ = false;
      warnings_.push_back("relation with a term of length < 2: " + r.str());
    }
    if (!v.empty()) insert_row(std::move(v));
  }

  // close the echelon span under left and right multiplication by arrows
  while (!queue.empty()) {
    uint32_t ri = queue.front();
    queue.pop_front();
    Vec base = rows_[ri].t;
    int src = rows_[ri].source, tgt = rows_[ri].target;
    for (size_t ai = 0; ai < arrow_names_.size(); ++ai) {
      if (arrow_src_[ai] == tgt) {
        Vec prod;
        for (const auto& [n, c] : base) {
          NodeId ch = child_of(n, static_cast<int>(ai));
          if (ch != kNoNode) prod.emplace_back(ch, c);
        }
        sort_vec(prod);
        if (!prod.empty()) insert_row(std::move(prod));
      }
      if (arrow_tgt_[ai] == src) {
        NodeId head = child_of(stationary_.at(arrow_src_[ai]), static_cast<int>(ai));
        if (head == kNoNode) continue;
        Vec prod;
        for (const auto& [n, c] : base) {
          NodeId dst = concat_nodes(head, n);
          if (dst != kNoNode) prod.emplace_back(dst, c);
        }
        sort_vec(prod);
        if (!prod.empty()) insert_row(std::move(prod));
      }
    }
  }

  int d_max = 0;
  for (NodeId n = 0; n < nodes_.size(); ++n)
    if (!pivot_.count(n)) d_max = std::max(d_max, nodes_[n].len);
  int top_path_len = nodes_.empty() ? 0 : nodes_.back().len;
  if (top_path_len < L) return true;  // the quiver admits no longer paths
  return d_max <= L - 2;
}

void FDAlgebra::finalize() {
  basis_.clear();
  basis_pos_.clear();
  basis_by_source_.clear();
  nf_.clear();
  int d_max = 0;
  for (NodeId n = 0; n < nodes_.size(); ++n) {
    if (pivot_.count(n)) continue;
    basis_pos_[n] = basis_.size();
    basis_.push_back(n);
    basis_by_source_[nodes_[n].source].push_back(n);
    d_max = std::max(d_max, nodes_[n].len);
  }
  nilpotency_ = d_max + 1;

  // pivot tails refer only to strictly later node ids, so resolving normal
  // forms in descending lead order needs a single pass
  std::vector<std::pair<NodeId, uint32_t>> leads(pivot_.begin(), pivot_.end());
  std::sort(leads.begin(), leads.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  for (const auto& [lead, ri] : leads) {
    Vec out;
    const Vec& t = rows_[ri].t;
    for (size_t k = 1; k < t.size(); ++k) {
      const auto& [n, c] = t[k];
      if (basis_pos_.count(n))
        axpy(out, Scalar::one(field_), Vec{{n, -c}});
      else
        axpy(out, -c, nf_.at(n));
    }
    nf_[lead] = std::move(out);
  }
}

FDAlgebra quotient_algebra(const Quiver& q, const std::vector<PathExpr>& rels,
                           const Field& field, int cap) {
  q.validate();
  FDAlgebra a;
  a.q_ = q;
  a.field_ = field;
  a.rels_ = rels;
  a.cap_ = cap;

  int max_rel_len = 0;
  for (const PathExpr& r : rels) {
    int tgt = INT_MIN, src = INT_MIN;
    for (const auto& [p, c] : r.terms()) {
      if (p.length() == 0)
        fail("SemanticError", "relation with a stationary term: " + r.str());
      max_rel_len = std::max(max_rel_len, static_cast<int>(p.length()));
      for (size_t k = 0; k + 1 < p.arrows.size(); ++k)
        if (q.arrow(p.arrows[k]).target != q.arrow(p.arrows[k + 1]).source)
          fail("SemanticError", "non-composable path in relation: " + p.str());
      const Arrow& first = q.arrow(p.arrows.front());
      const Arrow& last = q.arrow(p.arrows.back());
      if (src == INT_MIN) {
        src = first.source;
        tgt = last.target;
      } else if (src != first.source || tgt != last.target) {
        fail("SemanticError",
             "relation terms lack a common source and target: " + r.str());
      }
    }
  }
  if (cap < 2) fail("InvalidSpec", "cap must be at least 2");
  if (max_rel_len > cap)
    fail("InvalidSpec", "cap " + std::to_string(cap) +
                            " is below the longest relation term " +
                            std::to_string(max_rel_len));

  int L = std::min(cap, std::max(max_rel_len + 3, 4));
  for (;;) {
    if (a.build(L)) break;
    if (L >= cap)
      fail("NotFiniteDimensionalWithinCap",
           "basis still growing at truncation " + std::to_string(L));
    L = std::min(cap, L + 2);
  }
  a.finalize();
  return a;
}

// ---------------------------------------------------------------------------

size_t FDAlgebra::dim_at(int vertex) const {
  auto it = basis_by_source_.find(vertex);
  return it == basis_by_source_.end() ? 0 : it->second.size();
}

const std::vector<FDAlgebra::NodeId>& FDAlgebra::basis_from(int vertex) const {
  static const std::vector<NodeId> empty;
  auto it = basis_by_source_.find(vertex);
  return it == basis_by_source_.end() ? empty : it->second;
}

std::vector<FDAlgebra::NodeId> FDAlgebra::basis_between(int source, int target) const {
  std::vector<NodeId> out;
  for (NodeId n : basis_from(source))
    if (nodes_[n].target == target) out.push_back(n);
  return out;
}

FDAlgebra::Vec FDAlgebra::nf_node(NodeId n) const {
  if (basis_pos_.count(n)) return Vec{{n, Scalar::one(field_)}};
  auto it = nf_.find(n);
  if (it == nf_.end()) fail("InternalError", "node without a normal form");
  return it->second;
}

FDAlgebra::Vec FDAlgebra::nf_concat(NodeId a, NodeId b) const {
  if (nodes_[a].target != nodes_[b].source) return {};
  NodeId dst = concat_nodes(a, b);
  if (dst == kNoNode) return {};  // longer than any nonzero element
  return nf_node(dst);
}

FDAlgebra::Vec FDAlgebra::nf_vec(const Vec& v) const {
  Vec out;
  for (const auto& [n, c] : v) axpy(out, c, nf_node(n));
  return out;
}

PathExpr FDAlgebra::normal_form(const PathExpr& x) const {
  return expr_of(nf_vec(intern(x, nullptr)));
}

PathExpr FDAlgebra::multiply(const PathExpr& a, const PathExpr& b) const {
  Vec out;
  for (const auto& [p, cp] : a.terms()) {
    auto np = find_node(p);
    if (!np) continue;
    for (const auto& [q, cq] : b.terms()) {
      auto nq = find_node(q);
      if (!nq) continue;
      if (nodes_[*np].target != nodes_[*nq].source) continue;
      axpy(out, cp * cq, nf_concat(*np, *nq));
    }
  }
  return expr_of(out);
}

PathExpr FDAlgebra::expr_of(const Vec& v) const {
  PathExpr e;
  for (const auto& [n, c] : v) e.add(node_path(n), c);
  return e;
}

FDAlgebra::Vec FDAlgebra::vec_of(const PathExpr& x) const {
  return nf_vec(intern(x, nullptr));
}

std::vector<Scalar> FDAlgebra::coords_from(const Vec& v, int source) const {
  const auto& bs = basis_from(source);
  std::unordered_map<NodeId, size_t> pos;
  for (size_t i = 0; i < bs.size(); ++i) pos[bs[i]] = i;
  std::vector<Scalar> out(bs.size(), Scalar::zero(field_));
  for (const auto& [n, c] : v) {
    auto it = pos.find(n);
    if (it == pos.end()) fail("InternalError", "coordinate outside the vertex fiber");
    out[it->second] = c;
  }
  return out;
}

std::vector<RadicalLayer> FDAlgebra::radical_layers(int vertex) const {
  std::map<int, RadicalLayer> layers;
  for (NodeId n : basis_from(vertex)) {
    RadicalLayer& l = layers[nodes_[n].len];
    l.k = nodes_[n].len;
    l.dim++;
    l.representatives.push_back(node_path(n));
  }
  std::vector<RadicalLayer> out;
  out.reserve(layers.size());
  for (auto& [k, l] : layers) out.push_back(std::move(l));
  return out;
}

// kernel of right multiplication by every arrow, over basis_from(v)
std::vector<std::vector<Scalar>> FDAlgebra::socle_at(int v) const {
  const auto& bs = basis_from(v);
  if (bs.empty()) return {};
  std::unordered_map<NodeId, size_t> full_pos;
  for (size_t i = 0; i < basis_.size(); ++i) full_pos[basis_[i]] = i;
  size_t out_dim = arrow_names_.size() * basis_.size();
  ExactMatrix m(field_, out_dim, bs.size());
  for (size_t j = 0; j < bs.size(); ++j)
    for (size_t ai = 0; ai < arrow_names_.size(); ++ai) {
      if (nodes_[bs[j]].target != arrow_src_[ai]) continue;
      NodeId arrow_node = child_of(stationary_.at(arrow_src_[ai]), static_cast<int>(ai));
      if (arrow_node == kNoNode) continue;
      for (const auto& [n, c] : nf_concat(bs[j], arrow_node))
        m.at(ai * basis_.size() + full_pos.at(n), j) = c;
    }
  return kernel_basis(m);
}

SocleInfo FDAlgebra::socle_layers(int vertex) const {
  SocleInfo info;
  const auto& bs = basis_from(vertex);
  if (bs.empty()) return info;
  info.soc = socle_at(vertex);
  rref_rows(info.soc, &info.soc_pivots);

  std::unordered_map<NodeId, size_t> full_pos;
  for (size_t i = 0; i < basis_.size(); ++i) full_pos[basis_[i]] = i;

  // the whole socle, in full-basis coordinates
  std::vector<std::vector<Scalar>> soc_all;
  for (int v : q_.vertices) {
    const auto& bv = basis_from(v);
    for (const auto& kv : socle_at(v)) {
      std::vector<Scalar> vec(basis_.size(), Scalar::zero(field_));
      for (size_t j = 0; j < bv.size(); ++j)
        if (!kv[j].is_zero()) vec[full_pos.at(bv[j])] = kv[j];
      soc_all.push_back(std::move(vec));
    }
  }
  std::vector<size_t> soc_all_piv;
  rref_rows(soc_all, &soc_all_piv);

  // x is in the second socle when every x * arrow lands in the socle
  size_t rows_per_arrow = basis_.size();
  ExactMatrix m(field_, arrow_names_.size() * rows_per_arrow, bs.size());
  for (size_t j = 0; j < bs.size(); ++j)
    for (size_t ai = 0; ai < arrow_names_.size(); ++ai) {
      std::vector<Scalar> img(basis_.size(), Scalar::zero(field_));
      if (nodes_[bs[j]].target == arrow_src_[ai]) {
        NodeId arrow_node = child_of(stationary_.at(arrow_src_[ai]), static_cast<int>(ai));
        if (arrow_node != kNoNode)
          for (const auto& [n, c] : nf_concat(bs[j], arrow_node))
            img[full_pos.at(n)] = c;
      }
      reduce_in_span(img, soc_all, soc_all_piv);
      for (size_t i = 0; i < img.size(); ++i)
        m.at(ai * rows_per_arrow + i, j) = img[i];
    }
  info.soc2 = kernel_basis(m);
  rref_rows(info.soc2, &info.soc2_pivots);
  return info;
}

bool FDAlgebra::in_socle(const Vec& v, int level) const {
  if (v.empty()) return true;
  int src = nodes_[v[0].first].source;
  for (const auto& [n, c] : v)
    if (nodes_[n].source != src)
      fail("SemanticError", "socle test needs a single-vertex element");
  SocleInfo info = socle_layers(src);
  std::vector<Scalar> coords = coords_from(v, src);
  if (level == 1) return reduce_in_span(coords, info.soc, info.soc_pivots);
  return reduce_in_span(coords, info.soc2, info.soc2_pivots);
}

Quiver FDAlgebra::gabriel_quiver() const {
  Quiver g;
  for (int v : q_.vertices) g.add_vertex(v);
  for (NodeId n : basis_)
    if (nodes_[n].len == 1)
      g.add_arrow(arrow_names_[nodes_[n].last], nodes_[n].source, nodes_[n].target);
  return g;
}

bool FDAlgebra::weakly_symmetric() const {
  for (int v : q_.vertices) {
    auto soc = socle_at(v);
    if (soc.size() != 1) return false;
    const auto& bs = basis_from(v);
    for (size_t j = 0; j < bs.size(); ++j)
      if (!soc[0][j].is_zero() && nodes_[bs[j]].target != v) return false;
  }
  return true;
}

MinimalRelationSpace FDAlgebra::minimal_relation_space() const {
  MinimalRelationSpace out;
  std::map<std::pair<int, int>, std::vector<const Row*>> by_block;
  for (const Row& r : rows_) by_block[{r.source, r.target}].push_back(&r);

  for (const auto& [key, rows] : by_block) {
    auto [src, tgt] = key;
    std::vector<NodeId> blockpaths;
    std::unordered_map<NodeId, size_t> pos;
    for (NodeId n = 0; n < nodes_.size(); ++n)
      if (nodes_[n].source == src && nodes_[n].target == tgt && nodes_[n].len >= 1) {
        pos[n] = blockpaths.size();
        blockpaths.push_back(n);
      }
    auto densify = [&](const Vec& v) {
      std::vector<Scalar> d(blockpaths.size(), Scalar::zero(field_));
      for (const auto& [n, c] : v) d[pos.at(n)] = c;
      return d;
    };
    size_t ideal_rank = rows.size();  // echelon rows are independent

    // products (arrow . row) and (row . arrow) landing in this block
    std::vector<std::vector<Scalar>> prod_rows;
    for (const Row& r : rows_) {
      for (size_t ai = 0; ai < arrow_names_.size(); ++ai) {
        if (arrow_tgt_[ai] == r.source && arrow_src_[ai] == src && r.target == tgt) {
          NodeId head = child_of(stationary_.at(arrow_src_[ai]), static_cast<int>(ai));
          if (head != kNoNode) {
            Vec prod;
            for (const auto& [n, c] : r.t) {
              NodeId dst = concat_nodes(head, n);
              if (dst != kNoNode) prod.emplace_back(dst, c);
            }
            sort_vec(prod);
            if (!prod.empty()) prod_rows.push_back(densify(prod));
          }
        }
        if (arrow_src_[ai] == r.target && r.source == src && arrow_tgt_[ai] == tgt) {
          Vec prod;
          for (const auto& [n, c] : r.t) {
            NodeId ch = child_of(n, static_cast<int>(ai));
            if (ch != kNoNode) prod.emplace_back(ch, c);
          }
          sort_vec(prod);
          if (!prod.empty()) prod_rows.push_back(densify(prod));
        }
      }
    }
    std::vector<size_t> piv;
    size_t sub_rank = rref_rows(prod_rows, &piv);
    if (ideal_rank == sub_rank) continue;

    MinimalRelationSpace::Entry e;
    e.source = src;
    e.target = tgt;
    e.ideal_dim = ideal_rank;
    e.dim = ideal_rank - sub_rank;
    std::vector<std::vector<Scalar>> acc = prod_rows;
    std::vector<size_t> acc_piv = piv;
    for (const Row* r : rows) {
      std::vector<Scalar> v = densify(r->t);
      std::vector<Scalar> red = v;
      if (!reduce_in_span(red, acc, acc_piv)) {
        PathExpr lift;
        for (size_t j = 0; j < blockpaths.size(); ++j)
          if (!v[j].is_zero()) lift.add(node_path(blockpaths[j]), v[j]);
        e.lifts.push_back(lift);
        acc.push_back(v);
        rref_rows(acc, &acc_piv);
      }
      if (e.lifts.size() == e.dim) break;
    }
    out.entries.push_back(std::move(e));
  }
  return out;
}

bool FDAlgebra::may_occur_in_minimal_relation(const Path& w) const {
  auto nw = find_node(w);
  if (!nw) return false;
  int src = nodes_[*nw].source, tgt = nodes_[*nw].target;
  MinimalRelationSpace sp = minimal_relation_space();
  const MinimalRelationSpace::Entry* entry = nullptr;
  for (const auto& e : sp.entries)
    if (e.source == src && e.target == tgt) entry = &e;
  if (!entry || entry->dim == 0) return false;
  // some ideal element must carry w with a nonzero coefficient
  for (const Row& r : rows_) {
    if (r.source != src || r.target != tgt) continue;
    for (const auto& [n, c] : r.t)
      if (n == *nw) return true;
  }
  return false;
}

}  // namespace qgt
