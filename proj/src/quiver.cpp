#include "qgt/quiver.hpp"

#include <algorithm>
#include <set>

namespace qgt {

void Quiver::add_vertex(int v) {
  auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
  if (it == vertices.end() || *it != v) vertices.insert(it, v);
}

void Quiver::add_arrow(const std::string& name, int source, int target) {
  arrows.push_back(Arrow{name, source, target});
}

bool Quiver::has_vertex(int v) const {
  return std::binary_search(vertices.begin(), vertices.end(), v);
}

const Arrow* Quiver::find_arrow(const std::string& name) const {
  for (const Arrow& a : arrows)
    if (a.name == name) return &a;
  return nullptr;
}

const Arrow& Quiver::arrow(const std::string& name) const {
  const Arrow* a = find_arrow(name);
  if (!a) fail("UnknownArrow", "no arrow named '" + name + "'");
  return *a;
}

std::vector<std::string> Quiver::out_arrows(int v) const {
  std::vector<std::string> out;
  for (const Arrow& a : arrows)
    if (a.source == v) out.push_back(a.name);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> Quiver::in_arrows(int v) const {
  std::vector<std::string> in;
  for (const Arrow& a : arrows)
    if (a.target == v) in.push_back(a.name);
  std::sort(in.begin(), in.end());
  return in;
}

void Quiver::validate() const {
  std::set<std::string> names;
  for (const Arrow& a : arrows) {
    if (!names.insert(a.name).second)
      fail("MalformedQuiver", "duplicate arrow name '" + a.name + "'");
    if (!has_vertex(a.source) || !has_vertex(a.target))
      fail("MalformedQuiver",
           "arrow '" + a.name + "' references a missing vertex");
  }
}

bool Quiver::connected() const {
  if (vertices.empty()) return true;
  std::set<int> seen{vertices[0]};
  std::vector<int> stack{vertices[0]};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (const Arrow& a : arrows) {
      int w = -1;
      if (a.source == v) w = a.target;
      else if (a.target == v) w = a.source;
      else continue;
      if (seen.insert(w).second) stack.push_back(w);
    }
  }
  return seen.size() == vertices.size();
}

bool Quiver::same_as(const Quiver& o) const {
  if (vertices != o.vertices) return false;
  auto key = [](const Quiver& q) {
    std::vector<std::tuple<std::string, int, int>> k;
    for (const Arrow& a : q.arrows) k.emplace_back(a.name, a.source, a.target);
    std::sort(k.begin(), k.end());
    return k;
  };
  return key(*this) == key(o);
}

RegularityReport validate_regularity(const Quiver& q) {
  q.validate();
  RegularityReport r;
  r.is_biregular = !q.vertices.empty();
  r.is_2regular = !q.vertices.empty();
  for (int v : q.vertices) {
    int indeg = 0, outdeg = 0;
    for (const Arrow& a : q.arrows) {
      if (a.source == v) ++outdeg;
      if (a.target == v) ++indeg;
    }
    r.degrees.push_back({v, indeg, outdeg});
    bool two = indeg == 2 && outdeg == 2;
    bool one = indeg == 1 && outdeg == 1;
    if (two) r.two_vertices.push_back(v);
    if (one) r.one_vertices.push_back(v);
    if (!two && !one) r.is_biregular = false;
    if (!two) r.is_2regular = false;
  }
  return r;
}

const std::string& FPermutation::f_of(const std::string& a) const {
  auto it = f.find(a);
  if (it == f.end()) fail("FUndefined", "f undefined at '" + a + "'");
  return it->second;
}

const std::string& FPermutation::g_of(const std::string& a) const {
  auto it = g.find(a);
  if (it == g.end()) fail("GUndefined", "g undefined at '" + a + "'");
  return it->second;
}

const std::string& FPermutation::bar_of(const std::string& a) const {
  auto it = bar.find(a);
  if (it == bar.end()) fail("BarUndefined", "bar undefined at '" + a + "'");
  return it->second;
}

std::string FPermutation::f_iter(const std::string& a, int k) const {
  std::string cur = a;
  for (int i = 0; i < k; ++i) cur = f_of(cur);
  return cur;
}

std::string FPermutation::g_iter(const std::string& a, int k) const {
  std::string cur = a;
  if (k >= 0) {
    for (int i = 0; i < k; ++i) cur = g_of(cur);
    return cur;
  }
  // inverse by walking the finite orbit
  for (int i = 0; i < -k; ++i) {
    std::string prev = cur;
    do {
      prev = g_of(prev);
    } while (g_of(prev) != cur);
    cur = prev;
  }
  return cur;
}

std::map<std::string, std::string> bar_involution(const Quiver& q) {
  std::map<std::string, std::string> bar;
  for (int v : q.vertices) {
    auto out = q.out_arrows(v);
    if (out.size() == 1) {
      bar[out[0]] = out[0];
    } else if (out.size() == 2) {
      bar[out[0]] = out[1];
      bar[out[1]] = out[0];
    } else if (!out.empty()) {
      fail("NotBiserial", "vertex " + std::to_string(v) + " has out-degree " +
                              std::to_string(out.size()));
    }
  }
  return bar;
}

FPermutation derive_bar_and_g(const Quiver& q,
                              const std::map<std::string, std::string>& f) {
  RegularityReport reg = validate_regularity(q);
  if (!reg.is_2regular) fail("NotTwoRegular", "quiver is not 2-regular");
  if (f.size() != q.arrows.size())
    fail("FNotCompatible", "f is not defined on every arrow");
  std::set<std::string> images;
  for (const auto& [a, fa] : f) {
    const Arrow* src = q.find_arrow(a);
    const Arrow* dst = q.find_arrow(fa);
    if (!src || !dst) fail("FNotCompatible", "f mentions unknown arrow");
    if (src->target != dst->source)
      fail("FNotCompatible", "t(" + a + ") != s(" + fa + ")");
    if (!images.insert(fa).second)
      fail("FNotCompatible", "f is not injective at '" + fa + "'");
  }
  FPermutation p;
  p.f = f;
  p.bar = bar_involution(q);
  for (const auto& [a, fa] : f) p.g[a] = p.bar.at(fa);
  return p;
}

std::vector<std::vector<std::string>> orbits(
    const std::map<std::string, std::string>& perm) {
  std::set<std::string> domain, image;
  for (const auto& [a, b] : perm) {
    domain.insert(a);
    image.insert(b);
  }
  if (domain != image) fail("NotAPermutation", "domain and image differ");
  std::vector<std::vector<std::string>> out;
  std::set<std::string> seen;
  for (const auto& [a, _] : perm) {
    if (seen.count(a)) continue;
    // collect the orbit, then rotate to its smallest element
    std::vector<std::string> orb{a};
    seen.insert(a);
    std::string cur = perm.at(a);
    while (cur != a) {
      orb.push_back(cur);
      seen.insert(cur);
      cur = perm.at(cur);
    }
    auto mn = std::min_element(orb.begin(), orb.end());
    std::rotate(orb.begin(), mn, orb.end());
    out.push_back(std::move(orb));
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a[0] < b[0]; });
  return out;
}

std::map<std::string, int> orbit_lengths(
    const std::map<std::string, std::string>& perm) {
  std::map<std::string, int> n;
  for (const auto& orb : orbits(perm))
    for (const auto& a : orb) n[a] = static_cast<int>(orb.size());
  return n;
}

namespace {

// arrow-count matrix keyed by (source,target) plus degree signature
struct IsoData {
  std::vector<int> verts;
  std::map<std::pair<int, int>, int> mult;
  std::map<int, std::pair<int, int>> deg;
};

IsoData iso_data(const Quiver& q) {
  IsoData d;
  d.verts = q.vertices;
  for (const Arrow& a : q.arrows) {
    d.mult[{a.source, a.target}]++;
    d.deg[a.source].second++;
    d.deg[a.target].first++;
  }
  for (int v : q.vertices) d.deg.try_emplace(v, std::pair<int, int>{0, 0});
  return d;
}

bool extend(const IsoData& a, const IsoData& b, std::map<int, int>& m,
            std::set<int>& used, size_t idx) {
  if (idx == a.verts.size()) return true;
  int v = a.verts[idx];
  for (int w : b.verts) {
    if (used.count(w)) continue;
    if (a.deg.at(v) != b.deg.at(w)) continue;
    bool ok = true;
    for (const auto& [u, uv] : m) {
      auto get = [](const IsoData& d, int x, int y) {
        auto it = d.mult.find({x, y});
        return it == d.mult.end() ? 0 : it->second;
      };
      if (get(a, v, u) != get(b, w, uv) || get(a, u, v) != get(b, uv, w)) {
        ok = false;
        break;
      }
    }
    auto get = [](const IsoData& d, int x, int y) {
      auto it = d.mult.find({x, y});
      return it == d.mult.end() ? 0 : it->second;
    };
    if (ok && get(a, v, v) != get(b, w, w)) ok = false;
    if (!ok) continue;
    m[v] = w;
    used.insert(w);
    if (extend(a, b, m, used, idx + 1)) return true;
    m.erase(v);
    used.erase(w);
  }
  return false;
}

}  // namespace

bool quiver_isomorphic(const Quiver& a, const Quiver& b) {
  if (a.vertices.size() != b.vertices.size() || a.arrows.size() != b.arrows.size())
    return false;
  IsoData da = iso_data(a), db = iso_data(b);
  std::map<int, int> m;
  std::set<int> used;
  return extend(da, db, m, used, 0);
}

}  // namespace qgt
