#include "qgt/specfile.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace qgt {

namespace {

[[noreturn]] void parse_fail(int line, const std::string& msg) {
  fail("ParseError", "line " + std::to_string(line) + ": " + msg);
}

[[noreturn]] void sem_fail(int line, const std::string& msg) {
  fail("SemanticError", "line " + std::to_string(line) + ": " + msg);
}

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream in(line);
  std::string t;
  while (in >> t) {
    if (t[0] == '#') break;
    toks.push_back(t);
  }
  return toks;
}

int parse_int(const std::string& s, int line) {
  try {
    size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) parse_fail(line, "bad integer '" + s + "'");
    return v;
  } catch (const std::exception&) {
    parse_fail(line, "bad integer '" + s + "'");
  }
}

BlockType parse_block_type(const std::string& s, int line) {
  if (s == "I") return BlockType::I;
  if (s == "II") return BlockType::II;
  if (s == "III") return BlockType::III;
  if (s == "V1") return BlockType::V1;
  if (s == "V2") return BlockType::V2;
  parse_fail(line, "unknown block type '" + s + "'");
}

}  // namespace

PathExpr parse_path_expr(const std::string& text, const Field& field) {
  // terms "coef * a.b.c" or "a.b.c" or "e(i)", joined by '+' / '-'
  PathExpr out;
  std::string s = text;
  size_t pos = 0;
  int sign = 1;
  bool expecting_term = true;
  auto skip_ws = [&]() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  };
  skip_ws();
  if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
    sign = s[pos] == '-' ? -1 : 1;
    ++pos;
  }
  while (true) {
    skip_ws();
    if (pos >= s.size()) {
      if (expecting_term) fail("ParseError", "dangling sign in '" + text + "'");
      break;
    }
    // read one term up to the next top-level + or -
    size_t start = pos;
    while (pos < s.size() && s[pos] != '+' && s[pos] != '-') ++pos;
    std::string term = s.substr(start, pos - start);
    // trailing sign handling
    int next_sign = 1;
    if (pos < s.size()) {
      next_sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    }
    // split optional "coef *"
    Scalar coef = Scalar::one(field);
    std::string path_text = term;
    if (auto star = term.find('*'); star != std::string::npos) {
      coef = Scalar::parse(field, term.substr(0, star));
      path_text = term.substr(star + 1);
    }
    // trim
    auto trim = [](std::string v) {
      size_t a = v.find_first_not_of(" \t");
      size_t b = v.find_last_not_of(" \t");
      return a == std::string::npos ? std::string() : v.substr(a, b - a + 1);
    };
    path_text = trim(path_text);
    if (path_text.empty()) fail("ParseError", "empty path in '" + text + "'");
    Path p;
    if (path_text.size() > 2 && path_text.front() == 'e' && path_text[1] == '(') {
      if (path_text.back() != ')') fail("ParseError", "bad stationary path '" + path_text + "'");
      p = Path::stationary(std::stoi(path_text.substr(2, path_text.size() - 3)));
    } else {
      std::vector<std::string> arrows;
      std::string cur;
      for (char ch : path_text) {
        if (ch == '.') {
          if (cur.empty()) fail("ParseError", "empty arrow name in '" + path_text + "'");
          arrows.push_back(cur);
          cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
          cur += ch;
        }
      }
      if (cur.empty()) fail("ParseError", "empty arrow name in '" + path_text + "'");
      arrows.push_back(cur);
      p = Path::of(std::move(arrows));
    }
    out.add(p, sign < 0 ? -coef : coef);
    sign = next_sign;
    expecting_term = pos < s.size();
    if (pos >= s.size()) break;
  }
  return out;
}

std::map<std::string, int> expand_weights(const std::map<std::string, std::string>& g,
                                          const std::map<std::string, int>& given) {
  std::map<std::string, int> out;
  for (const auto& orb : orbits(g)) {
    const int* w = nullptr;
    std::string key;
    for (const auto& a : orb)
      if (auto it = given.find(a); it != given.end()) {
        if (w && *w != it->second)
          fail("InvalidSpec", "conflicting weights on the orbit of '" + orb[0] + "'");
        w = &it->second;
        key = a;
      }
    if (!w) fail("InvalidSpec", "no weight given on the orbit of '" + orb[0] + "'");
    for (const auto& a : orb) out[a] = *w;
  }
  return out;
}

std::map<std::string, Scalar> expand_params(const std::map<std::string, std::string>& g,
                                            const std::map<std::string, Scalar>& given) {
  std::map<std::string, Scalar> out;
  for (const auto& orb : orbits(g)) {
    const Scalar* c = nullptr;
    for (const auto& a : orb)
      if (auto it = given.find(a); it != given.end()) {
        if (c && !(*c == it->second))
          fail("InvalidSpec", "conflicting parameters on the orbit of '" + orb[0] + "'");
        c = &it->second;
      }
    if (!c) fail("InvalidSpec", "no parameter given on the orbit of '" + orb[0] + "'");
    if (c->is_zero()) fail("SemanticError", "parameter on the orbit of '" + orb[0] + "' is zero");
    for (const auto& a : orb) out[a] = *c;
  }
  return out;
}

std::vector<std::pair<std::string, int>> parse_hat_weights(const std::string& text) {
  std::vector<std::pair<std::string, int>> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) fail("ParseError", "bad weight item '" + item + "'");
    std::string key = item.substr(0, eq);
    key.erase(std::remove_if(key.begin(), key.end(), ::isspace), key.end());
    // accept mp1 as an alias for m'1
    if (key.size() > 2 && key[0] == 'm' && key[1] == 'p') key = "m'" + key.substr(2);
    out.emplace_back(key, std::stoi(item.substr(eq + 1)));
  }
  return out;
}

SpecFile parse_spec(const std::string& text) {
  SpecFile s;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool has_forbit = false, has_gorbit = false, has_relation = false;
  std::vector<std::pair<int, std::vector<std::string>>> forbits, gorbits;

  while (std::getline(in, line)) {
    ++lineno;
    auto toks = tokenize(line);
    if (toks.empty()) continue;
    const std::string& cmd = toks[0];
    auto need = [&](size_t n) {
      if (toks.size() < n + 1)
        parse_fail(lineno, "'" + cmd + "' needs " + std::to_string(n) + " arguments");
    };
    if (cmd == "field") {
      need(1);
      if (toks[1] == "Q") {
        s.field = Field::rationals();
      } else if (toks[1] == "Fp") {
        need(2);
        s.field = Field::prime(static_cast<uint32_t>(parse_int(toks[2], lineno)));
      } else {
        parse_fail(lineno, "field must be Q or Fp <p>");
      }
    } else if (cmd == "vertex" || cmd == "vertices") {
      need(1);
      for (size_t i = 1; i < toks.size(); ++i) s.quiver.add_vertex(parse_int(toks[i], lineno));
    } else if (cmd == "arrow") {
      need(3);
      if (s.quiver.find_arrow(toks[1]))
        parse_fail(lineno, "duplicate arrow name '" + toks[1] + "'");
      int src = parse_int(toks[2], lineno), tgt = parse_int(toks[3], lineno);
      if (!s.quiver.has_vertex(src) || !s.quiver.has_vertex(tgt))
        sem_fail(lineno, "arrow endpoints must be declared vertices");
      s.quiver.add_arrow(toks[1], src, tgt);
    } else if (cmd == "forbit") {
      need(1);
      has_forbit = true;
      forbits.emplace_back(lineno, std::vector<std::string>(toks.begin() + 1, toks.end()));
    } else if (cmd == "gorbit") {
      need(1);
      has_gorbit = true;
      gorbits.emplace_back(lineno, std::vector<std::string>(toks.begin() + 1, toks.end()));
    } else if (cmd == "block") {
      need(2);
      s.from_blocks = true;
      BlockSpec b;
      b.name = toks[1];
      b.type = parse_block_type(toks[2], lineno);
      b.arrow_names.assign(toks.begin() + 3, toks.end());
      s.block_specs.push_back(std::move(b));
    } else if (cmd == "glue") {
      need(2);
      auto parse_slot = [&](const std::string& t) {
        auto dot = t.find('.');
        if (dot == std::string::npos) parse_fail(lineno, "glue slot must be block.index");
        return std::pair<std::string, int>{t.substr(0, dot),
                                           parse_int(t.substr(dot + 1), lineno) - 1};
      };
      auto [ba, sa] = parse_slot(toks[1]);
      auto [bb, sb] = parse_slot(toks[2]);
      s.glue_pairs.push_back({ba, sa, bb, sb});
    } else if (cmd == "weight") {
      need(2);
      s.weights[toks[1]] = parse_int(toks[2], lineno);
    } else if (cmd == "param") {
      need(2);
      Scalar c = Scalar::parse(s.field, toks[2]);
      if (c.is_zero()) sem_fail(lineno, "parameters must be nonzero");
      s.params[toks[1]] = c;
    } else if (cmd == "border") {
      need(2);
      s.border[parse_int(toks[1], lineno)] = Scalar::parse(s.field, toks[2]);
    } else if (cmd == "hatweight") {
      need(2);
      std::string key = toks[1];
      if (key.size() > 2 && key[0] == 'm' && key[1] == 'p') key = "m'" + key.substr(2);
      s.hat_weights.emplace_back(key, parse_int(toks[2], lineno));
    } else if (cmd == "relation") {
      need(1);
      has_relation = true;
      std::string rest = line.substr(line.find("relation") + 8);
      if (auto hash = rest.find('#'); hash != std::string::npos) rest = rest.substr(0, hash);
      PathExpr e = parse_path_expr(rest, s.field);
      for (const auto& [p, c] : e.terms())
        for (const auto& a : p.arrows)
          if (!s.quiver.find_arrow(a)) sem_fail(lineno, "unknown arrow '" + a + "' in relation");
      s.raw_relations.push_back(std::move(e));
    } else if (cmd == "cap") {
      need(1);
      s.cap = parse_int(toks[1], lineno);
    } else if (cmd == "t") {
      need(1);
      s.t = Scalar::parse(s.field, toks[1]);
    } else {
      parse_fail(lineno, "unknown directive '" + cmd + "'");
    }
  }

  if (s.from_blocks) {
    if (!s.quiver.vertices.empty())
      fail("SemanticError", "blocks and explicit vertices cannot be mixed");
    AssembledQuiver asm_q = assemble_from_blocks(s.block_specs, s.glue_pairs);
    s.quiver = asm_q.quiver;
    if (asm_q.triangulation_mode) {
      s.f = asm_q.perm.f;
      s.mode = SpecFile::Mode::Triangulation;
    } else {
      s.g = asm_q.perm.g;
      s.mode = SpecFile::Mode::Base;
    }
  }
  auto resolve_orbits = [&](const std::vector<std::pair<int, std::vector<std::string>>>& lists,
                            std::map<std::string, std::string>& perm) {
    for (const auto& [ln, orb] : lists) {
      for (const auto& a : orb)
        if (!s.quiver.find_arrow(a)) sem_fail(ln, "unknown arrow '" + a + "' in orbit");
      for (size_t i = 0; i < orb.size(); ++i) {
        if (perm.count(orb[i])) sem_fail(ln, "arrow '" + orb[i] + "' in two orbits");
        perm[orb[i]] = orb[(i + 1) % orb.size()];
      }
    }
  };
  if (has_forbit) {
    if (has_gorbit) fail("SemanticError", "forbit and gorbit cannot be mixed");
    resolve_orbits(forbits, s.f);
    if (s.f.size() != s.quiver.arrows.size())
      fail("SemanticError", "f-orbits must cover every arrow");
    s.mode = SpecFile::Mode::Triangulation;
  } else if (has_gorbit) {
    resolve_orbits(gorbits, s.g);
    if (s.g.size() != s.quiver.arrows.size())
      fail("SemanticError", "g-orbits must cover every arrow");
    s.mode = SpecFile::Mode::Base;
  } else if (has_relation) {
    s.mode = SpecFile::Mode::Raw;
  } else if (!s.from_blocks) {
    s.mode = SpecFile::Mode::Raw;
  }

  for (const auto& [a, w] : s.weights) {
    (void)w;
    if (!s.quiver.find_arrow(a)) fail("SemanticError", "weight on unknown arrow '" + a + "'");
  }
  for (const auto& [a, c] : s.params) {
    (void)c;
    if (!s.quiver.find_arrow(a)) fail("SemanticError", "parameter on unknown arrow '" + a + "'");
  }
  return s;
}

SpecFile parse_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("ParseError", "cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_spec(buf.str());
}

WSASpec SpecFile::to_wsa() const {
  if (mode != Mode::Triangulation)
    fail("SemanticError", "this input does not define a triangulation presentation");
  WSASpec spec;
  spec.data.q = quiver;
  spec.data.field = field;
  spec.data.perm = derive_bar_and_g(quiver, f);
  spec.data.n = orbit_lengths(spec.data.perm.g);
  spec.data.m = expand_weights(spec.data.perm.g, weights);
  spec.data.c = expand_params(spec.data.perm.g, params);
  spec.data.border = border;
  spec.cap = cap;
  spec.data.validate();
  return spec;
}

HatSpec SpecFile::to_hat() const {
  if (mode != Mode::Base)
    fail("SemanticError", "this input does not define a biregular base");
  HatSpec spec;
  spec.base = quiver;
  spec.field = field;
  spec.g = g;
  spec.m = expand_weights(g, weights);
  spec.c = expand_params(g, params);
  spec.cap = cap;

  BlockDecomposition blocks = locate_one_vertex_blocks(quiver);
  size_t p = blocks.of_type(BlockType::V2).size();
  size_t q = blocks.of_type(BlockType::V1).size();
  // defaults are the trivial weights
  spec.v2_weights.assign(p, 1);
  spec.v1_weights.assign(q, 2);
  for (const auto& [key, w] : hat_weights) {
    if (key.size() >= 2 && key[0] == 'm' && key[1] == '\'') {
      size_t idx = static_cast<size_t>(std::stoi(key.substr(2)));
      if (idx < 1 || idx > q) fail("SemanticError", "no 2-cycle block '" + key + "'");
      spec.v1_weights[idx - 1] = w;
    } else if (!key.empty() && key[0] == 'm') {
      size_t idx = static_cast<size_t>(std::stoi(key.substr(1)));
      if (idx < 1 || idx > p) fail("SemanticError", "no 4-cycle block '" + key + "'");
      spec.v2_weights[idx - 1] = w;
    } else {
      fail("SemanticError", "bad hat weight key '" + key + "'");
    }
  }
  return spec;
}

std::string print_spec(const SpecFile& s) {
  std::ostringstream out;
  out << "field " << (s.field.kind == FieldKind::Rationals ? "Q" : "Fp " + std::to_string(s.field.p))
      << "\n";
  out << "vertices";
  for (int v : s.quiver.vertices) out << " " << v;
  out << "\n";
  for (const Arrow& a : s.quiver.arrows)
    out << "arrow " << a.name << " " << a.source << " " << a.target << "\n";
  auto emit_orbits = [&](const char* kw, const std::map<std::string, std::string>& perm) {
    for (const auto& orb : orbits(perm)) {
      out << kw;
      for (const auto& a : orb) out << " " << a;
      out << "\n";
    }
  };
  if (s.mode == SpecFile::Mode::Triangulation) emit_orbits("forbit", s.f);
  if (s.mode == SpecFile::Mode::Base) emit_orbits("gorbit", s.g);
  for (const auto& [a, w] : s.weights) out << "weight " << a << " " << w << "\n";
  for (const auto& [a, c] : s.params) out << "param " << a << " " << c.str() << "\n";
  for (const auto& [v, b] : s.border) out << "border " << v << " " << b.str() << "\n";
  for (const auto& [k, w] : s.hat_weights) out << "hatweight " << k << " " << w << "\n";
  for (const auto& r : s.raw_relations) out << "relation " << r.str() << "\n";
  if (s.cap) out << "cap " << s.cap << "\n";
  if (s.t) out << "t " << s.t->str() << "\n";
  return out.str();
}

}  // namespace qgt
