#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qcech/presheaf.hpp"
#include "qcech/rings.hpp"
#include "qcech/spaces.hpp"

namespace qcech {

/// Parsed workspace: named objects from one document. Quantales carry the
/// structure they were built from so shorthand morphisms can resolve.
struct Workspace {
  struct QEntry {
    QPtr q;
    std::optional<SpaceLocale> loc;
    std::optional<IdealQuantale> ideals;
    std::optional<SubQuantale> sub;   // idem_of
    std::optional<ProductQuantale> prod;
    std::string sub_parent, prod_left, prod_right;
  };
  std::map<std::string, FiniteSpace> spaces;
  std::map<std::string, RingPtr> rings;
  std::map<std::string, QEntry> quantales;
  std::map<std::string, AbPresheaf> presheaves;
  std::map<std::string, MonotoneMap> morphisms;
};

/// Per-block verdict from a validating parse.
struct BlockResult {
  std::string kind, name;
  bool ok = false;
  std::string message;  // witness on failure, summary on success
};

struct ParseOutcome {
  Workspace ws;
  std::vector<BlockResult> blocks;

  bool all_ok() const {
    for (const auto& b : blocks)
      if (!b.ok) return false;
    return true;
  }
};

namespace textdoc_detail {

inline std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string t;
  while (is >> t) {
    if (t[0] == '#') break;
    out.push_back(t);
  }
  return out;
}

[[noreturn]] inline void bad(int line, const std::string& msg) {
  fail(errc::parse_error, "line " + std::to_string(line) + ": " + msg);
}

inline long long parse_int(const std::string& t, int line) {
  try {
    size_t pos = 0;
    long long v = std::stoll(t, &pos);
    if (pos != t.size()) bad(line, "bad integer '" + t + "'");
    return v;
  } catch (const std::logic_error&) {
    bad(line, "bad integer '" + t + "'");
  }
}

/// Group literal: 0 | 1 | summands joined by '+', each Z, Z^k, or Z/d.
inline FgAbGroup parse_group(const std::string& s, int line) {
  if (s == "0" || s == "1") return FgAbGroup();
  std::vector<Int> factors;
  size_t pos = 0;
  while (pos <= s.size()) {
    size_t next = s.find('+', pos);
    std::string part = s.substr(pos, next == std::string::npos ? next : next - pos);
    if (part == "Z")
      factors.push_back(0);
    else if (part.rfind("Z^", 0) == 0) {
      long long k = parse_int(part.substr(2), line);
      if (k < 0) bad(line, "bad group literal '" + s + "'");
      for (long long i = 0; i < k; ++i) factors.push_back(0);
    } else if (part.rfind("Z/", 0) == 0) {
      long long d = parse_int(part.substr(2), line);
      if (d < 2) bad(line, "bad group literal '" + s + "'");
      factors.push_back(d);
    } else {
      bad(line, "bad group literal '" + s + "'");
    }
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return FgAbGroup(std::move(factors));
}

/// Matrix literal: [r11 r12 ; r21 r22], [] for a map with no entries.
inline Mat parse_matrix(const std::vector<std::string>& toks, size_t from, int rows,
                        int cols, int line) {
  std::string flat;
  for (size_t i = from; i < toks.size(); ++i) flat += toks[i] + " ";
  if (flat.find('[') == std::string::npos || flat.find(']') == std::string::npos)
    bad(line, "matrix literal must be bracketed");
  for (char& c : flat)
    if (c == '[' || c == ']' || c == ',') c = ' ';
  Mat m(rows, cols);
  std::istringstream is(flat);
  std::string t;
  int r = 0, c = 0;
  while (is >> t) {
    if (t == ";") {
      if (c != cols) bad(line, "matrix row has " + std::to_string(c) + " entries");
      ++r;
      c = 0;
      continue;
    }
    if (r >= rows || c >= cols) bad(line, "matrix has too many entries");
    m(r, c) = Int(t);
    ++c;
  }
  if (rows > 0 && !(r == rows - 1 && c == cols) && !(rows == 0))
    bad(line, "matrix must have " + std::to_string(rows) + " rows of " +
                  std::to_string(cols));
  return m;
}

struct RawBlock {
  std::string kind, name;
  int header_line = 0;
  std::vector<std::pair<int, std::vector<std::string>>> entries;
};

inline int name_index(const std::vector<std::string>& names, const std::string& t,
                      int line, const std::string& what) {
  for (size_t i = 0; i < names.size(); ++i)
    if (names[i] == t) return static_cast<int>(i);
  bad(line, "unknown " + what + " '" + t + "'");
}

inline const Workspace::QEntry& get_quantale(const Workspace& ws, const std::string& n,
                                             int line) {
  auto it = ws.quantales.find(n);
  if (it == ws.quantales.end()) bad(line, "unknown quantale '" + n + "'");
  return it->second;
}

inline void build_space(Workspace& ws, const RawBlock& b) {
  std::vector<std::string> points;
  std::vector<uint64_t> opens;
  for (const auto& [line, t] : b.entries) {
    if (t[0] == "points") {
      points.assign(t.begin() + 1, t.end());
    } else if (t[0] == "discrete") {
      if (t.size() != 2) bad(line, "discrete takes one argument");
      ws.spaces[b.name] = discrete_space(static_cast<int>(parse_int(t[1], line)));
      return;
    } else if (t[0] == "sierpinski") {
      ws.spaces[b.name] = sierpinski_space();
      return;
    } else if (t[0] == "pseudocircle") {
      ws.spaces[b.name] = pseudocircle();
      return;
    } else if (t[0] == "open") {
      if (t.size() != 2) bad(line, "open takes one set literal {p,q,...}");
      const std::string& s = t[1];
      if (s.front() != '{' || s.back() != '}') bad(line, "set literal must be braced");
      uint64_t mask = 0;
      std::string inner = s.substr(1, s.size() - 2);
      size_t pos = 0;
      while (pos < inner.size()) {
        size_t next = inner.find(',', pos);
        std::string p = inner.substr(pos, next == std::string::npos ? next : next - pos);
        mask |= uint64_t(1) << name_index(points, p, line, "point");
        if (next == std::string::npos) break;
        pos = next + 1;
      }
      opens.push_back(mask);
    } else {
      bad(line, "unknown space entry '" + t[0] + "'");
    }
  }
  ws.spaces[b.name] = make_space(std::move(points), std::move(opens));
}

inline void build_ring(Workspace& ws, const RawBlock& b) {
  for (const auto& [line, t] : b.entries) {
    if (t[0] == "zmod" && t.size() == 2) {
      ws.rings[b.name] = zmod_ring(static_cast<int>(parse_int(t[1], line)));
      return;
    }
    if (t[0] == "funring" && t.size() == 3) {
      ws.rings[b.name] = function_ring(static_cast<int>(parse_int(t[1], line)),
                                       static_cast<int>(parse_int(t[2], line)));
      return;
    }
    bad(line, "ring blocks take one line: zmod n | funring q k");
  }
  bad(b.header_line, "empty ring block");
}

inline void build_quantale(Workspace& ws, const RawBlock& b) {
  Workspace::QEntry e;
  std::vector<std::string> elems;
  std::vector<std::pair<int, int>> leq_pairs;
  std::map<std::pair<int, int>, int> mul_entries;
  bool mul_meet = false;
  for (const auto& [line, t] : b.entries) {
    if (t[0] == "opens_of" && t.size() == 2) {
      auto it = ws.spaces.find(t[1]);
      if (it == ws.spaces.end()) bad(line, "unknown space '" + t[1] + "'");
      e.loc = locale_of_space(it->second);
      e.q = e.loc->quantale;
      ws.quantales[b.name] = std::move(e);
      return;
    }
    if (t[0] == "ideals_of" && t.size() == 2) {
      auto it = ws.rings.find(t[1]);
      if (it == ws.rings.end()) bad(line, "unknown ring '" + t[1] + "'");
      e.ideals = ideal_quantale(it->second);
      e.q = e.ideals->quantale;
      ws.quantales[b.name] = std::move(e);
      return;
    }
    if (t[0] == "idem_of" && t.size() == 2) {
      e.sub = idem_locale(get_quantale(ws, t[1], line).q);
      e.q = e.sub->quantale;
      e.sub_parent = t[1];
      ws.quantales[b.name] = std::move(e);
      return;
    }
    if (t[0] == "product" && t.size() == 3) {
      e.prod = product_quantale(get_quantale(ws, t[1], line).q,
                                get_quantale(ws, t[2], line).q);
      e.q = e.prod->quantale;
      e.prod_left = t[1];
      e.prod_right = t[2];
      ws.quantales[b.name] = std::move(e);
      return;
    }
    if (t[0] == "elements") {
      elems.assign(t.begin() + 1, t.end());
    } else if (t[0] == "leq" && t.size() == 3) {
      int a = name_index(elems, t[1], line, "element");
      int c = name_index(elems, t[2], line, "element");
      leq_pairs.emplace_back(a, c);
    } else if (t[0] == "mul" && t.size() == 2 && t[1] == "meet") {
      mul_meet = true;
    } else if (t[0] == "mul" && t.size() == 4) {
      int a = name_index(elems, t[1], line, "element");
      int c = name_index(elems, t[2], line, "element");
      int p = name_index(elems, t[3], line, "element");
      mul_entries[{a, c}] = p;
    } else {
      bad(line, "unknown quantale entry '" + t[0] + "'");
    }
  }
  const int n = static_cast<int>(elems.size());
  if (n == 0) bad(b.header_line, "quantale block has no elements");
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) leq[i][i] = true;
  for (auto [a, c] : leq_pairs) leq[a][c] = true;
  for (int k = 0; k < n; ++k)  // transitive closure of the given edges
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (leq[i][k] && leq[k][j]) leq[i][j] = true;
  std::vector<std::vector<int>> mul(n, std::vector<int>(n, -1));
  if (mul_meet) {
    for (int a = 0; a < n; ++a)
      for (int c = 0; c < n; ++c) {
        for (int m = 0; m < n; ++m) {
          if (!leq[m][a] || !leq[m][c]) continue;
          bool greatest = true;
          for (int x = 0; x < n && greatest; ++x)
            if (leq[x][a] && leq[x][c] && !leq[x][m]) greatest = false;
          if (greatest) {
            mul[a][c] = m;
            break;
          }
        }
        if (mul[a][c] < 0)
          bad(b.header_line, "no meet of " + elems[a] + " and " + elems[c]);
      }
  }
  for (const auto& [key, p] : mul_entries) mul[key.first][key.second] = p;
  for (int a = 0; a < n; ++a)
    for (int c = 0; c < n; ++c)
      if (mul[a][c] < 0)
        bad(b.header_line, "missing mul entry " + elems[a] + " * " + elems[c]);
  e.q = validate_quantale(std::move(elems), std::move(leq), std::move(mul));
  ws.quantales[b.name] = std::move(e);
}

inline void build_presheaf_block(Workspace& ws, const RawBlock& b) {
  QPtr base;
  std::string base_name;
  std::map<int, FgAbGroup> values;
  std::map<std::pair<int, int>, std::pair<int, std::vector<std::string>>> res_raw;
  auto elem = [&](const std::string& t, int line) {
    if (!base) bad(line, "presheaf needs 'on <quantale>' first");
    for (int i = 0; i < base->n; ++i)
      if (base->labels[i] == t) return i;
    bad(line, "unknown element '" + t + "'");
  };
  for (const auto& [line, t] : b.entries) {
    if (t[0] == "on" && t.size() == 2) {
      base = get_quantale(ws, t[1], line).q;
      base_name = t[1];
    } else if (t[0] == "locally_constant" && t.size() == 2) {
      if (!base) bad(line, "presheaf needs 'on <quantale>' first");
      ws.presheaves[b.name] = locally_constant_sheaf(base, parse_group(t[1], line));
      return;
    } else if (t[0] == "constant" && t.size() == 2) {
      if (!base) bad(line, "presheaf needs 'on <quantale>' first");
      ws.presheaves[b.name] = constant_presheaf(base, parse_group(t[1], line));
      return;
    } else if (t[0] == "pullback" && t.size() == 3) {
      auto fit = ws.presheaves.find(t[1]);
      if (fit == ws.presheaves.end()) bad(line, "unknown presheaf '" + t[1] + "'");
      auto mit = ws.morphisms.find(t[2]);
      if (mit == ws.morphisms.end()) bad(line, "unknown morphism '" + t[2] + "'");
      ws.presheaves[b.name] = pullback_presheaf(fit->second, mit->second);
      return;
    } else if (t[0] == "value" && t.size() == 3) {
      values[elem(t[1], line)] = parse_group(t[2], line);
    } else if (t[0] == "res" && t.size() >= 4) {
      int a = elem(t[1], line), c = elem(t[2], line);
      res_raw[{a, c}] = {line, t};
    } else {
      bad(line, "unknown presheaf entry '" + t[0] + "'");
    }
  }
  if (!base) bad(b.header_line, "presheaf needs 'on <quantale>'");
  std::vector<FgAbGroup> vals(base->n);
  for (int i = 0; i < base->n; ++i) {
    auto it = values.find(i);
    if (it == values.end())
      bad(b.header_line, "missing value at element " + base->labels[i]);
    vals[i] = it->second;
  }
  std::map<std::pair<int, int>, GroupHom> edges;
  for (const auto& [key, raw] : res_raw) {
    auto [a, c] = key;
    const auto& [line, t] = raw;
    Mat m = parse_matrix(t, 3, vals[a].gens(), vals[c].gens(), line);
    edges.emplace(key, GroupHom(vals[c], vals[a], std::move(m)));
  }
  ws.presheaves[b.name] = build_presheaf(base, std::move(vals), edges);
}

inline void build_morphism(Workspace& ws, const RawBlock& b) {
  std::string from, to;
  std::map<int, int> table;
  const Workspace::QEntry* src = nullptr;
  const Workspace::QEntry* tgt = nullptr;
  for (const auto& [line, t] : b.entries) {
    if (t[0] == "from" && t.size() == 4 && t[2] == "to") {
      from = t[1];
      to = t[3];
      src = &get_quantale(ws, from, line);
      tgt = &get_quantale(ws, to, line);
    } else if (!src || !tgt) {
      bad(line, "morphism needs 'from A to B' first");
    } else if (t[0] == "tau" && t.size() == 1) {
      if (!src->ideals || !tgt->loc)
        bad(line, "tau needs an ideals_of source and an opens_of target");
      ws.morphisms.emplace(b.name, tau_map(*src->ideals, *tgt->loc));
      return;
    } else if (t[0] == "theta" && t.size() == 1) {
      if (!src->loc || !tgt->ideals)
        bad(line, "theta needs an opens_of source and an ideals_of target");
      ws.morphisms.emplace(b.name, theta_map(*src->loc, *tgt->ideals));
      return;
    } else if (t[0] == "idem_approx" && t.size() == 1) {
      if (!tgt->sub || tgt->sub_parent != from)
        bad(line, "idem_approx needs an idem_of target built from the source");
      std::vector<int> tab(src->q->n);
      for (int x = 0; x < src->q->n; ++x) {
        int a = idem_approx(*src->q, x);
        for (int i = 0; i < tgt->q->n; ++i)
          if (tgt->sub->parent_index[i] == a) tab[x] = i;
      }
      ws.morphisms.emplace(b.name, MonotoneMap(src->q, tgt->q, std::move(tab)));
      return;
    } else if (t[0] == "inclusion" && t.size() == 1) {
      if (!src->sub || src->sub_parent != to)
        bad(line, "inclusion needs an idem_of source built from the target");
      ws.morphisms.emplace(b.name, src->sub->inclusion);
      return;
    } else if ((t[0] == "proj1" || t[0] == "proj2") && t.size() == 1) {
      if (!src->prod || (t[0] == "proj1" ? src->prod_left : src->prod_right) != to)
        bad(line, t[0] + " needs a product source with the target as that factor");
      ws.morphisms.emplace(b.name, t[0] == "proj1" ? src->prod->proj1 : src->prod->proj2);
      return;
    } else if (t[0] == "map" && t.size() == 3) {
      int a = -1, c = -1;
      for (int i = 0; i < src->q->n; ++i)
        if (src->q->labels[i] == t[1]) a = i;
      for (int i = 0; i < tgt->q->n; ++i)
        if (tgt->q->labels[i] == t[2]) c = i;
      if (a < 0) bad(line, "unknown source element '" + t[1] + "'");
      if (c < 0) bad(line, "unknown target element '" + t[2] + "'");
      table[a] = c;
    } else {
      bad(line, "unknown morphism entry '" + t[0] + "'");
    }
  }
  if (!src || !tgt) bad(b.header_line, "morphism needs 'from A to B'");
  std::vector<int> tab(src->q->n, -1);
  for (auto [a, c] : table) tab[a] = c;
  for (int i = 0; i < src->q->n; ++i)
    if (tab[i] < 0)
      bad(b.header_line, "missing map entry for " + src->q->labels[i]);
  ws.morphisms.emplace(b.name, MonotoneMap(src->q, tgt->q, std::move(tab)));
}

inline std::string summarize(const Workspace& ws, const std::string& kind,
                             const std::string& name) {
  std::ostringstream os;
  if (kind == "space") {
    const auto& x = ws.spaces.at(name);
    os << x.points() << " points, " << x.opens.size() << " opens";
  } else if (kind == "ring") {
    os << ws.rings.at(name)->n << " elements";
  } else if (kind == "quantale") {
    const Quantale& q = *ws.quantales.at(name).q;
    os << q.n << " elements";
    if (q.flags.locale) os << ", locale";
    else {
      if (q.flags.semicartesian) os << ", semicartesian";
      if (q.flags.commutative) os << ", commutative";
      if (q.flags.unital) os << ", unital";
    }
    if (q.flags.geometric) os << ", geometric";
  } else if (kind == "presheaf") {
    const AbPresheaf& f = ws.presheaves.at(name);
    os << "on " << f.base->n << "-element base, value at top "
       << f.value(f.base->top).to_string();
  } else if (kind == "morphism") {
    const MonotoneMap& m = ws.morphisms.at(name);
    os << m.source->n << " -> " << m.target->n << " elements";
  }
  return os.str();
}

}  // namespace textdoc_detail

/// Parse a document, validating each block; failed blocks are reported and
/// skipped so later independent blocks still load.
inline ParseOutcome parse_document(const std::string& text) {
  using namespace textdoc_detail;
  ParseOutcome out;
  std::vector<RawBlock> blocks;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::vector<std::string> toks = tokenize(line);
    if (toks.empty()) continue;
    if (toks[0].front() == '[') {
      std::string joined;
      for (const auto& t : toks) joined += (joined.empty() ? "" : " ") + t;
      if (joined.back() != ']') bad(lineno, "unterminated block header");
      std::istringstream hs(joined.substr(1, joined.size() - 2));
      RawBlock b;
      b.header_line = lineno;
      if (!(hs >> b.kind >> b.name) || !(hs >> std::ws).eof())
        bad(lineno, "block header must be [kind name]");
      if (b.kind != "quantale" && b.kind != "space" && b.kind != "ring" &&
          b.kind != "presheaf" && b.kind != "morphism")
        bad(lineno, "unknown block kind '" + b.kind + "'");
      blocks.push_back(std::move(b));
    } else {
      if (blocks.empty()) bad(lineno, "entry before any block header");
      blocks.back().entries.emplace_back(lineno, std::move(toks));
    }
  }
  for (const RawBlock& b : blocks) {
    BlockResult r;
    r.kind = b.kind;
    r.name = b.name;
    try {
      if (b.kind == "space") build_space(out.ws, b);
      else if (b.kind == "ring") build_ring(out.ws, b);
      else if (b.kind == "quantale") build_quantale(out.ws, b);
      else if (b.kind == "presheaf") build_presheaf_block(out.ws, b);
      else build_morphism(out.ws, b);
      r.ok = true;
      r.message = summarize(out.ws, b.kind, b.name);
    } catch (const error& e) {
      r.ok = false;
      r.message = e.what();
      if (e.kind() == errc::size_cap_exceeded) throw;
    }
    out.blocks.push_back(std::move(r));
  }
  return out;
}

/// Strict load: throws on the first invalid block.
inline Workspace load_document(const std::string& text) {
  ParseOutcome out = parse_document(text);
  for (const auto& b : out.blocks)
    if (!b.ok)
      fail(errc::validation_error, b.kind + " " + b.name + ": " + b.message);
  return std::move(out.ws);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::parse_error, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace qcech
