#include "cohnpath/cylinder.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "cohnpath/errors.hpp"

namespace cohnpath {

namespace {

void require_graphs(const GraphPtr& a, const GraphPtr& b) {
  if (a == b) return;
  if (!a || !b || !(*a == *b)) throw GraphMismatch("operands live over different graphs");
}

}  // namespace

FreeWord::FreeWord(std::vector<Letter> letters) {
  for (auto& l : letters) {
    if (!letters_.empty() && letters_.back().edge == l.edge &&
        letters_.back().inverse != l.inverse) {
      letters_.pop_back();
    } else {
      letters_.push_back(std::move(l));
    }
  }
}

FreeWord FreeWord::from_path(const Path& a) {
  std::vector<Letter> ls;
  for (const auto& e : a.edges) ls.push_back({e, false});
  return FreeWord(std::move(ls));
}

FreeWord FreeWord::from_paths(const Path& a, const Path& b) {
  std::vector<Letter> ls;
  for (const auto& e : a.edges) ls.push_back({e, false});
  for (auto it = b.edges.rbegin(); it != b.edges.rend(); ++it) ls.push_back({*it, true});
  return FreeWord(std::move(ls));
}

long FreeWord::degree() const {
  long d = 0;
  for (const auto& l : letters_) d += l.inverse ? -1 : 1;
  return d;
}

FreeWord FreeWord::inverse() const {
  std::vector<Letter> ls;
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
    ls.push_back({it->edge, !it->inverse});
  return FreeWord(std::move(ls));
}

FreeWord operator*(const FreeWord& a, const FreeWord& b) {
  std::vector<Letter> ls = a.letters_;
  ls.insert(ls.end(), b.letters_.begin(), b.letters_.end());
  return FreeWord(std::move(ls));
}

std::string print_word(const FreeWord& w) {
  if (w.is_identity()) return "0";
  std::string out;
  bool first = true;
  for (const auto& l : w.letters()) {
    if (!first) out += '.';
    out += l.edge;
    if (l.inverse) out += "^-1";
    first = false;
  }
  return out;
}

FreeWord parse_word(const std::string& text) {
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto id_char = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  };
  skip_ws();
  if (i < text.size() && text[i] == '0') {
    ++i;
    skip_ws();
    if (i != text.size()) throw ParseError("trailing input after identity word");
    return FreeWord();
  }
  std::vector<Letter> ls;
  while (true) {
    skip_ws();
    std::size_t start = i;
    while (i < text.size() && id_char(text[i])) ++i;
    if (i == start) throw ParseError("expected an edge id in word");
    Letter l{text.substr(start, i - start), false};
    if (i + 2 < text.size() && text[i] == '^' && text[i + 1] == '-' && text[i + 2] == '1') {
      l.inverse = true;
      i += 3;
    }
    ls.push_back(std::move(l));
    skip_ws();
    if (i < text.size() && text[i] == '.') {
      ++i;
      continue;
    }
    break;
  }
  if (i != text.size()) throw ParseError("trailing input after word");
  return FreeWord(std::move(ls));
}

std::optional<std::pair<Path, Path>> word_paths(const Graph& g, const FreeWord& w) {
  if (w.is_identity()) return std::nullopt;
  const auto& ls = w.letters();
  std::size_t i = 0;
  std::vector<std::string> pos;
  while (i < ls.size() && !ls[i].inverse) pos.push_back(ls[i++].edge);
  std::vector<std::string> inv;
  while (i < ls.size() && ls[i].inverse) inv.push_back(ls[i++].edge);
  if (i != ls.size()) return std::nullopt;  // a positive letter after an inverse

  auto build = [&g](const std::vector<std::string>& edges) -> std::optional<Path> {
    Path p;
    for (const auto& e : edges) {
      if (!g.has_edge(e)) throw UnknownId("unknown edge " + e + " in word");
      if (p.edges.empty()) {
        p.base = g.edge(e).src;
      } else if (g.edge(p.edges.back()).rng != g.edge(e).src) {
        return std::nullopt;
      }
      p.edges.push_back(e);
    }
    return p;
  };
  auto a = build(pos);
  std::vector<std::string> rev(inv.rbegin(), inv.rend());
  auto b = build(rev);
  if (!a || !b) return std::nullopt;
  if (a->edges.empty()) a->base = path_rng(g, *b);
  if (b->edges.empty()) b->base = path_rng(g, *a);
  if (path_rng(g, *a) != path_rng(g, *b)) return std::nullopt;
  return std::make_pair(*a, *b);
}

int cylinder_compare(const GenCylinder& a, const GenCylinder& b) {
  if (int c = path_compare(a.prefix, b.prefix)) return c;
  if (a.excluded < b.excluded) return -1;
  if (b.excluded < a.excluded) return 1;
  return 0;
}

bool cylinder_empty(const Graph& g, const GenCylinder& c) {
  const std::string v = path_rng(g, c.prefix);
  if (g.is_sink(v) || g.in_y(v)) return false;  // the prefix itself is a member
  for (const auto& e : g.out_edges(v))
    if (!c.excluded.count(e)) return false;  // a cylinder with no exclusions is never empty
  return true;
}

std::optional<GenCylinder> cylinder_intersect(const Graph& g, const GenCylinder& a,
                                              const GenCylinder& b) {
  const GenCylinder* lo = &a;
  const GenCylinder* hi = &b;
  if (lo->prefix.length() > hi->prefix.length()) std::swap(lo, hi);
  if (!is_prefix(lo->prefix, hi->prefix)) return std::nullopt;
  GenCylinder out;
  if (lo->prefix.length() == hi->prefix.length()) {
    out.prefix = lo->prefix;
    out.excluded = lo->excluded;
    out.excluded.insert(hi->excluded.begin(), hi->excluded.end());
  } else {
    if (lo->excluded.count(hi->prefix.edges[lo->prefix.length()])) return std::nullopt;
    out = *hi;
  }
  if (cylinder_empty(g, out)) return std::nullopt;
  return out;
}

std::vector<GenCylinder> cylinder_subtract(const Graph& g, const GenCylinder& a,
                                           const GenCylinder& b) {
  if (cylinder_empty(g, a)) return {};
  auto common = cylinder_intersect(g, a, b);
  if (!common) return {a};
  if (*common == a) return {};
  std::vector<GenCylinder> out;
  const std::string v = path_rng(g, a.prefix);
  if (common->prefix.length() == a.prefix.length()) {
    // Same prefix, strictly larger exclusion: peel the newly excluded fans.
    for (const auto& e : g.out_edges(v))
      if (!a.excluded.count(e) && common->excluded.count(e))
        out.push_back({append_edge(g, a.prefix, e), {}});
  } else {
    // b refines a along one edge: keep the base point, the untouched fans,
    // and recurse into the shared fan.
    const std::string& step = common->prefix.edges[a.prefix.length()];
    GenCylinder point{a.prefix, {}};
    point.excluded.insert(g.out_edges(v).begin(), g.out_edges(v).end());
    if (!cylinder_empty(g, point)) out.push_back(point);
    for (const auto& e : g.out_edges(v)) {
      if (a.excluded.count(e) || e == step) continue;
      out.push_back({append_edge(g, a.prefix, e), {}});
    }
    auto rest = cylinder_subtract(g, {append_edge(g, a.prefix, step), {}}, b);
    out.insert(out.end(), rest.begin(), rest.end());
  }
  return out;
}

namespace {

/// Adds a piece to a disjoint family, keeping only what is new.
void insert_disjoint(const Graph& g, std::vector<GenCylinder>& pieces, const GenCylinder& c) {
  std::vector<GenCylinder> work{c};
  for (const auto& have : pieces) {
    std::vector<GenCylinder> next;
    for (const auto& w : work) {
      auto rest = cylinder_subtract(g, w, have);
      next.insert(next.end(), rest.begin(), rest.end());
    }
    work = std::move(next);
    if (work.empty()) break;
  }
  pieces.insert(pieces.end(), work.begin(), work.end());
}

/// Coarsening moves on a disjoint family of valued pieces:
///  (R1) (p, F) and (p.e, {}) with e in F and equal values merge to (p, F\{e});
///  (R2) a full fan (p.e, {}) over every out-edge of a regular X-vertex with a
///       common value merges to (p, {}) -- the fan's base point is not a
///       boundary path, so the union is exact.
/// Every move shrinks (piece count, total prefix length) lexicographically.
void coarsen(const Graph& g, std::vector<std::pair<GenCylinder, Rational>>& pieces) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < pieces.size() && !changed; ++i) {
      const GenCylinder& child = pieces[i].first;
      if (!child.excluded.empty() || child.prefix.length() == 0) continue;
      Path parent = child.prefix;
      const std::string last = parent.edges.back();
      parent.edges.pop_back();
      // (R1): pull the child back into an explicit parent piece.
      for (std::size_t j = 0; j < pieces.size() && !changed; ++j) {
        if (j == i) continue;
        auto& [other, val] = pieces[j];
        if (other.prefix == parent && other.excluded.count(last) &&
            val == pieces[i].second) {
          other.excluded.erase(last);
          pieces.erase(pieces.begin() + static_cast<std::ptrdiff_t>(i));
          changed = true;
        }
      }
      if (changed) break;
      // (R2): assemble a parent from a complete sibling fan.
      const std::string v = g.edge(last).src;
      if (!g.is_regular(v) || !g.in_x(v)) continue;
      std::vector<std::size_t> fan;
      for (const auto& e : g.out_edges(v)) {
        bool found = false;
        for (std::size_t j = 0; j < pieces.size(); ++j) {
          if (pieces[j].first.excluded.empty() && pieces[j].second == pieces[i].second &&
              pieces[j].first.prefix.edges.size() == child.prefix.edges.size() &&
              is_prefix(parent, pieces[j].first.prefix) &&
              pieces[j].first.prefix.edges.back() == e) {
            fan.push_back(j);
            found = true;
            break;
          }
        }
        if (!found) break;
      }
      if (fan.size() != g.out_edges(v).size()) continue;
      Rational val = pieces[i].second;
      std::sort(fan.rbegin(), fan.rend());
      for (std::size_t j : fan) pieces.erase(pieces.begin() + static_cast<std::ptrdiff_t>(j));
      pieces.emplace_back(GenCylinder{parent, {}}, val);
      changed = true;
    }
  }
}

void sort_pieces(std::vector<std::pair<GenCylinder, Rational>>& pieces) {
  std::sort(pieces.begin(), pieces.end(), [](const auto& a, const auto& b) {
    return cylinder_compare(a.first, b.first) < 0;
  });
}

/// Folds (c, k) into a disjoint valued family, refining both sides so the
/// result stays disjoint and overlap values add exactly.
void accumulate(const Graph& g, std::vector<std::pair<GenCylinder, Rational>>& pieces,
                const GenCylinder& c, const Rational& k) {
  if (k.sign() == 0 || cylinder_empty(g, c)) return;
  std::vector<std::pair<GenCylinder, Rational>> result;
  std::vector<GenCylinder> rest{c};
  for (const auto& [have, val] : pieces) {
    auto over = cylinder_intersect(g, have, c);
    if (!over) {
      result.emplace_back(have, val);
      continue;
    }
    Rational merged = val + k;
    if (merged.sign() != 0) result.emplace_back(*over, merged);
    for (auto& left : cylinder_subtract(g, have, c)) result.emplace_back(std::move(left), val);
    std::vector<GenCylinder> next;
    for (const auto& w : rest)
      for (auto& piece : cylinder_subtract(g, w, have)) next.push_back(std::move(piece));
    rest = std::move(next);
  }
  for (auto& w : rest) result.emplace_back(std::move(w), k);
  pieces = std::move(result);
}

}  // namespace

CylinderSet::CylinderSet(GraphPtr g, std::vector<GenCylinder> raw) : graph_(std::move(g)) {
  std::vector<GenCylinder> acc;
  for (auto& c : raw) {
    if (cylinder_empty(*graph_, c)) continue;
    insert_disjoint(*graph_, acc, c);
  }
  std::vector<std::pair<GenCylinder, Rational>> tagged;
  tagged.reserve(acc.size());
  for (auto& c : acc) tagged.emplace_back(std::move(c), Rational(1));
  coarsen(*graph_, tagged);
  sort_pieces(tagged);
  pieces_.reserve(tagged.size());
  for (auto& ck : tagged) pieces_.push_back(std::move(ck.first));
}

CylinderSet cylinder_set(GraphPtr g, GenCylinder c) {
  return CylinderSet(std::move(g), {std::move(c)});
}

CylinderSet full_space(GraphPtr g) {
  std::vector<GenCylinder> raw;
  for (const auto& v : g->vertices()) raw.push_back({trivial_path(*g, v), {}});
  return CylinderSet(std::move(g), std::move(raw));
}

CylinderSet intersect(const CylinderSet& a, const CylinderSet& b) {
  require_graphs(a.graph(), b.graph());
  std::vector<GenCylinder> raw;
  for (const auto& pa : a.pieces())
    for (const auto& pb : b.pieces())
      if (auto c = cylinder_intersect(*a.graph(), pa, pb)) raw.push_back(*c);
  return CylinderSet(a.graph(), std::move(raw));
}

CylinderSet unite(const CylinderSet& a, const CylinderSet& b) {
  require_graphs(a.graph(), b.graph());
  std::vector<GenCylinder> raw = a.pieces();
  raw.insert(raw.end(), b.pieces().begin(), b.pieces().end());
  return CylinderSet(a.graph(), std::move(raw));
}

CylinderSet subtract(const CylinderSet& a, const CylinderSet& b) {
  require_graphs(a.graph(), b.graph());
  std::vector<GenCylinder> raw;
  for (const auto& pa : a.pieces()) {
    std::vector<GenCylinder> work{pa};
    for (const auto& pb : b.pieces()) {
      std::vector<GenCylinder> next;
      for (const auto& w : work) {
        auto rest = cylinder_subtract(*a.graph(), w, pb);
        next.insert(next.end(), rest.begin(), rest.end());
      }
      work = std::move(next);
      if (work.empty()) break;
    }
    raw.insert(raw.end(), work.begin(), work.end());
  }
  return CylinderSet(a.graph(), std::move(raw));
}

bool set_equal(const CylinderSet& a, const CylinderSet& b) {
  return subtract(a, b).empty() && subtract(b, a).empty();
}

namespace {

bool piece_contains(const GenCylinder& c, const BoundaryPoint& p) {
  if (!p.truncated) {
    if (!is_prefix(c.prefix, p.path)) return false;
    if (c.prefix.length() == p.path.length()) return true;
    return !c.excluded.count(p.path.edges[c.prefix.length()]);
  }
  if (is_prefix(c.prefix, p.path)) {
    if (c.prefix.length() < p.path.length())
      return !c.excluded.count(p.path.edges[c.prefix.length()]);
    if (c.excluded.empty()) return true;  // every extension of the stub stays in
    throw Error("truncated point too short to decide cylinder membership");
  }
  if (is_prefix(p.path, c.prefix))
    throw Error("truncated point too short to decide cylinder membership");
  return false;
}

void require_point(const Graph& g, const BoundaryPoint& p) {
  const std::string v = path_rng(g, p.path);
  if (!p.truncated && !g.is_sink(v) && !g.in_y(v))
    throw Error("finite test point must be a boundary path (range a sink or in Y)");
}

}  // namespace

bool contains(const CylinderSet& a, const BoundaryPoint& p) {
  require_point(*a.graph(), p);
  for (const auto& c : a.pieces())
    if (piece_contains(c, p)) return true;
  return false;
}

std::vector<BoundaryPoint> boundary_profiles(const Graph& g, std::size_t depth) {
  std::vector<BoundaryPoint> out;
  for (const auto& p : paths_up_to(g, depth)) {
    const std::string v = path_rng(g, p);
    if (p.length() < depth && (g.is_sink(v) || g.in_y(v))) out.push_back({p, false});
    if (p.length() == depth) out.push_back({p, true});
  }
  return out;
}

CylinderSet u_vertex(const GraphPtr& g, const std::string& v) {
  return cylinder_set(g, {trivial_path(*g, v), {}});
}

CylinderSet u_set(const GraphPtr& g, const FreeWord& t) {
  if (t.is_identity()) return full_space(g);
  auto ab = word_paths(*g, t);
  if (!ab) return CylinderSet(g);
  return cylinder_set(g, {ab->first, {}});
}

namespace {

/// Shared prefix surgery for act and alpha: clip a piece inside Z(b), then
/// graft its tail onto a.  Pre: the piece is contained in Z(b).
std::optional<GenCylinder> regraft(const Graph& g, const GenCylinder& piece, const Path& a,
                                   const Path& b) {
  GenCylinder clipped = piece;
  if (piece.prefix.length() < b.length()) {
    auto i = cylinder_intersect(g, piece, {b, {}});
    if (!i) return std::nullopt;
    clipped = *i;
  }
  Path tail = suffix_after(g, b, clipped.prefix);
  return GenCylinder{concat(g, a, tail), std::move(clipped.excluded)};
}

}  // namespace

CylinderSet act(const FreeWord& t, const CylinderSet& a) {
  const GraphPtr& g = a.graph();
  if (t.is_identity()) return a;
  auto ab = word_paths(*g, t);
  if (!ab) {
    if (!a.empty()) throw DomainViolation("set lies outside the domain of the word");
    return a;
  }
  if (!subtract(a, u_set(g, t.inverse())).empty())
    throw DomainViolation("set lies outside the domain of the word");
  std::vector<GenCylinder> raw;
  for (const auto& piece : a.pieces())
    if (auto moved = regraft(*g, piece, ab->first, ab->second)) raw.push_back(*moved);
  return CylinderSet(g, std::move(raw));
}

DFunction::DFunction(GraphPtr g, std::vector<std::pair<GenCylinder, Rational>> raw)
    : graph_(std::move(g)) {
  for (auto& [c, k] : raw) accumulate(*graph_, pieces_, c, k);
  coarsen(*graph_, pieces_);
  sort_pieces(pieces_);
}

DFunction indicator(const CylinderSet& a) {
  std::vector<std::pair<GenCylinder, Rational>> raw;
  for (const auto& c : a.pieces()) raw.emplace_back(c, Rational(1));
  return DFunction(a.graph(), std::move(raw));
}

DFunction d_add(const DFunction& f, const DFunction& g) {
  require_graphs(f.graph(), g.graph());
  std::vector<std::pair<GenCylinder, Rational>> raw = f.pieces();
  raw.insert(raw.end(), g.pieces().begin(), g.pieces().end());
  return DFunction(f.graph(), std::move(raw));
}

DFunction d_scale(const Rational& k, const DFunction& f) {
  std::vector<std::pair<GenCylinder, Rational>> raw;
  for (const auto& [c, v] : f.pieces()) raw.emplace_back(c, k * v);
  return DFunction(f.graph(), std::move(raw));
}

DFunction d_sub(const DFunction& f, const DFunction& g) {
  return d_add(f, d_scale(Rational(-1), g));
}

DFunction d_mul(const DFunction& f, const DFunction& g) {
  require_graphs(f.graph(), g.graph());
  std::vector<std::pair<GenCylinder, Rational>> raw;
  for (const auto& [cf, vf] : f.pieces())
    for (const auto& [cg, vg] : g.pieces())
      if (auto c = cylinder_intersect(*f.graph(), cf, cg)) raw.emplace_back(*c, vf * vg);
  return DFunction(f.graph(), std::move(raw));
}

DFunction d_restrict(const DFunction& f, const CylinderSet& a) {
  require_graphs(f.graph(), a.graph());
  return d_mul(f, indicator(a));
}

bool d_equal(const DFunction& f, const DFunction& g) { return d_sub(f, g).is_zero(); }

Rational d_value(const DFunction& f, const BoundaryPoint& p) {
  require_point(*f.graph(), p);
  Rational total(0);
  for (const auto& [c, v] : f.pieces())
    if (piece_contains(c, p)) total += v;
  return total;
}

DFunction alpha(const FreeWord& t, const DFunction& f) {
  const GraphPtr& g = f.graph();
  if (t.is_identity()) return f;
  auto ab = word_paths(*g, t);
  if (!ab) {
    if (!f.is_zero()) throw DomainViolation("function supported outside the domain of the word");
    return f;
  }
  if (!d_equal(f, d_restrict(f, u_set(g, t.inverse()))))
    throw DomainViolation("function supported outside the domain of the word");
  std::vector<std::pair<GenCylinder, Rational>> raw;
  for (const auto& [piece, v] : f.pieces())
    if (auto moved = regraft(*g, piece, ab->first, ab->second)) raw.emplace_back(*moved, v);
  return DFunction(g, std::move(raw));
}

std::string print_cylinder(const GenCylinder& c) {
  std::string out = "Z(" + path_str(c.prefix);
  if (!c.excluded.empty()) {
    out += " \\ {";
    bool first = true;
    for (const auto& e : c.excluded) {
      if (!first) out += ",";
      out += e;
      first = false;
    }
    out += "}";
  }
  return out + ")";
}

std::string print_cylinder_set(const CylinderSet& a) {
  if (a.empty()) return "{}";
  std::string out;
  bool first = true;
  for (const auto& c : a.pieces()) {
    if (!first) out += " u ";
    out += print_cylinder(c);
    first = false;
  }
  return out;
}

std::string print_dfunction(const DFunction& f) {
  if (f.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [c, k] : f.pieces()) {
    Rational mag = k;
    if (k.sign() < 0) {
      out << (first ? "-" : " - ");
      mag = -k;
    } else if (!first) {
      out << " + ";
    }
    first = false;
    if (!(mag == Rational(1))) out << mag.str() << " * ";
    out << "1[" << print_cylinder(c) << "]";
  }
  return out.str();
}

namespace {

/// Minimal character scanner shared by the cylinder-layer parsers.
struct Scan {
  std::string text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  bool eat(char c) {
    if (peek() != c) return false;
    ++pos;
    return true;
  }
  void expect(char c, const char* what) {
    if (!eat(c)) throw ParseError(std::string("expected '") + c + "' in " + what);
  }
  bool eat_word(const char* w) {
    skip_ws();
    std::size_t n = std::string(w).size();
    if (text.compare(pos, n, w) != 0) return false;
    pos += n;
    return true;
  }
  static bool id_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  }
  std::string ident(const char* what) {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && id_char(text[pos])) ++pos;
    if (pos == start) throw ParseError(std::string("expected an id in ") + what);
    return text.substr(start, pos - start);
  }
  bool done() {
    skip_ws();
    return pos >= text.size();
  }
};

GenCylinder scan_cylinder(const GraphPtr& g, Scan& s) {
  if (!s.eat_word("Z")) throw ParseError("expected 'Z(' in cylinder");
  s.expect('(', "cylinder");
  std::vector<std::string> parts{s.ident("cylinder prefix")};
  while (s.eat('.')) parts.push_back(s.ident("cylinder prefix"));
  GenCylinder c;
  if (parts.size() == 1 && g->has_vertex(parts[0])) {
    c.prefix = trivial_path(*g, parts[0]);
  } else {
    for (const auto& e : parts) {
      if (!g->has_edge(e)) throw UnknownId("unknown edge " + e + " in cylinder prefix");
      if (c.prefix.edges.empty())
        c.prefix = edge_path(*g, e);
      else
        c.prefix = append_edge(*g, c.prefix, e);
    }
  }
  if (s.eat('\\')) {
    s.expect('{', "cylinder exclusion");
    const std::string v = path_rng(*g, c.prefix);
    const auto& out = g->out_edges(v);
    while (true) {
      std::string e = s.ident("cylinder exclusion");
      if (std::find(out.begin(), out.end(), e) == out.end())
        throw ParseError("excluded edge " + e + " does not start at " + v);
      c.excluded.insert(std::move(e));
      if (!s.eat(',')) break;
    }
    s.expect('}', "cylinder exclusion");
  }
  s.expect(')', "cylinder");
  return c;
}

/// A coefficient is digits (or n/d) followed by '*'; a bare "1[" is the
/// indicator itself, so without the star the scan rewinds.
Rational scan_coefficient(Scan& s) {
  s.skip_ws();
  std::size_t save = s.pos;
  while (s.pos < s.text.size() &&
         (std::isdigit(static_cast<unsigned char>(s.text[s.pos])) || s.text[s.pos] == '/'))
    ++s.pos;
  if (s.pos == save) return Rational(1);
  std::string digits = s.text.substr(save, s.pos - save);
  if (!s.eat('*')) {
    s.pos = save;
    return Rational(1);
  }
  return Rational::parse(digits);
}

}  // namespace

GenCylinder parse_cylinder(const GraphPtr& g, const std::string& text) {
  Scan s{text};
  GenCylinder c = scan_cylinder(g, s);
  if (!s.done()) throw ParseError("trailing input after cylinder");
  return c;
}

CylinderSet parse_cylinder_set(const GraphPtr& g, const std::string& text) {
  Scan s{text};
  if (s.eat('{')) {
    s.expect('}', "empty cylinder set");
    if (!s.done()) throw ParseError("trailing input after cylinder set");
    return CylinderSet(g);
  }
  std::vector<GenCylinder> raw{scan_cylinder(g, s)};
  while (s.eat_word("u")) raw.push_back(scan_cylinder(g, s));
  if (!s.done()) throw ParseError("trailing input after cylinder set");
  return CylinderSet(g, std::move(raw));
}

DFunction parse_dfunction(const GraphPtr& g, const std::string& text) {
  Scan s{text};
  if (s.peek() == '0') {
    ++s.pos;
    if (!s.done()) throw ParseError("trailing input after zero function");
    return DFunction(g);
  }
  std::vector<std::pair<GenCylinder, Rational>> raw;
  bool negative = s.eat('-');
  while (true) {
    Rational k = scan_coefficient(s);
    if (negative) k = -k;
    if (!s.eat('1')) throw ParseError("expected an indicator '1[...]' in function");
    s.expect('[', "indicator");
    raw.emplace_back(scan_cylinder(g, s), k);
    s.expect(']', "indicator");
    if (s.eat('+'))
      negative = false;
    else if (s.eat('-'))
      negative = true;
    else
      break;
  }
  if (!s.done()) throw ParseError("trailing input after function");
  return DFunction(g, std::move(raw));
}

}  // namespace cohnpath
