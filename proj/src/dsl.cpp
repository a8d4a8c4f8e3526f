#include "cohnpath/dsl.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace cohnpath {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

}  // namespace

Graph parse_graph(std::istream& in) {
  std::vector<std::string> vertices;
  std::vector<Edge> edges;
  std::vector<std::string> x;
  std::set<std::string> seen_vertices, seen_edges, seen_x;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto tok = split_ws(line);
    if (tok.empty()) continue;
    const std::string where = " (line " + std::to_string(lineno) + ")";
    if (tok[0] == "vertex") {
      if (tok.size() != 2) throw ParseError("vertex record needs one id" + where);
      if (!seen_vertices.insert(tok[1]).second)
        throw ParseError("duplicate vertex id " + tok[1] + where);
      vertices.push_back(tok[1]);
    } else if (tok[0] == "edge") {
      if (tok.size() != 4) throw ParseError("edge record needs id, source, range" + where);
      if (!seen_edges.insert(tok[1]).second)
        throw ParseError("duplicate edge id " + tok[1] + where);
      edges.push_back(Edge{tok[1], tok[2], tok[3]});
    } else if (tok[0] == "X") {
      if (tok.size() != 2) throw ParseError("X record needs one id" + where);
      if (!seen_x.insert(tok[1]).second) throw ParseError("duplicate X record " + tok[1] + where);
      x.push_back(tok[1]);
    } else {
      throw ParseError("unknown record '" + tok[0] + "'" + where);
    }
  }
  return Graph(vertices, edges, x);  // cross-reference checks happen here
}

Graph parse_graph_string(const std::string& text) {
  std::istringstream ss(text);
  return parse_graph(ss);
}

Graph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open graph file " + path);
  return parse_graph(in);
}

std::string print_graph(const Graph& g) {
  std::ostringstream out;
  for (const auto& v : g.vertices()) out << "vertex " << v << "\n";
  for (const auto& e : g.edges()) out << "edge " << e.id << " " << e.src << " " << e.rng << "\n";
  for (const auto& v : g.x()) out << "X " << v << "\n";
  return out.str();
}

namespace {

/// Tokenizer for element expressions.
struct Lexer {
  std::string text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= text.size();
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
  static bool id_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  }
  std::string ident() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && id_char(text[pos])) ++pos;
    if (start == pos)
      throw ParseError("expected identifier at position " + std::to_string(pos) + " in: " + text);
    return text.substr(start, pos - start);
  }
  [[noreturn]] void fail(const std::string& what) {
    throw ParseError(what + " at position " + std::to_string(pos) + " in: " + text);
  }
};

bool looks_numeric(const std::string& tok) {
  return !tok.empty() && std::isdigit(static_cast<unsigned char>(tok[0]));
}

/// One multiplicative term: factors joined by '*' or '.'.
AlgebraElement parse_term(const GraphPtr& g, Lexer& lx) {
  Rational coeff(1);
  std::optional<AlgebraElement> acc;
  bool expect_factor = true;
  while (expect_factor) {
    bool parenthesized = lx.eat('(');
    std::string tok = lx.ident();
    if (parenthesized && !lx.eat(')')) lx.fail("expected ')'");
    bool ghost = lx.eat('^');
    if (!parenthesized && looks_numeric(tok)) {
      if (ghost) lx.fail("'^' after a number");
      std::string lit = tok;
      if (lx.eat('/')) lit += "/" + lx.ident();
      coeff *= Rational::parse(lit);
    } else {
      AlgebraElement gen = generator(g, tok, ghost);
      acc = acc ? multiply(*acc, gen) : gen;
    }
    expect_factor = lx.eat('*') || lx.eat('.');
  }
  if (!acc) {
    if (coeff.is_zero()) return zero_element(g);
    lx.fail("term without a generator");
  }
  return scalar_mul(coeff, *acc);
}

}  // namespace

AlgebraElement parse_element(const GraphPtr& g, const std::string& text) {
  Lexer lx{text};
  if (lx.done()) throw ParseError("empty element expression");
  AlgebraElement out = zero_element(g);
  bool negate = lx.eat('-');
  while (true) {
    AlgebraElement term = parse_term(g, lx);
    out = negate ? sub(out, term) : add(out, term);
    if (lx.done()) break;
    if (lx.eat('+'))
      negate = false;
    else if (lx.eat('-'))
      negate = true;
    else
      lx.fail("expected '+' or '-'");
  }
  return out;
}

std::string print_monomial(const Monomial& m) {
  if (m.alpha.edges.empty() && m.beta.edges.empty()) return m.alpha.base;
  std::vector<std::string> parts;
  for (const auto& e : m.alpha.edges) parts.push_back(e);
  for (auto it = m.beta.edges.rbegin(); it != m.beta.edges.rend(); ++it)
    parts.push_back("(" + *it + ")^");
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += '.';
    s += parts[i];
  }
  return s;
}

std::string print_element(const AlgebraElement& x) {
  if (x.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, k] : x.terms()) {
    Rational mag = k;
    if (k.sign() < 0) {
      out << (first ? "-" : " - ");
      mag = -k;
    } else if (!first) {
      out << " + ";
    }
    first = false;
    if (!(mag == Rational(1))) out << mag.str() << " * ";
    out << print_monomial(m);
  }
  return out.str();
}

}  // namespace cohnpath
