#include "cohnpath/skew.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "cohnpath/dsl.hpp"
#include "cohnpath/errors.hpp"
#include "cohnpath/linalg.hpp"

namespace cohnpath {

namespace {

void require_graphs(const GraphPtr& a, const GraphPtr& b) {
  if (a == b) return;
  if (!a || !b || !(*a == *b)) throw GraphMismatch("operands live over different graphs");
}

}  // namespace

SkewElement::SkewElement(GraphPtr g, std::map<FreeWord, DFunction> coeffs)
    : graph_(std::move(g)) {
  for (auto& [w, f] : coeffs) {
    require_graphs(graph_, f.graph());
    if (f.is_zero()) continue;
    if (!d_equal(f, d_restrict(f, u_set(graph_, w))))
      throw DomainViolation("coefficient of " + print_word(w) +
                            " is supported outside its domain");
    coeffs_.emplace(w, std::move(f));
  }
}

SkewElement skew_zero(GraphPtr g) { return SkewElement(std::move(g)); }

SkewElement skew_monomial(const DFunction& f, const FreeWord& t) {
  std::map<FreeWord, DFunction> coeffs;
  coeffs.emplace(t, f);
  return SkewElement(f.graph(), std::move(coeffs));
}

SkewElement skew_add(const SkewElement& x, const SkewElement& y) {
  require_graphs(x.graph(), y.graph());
  std::map<FreeWord, DFunction> coeffs = x.coeffs();
  for (const auto& [w, f] : y.coeffs()) {
    auto it = coeffs.find(w);
    if (it == coeffs.end())
      coeffs.emplace(w, f);
    else
      it->second = d_add(it->second, f);
  }
  return SkewElement(x.graph(), std::move(coeffs));
}

SkewElement skew_sub(const SkewElement& x, const SkewElement& y) {
  return skew_add(x, skew_scalar(Rational(-1), y));
}

SkewElement skew_scalar(const Rational& k, const SkewElement& x) {
  std::map<FreeWord, DFunction> coeffs;
  for (const auto& [w, f] : x.coeffs()) coeffs.emplace(w, d_scale(k, f));
  return SkewElement(x.graph(), std::move(coeffs));
}

SkewElement skew_mul(const SkewElement& x, const SkewElement& y) {
  require_graphs(x.graph(), y.graph());
  SkewElement acc = skew_zero(x.graph());
  for (const auto& [t, f] : x.coeffs()) {
    for (const auto& [s, g2] : y.coeffs()) {
      DFunction moved = alpha(t, d_mul(alpha(t.inverse(), f), g2));
      if (moved.is_zero()) continue;
      acc = skew_add(acc, skew_monomial(moved, t * s));
    }
  }
  return acc;
}

SkewElement skew_star(const SkewElement& x) {
  std::map<FreeWord, DFunction> coeffs;
  for (const auto& [t, f] : x.coeffs()) coeffs.emplace(t.inverse(), alpha(t.inverse(), f));
  return SkewElement(x.graph(), std::move(coeffs));
}

bool skew_equal(const SkewElement& x, const SkewElement& y) {
  return skew_sub(x, y).is_zero();
}

std::map<long, SkewElement> skew_degree(const SkewElement& x) {
  std::map<long, std::map<FreeWord, DFunction>> parts;
  for (const auto& [w, f] : x.coeffs()) parts[w.degree()].emplace(w, f);
  std::map<long, SkewElement> out;
  for (auto& [d, coeffs] : parts) out.emplace(d, SkewElement(x.graph(), std::move(coeffs)));
  return out;
}

std::string SkewTarget::str(const Elem& x) { return print_skew(x); }

GeneratorAssignment<SkewTarget> skew_generators(const GraphPtr& g) {
  GeneratorAssignment<SkewTarget> a{g, skew_zero(g), {}, {}, {}};
  for (const auto& v : g->vertices())
    a.vertex_image.emplace(v, skew_monomial(indicator(u_vertex(g, v)), FreeWord()));
  for (const auto& e : g->edges()) {
    Path p = edge_path(*g, e.id);
    SkewElement image =
        skew_monomial(indicator(cylinder_set(g, {p, {}})), FreeWord::from_path(p));
    a.ghost_image.emplace(e.id, skew_star(image));
    a.edge_image.emplace(e.id, std::move(image));
  }
  if (auto why = relation_violation(a))
    throw RelationViolation("skew representation breaks a defining relation: " + *why);
  return a;
}

namespace {

SkewElement diagonal_indicator(const GraphPtr& g, const Path& q) {
  return skew_monomial(indicator(cylinder_set(g, {q, {}})), FreeWord());
}

bool commute(const SkewElement& x, const SkewElement& d) {
  return skew_equal(skew_mul(x, d), skew_mul(d, x));
}

}  // namespace

std::string ProbeVerdict::text() const {
  std::ostringstream out;
  if (maximal) {
    out << "MAXIMAL up to word length " << bound << " (" << candidates.size()
        << " candidates refuted)";
    for (const auto& c : candidates)
      out << "\n  " << print_word(c.t) << " fails against 1[Z(" << c.witness << ")]";
  } else {
    std::string word = "?";
    if (cycle) {
      std::vector<Letter> ls;
      for (const auto& e : cycle->edges) ls.push_back({e, false});
      word = print_word(FreeWord(std::move(ls)));
    }
    out << "NOT MAXIMAL: the cycle word " << word << " commutes with all " << commuting_checked
        << " diagonal generators up to word length " << bound;
  }
  return out.str();
}

ProbeVerdict max_commutativity_probe(const GraphPtr& g, std::size_t word_bound) {
  ProbeVerdict out;
  out.bound = word_bound;
  const auto paths = paths_up_to(*g, word_bound);

  if (!relative_condition_L(*g)) {
    for (const auto& c : exit_free_cycles(*g)) {
      bool sources_in_x = true;
      for (const auto& e : c.edges)
        if (g->in_y(g->edge(e).src)) {
          sources_in_x = false;
          break;
        }
      if (!sources_in_x) continue;
      Path cp = cycle_path(*g, c);
      SkewElement x =
          skew_monomial(indicator(cylinder_set(g, {cp, {}})), FreeWord::from_path(cp));
      for (const auto& q : paths) {
        if (!commute(x, diagonal_indicator(g, q)))
          throw std::logic_error("probe: the exit-free cycle word fails to commute with " +
                                 path_str(q));
        ++out.commuting_checked;
      }
      out.maximal = false;
      out.cycle = c;
      return out;
    }
    throw std::logic_error("probe: relative exit condition fails without a witness cycle");
  }

  out.maximal = true;
  for (const auto& a : paths) {
    if (a.length() == 0) continue;
    for (std::size_t blen = 0; blen < a.length(); ++blen) {
      if (a.length() + blen > word_bound) continue;
      Path b{a.base, std::vector<std::string>(a.edges.begin(),
                                              a.edges.begin() + static_cast<std::ptrdiff_t>(blen))};
      if (path_rng(*g, b) != path_rng(*g, a)) continue;  // the leftover loop must close
      if (blen > 0 && a.edges.back() == b.edges.back()) continue;  // word not reduced
      // t = a.b^-1 is the image of the monomial a b*, carried by Z(a); the
      // reversed word b.a^-1 comes from b a* and is carried by Z(b).
      for (const auto& [t, carrier] : {std::pair(FreeWord::from_paths(a, b), a),
                                       std::pair(FreeWord::from_paths(b, a), b)}) {
        SkewElement x = skew_monomial(indicator(cylinder_set(g, {carrier, {}})), t);
        bool refuted = false;
        for (const auto& q : paths) {
          if (commute(x, diagonal_indicator(g, q))) continue;
          out.candidates.push_back({t, path_str(q)});
          refuted = true;
          break;
        }
        if (!refuted)
          throw std::logic_error("probe: candidate " + print_word(t) +
                                 " commutes with every diagonal generator");
      }
    }
  }
  return out;
}

RankReport skew_independence(const GraphPtr& g, std::size_t len_bound, std::size_t depth) {
  const auto profiles = boundary_profiles(*g, depth);
  const auto assignment = skew_generators(g);
  const auto paths = paths_up_to(*g, len_bound);

  std::vector<Monomial> monos;
  for (const auto& a : paths)
    for (const auto& b : paths) {
      if (path_rng(*g, a) != path_rng(*g, b)) continue;
      Monomial m{a, b};
      if (is_normal(*g, m)) monos.push_back(std::move(m));
    }

  // A monomial's image is a single function tagged by its reduced word, so
  // coordinates split into independent blocks, one row space per word.
  struct Block {
    RowSpace space;
    std::vector<std::size_t> members;
  };
  std::map<FreeWord, Block> blocks;

  RankReport report;
  report.monomials = monos.size();
  for (std::size_t i = 0; i < monos.size(); ++i) {
    const Monomial& m = monos[i];
    SkewElement image = evaluate(assignment, monomial_element(g, m.alpha, m.beta));
    const FreeWord word = FreeWord::from_paths(m.alpha, m.beta);
    std::vector<Rational> row(profiles.size(), Rational(0));
    for (const auto& [w, f] : image.coeffs()) {
      if (!(w == word)) throw std::logic_error("monomial image carries an unexpected word");
      for (std::size_t j = 0; j < profiles.size(); ++j) row[j] = d_value(f, profiles[j]);
    }
    Block& block =
        blocks.try_emplace(word, Block{RowSpace(profiles.size()), {}}).first->second;
    block.members.push_back(i);
    auto dependent = block.space.insert_tracked(std::move(row));
    if (dependent && !report.dependency) {
      AlgebraElement combo = zero_element(g);
      for (const auto& [idx, k] : *dependent) {
        const Monomial& part = monos[block.members[idx]];
        combo = add(combo, monomial_element(g, part.alpha, part.beta, k));
      }
      report.dependency = print_element(combo);
    }
  }
  for (const auto& entry : blocks) report.rank += entry.second.space.rank();
  return report;
}

std::string print_skew(const SkewElement& x) {
  if (x.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [w, f] : x.coeffs()) {
    if (!first) out << " + ";
    out << "(" << print_dfunction(f) << ") d_[" << print_word(w) << "]";
    first = false;
  }
  return out.str();
}

SkewElement parse_skew(const GraphPtr& g, const std::string& text) {
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  if (i < text.size() && text[i] == '0') {
    ++i;
    skip_ws();
    if (i != text.size()) throw ParseError("trailing input after zero element");
    return skew_zero(g);
  }
  SkewElement acc = skew_zero(g);
  while (true) {
    skip_ws();
    if (i >= text.size() || text[i] != '(')
      throw ParseError("expected '(' opening a coefficient function");
    std::size_t depth_count = 1;
    std::size_t start = ++i;
    while (i < text.size() && depth_count > 0) {
      if (text[i] == '(') ++depth_count;
      if (text[i] == ')') --depth_count;
      ++i;
    }
    if (depth_count > 0) throw ParseError("unbalanced parentheses around coefficient function");
    DFunction f = parse_dfunction(g, text.substr(start, i - 1 - start));
    skip_ws();
    if (text.compare(i, 3, "d_[") != 0) throw ParseError("expected 'd_[word]' after coefficient");
    i += 3;
    std::size_t close = text.find(']', i);
    if (close == std::string::npos) throw ParseError("unbalanced bracket in 'd_[word]'");
    FreeWord w = parse_word(text.substr(i, close - i));
    i = close + 1;
    acc = skew_add(acc, skew_monomial(f, w));
    skip_ws();
    if (i < text.size() && text[i] == '+') {
      ++i;
      continue;
    }
    break;
  }
  skip_ws();
  if (i != text.size()) throw ParseError("trailing input after element");
  return acc;
}

}  // namespace cohnpath
