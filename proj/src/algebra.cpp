#include "cohnpath/algebra.hpp"

#include <algorithm>

namespace cohnpath {

const std::string& special_edge(const Graph& g, const std::string& v) {
  if (!g.in_x(v)) throw Error("special_edge: " + v + " is not in X");
  return g.out_edges(v).back();  // out-lists are sorted, so back() is lex-largest
}

bool is_normal(const Graph& g, const Monomial& m) {
  if (m.alpha.edges.empty() || m.beta.edges.empty()) return true;
  const std::string& last = m.alpha.edges.back();
  if (last != m.beta.edges.back()) return true;
  const std::string& v = g.edge(last).src;
  return !(g.in_x(v) && last == special_edge(g, v));
}

void add_normalized(const Graph& g, TermMap& out, const Monomial& m, const Rational& k) {
  if (k.is_zero()) return;
  if (is_normal(g, m)) {
    out[m] += k;
    return;
  }
  // alpha = alpha0.f and beta = beta0.f with f the special edge of v in X.
  // Substitute the summation relation of v solved for f f*:
  //   alpha0 f f* beta0* = alpha0 beta0* - sum_{h != f} alpha0 h h* beta0*.
  const std::string f = m.alpha.edges.back();
  const std::string v = g.edge(f).src;
  Monomial shorter{m.alpha, m.beta};
  shorter.alpha.edges.pop_back();
  shorter.beta.edges.pop_back();
  add_normalized(g, out, shorter, k);  // may itself need rewriting
  for (const auto& h : g.out_edges(v)) {
    if (h == f) continue;
    Monomial sibling{append_edge(g, shorter.alpha, h), append_edge(g, shorter.beta, h)};
    out[sibling] -= k;  // h is not special, so the sibling is normal
  }
}

namespace {

void prune_zeros(TermMap& terms) {
  for (auto it = terms.begin(); it != terms.end();)
    it = it->second.is_zero() ? terms.erase(it) : std::next(it);
}

AlgebraElement finish(GraphPtr g, TermMap terms) {
  prune_zeros(terms);
  return AlgebraElement(std::move(g), std::move(terms));
}

}  // namespace

AlgebraElement zero_element(GraphPtr g) { return AlgebraElement(std::move(g)); }

AlgebraElement generator(const GraphPtr& g, const std::string& id, bool ghost) {
  TermMap terms;
  if (g->has_vertex(id)) {
    Path t = trivial_path(*g, id);
    terms[Monomial{t, t}] = Rational(1);  // v* = v
  } else if (g->has_edge(id)) {
    Path e = edge_path(*g, id);
    Path t = trivial_path(*g, path_rng(*g, e));
    Monomial m = ghost ? Monomial{t, e} : Monomial{e, t};
    add_normalized(*g, terms, m, Rational(1));
  } else {
    throw UnknownId("no vertex or edge named " + id);
  }
  return finish(g, std::move(terms));
}

AlgebraElement monomial_element(const GraphPtr& g, const Path& alpha, const Path& beta,
                                const Rational& k) {
  if (path_rng(*g, alpha) != path_rng(*g, beta))
    throw Error("monomial paths must share their range");
  TermMap terms;
  add_normalized(*g, terms, Monomial{alpha, beta}, k);
  return finish(g, std::move(terms));
}

AlgebraElement path_element(const GraphPtr& g, const Path& alpha) {
  return monomial_element(g, alpha, trivial_path(*g, path_rng(*g, alpha)));
}

AlgebraElement gap_element(const GraphPtr& g, const std::string& v) {
  if (!g->has_vertex(v)) throw UnknownId("unknown vertex " + v);
  if (g->is_sink(v)) throw Error("gap_element: " + v + " is a sink");
  Path t = trivial_path(*g, v);
  TermMap terms;
  add_normalized(*g, terms, Monomial{t, t}, Rational(1));
  for (const auto& e : g->out_edges(v)) {
    Path p = edge_path(*g, e);
    add_normalized(*g, terms, Monomial{p, p}, Rational(-1));
  }
  return finish(g, std::move(terms));
}

void require_same_graph(const AlgebraElement& a, const AlgebraElement& b) {
  if (a.graph() == b.graph()) return;  // same object
  if (*a.graph() == *b.graph()) return;
  throw GraphMismatch("elements live over different graphs");
}

AlgebraElement add(const AlgebraElement& a, const AlgebraElement& b) {
  require_same_graph(a, b);
  TermMap terms = a.terms();
  for (const auto& [m, k] : b.terms()) terms[m] += k;
  return finish(a.graph(), std::move(terms));
}

AlgebraElement sub(const AlgebraElement& a, const AlgebraElement& b) {
  return add(a, scalar_mul(Rational(-1), b));
}

AlgebraElement scalar_mul(const Rational& k, const AlgebraElement& a) {
  TermMap terms;
  if (!k.is_zero())
    for (const auto& [m, c] : a.terms()) terms[m] = k * c;
  return AlgebraElement(a.graph(), std::move(terms));
}

namespace {

/// (alpha1 beta1*)(alpha2 beta2*) before normalization: nonzero iff one of
/// beta1, alpha2 is a prefix of the other, in which case the leftover tail
/// migrates to the longer side.
std::optional<Monomial> raw_product(const Graph& g, const Monomial& a, const Monomial& b) {
  if (is_prefix(a.beta, b.alpha)) {
    Path tail = suffix_after(g, a.beta, b.alpha);
    return Monomial{concat(g, a.alpha, tail), b.beta};
  }
  if (is_prefix(b.alpha, a.beta)) {
    Path tail = suffix_after(g, b.alpha, a.beta);
    return Monomial{a.alpha, concat(g, b.beta, tail)};
  }
  return std::nullopt;
}

}  // namespace

AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b) {
  require_same_graph(a, b);
  const Graph& g = *a.graph();
  TermMap terms;
  for (const auto& [ma, ka] : a.terms())
    for (const auto& [mb, kb] : b.terms())
      if (auto m = raw_product(g, ma, mb)) add_normalized(g, terms, *m, ka * kb);
  return finish(a.graph(), std::move(terms));
}

AlgebraElement star(const AlgebraElement& a) {
  TermMap terms;
  for (const auto& [m, k] : a.terms()) terms[Monomial{m.beta, m.alpha}] = k;
  return AlgebraElement(a.graph(), std::move(terms));
}

bool equal(const AlgebraElement& a, const AlgebraElement& b) {
  require_same_graph(a, b);
  return a.terms() == b.terms();
}

long monomial_degree(const Monomial& m) {
  return static_cast<long>(m.alpha.length()) - static_cast<long>(m.beta.length());
}

AlgebraElement graded_component(const AlgebraElement& x, long n) {
  TermMap terms;
  for (const auto& [m, k] : x.terms())
    if (monomial_degree(m) == n) terms[m] = k;
  return AlgebraElement(x.graph(), std::move(terms));
}

std::vector<long> graded_support(const AlgebraElement& x) {
  std::set<long> degs;
  for (const auto& [m, k] : x.terms()) degs.insert(monomial_degree(m));
  return {degs.begin(), degs.end()};
}

bool is_homogeneous(const AlgebraElement& x) { return graded_support(x).size() <= 1; }

CornerDescriptor::CornerDescriptor(const Graph& g, Cycle cycle) : cycle_(std::move(cycle)) {
  if (cycle_.edges.empty()) throw InvalidCorner("empty cycle");
  std::set<std::string> seen;
  for (std::size_t i = 0; i < cycle_.edges.size(); ++i) {
    const Edge& e = g.edge(cycle_.edges[i]);
    const Edge& next = g.edge(cycle_.edges[(i + 1) % cycle_.edges.size()]);
    if (e.rng != next.src) throw InvalidCorner("edge list does not close into a cycle");
    if (!seen.insert(e.src).second) throw InvalidCorner("cycle revisits a vertex");
    if (g.out_edges(e.src).size() != 1)
      throw InvalidCorner("cycle has an exit at " + e.src);
    if (g.in_y(e.src)) markers_.insert(i + 1);
  }
  base_ = g.edge(cycle_.edges.front()).src;
}

std::vector<AlgebraElement> corner_spanning_monomials(const GraphPtr& g,
                                                      const CornerDescriptor& corner,
                                                      std::size_t imax, std::size_t jmax) {
  const Graph& gr = *g;
  Path c = cycle_path(gr, corner.cycle());
  AlgebraElement cpow = generator(g, corner.base());  // c^0
  std::vector<AlgebraElement> cpowers{cpow};
  for (std::size_t i = 1; i <= std::max(imax, jmax); ++i) {
    cpow = multiply(cpow, path_element(g, c));
    cpowers.push_back(cpow);
  }
  std::vector<std::size_t> ks{0};
  ks.insert(ks.end(), corner.markers().begin(), corner.markers().end());

  std::vector<AlgebraElement> out;
  for (std::size_t i = 0; i <= imax; ++i)
    for (std::size_t j = 0; j <= jmax; ++j)
      for (std::size_t k : ks) {
        Path mu = trivial_path(gr, corner.base());
        for (std::size_t t = 0; t < k; ++t) mu = append_edge(gr, mu, corner.cycle().edges[t]);
        AlgebraElement frame = monomial_element(g, mu, mu);
        out.push_back(multiply(multiply(cpowers[i], frame), star(cpowers[j])));
      }
  return out;
}

std::optional<unsigned long long> dimension_if_finite(const Graph& g, std::size_t cap) {
  if (cap == 0) cap = g.vertices().size();
  // Count paths per range vertex and per final edge, level by level; if some
  // level is empty the graph is acyclic and the enumeration is complete.
  std::map<std::string, unsigned long long> by_rng;
  std::map<std::string, unsigned long long> by_last_edge;
  std::vector<Path> level;
  for (const auto& v : g.vertices()) {
    level.push_back(trivial_path(g, v));
    by_rng[v] += 1;
  }
  bool stabilized = false;
  for (std::size_t len = 1; len <= cap + 1; ++len) {
    std::vector<Path> next;
    for (const Path& p : level)
      for (const auto& e : g.out_edges(path_rng(g, p))) {
        Path q = append_edge(g, p, e);
        by_rng[path_rng(g, q)] += 1;
        by_last_edge[e] += 1;
        next.push_back(q);
      }
    if (next.empty()) {
      stabilized = true;
      break;
    }
    level = std::move(next);
  }
  if (!stabilized) return std::nullopt;
  // Pairs (alpha, beta) with a common range, minus the non-normal ones: both
  // ending in the special edge of an X vertex.
  unsigned long long count = 0;
  for (const auto& [v, n] : by_rng) count += n * n;
  for (const auto& v : g.x()) {
    auto it = by_last_edge.find(special_edge(g, v));
    if (it != by_last_edge.end()) count -= it->second * it->second;
  }
  return count;
}

}  // namespace cohnpath
