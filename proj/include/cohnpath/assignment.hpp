#pragma once

#include <concepts>
#include <map>
#include <optional>
#include <string>

#include "cohnpath/algebra.hpp"

namespace cohnpath {

/// Adapter interface for a ring that can receive the generators: exact
/// equality to zero, addition, multiplication, and the scalar action.  `str`
/// renders elements for reports.
template <class T>
concept TargetRing = requires(const typename T::Elem& a, const typename T::Elem& b,
                              const Rational& k) {
  { T::add(a, b) } -> std::convertible_to<typename T::Elem>;
  { T::mul(a, b) } -> std::convertible_to<typename T::Elem>;
  { T::scalar(k, a) } -> std::convertible_to<typename T::Elem>;
  { T::is_zero(a) } -> std::convertible_to<bool>;
  { T::str(a) } -> std::convertible_to<std::string>;
};

/// Images for every vertex, edge, and ghost edge of a source graph in some
/// target ring.  `zero` seeds empty sums.  Use relation_violation() to check
/// that the images actually satisfy the defining relations; the uniqueness
/// checkers do so and report the offender.
template <class T>
  requires TargetRing<T>
struct GeneratorAssignment {
  using Elem = typename T::Elem;

  GraphPtr source;
  Elem zero;
  std::map<std::string, Elem> vertex_image;
  std::map<std::string, Elem> edge_image;
  std::map<std::string, Elem> ghost_image;

  const Elem& vertex(const std::string& id) const { return find(vertex_image, id); }
  const Elem& edge(const std::string& id) const { return find(edge_image, id); }
  const Elem& ghost(const std::string& id) const { return find(ghost_image, id); }

 private:
  static const Elem& find(const std::map<std::string, Elem>& m, const std::string& id) {
    auto it = m.find(id);
    if (it == m.end()) throw UnknownId("assignment has no image for " + id);
    return it->second;
  }
};

/// Evaluates the induced homomorphism on an element of the source algebra.
template <class T>
  requires TargetRing<T>
typename T::Elem evaluate(const GeneratorAssignment<T>& a, const AlgebraElement& x) {
  if (!(*x.graph() == *a.source))
    throw GraphMismatch("element does not live over the assignment's source graph");
  typename T::Elem acc = a.zero;
  for (const auto& [m, k] : x.terms()) {
    // alpha edges, the shared range vertex, then beta's ghosts in reverse.
    typename T::Elem prod = a.vertex(path_rng(*a.source, m.alpha));
    for (auto it = m.alpha.edges.rbegin(); it != m.alpha.edges.rend(); ++it)
      prod = T::mul(a.edge(*it), prod);
    for (auto it = m.beta.edges.rbegin(); it != m.beta.edges.rend(); ++it)
      prod = T::mul(prod, a.ghost(*it));
    acc = T::add(acc, T::scalar(k, prod));
  }
  return acc;
}

/// First defining relation the images fail to satisfy, if any, as a short
/// human-readable description.
template <class T>
  requires TargetRing<T>
std::optional<std::string> relation_violation(const GeneratorAssignment<T>& a) {
  const Graph& g = *a.source;
  auto is_zero = [](const typename T::Elem& e) { return T::is_zero(e); };
  auto diff = [](const typename T::Elem& x, const typename T::Elem& y) {
    return T::add(x, T::scalar(Rational(-1), y));
  };
  for (const auto& v : g.vertices())
    for (const auto& w : g.vertices()) {
      auto prod = T::mul(a.vertex(v), a.vertex(w));
      bool ok = (v == w) ? is_zero(diff(prod, a.vertex(v))) : is_zero(prod);
      if (!ok) return "vertex relation fails at " + v + ", " + w;
    }
  for (const auto& ed : g.edges()) {
    if (!is_zero(diff(T::mul(a.vertex(ed.src), a.edge(ed.id)), a.edge(ed.id))) ||
        !is_zero(diff(T::mul(a.edge(ed.id), a.vertex(ed.rng)), a.edge(ed.id))))
      return "source/range relation fails at edge " + ed.id;
    if (!is_zero(diff(T::mul(a.vertex(ed.rng), a.ghost(ed.id)), a.ghost(ed.id))) ||
        !is_zero(diff(T::mul(a.ghost(ed.id), a.vertex(ed.src)), a.ghost(ed.id))))
      return "source/range relation fails at ghost edge " + ed.id;
    for (const auto& fd : g.edges()) {
      auto prod = T::mul(a.ghost(ed.id), a.edge(fd.id));
      bool ok = (ed.id == fd.id) ? is_zero(diff(prod, a.vertex(ed.rng))) : is_zero(prod);
      if (!ok) return "ghost-edge relation fails at " + ed.id + ", " + fd.id;
    }
  }
  for (const auto& v : g.x()) {
    typename T::Elem sum = a.zero;
    for (const auto& e : g.out_edges(v))
      sum = T::add(sum, T::mul(a.edge(e), a.ghost(e)));
    if (!is_zero(diff(sum, a.vertex(v)))) return "summation relation fails at " + v;
  }
  return std::nullopt;
}

/// The source algebra itself as a target.
struct CohnTarget {
  using Elem = AlgebraElement;
  static Elem add(const Elem& x, const Elem& y) { return cohnpath::add(x, y); }
  static Elem mul(const Elem& x, const Elem& y) { return cohnpath::multiply(x, y); }
  static Elem scalar(const Rational& k, const Elem& x) { return cohnpath::scalar_mul(k, x); }
  static bool is_zero(const Elem& x) { return x.is_zero(); }
  static std::string str(const Elem& x);
};

/// Generators mapped to themselves.
GeneratorAssignment<CohnTarget> identity_assignment(const GraphPtr& g);

/// Generators of `source` mapped to the same-named generators of `target`
/// (a graph with the same vertices and edges but possibly a larger X).  The
/// canonical quotient map; kills the gaps of vertices in X(target) \ X(source).
GeneratorAssignment<CohnTarget> renaming_assignment(const GraphPtr& source,
                                                    const GraphPtr& target);

}  // namespace cohnpath
